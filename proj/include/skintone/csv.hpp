#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skintone::csv {

// Header-addressed CSV table. Quoted fields follow RFC 4180 (double quotes,
// "" escapes a quote); a UTF-8 BOM on the first line is skipped.
class Table {
 public:
  static Table parse(std::string_view text, const std::string& source = "<memory>");
  static Table read(const std::filesystem::path& path);

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  bool has_column(std::string_view name) const;

  // Throws Error{kParseError} for an unknown column.
  const std::string& at(std::size_t row, std::string_view column) const;
  std::optional<std::string> get(std::size_t row, std::string_view column) const;

  // 1-based source line of a data row, for diagnostics.
  std::size_t line_of(std::size_t row) const noexcept { return lines_[row]; }

  // Throws Error{kParseError} naming the first missing column.
  void require(const std::vector<std::string>& columns) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> lines_;
};

std::vector<std::string> split_line(std::string_view line);
std::string quote(std::string_view field);

}  // namespace skintone::csv
