#include "skintone/csv.hpp"

#include <fstream>
#include <sstream>

#include "skintone/error.hpp"

namespace skintone::csv {

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) throw Error(ErrorCode::kParseError, "unterminated quoted field");
  fields.push_back(std::move(current));
  return fields;
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Table Table::parse(std::string_view text, const std::string& source) {
  Table t;
  t.source_ = source;
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos
                                                                           : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    std::vector<std::string> fields;
    try {
      fields = split_line(line);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError, source + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!have_header) {
      t.header_ = std::move(fields);
      for (std::size_t i = 0; i < t.header_.size(); ++i) {
        if (!t.index_.emplace(t.header_[i], i).second) {
          throw Error(ErrorCode::kParseError, source + ": duplicate column " + t.header_[i]);
        }
      }
      have_header = true;
      continue;
    }
    if (fields.size() != t.header_.size()) {
      throw Error(ErrorCode::kParseError, source + ":" + std::to_string(line_no) + ": expected " +
                                              std::to_string(t.header_.size()) + " fields, got " +
                                              std::to_string(fields.size()));
    }
    t.rows_.push_back(std::move(fields));
    t.lines_.push_back(line_no);
  }
  if (!have_header) throw Error(ErrorCode::kParseError, source + ": missing header row");
  return t;
}

Table Table::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

bool Table::has_column(std::string_view name) const { return index_.find(name) != index_.end(); }

const std::string& Table::at(std::size_t row, std::string_view column) const {
  const auto it = index_.find(column);
  if (it == index_.end()) {
    throw Error(ErrorCode::kParseError, source_ + ": no column " + std::string(column));
  }
  return rows_.at(row)[it->second];
}

std::optional<std::string> Table::get(std::size_t row, std::string_view column) const {
  const auto it = index_.find(column);
  if (it == index_.end()) return std::nullopt;
  return rows_.at(row)[it->second];
}

void Table::require(const std::vector<std::string>& columns) const {
  for (const std::string& c : columns) {
    if (!has_column(c)) throw Error(ErrorCode::kParseError, source_ + ": missing column " + c);
  }
}

}  // namespace skintone::csv
