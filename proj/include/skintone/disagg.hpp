#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skintone/audit.hpp"

namespace skintone {

struct PredictionRecord {
  std::string id;
  std::string predicted;
  std::string actual;
};

struct JoinedRecord {
  PredictionRecord prediction;
  ToneHueCategory category;
};

/// Inner join on id. Throws Error{kMissingScore} listing every prediction id
/// without a score.
std::vector<JoinedRecord> join_scores(std::span<const PredictionRecord> predictions,
                                      std::span<const ScoreRecord> scores,
                                      const CategoryThresholds& t);

struct AccuracyCell {
  std::size_t total = 0;
  std::size_t correct = 0;

  // Empty for a cell without samples, so it cannot read as 0% accuracy.
  std::optional<double> accuracy() const noexcept;
};

// A cell of the table, optionally split by whether the true label is the
// positive class.
struct SplitCell {
  AccuracyCell all;
  AccuracyCell positive;
  AccuracyCell negative;
};

enum class CellKey {
  kOverall,
  kLight,
  kDark,
  kRed,
  kYellow,
  kLightRed,
  kLightYellow,
  kDarkRed,
  kDarkYellow,
};

inline constexpr std::array<CellKey, 9> kAllCells = {
    CellKey::kOverall,  CellKey::kLight,       CellKey::kDark,
    CellKey::kRed,      CellKey::kYellow,      CellKey::kLightRed,
    CellKey::kLightYellow, CellKey::kDarkRed,  CellKey::kDarkYellow,
};

std::string_view to_string(CellKey key) noexcept;

struct DisaggTable {
  std::optional<std::string> positive_label;
  std::array<SplitCell, kAllCells.size()> cells{};

  const SplitCell& cell(CellKey key) const noexcept { return cells[static_cast<std::size_t>(key)]; }
  SplitCell& cell(CellKey key) noexcept { return cells[static_cast<std::size_t>(key)]; }
};

/// Throws Error{kEmptyInput} on an empty record list.
DisaggTable disaggregate(std::span<const JoinedRecord> records,
                         const std::optional<std::string>& positive_label = std::nullopt);

// `id,predicted,actual`.
std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);

std::string disagg_json(const DisaggTable& table);
// One row per cell; accuracies with two decimals, blank when absent.
std::string disagg_csv(const DisaggTable& table);

}  // namespace skintone
