#include "skintone/disagg.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "skintone/csv.hpp"
#include "skintone/error.hpp"

namespace skintone {

std::vector<JoinedRecord> join_scores(std::span<const PredictionRecord> predictions,
                                      std::span<const ScoreRecord> scores,
                                      const CategoryThresholds& t) {
  std::map<std::string_view, const ScoreRecord*> by_id;
  for (const ScoreRecord& s : scores) by_id.emplace(s.id, &s);

  std::vector<JoinedRecord> joined;
  std::vector<std::string> missing;
  for (const PredictionRecord& p : predictions) {
    const auto it = by_id.find(p.id);
    if (it == by_id.end()) {
      missing.push_back(p.id);
      continue;
    }
    joined.push_back({p, categorize(it->second->score, t)});
  }
  if (!missing.empty()) {
    std::string list;
    for (const std::string& id : missing) {
      if (!list.empty()) list += ", ";
      list += id;
    }
    throw Error(ErrorCode::kMissingScore,
                std::to_string(missing.size()) + " prediction id(s) without a score: " + list);
  }
  return joined;
}

std::optional<double> AccuracyCell::accuracy() const noexcept {
  if (total == 0) return std::nullopt;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

std::string_view to_string(CellKey key) noexcept {
  switch (key) {
    case CellKey::kOverall: return "overall";
    case CellKey::kLight: return "light";
    case CellKey::kDark: return "dark";
    case CellKey::kRed: return "red";
    case CellKey::kYellow: return "yellow";
    case CellKey::kLightRed: return "light-red";
    case CellKey::kLightYellow: return "light-yellow";
    case CellKey::kDarkRed: return "dark-red";
    case CellKey::kDarkYellow: return "dark-yellow";
  }
  return "overall";
}

namespace {

CellKey intersection_key(ToneHueCategory c) {
  if (c.tone == Tone::kLight) return c.hue == Hue::kRed ? CellKey::kLightRed : CellKey::kLightYellow;
  return c.hue == Hue::kRed ? CellKey::kDarkRed : CellKey::kDarkYellow;
}

void tally(SplitCell& cell, bool correct, std::optional<bool> positive) {
  auto bump = [&](AccuracyCell& c) {
    ++c.total;
    if (correct) ++c.correct;
  };
  bump(cell.all);
  if (positive) bump(*positive ? cell.positive : cell.negative);
}

}  // namespace

DisaggTable disaggregate(std::span<const JoinedRecord> records,
                         const std::optional<std::string>& positive_label) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "nothing to disaggregate");
  DisaggTable table;
  table.positive_label = positive_label;
  for (const JoinedRecord& r : records) {
    const bool correct = r.prediction.predicted == r.prediction.actual;
    std::optional<bool> positive;
    if (positive_label) positive = r.prediction.actual == *positive_label;
    tally(table.cell(CellKey::kOverall), correct, positive);
    tally(table.cell(r.category.tone == Tone::kLight ? CellKey::kLight : CellKey::kDark), correct,
          positive);
    tally(table.cell(r.category.hue == Hue::kRed ? CellKey::kRed : CellKey::kYellow), correct,
          positive);
    tally(table.cell(intersection_key(r.category)), correct, positive);
  }
  return table;
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path) {
  const csv::Table t = csv::Table::read(path);
  t.require({"id", "predicted", "actual"});
  std::vector<PredictionRecord> out;
  std::set<std::string> seen;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    PredictionRecord p{t.at(r, "id"), t.at(r, "predicted"), t.at(r, "actual")};
    if (!seen.insert(p.id).second) {
      throw Error(ErrorCode::kParseError, path.string() + ":" + std::to_string(t.line_of(r)) +
                                              ": duplicate id " + p.id);
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

using ordered_json = nlohmann::ordered_json;

// Accuracy rounded to the two decimals used in printed tables.
ordered_json cell_json(const AccuracyCell& c) {
  ordered_json j;
  j["count"] = c.total;
  j["correct"] = c.correct;
  if (const auto acc = c.accuracy()) {
    j["accuracy"] = std::round(*acc * 100.0) / 100.0;
  } else {
    j["accuracy"] = nullptr;
  }
  return j;
}

std::string accuracy_text(const AccuracyCell& c) {
  const auto acc = c.accuracy();
  return acc ? fmt::format("{:.2f}", *acc) : std::string();
}

}  // namespace

std::string disagg_json(const DisaggTable& table) {
  ordered_json j;
  j["schema_version"] = 1;
  j["positive_label"] = table.positive_label ? ordered_json(*table.positive_label) : ordered_json();
  ordered_json cells = ordered_json::object();
  for (CellKey key : kAllCells) {
    const SplitCell& c = table.cell(key);
    if (c.all.total == 0) continue;
    ordered_json cj;
    cj["all"] = cell_json(c.all);
    if (table.positive_label) {
      cj["positive"] = cell_json(c.positive);
      cj["negative"] = cell_json(c.negative);
    }
    cells[std::string(to_string(key))] = std::move(cj);
  }
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

std::string disagg_csv(const DisaggTable& table) {
  const bool split = table.positive_label.has_value();
  std::string s = split ? "cell,count,accuracy,positive_count,positive_accuracy,negative_count,"
                          "negative_accuracy\n"
                        : "cell,count,accuracy\n";
  for (CellKey key : kAllCells) {
    const SplitCell& c = table.cell(key);
    s += fmt::format("{},{},{}", to_string(key), c.all.total, accuracy_text(c.all));
    if (split) {
      s += fmt::format(",{},{},{},{}", c.positive.total, accuracy_text(c.positive),
                       c.negative.total, accuracy_text(c.negative));
    }
    s += "\n";
  }
  return s;
}

}  // namespace skintone
