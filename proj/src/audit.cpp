#include "skintone/audit.hpp"

#include <algorithm>
#include <cmath>

#include "skintone/error.hpp"

namespace skintone {

void CategoryThresholds::validate() const {
  if (!(tone_threshold > 0.0 && tone_threshold < 100.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tone threshold must lie in (0, 100)");
  }
  if (!std::isfinite(hue_threshold)) {
    throw Error(ErrorCode::kInvalidArgument, "hue threshold must be finite");
  }
}

std::string_view to_string(Tone tone) noexcept { return tone == Tone::kLight ? "light" : "dark"; }

std::string_view to_string(Hue hue) noexcept { return hue == Hue::kRed ? "red" : "yellow"; }

std::string to_string(ToneHueCategory category) {
  return std::string(to_string(category.tone)) + "-" + std::string(to_string(category.hue));
}

void CrossTab::add(ToneHueCategory category) noexcept {
  ++counts_[static_cast<int>(category.tone)][static_cast<int>(category.hue)];
  ++total_;
}

std::size_t CrossTab::count(Tone tone, Hue hue) const noexcept {
  return counts_[static_cast<int>(tone)][static_cast<int>(hue)];
}

std::size_t CrossTab::count(Tone tone) const noexcept {
  return count(tone, Hue::kRed) + count(tone, Hue::kYellow);
}

std::size_t CrossTab::count(Hue hue) const noexcept {
  return count(Tone::kLight, hue) + count(Tone::kDark, hue);
}

namespace {

double as_percent(std::size_t part, std::size_t total) noexcept {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(total);
}

}  // namespace

double CrossTab::percent(Tone tone, Hue hue) const noexcept {
  return as_percent(count(tone, hue), total_);
}

double CrossTab::percent(Tone tone) const noexcept { return as_percent(count(tone), total_); }

double CrossTab::percent(Hue hue) const noexcept { return as_percent(count(hue), total_); }

ToneHueCategory categorize(double l_star, double hue_deg, const CategoryThresholds& t) {
  return {l_star > t.tone_threshold ? Tone::kLight : Tone::kDark,
          hue_deg > t.hue_threshold ? Hue::kYellow : Hue::kRed};
}

ToneHueCategory categorize(const SkinColorScore& score, const CategoryThresholds& t) {
  return categorize(score.l_star, score.hue_deg, t);
}

CrossTab cross_tabulate(std::span<const ScoreRecord> records, const CategoryThresholds& t) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "cross-tab of no records");
  CrossTab tab;
  for (const ScoreRecord& r : records) tab.add(categorize(r.score, t));
  return tab;
}

std::map<std::string, CrossTab> cross_tabulate_by_group(std::span<const ScoreRecord> records,
                                                        const CategoryThresholds& t) {
  std::map<std::string, CrossTab> out;
  for (const ScoreRecord& r : records) out[r.group.value_or("")].add(categorize(r.score, t));
  return out;
}

std::string_view to_string(ScoreField field) noexcept {
  switch (field) {
    case ScoreField::kLStar: return "l_star";
    case ScoreField::kHueDeg: return "hue_deg";
    case ScoreField::kItaDeg: return "ita_deg";
  }
  return "l_star";
}

std::optional<ScoreField> parse_score_field(std::string_view name) noexcept {
  if (name == "l_star") return ScoreField::kLStar;
  if (name == "hue_deg") return ScoreField::kHueDeg;
  if (name == "ita_deg") return ScoreField::kItaDeg;
  return std::nullopt;
}

double field_value(const SkinColorScore& score, ScoreField field) noexcept {
  switch (field) {
    case ScoreField::kLStar: return score.l_star;
    case ScoreField::kHueDeg: return score.hue_deg;
    case ScoreField::kItaDeg: return score.ita_deg;
  }
  return score.l_star;
}

double Histogram::bin_center(std::size_t bin) const noexcept {
  return lo + (static_cast<double>(bin) + 0.5) * bin_width;
}

Histogram histogram_report(std::span<const ScoreRecord> records, ScoreField field, int bins) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "histogram of no records");
  if (bins < 1) throw Error(ErrorCode::kInvalidArgument, "histogram needs >= 1 bin");

  std::vector<double> values;
  values.reserve(records.size());
  for (const ScoreRecord& r : records) values.push_back(field_value(r.score, field));
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());

  Histogram h;
  h.field = field;
  h.lo = *lo_it;
  h.hi = *hi_it;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  h.bin_width = (h.hi - h.lo) / bins;
  for (double v : values) {
    std::size_t idx = 0;
    if (h.bin_width > 0.0) {
      idx = static_cast<std::size_t>(std::floor((v - h.lo) / h.bin_width));
      idx = std::min(idx, h.counts.size() - 1);
    }
    ++h.counts[idx];
  }
  return h;
}

}  // namespace skintone
