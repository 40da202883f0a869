#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skintone/skin_extraction.hpp"

namespace skintone {

struct CategoryThresholds {
  double tone_threshold = 60.0;  // L*
  double hue_threshold = 55.0;   // degrees

  void validate() const;
};

enum class Tone { kLight = 0, kDark = 1 };
enum class Hue { kRed = 0, kYellow = 1 };

struct ToneHueCategory {
  Tone tone = Tone::kDark;
  Hue hue = Hue::kRed;

  friend bool operator==(const ToneHueCategory&, const ToneHueCategory&) = default;
};

std::string_view to_string(Tone tone) noexcept;
std::string_view to_string(Hue hue) noexcept;
// "light-red", "dark-yellow", ...
std::string to_string(ToneHueCategory category);

struct ScoreRecord {
  std::string id;
  SkinColorScore score;
  std::optional<std::string> group;
  std::optional<double> rms_contrast;  // whole-image contrast, when requested
};

// 2x2 tone-by-hue counts. Percentages are derived from the counts so the
// four cells always sum to 100.
class CrossTab {
 public:
  void add(ToneHueCategory category) noexcept;

  std::size_t total() const noexcept { return total_; }
  std::size_t count(Tone tone, Hue hue) const noexcept;
  std::size_t count(Tone tone) const noexcept;
  std::size_t count(Hue hue) const noexcept;

  double percent(Tone tone, Hue hue) const noexcept;
  double percent(Tone tone) const noexcept;
  double percent(Hue hue) const noexcept;

  friend bool operator==(const CrossTab&, const CrossTab&) = default;

 private:
  std::array<std::array<std::size_t, 2>, 2> counts_{};  // [tone][hue]
  std::size_t total_ = 0;
};

/// Light iff l_star > tone_threshold, Yellow iff hue_deg > hue_threshold.
ToneHueCategory categorize(const SkinColorScore& score, const CategoryThresholds& t);
ToneHueCategory categorize(double l_star, double hue_deg, const CategoryThresholds& t);

/// Throws Error{kEmptyInput} for an empty record list.
CrossTab cross_tabulate(std::span<const ScoreRecord> records, const CategoryThresholds& t);

// One CrossTab per group label; records without a label fall under "".
std::map<std::string, CrossTab> cross_tabulate_by_group(std::span<const ScoreRecord> records,
                                                        const CategoryThresholds& t);

enum class ScoreField { kLStar, kHueDeg, kItaDeg };

std::string_view to_string(ScoreField field) noexcept;
std::optional<ScoreField> parse_score_field(std::string_view name) noexcept;
double field_value(const SkinColorScore& score, ScoreField field) noexcept;

struct Histogram {
  ScoreField field = ScoreField::kLStar;
  double lo = 0.0;
  double hi = 0.0;
  double bin_width = 0.0;
  std::vector<std::size_t> counts;

  double bin_center(std::size_t bin) const noexcept;
};

/// Equal-width bins over the data range [min, max]; the maximum lands in the
/// last bin. A zero-width range puts every record in the first bin.
Histogram histogram_report(std::span<const ScoreRecord> records, ScoreField field, int bins);

}  // namespace skintone
