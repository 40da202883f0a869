#include "skintone/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "skintone/error.hpp"

namespace skintone {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr Tone kTones[] = {Tone::kLight, Tone::kDark};
constexpr Hue kHues[] = {Hue::kRed, Hue::kYellow};

ordered_json crosstab_json(const CrossTab& tab) {
  ordered_json counts = ordered_json::object();
  ordered_json percent = ordered_json::object();
  for (Tone tone : kTones) {
    for (Hue hue : kHues) {
      const std::string key = to_string(ToneHueCategory{tone, hue});
      counts[key] = tab.count(tone, hue);
      percent[key] = tab.percent(tone, hue);
    }
  }
  ordered_json marginals = ordered_json::object();
  for (Tone tone : kTones) {
    marginals[std::string(to_string(tone))] = {{"count", tab.count(tone)},
                                               {"percent", tab.percent(tone)}};
  }
  for (Hue hue : kHues) {
    marginals[std::string(to_string(hue))] = {{"count", tab.count(hue)},
                                              {"percent", tab.percent(hue)}};
  }
  return {{"total", tab.total()},
          {"counts", counts},
          {"percent", percent},
          {"marginals", marginals}};
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Plot geometry shared by both chart kinds.
constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 50.0;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

struct Range {
  double lo;
  double hi;

  double to_unit(double v) const { return hi > lo ? (v - lo) / (hi - lo) : 0.5; }
};

Range padded(double lo, double hi) {
  if (hi <= lo) return {lo - 1.0, hi + 1.0};
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

std::string svg_open(const std::string& title) {
  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      kWidth, kHeight, kWidth, kHeight);
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += fmt::format("<text x=\"{:.1f}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                   kWidth / 2, xml_escape(title));
  return s;
}

std::string svg_axes(const Range& x, const Range& y, const std::string& x_label,
                     const std::string& y_label) {
  std::string s;
  s += fmt::format(
      "<line class=\"axis\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n",
      kLeft, kTop + kPlotH, kLeft + kPlotW, kTop + kPlotH);
  s += fmt::format(
      "<line class=\"axis\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\"/>\n",
      kLeft, kTop, kLeft, kTop + kPlotH);
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = static_cast<double>(i) / kTicks;
    s += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"10\">{:.1f}</text>\n",
        kLeft + fx * kPlotW, kTop + kPlotH + 15, x.lo + fx * (x.hi - x.lo));
    s += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-size=\"10\">{:.1f}</text>\n",
        kLeft - 5, kTop + kPlotH - fx * kPlotH + 3, y.lo + fx * (y.hi - y.lo));
  }
  s += fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"12\">{}</text>\n",
      kLeft + kPlotW / 2, kHeight - 12, xml_escape(x_label));
  s += fmt::format(
      "<text x=\"15\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"12\" "
      "transform=\"rotate(-90 15 {:.2f})\">{}</text>\n",
      kTop + kPlotH / 2, kTop + kPlotH / 2, xml_escape(y_label));
  return s;
}

}  // namespace

AuditReport build_audit_report(std::span<const ScoreRecord> records,
                               const CategoryThresholds& thresholds,
                               std::span<const ScoreField> histogram_fields, int bins) {
  thresholds.validate();
  AuditReport report;
  report.thresholds = thresholds;
  report.crosstab = cross_tabulate(records, thresholds);
  const bool grouped = std::any_of(records.begin(), records.end(),
                                   [](const ScoreRecord& r) { return r.group.has_value(); });
  if (grouped) report.per_group = cross_tabulate_by_group(records, thresholds);
  for (ScoreField f : histogram_fields) report.histograms.push_back(histogram_report(records, f, bins));
  return report;
}

std::string report_json(const AuditReport& report) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["thresholds"] = {{"tone_threshold", report.thresholds.tone_threshold},
                     {"hue_threshold", report.thresholds.hue_threshold}};
  j["crosstab"] = crosstab_json(report.crosstab);
  if (!report.per_group.empty()) {
    ordered_json groups = ordered_json::object();
    for (const auto& [name, tab] : report.per_group) groups[name] = crosstab_json(tab);
    j["per_group"] = groups;
  }
  ordered_json hists = ordered_json::array();
  for (const Histogram& h : report.histograms) {
    hists.push_back({{"field", std::string(to_string(h.field))},
                     {"lo", h.lo},
                     {"hi", h.hi},
                     {"bin_width", h.bin_width},
                     {"counts", h.counts}});
  }
  j["histograms"] = hists;
  return j.dump(2) + "\n";
}

std::string crosstab_csv(const CrossTab& tab) {
  std::string s = "hue,light_count,dark_count,total_count,light_pct,dark_pct,total_pct\n";
  for (Hue hue : kHues) {
    s += fmt::format("{},{},{},{},{:.2f},{:.2f},{:.2f}\n", to_string(hue),
                     tab.count(Tone::kLight, hue), tab.count(Tone::kDark, hue), tab.count(hue),
                     tab.percent(Tone::kLight, hue), tab.percent(Tone::kDark, hue),
                     tab.percent(hue));
  }
  s += fmt::format("total,{},{},{},{:.2f},{:.2f},{:.2f}\n", tab.count(Tone::kLight),
                   tab.count(Tone::kDark), tab.total(), tab.percent(Tone::kLight),
                   tab.percent(Tone::kDark), tab.total() ? 100.0 : 0.0);
  return s;
}

std::string scatter_svg(std::span<const ScoreRecord> records, const CategoryThresholds& t) {
  std::vector<const ScoreRecord*> sorted;
  sorted.reserve(records.size());
  for (const ScoreRecord& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoreRecord* a, const ScoreRecord* b) { return a->id < b->id; });

  double h_lo = t.hue_threshold, h_hi = t.hue_threshold;
  double l_lo = t.tone_threshold, l_hi = t.tone_threshold;
  for (const ScoreRecord* r : sorted) {
    h_lo = std::min(h_lo, r->score.hue_deg);
    h_hi = std::max(h_hi, r->score.hue_deg);
    l_lo = std::min(l_lo, r->score.l_star);
    l_hi = std::max(l_hi, r->score.l_star);
  }
  const Range x = padded(h_lo, h_hi);
  const Range y = padded(l_lo, l_hi);
  auto px = [&](double v) { return kLeft + x.to_unit(v) * kPlotW; };
  auto py = [&](double v) { return kTop + kPlotH - y.to_unit(v) * kPlotH; };

  std::string s = svg_open("Skin tone vs skin hue");
  s += svg_axes(x, y, "hue angle h* (deg)", "perceptual lightness L*");
  s += fmt::format(
      "<line class=\"threshold\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
      "stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n",
      kLeft, py(t.tone_threshold), kLeft + kPlotW, py(t.tone_threshold));
  s += fmt::format(
      "<line class=\"threshold\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
      "stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n",
      px(t.hue_threshold), kTop, px(t.hue_threshold), kTop + kPlotH);
  for (const ScoreRecord* r : sorted) {
    s += fmt::format(
        "<circle class=\"point\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"steelblue\">"
        "<title>{}</title></circle>\n",
        px(r->score.hue_deg), py(r->score.l_star), xml_escape(r->id));
  }
  s += "</svg>\n";
  return s;
}

std::string histogram_svg(const Histogram& h) {
  const std::size_t peak = h.counts.empty() ? 0 : *std::max_element(h.counts.begin(), h.counts.end());
  const double x_hi = h.bin_width > 0.0 ? h.hi : h.lo + 1.0;
  const Range x{h.lo, x_hi};
  const Range y{0.0, peak > 0 ? static_cast<double>(peak) : 1.0};
  const double bar_w = kPlotW / static_cast<double>(std::max<std::size_t>(h.counts.size(), 1));

  std::string s = svg_open(fmt::format("Histogram of {}", to_string(h.field)));
  s += svg_axes(x, y, std::string(to_string(h.field)), "count");
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double bar_h = y.to_unit(static_cast<double>(h.counts[i])) * kPlotH;
    s += fmt::format(
        "<rect class=\"bar\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
        "fill=\"steelblue\" stroke=\"white\"><title>{}</title></rect>\n",
        kLeft + static_cast<double>(i) * bar_w, kTop + kPlotH - bar_h, bar_w, bar_h, h.counts[i]);
  }
  s += "</svg>\n";
  return s;
}

void print_crosstab(std::ostream& out, const CrossTab& tab) {
  out << fmt::format("{:<8}{:>10}{:>10}{:>10}\n", "", "Light", "Dark", "Total");
  for (Hue hue : kHues) {
    out << fmt::format("{:<8}{:>10.2f}{:>10.2f}{:>10.2f}\n", hue == Hue::kRed ? "Red" : "Yellow",
                       tab.percent(Tone::kLight, hue), tab.percent(Tone::kDark, hue),
                       tab.percent(hue));
  }
  out << fmt::format("{:<8}{:>10.2f}{:>10.2f}{:>10.2f}\n", "Total", tab.percent(Tone::kLight),
                     tab.percent(Tone::kDark), tab.total() ? 100.0 : 0.0);
  out << fmt::format("(n = {})\n", tab.total());
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::kIoFailure, "short write to " + path.string());
}

std::vector<std::filesystem::path> emit_report(const std::filesystem::path& out_dir,
                                               const AuditReport& report,
                                               std::span<const ScoreRecord> records,
                                               const ReportFormats& formats) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + out_dir.string());

  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& name, const std::string& content) {
    const auto path = out_dir / name;
    write_text_file(path, content);
    written.push_back(path);
  };
  if (formats.json) put("report.json", report_json(report));
  if (formats.csv) put("crosstab.csv", crosstab_csv(report.crosstab));
  if (formats.svg) {
    put("scatter.svg", scatter_svg(records, report.thresholds));
    for (const Histogram& h : report.histograms) {
      put(fmt::format("hist_{}.svg", to_string(h.field)), histogram_svg(h));
    }
  }
  return written;
}

}  // namespace skintone
