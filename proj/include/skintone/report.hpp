#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "skintone/audit.hpp"

namespace skintone {

inline constexpr int kReportSchemaVersion = 1;

struct ReportFormats {
  bool json = true;
  bool csv = true;
  bool svg = true;
};

struct AuditReport {
  CategoryThresholds thresholds;
  CrossTab crosstab;
  std::map<std::string, CrossTab> per_group;  // empty when records carry no group
  std::vector<Histogram> histograms;
};

AuditReport build_audit_report(std::span<const ScoreRecord> records,
                               const CategoryThresholds& thresholds,
                               std::span<const ScoreField> histogram_fields, int bins);

std::string report_json(const AuditReport& report);
std::string crosstab_csv(const CrossTab& tab);

// Scatter of l_star against hue_deg with one dashed line per threshold.
// Points are drawn in id order.
std::string scatter_svg(std::span<const ScoreRecord> records, const CategoryThresholds& t);
std::string histogram_svg(const Histogram& histogram);

// Human-readable 2x2 percentage table (two decimals).
void print_crosstab(std::ostream& out, const CrossTab& tab);

/// Writes report.json, crosstab.csv, scatter.svg and hist_<field>.svg into
/// `out_dir` (created if needed) and returns the written paths. Output is
/// byte-identical for identical input. Throws Error{kIoFailure}.
std::vector<std::filesystem::path> emit_report(const std::filesystem::path& out_dir,
                                               const AuditReport& report,
                                               std::span<const ScoreRecord> records,
                                               const ReportFormats& formats = {});

// Shared helper: write `content` to `path`, throwing kIoFailure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace skintone
