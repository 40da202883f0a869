#include "cli.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include <nlohmann/json.hpp>

#include "skintone/audit.hpp"
#include "skintone/colorimetry.hpp"
#include "skintone/csv.hpp"
#include "skintone/disagg.hpp"
#include "skintone/elo.hpp"
#include "skintone/error.hpp"
#include "skintone/image.hpp"
#include "skintone/report.hpp"
#include "skintone/score_io.hpp"
#include "skintone/skin_extraction.hpp"
#include "skintone/stats.hpp"

namespace skintone::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 20230613;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
    case ErrorCode::kMissingScore:
    case ErrorCode::kOutcomeMismatch:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kIoFailure:
    case ErrorCode::kEmptyInput:
    case ErrorCode::kInsufficientGroupSize:
    case ErrorCode::kUnknownGroup:
      return kExitUsage;
    default:
      return kExitDataFailure;
  }
}

// ---------------------------------------------------------------- convert

struct ConvertOptions {
  std::vector<std::string> colors;
  std::string file;
};

Srgb8 parse_color(const std::string& text) {
  auto channel = [&](std::string_view s, int base) {
    int v = -1;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 0 || v > 255) {
      throw Error(ErrorCode::kParseError, "bad color '" + text + "'");
    }
    return static_cast<std::uint8_t>(v);
  };
  if (!text.empty() && text[0] == '#') {
    if (text.size() != 7) throw Error(ErrorCode::kParseError, "bad color '" + text + "'");
    const std::string_view s(text);
    return {channel(s.substr(1, 2), 16), channel(s.substr(3, 2), 16), channel(s.substr(5, 2), 16)};
  }
  const std::vector<std::string> parts = csv::split_line(text);
  if (parts.size() != 3) throw Error(ErrorCode::kParseError, "bad color '" + text + "'");
  return {channel(parts[0], 10), channel(parts[1], 10), channel(parts[2], 10)};
}

std::string convert_json(const Srgb8& c) {
  const CieLab lab = srgb_to_lab(c);
  ordered_json j;
  j["r"] = c.r;
  j["g"] = c.g;
  j["b"] = c.b;
  j["l_star"] = lab.l_star;
  j["a_star"] = lab.a_star;
  j["b_star"] = lab.b_star;
  j["hue_deg"] = has_defined_hue(lab) ? ordered_json(hue_angle(lab).degrees) : ordered_json();
  try {
    const ItaDeg angle = ita(lab);
    j["ita_deg"] = angle.degrees;
    j["fitzpatrick_band"] = to_string(fitzpatrick_band(angle));
  } catch (const Error&) {
    j["ita_deg"] = nullptr;
    j["fitzpatrick_band"] = nullptr;
  }
  return j.dump();
}

int cmd_convert(const ConvertOptions& o, std::ostream& out) {
  std::vector<Srgb8> colors;
  for (const std::string& c : o.colors) colors.push_back(parse_color(c));
  if (!o.file.empty()) {
    const csv::Table t = csv::Table::read(o.file);
    t.require({"r", "g", "b"});
    for (std::size_t r = 0; r < t.rows(); ++r) {
      colors.push_back(parse_color(t.at(r, "r") + "," + t.at(r, "g") + "," + t.at(r, "b")));
    }
  }
  if (colors.empty()) throw Error(ErrorCode::kInvalidArgument, "no colors given");
  for (const Srgb8& c : colors) out << convert_json(c) << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------ score

struct ScoreOptions {
  std::string manifest;
  std::string out;
  std::string errors;
  ExtractionConfig cfg;
  unsigned jobs = 1;
  bool strict = false;
  bool contrast = false;
};

using ScoreOutcome = std::variant<ScoreRecord, std::string>;

ScoreOutcome score_row(const ManifestRow& row, const ScoreOptions& o) {
  try {
    const RgbImage image = read_png_rgb(row.image_path);
    const SkinMask mask = read_png_mask(row.mask_path);
    ScoreRecord rec;
    rec.id = row.id;
    rec.group = row.group;
    rec.score = score_image(image, mask, o.cfg);
    if (o.contrast) rec.rms_contrast = rms_contrast(image);
    return rec;
  } catch (const Error& e) {
    return std::string(e.what());
  }
}

int cmd_score(const ScoreOptions& o, std::ostream& out, std::ostream& err) {
  o.cfg.validate();
  std::vector<ManifestRow> rows;
  try {
    rows = read_manifest(o.manifest);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::vector<ScoreOutcome> results(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) results[i] = score_row(rows[i], o);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(rows.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  std::string scores;
  std::string errors;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (const auto* rec = std::get_if<ScoreRecord>(&results[i])) {
      scores += score_to_jsonl(*rec) + "\n";
    } else {
      ++failures;
      const std::string& msg = std::get<std::string>(results[i]);
      errors += ordered_json{{"id", rows[i].id}, {"error", msg}}.dump() + "\n";
      err << "warning: " << rows[i].id << ": " << msg << '\n';
    }
  }
  if (o.strict && failures > 0) {
    err << "error: " << failures << " image(s) failed in strict mode\n";
    return kExitDataFailure;
  }
  write_text_file(o.out, scores);
  write_text_file(o.errors.empty() ? o.out + ".errors.jsonl" : o.errors, errors);
  out << fmt::format("scored {} of {} image(s)", rows.size() - failures, rows.size());
  if (failures > 0) out << fmt::format(", {} failure(s) logged", failures);
  out << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------ audit

struct AuditOptions {
  std::string scores;
  std::string out_dir;
  CategoryThresholds thresholds;
  int bins = 20;
  std::vector<std::string> fields = {"l_star", "hue_deg"};
  std::vector<std::string> formats = {"json", "csv", "svg"};
};

int cmd_audit(const AuditOptions& o, std::ostream& out) {
  const std::vector<ScoreRecord> records = read_scores_jsonl(o.scores);
  std::vector<ScoreField> fields;
  for (const std::string& f : o.fields) {
    const auto parsed = parse_score_field(f);
    if (!parsed) throw Error(ErrorCode::kInvalidArgument, "unknown field " + f);
    fields.push_back(*parsed);
  }
  ReportFormats formats{false, false, false};
  for (const std::string& f : o.formats) {
    if (f == "json") formats.json = true;
    else if (f == "csv") formats.csv = true;
    else if (f == "svg") formats.svg = true;
    else throw Error(ErrorCode::kInvalidArgument, "unknown format " + f);
  }
  const AuditReport report = build_audit_report(records, o.thresholds, fields, o.bins);
  emit_report(o.out_dir, report, records, formats);
  print_crosstab(out, report.crosstab);
  return kExitOk;
}

// -------------------------------------------------------------------- elo

std::map<std::string, std::string> read_population(const std::string& path,
                                                   std::vector<std::string>& ids) {
  const csv::Table t = csv::Table::read(path);
  t.require({"id", "group"});
  std::map<std::string, std::string> group_of;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const std::string& id = t.at(r, "id");
    if (!group_of.emplace(id, t.at(r, "group")).second) {
      throw Error(ErrorCode::kParseError, path + ": duplicate id " + id);
    }
    ids.push_back(id);
  }
  return group_of;
}

struct PairgenOptions {
  std::string population;
  std::size_t per_combo = 500;
  std::uint64_t seed = kDefaultSeed;
  bool same_group = false;
  std::string out;
};

int cmd_pairgen(const PairgenOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> ids;
  const auto group_of = read_population(o.population, ids);
  std::vector<elo::Member> members;
  for (const std::string& id : ids) members.push_back({id, group_of.at(id)});
  const elo::PairManifest manifest = elo::generate_pairs(
      members, o.per_combo, o.seed,
      o.same_group ? elo::Combinations::kWithSameGroup : elo::Combinations::kCrossGroup);
  write_text_file(o.out, elo::manifest_csv(manifest));
  if (manifest.duplicate_pairs > 0) {
    err << fmt::format("warning: {} duplicate unordered pair(s) sampled\n",
                       manifest.duplicate_pairs);
  }
  out << fmt::format("wrote {} pairs\n", manifest.pairs.size());
  return kExitOk;
}

struct DecideOptions {
  std::string decider = "random";
  std::string pairs;
  std::string scores;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

int cmd_decide(const DecideOptions& o, std::ostream& out) {
  const elo::PairManifest manifest = elo::read_pair_manifest(o.pairs);
  std::vector<elo::Outcome> outcomes;
  if (o.decider == "random") {
    outcomes = elo::decide_random(manifest, o.seed);
  } else if (o.decider == "prefers-lighter") {
    if (o.scores.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "prefers-lighter needs --scores");
    }
    std::map<std::string, double> l_star_of;
    for (const ScoreRecord& r : read_scores_jsonl(o.scores)) l_star_of[r.id] = r.score.l_star;
    outcomes = elo::decide_prefers_lighter(manifest, l_star_of);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown decider " + o.decider);
  }
  write_text_file(o.out, elo::outcomes_csv(outcomes));
  out << fmt::format("wrote {} outcomes\n", outcomes.size());
  return kExitOk;
}

struct RateOptions {
  std::string pairs;
  std::string outcomes;
  std::string population;
  std::string scores;
  std::string group_by = "population";
  CategoryThresholds thresholds;
  elo::EloConfig cfg;
  std::string out;
  std::string summary_out;
};

std::string category_group(const SkinColorScore& s, const CategoryThresholds& t,
                           const std::string& mode) {
  const ToneHueCategory c = categorize(s, t);
  if (mode == "tone") return std::string(to_string(c.tone));
  if (mode == "hue") return std::string(to_string(c.hue));
  return to_string(c);
}

int cmd_rate(const RateOptions& o, std::ostream& out) {
  o.cfg.validate();
  std::vector<std::string> ids;
  std::map<std::string, std::string> group_of;
  if (o.group_by == "population") {
    if (o.population.empty()) throw Error(ErrorCode::kInvalidArgument, "rate needs --population");
    group_of = read_population(o.population, ids);
  } else if (o.group_by == "tone" || o.group_by == "hue" || o.group_by == "tone-hue") {
    if (o.scores.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "--group-by " + o.group_by + " needs --scores");
    }
    o.thresholds.validate();
    std::map<std::string, std::string> category_of;
    for (const ScoreRecord& r : read_scores_jsonl(o.scores)) {
      category_of[r.id] = category_group(r.score, o.thresholds, o.group_by);
    }
    if (!o.population.empty()) {
      read_population(o.population, ids);
      for (const std::string& id : ids) {
        const auto it = category_of.find(id);
        if (it == category_of.end()) throw Error(ErrorCode::kMissingScore, "no score for " + id);
        group_of[id] = it->second;
      }
    } else {
      for (const auto& [id, g] : category_of) ids.push_back(id);
      group_of = std::move(category_of);
    }
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown --group-by " + o.group_by);
  }

  const elo::PairManifest manifest = elo::read_pair_manifest(o.pairs);
  const std::vector<elo::Outcome> outcomes = elo::read_outcomes(o.outcomes);
  const elo::EloState state = elo::run_tournament(ids, manifest, outcomes, o.cfg);
  if (!o.out.empty()) write_text_file(o.out, elo::ratings_csv(state, group_of));

  ordered_json summary;
  summary["pairs"] = manifest.pairs.size();
  const elo::GroupPreference pref = elo::group_preference(state, group_of, o.cfg);
  out << fmt::format("{:<16}{:>8}{:>14}\n", "group", "n", "mean rating");
  ordered_json groups = ordered_json::object();
  for (const auto& [name, g] : pref.groups) {
    out << fmt::format("{:<16}{:>8}{:>14.3f}\n", name, g.members, g.mean_rating);
    groups[name] = {{"members", g.members}, {"mean_rating", g.mean_rating}};
  }
  summary["groups"] = groups;

  ordered_json prefs = ordered_json::array();
  ordered_json tests = ordered_json::array();
  if (pref.groups.size() >= 2) {
    out << "\npreference (row over column, %)\n";
    for (const auto& [a, ga] : pref.groups) {
      for (const auto& [b, gb] : pref.groups) {
        if (a >= b) continue;
        const double p = pref.preference_percent(a, b);
        out << fmt::format("  {} over {}: {:.2f}%\n", a, b, p);
        prefs.push_back({{"group_a", a}, {"group_b", b}, {"percent", p}});
      }
    }
    const auto by_group = elo::ratings_by_group(state, group_of);
    const bool testable = std::all_of(by_group.begin(), by_group.end(),
                                      [](const auto& kv) { return kv.second.size() >= 2; });
    if (testable) {
      const stats::PairwiseTests pt = stats::pairwise_group_tests(by_group);
      out << fmt::format("\nWelch t-tests (Bonferroni m = {})\n", pt.tests.size());
      for (const stats::PairTest& t : pt.tests) {
        out << fmt::format("  {} vs {}: t = {:.4f}, df = {:.3f}, p = {:.3g}, p_adj = {:.3g}\n",
                           t.group_a, t.group_b, t.result.t, t.result.df, t.result.p,
                           t.p_adjusted);
        tests.push_back({{"group_a", t.group_a},
                         {"group_b", t.group_b},
                         {"t", t.result.t},
                         {"df", t.result.df},
                         {"p", t.result.p},
                         {"p_adjusted", t.p_adjusted}});
      }
    } else {
      out << "\nWelch t-tests skipped: every group needs at least two rated members\n";
    }
  }
  summary["preferences"] = prefs;
  summary["tests"] = tests;
  if (!o.summary_out.empty()) write_text_file(o.summary_out, summary.dump(2) + "\n");
  return kExitOk;
}

// ----------------------------------------------------------------- disagg

struct DisaggOptions {
  std::string predictions;
  std::string scores;
  CategoryThresholds thresholds;
  std::string split;
  std::string out_dir;
};

std::string cell_text(const AccuracyCell& c) {
  const auto acc = c.accuracy();
  return acc ? fmt::format("{:.2f}", *acc) : std::string("-");
}

int cmd_disagg(const DisaggOptions& o, std::ostream& out) {
  o.thresholds.validate();
  const std::vector<PredictionRecord> predictions = read_predictions(o.predictions);
  const std::vector<ScoreRecord> scores = read_scores_jsonl(o.scores);
  const std::vector<JoinedRecord> joined = join_scores(predictions, scores, o.thresholds);
  std::optional<std::string> split;
  if (!o.split.empty()) split = o.split;
  const DisaggTable table = disaggregate(joined, split);

  if (!o.out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(o.out_dir, ec);
    if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + o.out_dir);
    write_text_file(fs::path(o.out_dir) / "disagg.json", disagg_json(table));
    write_text_file(fs::path(o.out_dir) / "disagg.csv", disagg_csv(table));
  }

  if (split) {
    out << fmt::format("{:<14}{:>8}{:>10}{:>10}{:>10}\n", "cell", "n", "positive", "negative",
                       "all");
  } else {
    out << fmt::format("{:<14}{:>8}{:>10}\n", "cell", "n", "all");
  }
  for (CellKey key : kAllCells) {
    const SplitCell& c = table.cell(key);
    if (split) {
      out << fmt::format("{:<14}{:>8}{:>10}{:>10}{:>10}\n", to_string(key), c.all.total,
                         cell_text(c.positive), cell_text(c.negative), cell_text(c.all));
    } else {
      out << fmt::format("{:<14}{:>8}{:>10}\n", to_string(key), c.all.total, cell_text(c.all));
    }
  }
  return kExitOk;
}

// ------------------------------------------------------------------ stats

struct StatsOptions {
  std::string csv_path;
  std::string value_column;
  std::string group_column;
  std::string out;
};

int cmd_stats(const StatsOptions& o, std::ostream& out) {
  const csv::Table t = csv::Table::read(o.csv_path);
  t.require({o.value_column, o.group_column});
  std::map<std::string, std::vector<double>> values;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const std::string& text = t.at(r, o.value_column);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw Error(ErrorCode::kParseError,
                  o.csv_path + ":" + std::to_string(t.line_of(r)) + ": bad number '" + text + "'");
    }
    values[t.at(r, o.group_column)].push_back(v);
  }
  const stats::PairwiseTests pt = stats::pairwise_group_tests(values);
  ordered_json j = ordered_json::array();
  out << fmt::format("Welch t-tests (Bonferroni m = {})\n", pt.tests.size());
  for (const stats::PairTest& test : pt.tests) {
    const stats::TTestResult& r = test.result;
    out << fmt::format(
        "  {} (n={}, mean={:.4f}) vs {} (n={}, mean={:.4f}): t = {:.4f}, df = {:.3f}, "
        "p = {:.4g}, p_adj = {:.4g}\n",
        test.group_a, r.n_a, r.mean_a, test.group_b, r.n_b, r.mean_b, r.t, r.df, r.p,
        test.p_adjusted);
    j.push_back({{"group_a", test.group_a},
                 {"group_b", test.group_b},
                 {"n_a", r.n_a},
                 {"n_b", r.n_b},
                 {"mean_a", r.mean_a},
                 {"mean_b", r.mean_b},
                 {"t", r.t},
                 {"df", r.df},
                 {"p", r.p},
                 {"p_adjusted", test.p_adjusted}});
  }
  if (!o.out.empty()) write_text_file(o.out, j.dump(2) + "\n");
  return kExitOk;
}

void add_threshold_flags(CLI::App* app, CategoryThresholds& t) {
  app->add_option("--tone-threshold", t.tone_threshold, "L* above which a score is light")
      ->capture_default_str();
  app->add_option("--hue-threshold", t.hue_threshold, "h* above which a score is yellow")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Skin tone and hue measurement with fairness-audit reports", "skintone"};
  app.require_subcommand(1);

  ConvertOptions convert;
  auto* c_convert = app.add_subcommand("convert", "Convert sRGB colors to L*, a*, b*, h* and ITA");
  c_convert->add_option("colors", convert.colors, "Colors as R,G,B or #RRGGBB");
  c_convert->add_option("--file", convert.file, "CSV with r,g,b columns");

  ScoreOptions score;
  auto* c_score = app.add_subcommand("score", "Score every image of a manifest");
  c_score->add_option("--manifest", score.manifest, "CSV id,image_path,mask_path[,group]")
      ->required();
  c_score->add_option("--out", score.out, "Output JSON-Lines file")->required();
  c_score->add_option("--errors", score.errors, "Per-image failure log (default <out>.errors.jsonl)");
  c_score->add_option("--k", score.cfg.k, "Clusters per image")->capture_default_str();
  c_score->add_option("--keep-top", score.cfg.keep_top, "Clusters kept by highest L*")
      ->capture_default_str();
  c_score->add_option("--seed", score.cfg.seed, "Clustering seed")->capture_default_str();
  c_score->add_option("--max-iters", score.cfg.max_iters, "Lloyd iteration cap")
      ->capture_default_str();
  c_score->add_option("--restarts", score.cfg.restarts, "k-means++ restarts")
      ->capture_default_str();
  c_score->add_option("--jobs", score.jobs, "Images scored in parallel")->capture_default_str();
  c_score->add_flag("--strict", score.strict, "Fail with exit 1 if any image fails");
  c_score->add_flag("--contrast", score.contrast, "Also record whole-image RMS contrast");

  AuditOptions audit;
  auto* c_audit = app.add_subcommand("audit", "Cross-tabs, histograms and scatter from scores");
  c_audit->add_option("--scores", audit.scores, "Scores JSON-Lines file")->required();
  c_audit->add_option("--out-dir", audit.out_dir, "Report directory")->required();
  add_threshold_flags(c_audit, audit.thresholds);
  c_audit->add_option("--bins", audit.bins, "Histogram bins")->capture_default_str();
  c_audit->add_option("--fields", audit.fields, "Histogram fields (l_star, hue_deg, ita_deg)")
      ->delimiter(',')
      ->capture_default_str();
  c_audit->add_option("--formats", audit.formats, "Outputs among json, csv, svg")
      ->delimiter(',')
      ->capture_default_str();

  auto* c_elo = app.add_subcommand("elo", "Pairwise-preference audit");
  c_elo->require_subcommand(1);

  PairgenOptions pairgen;
  auto* c_pairgen = c_elo->add_subcommand("pairgen", "Sample a balanced pair manifest");
  c_pairgen->add_option("--population", pairgen.population, "CSV with id,group columns")
      ->required();
  c_pairgen->add_option("--per-combo", pairgen.per_combo, "Pairs per group combination")
      ->capture_default_str();
  c_pairgen->add_option("--seed", pairgen.seed, "Sampling seed")->capture_default_str();
  c_pairgen->add_flag("--same-group", pairgen.same_group,
                      "Also pair each group with itself");
  c_pairgen->add_option("--out", pairgen.out, "Pair manifest CSV")->required();

  DecideOptions decide;
  auto* c_decide = c_elo->add_subcommand("decide-stub", "Decide pairs with a built-in stub");
  c_decide->add_option("decider", decide.decider, "random or prefers-lighter")
      ->check(CLI::IsMember({"random", "prefers-lighter"}))
      ->capture_default_str();
  c_decide->add_option("--pairs", decide.pairs, "Pair manifest CSV")->required();
  c_decide->add_option("--scores", decide.scores, "Scores JSON-Lines (prefers-lighter)");
  c_decide->add_option("--seed", decide.seed, "Seed for the random decider")->capture_default_str();
  c_decide->add_option("--out", decide.out, "Outcomes CSV")->required();

  RateOptions rate;
  auto* c_rate = c_elo->add_subcommand("rate", "Replay outcomes into Elo ratings");
  c_rate->add_option("--pairs", rate.pairs, "Pair manifest CSV")->required();
  c_rate->add_option("--outcomes", rate.outcomes, "Outcomes CSV")->required();
  c_rate->add_option("--population", rate.population, "CSV with id,group columns");
  c_rate->add_option("--scores", rate.scores, "Scores JSON-Lines for category grouping");
  c_rate->add_option("--group-by", rate.group_by, "population, tone, hue or tone-hue")
      ->check(CLI::IsMember({"population", "tone", "hue", "tone-hue"}))
      ->capture_default_str();
  add_threshold_flags(c_rate, rate.thresholds);
  c_rate->add_option("--m", rate.cfg.m, "Elo logistic scale")->capture_default_str();
  c_rate->add_option("--k", rate.cfg.k, "Elo update gain")->capture_default_str();
  c_rate->add_option("--init", rate.cfg.init, "Initial rating")->capture_default_str();
  c_rate->add_option("--out", rate.out, "Ratings CSV");
  c_rate->add_option("--summary-out", rate.summary_out, "Group summary JSON");

  DisaggOptions disagg;
  auto* c_disagg = app.add_subcommand("disagg", "Accuracy by skin tone, hue and intersection");
  c_disagg->add_option("--predictions", disagg.predictions, "CSV id,predicted,actual")->required();
  c_disagg->add_option("--scores", disagg.scores, "Scores JSON-Lines file")->required();
  add_threshold_flags(c_disagg, disagg.thresholds);
  c_disagg->add_option("--split", disagg.split, "Positive class label for per-class columns");
  c_disagg->add_option("--out-dir", disagg.out_dir, "Directory for disagg.json / disagg.csv");

  StatsOptions st;
  auto* c_stats = app.add_subcommand("stats", "Pairwise Welch t-tests on CSV columns");
  c_stats->add_option("--csv", st.csv_path, "Input CSV")->required();
  c_stats->add_option("--value", st.value_column, "Numeric column")->required();
  c_stats->add_option("--group", st.group_column, "Group column")->required();
  c_stats->add_option("--out", st.out, "JSON output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (c_convert->parsed()) return cmd_convert(convert, out);
    if (c_score->parsed()) return cmd_score(score, out, err);
    if (c_audit->parsed()) return cmd_audit(audit, out);
    if (c_pairgen->parsed()) return cmd_pairgen(pairgen, out, err);
    if (c_decide->parsed()) return cmd_decide(decide, out);
    if (c_rate->parsed()) return cmd_rate(rate, out);
    if (c_disagg->parsed()) return cmd_disagg(disagg, out);
    if (c_stats->parsed()) return cmd_stats(st, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace skintone::cli
