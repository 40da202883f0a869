#include "skintone/score_io.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "skintone/csv.hpp"
#include "skintone/error.hpp"

namespace skintone {

using ordered_json = nlohmann::ordered_json;

std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
  const csv::Table table = csv::Table::read(path);
  table.require({"id", "image_path", "mask_path"});
  const std::filesystem::path base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path q(p);
    return q.is_relative() ? base / q : q;
  };

  std::vector<ManifestRow> rows;
  std::set<std::string> seen;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    ManifestRow row;
    row.id = table.at(r, "id");
    const std::string where = path.string() + ":" + std::to_string(table.line_of(r));
    if (row.id.empty()) throw Error(ErrorCode::kParseError, where + ": empty id");
    if (!seen.insert(row.id).second) {
      throw Error(ErrorCode::kParseError, where + ": duplicate id " + row.id);
    }
    row.image_path = resolve(table.at(r, "image_path"));
    row.mask_path = resolve(table.at(r, "mask_path"));
    if (auto g = table.get(r, "group"); g && !g->empty()) row.group = *g;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string score_to_jsonl(const ScoreRecord& record) {
  const SkinColorScore& s = record.score;
  ordered_json j;
  j["id"] = record.id;
  if (record.group) j["group"] = *record.group;
  j["l_star"] = s.l_star;
  j["hue_deg"] = s.hue_deg;
  j["ita_deg"] = s.ita_deg;
  j["skin_pixel_count"] = s.skin_pixel_count;
  if (record.rms_contrast) j["rms_contrast"] = *record.rms_contrast;
  ordered_json clusters = ordered_json::array();
  for (const ClusterSummary& c : s.clusters) {
    ordered_json cj;
    cj["pixel_count"] = c.pixel_count;
    cj["chromatic_count"] = c.chromatic_count;
    cj["mode_l"] = c.mode_l;
    cj["mode_h"] = c.mode_h ? ordered_json(*c.mode_h) : ordered_json(nullptr);
    cj["mode_b"] = c.mode_b;
    cj["centroid"] = {c.centroid.l_star, c.centroid.a_star, c.centroid.b_star};
    cj["kept"] = c.kept;
    cj["weight"] = c.weight;
    clusters.push_back(std::move(cj));
  }
  j["clusters"] = std::move(clusters);
  return j.dump();
}

ScoreRecord score_from_jsonl(std::string_view line) {
  try {
    const ordered_json j = ordered_json::parse(line);
    ScoreRecord r;
    r.id = j.at("id").get<std::string>();
    if (j.contains("group") && !j["group"].is_null()) r.group = j["group"].get<std::string>();
    r.score.l_star = j.at("l_star").get<double>();
    r.score.hue_deg = j.at("hue_deg").get<double>();
    r.score.ita_deg = j.value("ita_deg", 0.0);
    r.score.skin_pixel_count = j.value("skin_pixel_count", std::size_t{0});
    if (j.contains("rms_contrast")) r.rms_contrast = j["rms_contrast"].get<double>();
    if (j.contains("clusters")) {
      for (const auto& cj : j["clusters"]) {
        ClusterSummary c;
        c.pixel_count = cj.at("pixel_count").get<std::size_t>();
        c.chromatic_count = cj.value("chromatic_count", std::size_t{0});
        c.mode_l = cj.at("mode_l").get<double>();
        if (cj.contains("mode_h") && !cj["mode_h"].is_null()) c.mode_h = cj["mode_h"].get<double>();
        c.mode_b = cj.value("mode_b", 0.0);
        if (cj.contains("centroid")) {
          const auto& ce = cj["centroid"];
          c.centroid = {ce.at(0).get<double>(), ce.at(1).get<double>(), ce.at(2).get<double>()};
        }
        c.kept = cj.value("kept", false);
        c.weight = cj.value("weight", 0.0);
        r.score.clusters.push_back(c);
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("bad score record: ") + e.what());
  }
}

std::vector<ScoreRecord> read_scores_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::vector<ScoreRecord> records;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(score_from_jsonl(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError,
                  path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen.insert(records.back().id).second) {
      throw Error(ErrorCode::kParseError, path.string() + ":" + std::to_string(line_no) +
                                              ": duplicate id " + records.back().id);
    }
  }
  return records;
}

}  // namespace skintone
