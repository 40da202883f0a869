#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skintone/audit.hpp"

namespace skintone {

struct ManifestRow {
  std::string id;
  std::filesystem::path image_path;
  std::filesystem::path mask_path;
  std::optional<std::string> group;
};

// Reads `id,image_path,mask_path[,group]`. Relative paths are resolved
// against the manifest's directory. Throws kParseError on a missing column,
// an empty or duplicate id.
std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);

// One JSON object on a single line, no trailing newline.
std::string score_to_jsonl(const ScoreRecord& record);
ScoreRecord score_from_jsonl(std::string_view line);

// Blank lines are skipped. Throws kParseError with the offending line number.
std::vector<ScoreRecord> read_scores_jsonl(const std::filesystem::path& path);

}  // namespace skintone
