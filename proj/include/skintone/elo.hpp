#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace skintone::elo {

struct EloConfig {
  double m = 400.0;     // logistic scale: a gap of m points means 10:1 odds
  double k = 16.0;      // update gain
  double init = 1400.0;

  void validate() const;
};

struct EloState {
  std::map<std::string, double> ratings;
  std::map<std::string, std::size_t> match_count;
};

/// Probability that a player rated r_i beats one rated r_j:
/// 1 / (1 + 10^((r_j - r_i) / m)).
double expected_score(double r_i, double r_j, double m);

enum class Winner { kFirst, kSecond };

/// One zero-sum game update; the pair's rating total is preserved.
std::pair<double, double> update(double r_i, double r_j, Winner winner, const EloConfig& cfg);

struct Member {
  std::string id;
  std::string group;
};

struct Pair {
  std::size_t pair_id = 0;
  std::string id_top;
  std::string id_bottom;
};

struct PairManifest {
  std::vector<Pair> pairs;
  std::uint64_t seed = 0;
  std::size_t per_combo = 0;
  std::size_t duplicate_pairs = 0;  // unordered pairs drawn more than once
};

enum class Combinations {
  kCrossGroup,     // every unordered pair of distinct groups
  kWithSameGroup,  // additionally each group against itself
};

/// Draws `per_combo` pairs for every unordered group combination, with
/// replacement, uniformly over members, never pairing a member with itself,
/// and randomizes which face goes on top. G groups give G(G-1)/2
/// combinations, or G(G+1)/2 with same-group ones. Groups are visited in
/// lexicographic order and members in input order.
/// Throws Error{kInsufficientGroupSize} when a same-group combination has
/// fewer than two members, and Error{kInvalidArgument} for duplicate ids or
/// fewer than two groups in cross-group mode.
PairManifest generate_pairs(std::span<const Member> population, std::size_t per_combo,
                            std::uint64_t seed,
                            Combinations combinations = Combinations::kCrossGroup);

struct Outcome {
  std::size_t pair_id = 0;
  std::string winner_id;
};

/// Replays outcomes in manifest order starting every id of `population` at
/// cfg.init. Throws Error{kOutcomeMismatch} when outcomes do not cover each
/// pair exactly once or name a winner outside the pair, and
/// Error{kUnknownGroup} when a pair references an id outside the population.
EloState run_tournament(std::span<const std::string> population, const PairManifest& manifest,
                        std::span<const Outcome> outcomes, const EloConfig& cfg);

struct GroupStats {
  double mean_rating = 0.0;
  std::size_t members = 0;
};

struct GroupPreference {
  std::map<std::string, GroupStats> groups;
  double m = 400.0;

  // 100 * expected_score(mean(a), mean(b), m); throws Error{kUnknownGroup}.
  double preference_percent(const std::string& a, const std::string& b) const;
};

/// Throws Error{kUnknownGroup} when a rated id has no group.
GroupPreference group_preference(const EloState& state,
                                 const std::map<std::string, std::string>& group_of,
                                 const EloConfig& cfg);

std::map<std::string, std::vector<double>> ratings_by_group(
    const EloState& state, const std::map<std::string, std::string>& group_of);

// Built-in deciders standing in for an audited selection system.
std::vector<Outcome> decide_random(const PairManifest& manifest, std::uint64_t seed);
// Picks the face with the higher L*; ties go to the top face. Throws
// Error{kMissingScore} for an id without a score.
std::vector<Outcome> decide_prefers_lighter(const PairManifest& manifest,
                                            const std::map<std::string, double>& l_star_of);

// CSV surfaces: `pair_id,id_top,id_bottom`, `pair_id,winner_id` and
// `id,group,rating,matches`.
std::string manifest_csv(const PairManifest& manifest);
PairManifest read_pair_manifest(const std::filesystem::path& path);
std::string outcomes_csv(std::span<const Outcome> outcomes);
std::vector<Outcome> read_outcomes(const std::filesystem::path& path);
std::string ratings_csv(const EloState& state, const std::map<std::string, std::string>& group_of);

}  // namespace skintone::elo
