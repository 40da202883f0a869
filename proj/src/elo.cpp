#include "skintone/elo.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iterator>
#include <set>

#include "skintone/csv.hpp"
#include "skintone/error.hpp"
#include "skintone/random.hpp"

namespace skintone::elo {

void EloConfig::validate() const {
  if (!(m > 0.0)) throw Error(ErrorCode::kInvalidArgument, "Elo scale m must be > 0");
  if (!(k > 0.0)) throw Error(ErrorCode::kInvalidArgument, "Elo gain k must be > 0");
  if (!std::isfinite(init)) throw Error(ErrorCode::kInvalidArgument, "Elo init must be finite");
}

double expected_score(double r_i, double r_j, double m) {
  return 1.0 / (1.0 + std::pow(10.0, (r_j - r_i) / m));
}

std::pair<double, double> update(double r_i, double r_j, Winner winner, const EloConfig& cfg) {
  const double s_i = winner == Winner::kFirst ? 1.0 : 0.0;
  const double delta = cfg.k * (s_i - expected_score(r_i, r_j, cfg.m));
  return {r_i + delta, r_j - delta};
}

PairManifest generate_pairs(std::span<const Member> population, std::size_t per_combo,
                            std::uint64_t seed, Combinations combinations) {
  const bool with_same = combinations == Combinations::kWithSameGroup;
  std::map<std::string, std::vector<std::string>> members;
  std::set<std::string> ids_seen;
  for (const Member& m : population) {
    if (!ids_seen.insert(m.id).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate population id " + m.id);
    }
    members[m.group].push_back(m.id);
  }
  if (!with_same && members.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "cross-group pairs need at least two groups");
  }
  for (const auto& [group, ids] : members) {
    if (with_same && ids.size() < 2) {
      throw Error(ErrorCode::kInsufficientGroupSize,
                  "group " + group + " has " + std::to_string(ids.size()) +
                      " member(s); same-group pairs need at least 2");
    }
  }

  PairManifest manifest;
  manifest.seed = seed;
  manifest.per_combo = per_combo;
  Rng rng(seed);
  std::set<std::pair<std::string, std::string>> seen;

  for (auto gi = members.begin(); gi != members.end(); ++gi) {
    for (auto gj = with_same ? gi : std::next(gi); gj != members.end(); ++gj) {
      const auto& a_ids = gi->second;
      const auto& b_ids = gj->second;
      const bool same = gi == gj;
      for (std::size_t n = 0; n < per_combo; ++n) {
        const std::uint64_t a = uniform_index(rng, a_ids.size());
        std::uint64_t b = 0;
        if (same) {
          b = uniform_index(rng, b_ids.size() - 1);
          if (b >= a) ++b;
        } else {
          b = uniform_index(rng, b_ids.size());
        }
        Pair p;
        p.pair_id = manifest.pairs.size();
        const bool flip = (rng() >> 63) != 0;
        p.id_top = flip ? b_ids[b] : a_ids[a];
        p.id_bottom = flip ? a_ids[a] : b_ids[b];
        auto key = std::minmax(p.id_top, p.id_bottom);
        if (!seen.emplace(key.first, key.second).second) ++manifest.duplicate_pairs;
        manifest.pairs.push_back(std::move(p));
      }
    }
  }
  return manifest;
}

EloState run_tournament(std::span<const std::string> population, const PairManifest& manifest,
                        std::span<const Outcome> outcomes, const EloConfig& cfg) {
  cfg.validate();
  EloState state;
  for (const std::string& id : population) {
    state.ratings.emplace(id, cfg.init);
    state.match_count.emplace(id, 0);
  }

  std::map<std::size_t, const Outcome*> by_pair;
  for (const Outcome& o : outcomes) {
    if (!by_pair.emplace(o.pair_id, &o).second) {
      throw Error(ErrorCode::kOutcomeMismatch,
                  "pair " + std::to_string(o.pair_id) + " has more than one outcome");
    }
  }
  if (by_pair.size() != manifest.pairs.size()) {
    throw Error(ErrorCode::kOutcomeMismatch,
                std::to_string(outcomes.size()) + " outcomes for " +
                    std::to_string(manifest.pairs.size()) + " pairs");
  }

  for (const Pair& p : manifest.pairs) {
    const auto it = by_pair.find(p.pair_id);
    if (it == by_pair.end()) {
      throw Error(ErrorCode::kOutcomeMismatch, "no outcome for pair " + std::to_string(p.pair_id));
    }
    const std::string& winner = it->second->winner_id;
    if (winner != p.id_top && winner != p.id_bottom) {
      throw Error(ErrorCode::kOutcomeMismatch, "winner " + winner + " is not in pair " +
                                                   std::to_string(p.pair_id));
    }
    auto top = state.ratings.find(p.id_top);
    auto bottom = state.ratings.find(p.id_bottom);
    if (top == state.ratings.end() || bottom == state.ratings.end()) {
      throw Error(ErrorCode::kUnknownGroup,
                  "pair " + std::to_string(p.pair_id) + " references an id outside the population");
    }
    const auto [r_top, r_bottom] =
        update(top->second, bottom->second,
               winner == p.id_top ? Winner::kFirst : Winner::kSecond, cfg);
    top->second = r_top;
    bottom->second = r_bottom;
    ++state.match_count[p.id_top];
    ++state.match_count[p.id_bottom];
  }
  return state;
}

double GroupPreference::preference_percent(const std::string& a, const std::string& b) const {
  const auto ga = groups.find(a);
  const auto gb = groups.find(b);
  if (ga == groups.end() || gb == groups.end()) {
    throw Error(ErrorCode::kUnknownGroup, "unknown group " + (ga == groups.end() ? a : b));
  }
  return 100.0 * expected_score(ga->second.mean_rating, gb->second.mean_rating, m);
}

std::map<std::string, std::vector<double>> ratings_by_group(
    const EloState& state, const std::map<std::string, std::string>& group_of) {
  std::map<std::string, std::vector<double>> out;
  for (const auto& [id, rating] : state.ratings) {
    const auto g = group_of.find(id);
    if (g == group_of.end()) throw Error(ErrorCode::kUnknownGroup, "id " + id + " has no group");
    out[g->second].push_back(rating);
  }
  return out;
}

GroupPreference group_preference(const EloState& state,
                                 const std::map<std::string, std::string>& group_of,
                                 const EloConfig& cfg) {
  cfg.validate();
  GroupPreference pref;
  pref.m = cfg.m;
  for (const auto& [group, ratings] : ratings_by_group(state, group_of)) {
    GroupStats s;
    s.members = ratings.size();
    double sum = 0.0;
    for (double r : ratings) sum += r;
    s.mean_rating = sum / static_cast<double>(ratings.size());
    pref.groups.emplace(group, s);
  }
  return pref;
}

std::vector<Outcome> decide_random(const PairManifest& manifest, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Outcome> out;
  out.reserve(manifest.pairs.size());
  for (const Pair& p : manifest.pairs) {
    const bool top_wins = (rng() >> 63) != 0;
    out.push_back({p.pair_id, top_wins ? p.id_top : p.id_bottom});
  }
  return out;
}

std::vector<Outcome> decide_prefers_lighter(const PairManifest& manifest,
                                            const std::map<std::string, double>& l_star_of) {
  auto lookup = [&](const std::string& id) {
    const auto it = l_star_of.find(id);
    if (it == l_star_of.end()) throw Error(ErrorCode::kMissingScore, "no score for id " + id);
    return it->second;
  };
  std::vector<Outcome> out;
  out.reserve(manifest.pairs.size());
  for (const Pair& p : manifest.pairs) {
    const bool top_wins = lookup(p.id_top) >= lookup(p.id_bottom);
    out.push_back({p.pair_id, top_wins ? p.id_top : p.id_bottom});
  }
  return out;
}

namespace {

std::size_t parse_index(const std::string& text, const std::string& where) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kParseError, where + ": bad pair_id '" + text + "'");
  }
  return v;
}

}  // namespace

std::string manifest_csv(const PairManifest& manifest) {
  std::string s = "pair_id,id_top,id_bottom\n";
  for (const Pair& p : manifest.pairs) {
    s += fmt::format("{},{},{}\n", p.pair_id, csv::quote(p.id_top), csv::quote(p.id_bottom));
  }
  return s;
}

PairManifest read_pair_manifest(const std::filesystem::path& path) {
  const csv::Table t = csv::Table::read(path);
  t.require({"pair_id", "id_top", "id_bottom"});
  PairManifest m;
  std::set<std::size_t> ids;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const std::string where = path.string() + ":" + std::to_string(t.line_of(r));
    Pair p{parse_index(t.at(r, "pair_id"), where), t.at(r, "id_top"), t.at(r, "id_bottom")};
    if (p.id_top == p.id_bottom) throw Error(ErrorCode::kParseError, where + ": self-pair");
    if (!ids.insert(p.pair_id).second) {
      throw Error(ErrorCode::kParseError, where + ": duplicate pair_id");
    }
    m.pairs.push_back(std::move(p));
  }
  return m;
}

std::string outcomes_csv(std::span<const Outcome> outcomes) {
  std::string s = "pair_id,winner_id\n";
  for (const Outcome& o : outcomes) s += fmt::format("{},{}\n", o.pair_id, csv::quote(o.winner_id));
  return s;
}

std::vector<Outcome> read_outcomes(const std::filesystem::path& path) {
  const csv::Table t = csv::Table::read(path);
  t.require({"pair_id", "winner_id"});
  std::vector<Outcome> out;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const std::string where = path.string() + ":" + std::to_string(t.line_of(r));
    out.push_back({parse_index(t.at(r, "pair_id"), where), t.at(r, "winner_id")});
  }
  return out;
}

std::string ratings_csv(const EloState& state, const std::map<std::string, std::string>& group_of) {
  std::string s = "id,group,rating,matches\n";
  for (const auto& [id, rating] : state.ratings) {
    const auto g = group_of.find(id);
    const auto n = state.match_count.find(id);
    s += fmt::format("{},{},{:.6f},{}\n", csv::quote(id),
                     csv::quote(g == group_of.end() ? std::string() : g->second), rating,
                     n == state.match_count.end() ? 0 : n->second);
  }
  return s;
}

}  // namespace skintone::elo
