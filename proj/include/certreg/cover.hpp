#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "certreg/certificate.hpp"

namespace certreg {

/// One submodel that must be "covered" (perturbed): it needs total
/// modification weight >= need across its training blocks.
struct CoverEntry {
  int model = 0;                 // submodel index t
  std::int64_t need = 1;         // r_t, in [1, r_max]
  std::vector<int> blocks;       // block indices composing D_t, sorted
};

/// The partial set multicover program behind overlapping certification:
///
///   minimize   sum_j w_j - sigma
///   subject to #{t in T_low : sum_{j in blocks(t)} w_j >= r_t} >= required_cover
///              w_j in {0, ..., r_max}
///
/// where required_cover = |T_low| - ceil(T/2) + sigma and
/// sigma = 1 iff r_max > 1. Entries list only the submodels in T_low.
struct CoverInstance {
  int num_blocks = 0;            // m
  int num_models = 0;            // T, the full submodel count
  std::int64_t required_cover = 0;
  int sigma = 0;
  std::int64_t r_max = 1;
  std::vector<CoverEntry> entries;

  /// Maximum spread degree within the instance: the largest number of listed
  /// submodels any single block participates in.
  int max_spread() const;

  /// Throws std::invalid_argument when the program is malformed
  /// (required_cover > |T_low|, empty block lists, costs out of range, ...).
  void validate() const;
};

/// Proven bound on the cover program's optimum. certified_r is always a sound
/// lower bound (never exceeds the true optimum); exact means it equals it.
/// The incumbent is the cheapest feasible cover found, i.e. a concrete attack
/// whose cost upper-bounds the optimum; it is diagnostics, never a
/// certificate.
struct CoverSolution {
  std::int64_t certified_r = 0;
  bool exact = false;
  std::optional<std::int64_t> incumbent_cost;  // sum_j w_j of best cover found
  std::vector<int> incumbent_weights;          // w vector of that cover
  double elapsed_seconds = 0.0;
  std::uint64_t node_count = 0;
};

/// No time limit; the solver runs to proven optimality.
inline constexpr double kNoTimeLimit = 0.0;

/// Depth-first branch-and-bound over block modification counts. Blocks are
/// branched in descending coverage order (ties by index), the incumbent is
/// seeded with a greedy cover, and each node is bounded by admissibly pricing
/// the remaining coverage need against the best per-unit coverage still
/// available. On timeout the best proven global lower bound is returned with
/// exact = false.
CoverSolution solve_ilp_bb(const CoverInstance& instance,
                           double time_limit_seconds = kNoTimeLimit);

/// Greedy partial cover on a unit-cost instance (sigma = 0): repeatedly picks
/// the block covering the most still-uncovered submodels. Returns the greedy
/// cost G and, when the coverage requirement Delta >= 2, the proven lower
/// bound ceil(G / min(H_dmax, ln D - ln ln D + 3 + ln ln 32 - ln 32)).
struct GreedyCoverResult {
  std::int64_t greedy_cost = 0;
  std::optional<std::int64_t> bound;  // absent when Delta < 2
};
GreedyCoverResult greedy_partial_cover(const CoverInstance& instance);

/// Approximation factor of the best known polynomial-time multicover
/// algorithm: 4 lg(T) H(d_max) ln(Delta) + 2 lg(T) sqrt(T). Documented for
/// reporting only; it is never used as a certification path.
double psmc_approx_factor(std::int64_t num_models, std::int64_t d_max,
                          std::int64_t delta);

/// Plain-text instance format, one instance per file:
///   m T required_cover sigma r_max
///   t r_t b1 b2 ...        (one line per covered submodel)
/// Block and submodel indices are zero-based.
std::string serialize_cover_instance(const CoverInstance& instance);
CoverInstance parse_cover_instance(std::istream& in);
CoverInstance load_cover_instance(const std::string& path);

}  // namespace certreg
