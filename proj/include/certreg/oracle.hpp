#pragma once

#include <cstdint>
#include <string>

#include "certreg/cover.hpp"
#include "certreg/median_cert.hpp"

namespace certreg {

/// Result of a brute-force attack search: the true optimal robustness on a
/// small instance, plus a human-readable witness of a minimal successful
/// attack. For the median oracles the witness spends exactly optimal_r + 1
/// budget and provably perturbs the median past the threshold; for the cover
/// oracle it is a minimum-cost block-modification vector meeting the coverage
/// requirement.
struct AttackBudgetResult {
  bool robust = false;
  std::int64_t optimal_r = 0;
  std::string witness;
};

/// Exact optimal robustness under arbitrary swaps. Primary computation
/// simulates the attacker-optimal move (replace the smallest element with an
/// arbitrarily large value); for T <= 9 the result is additionally verified
/// by exhaustive search over all swap effect sequences. Requires odd T <= 15.
AttackBudgetResult oracle_swap(const VoteSet& votes);

/// Exact optimal robustness under mixed insertion/deletion attacks, found by
/// enumerating every split of the budget between worst-case insertions
/// (arbitrarily large values) and worst-case deletions (smallest elements).
/// Requires T <= 15.
AttackBudgetResult oracle_insert_delete(const VoteSet& votes);

/// Exact maximal safe budget under weighted swaps, by enumerating every
/// subset of low votes the attacker could fully pay for. Requires odd
/// T <= 11; cost magnitudes do not affect the search.
AttackBudgetResult oracle_weighted_swap(const WeightedVoteSet& wvotes);

/// True optimum of the block-cover program by exhaustive search: the minimum
/// total block-modification cost (each block capped at r_max) that covers
/// required_cover submodels, minus sigma. Independent of the branch-and-bound
/// solver. Requires m <= 14, |T_low| <= 11, r_max <= 3.
AttackBudgetResult oracle_overlap(const CoverInstance& instance);

}  // namespace certreg
