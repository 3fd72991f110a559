#include "certreg/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace certreg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t majority(std::size_t t) { return static_cast<std::int64_t>((t + 1) / 2); }

[[noreturn]] void too_large(const char* what) {
  throw std::invalid_argument(std::string("oracle instance too large: ") + what);
}
}  // namespace

AttackBudgetResult oracle_swap(const VoteSet& votes) {
  const std::size_t t = votes.size();
  if (t % 2 == 0) throw std::invalid_argument("swap oracle requires odd cardinality");
  if (t > 15) too_large("swap oracle supports T <= 15");
  if (!votes.within_bound()) return {};

  // Attacker-optimal play: repeatedly replace the smallest element with an
  // arbitrarily large value and watch the median.
  std::vector<double> work = votes.values;
  std::sort(work.begin(), work.end());
  std::int64_t budget_to_violate = 0;
  while (median(work) <= votes.threshold) {
    work.erase(work.begin());
    work.push_back(kInf);
    ++budget_to_violate;
  }
  const std::int64_t r = budget_to_violate - 1;

  // Full enumeration cross-check on small instances. A swap changes the
  // number of low votes by -1, 0 or +1, and with fixed odd T the median
  // violates the bound exactly when fewer than ceil(T/2) low votes remain.
  // Exhaustive breadth-first search over those effects finds the cheapest
  // violating sequence.
  if (t <= 9) {
    const std::int64_t start_low = static_cast<std::int64_t>(votes.low_count());
    std::vector<std::int64_t> dist(t + 1, -1);
    dist[static_cast<std::size_t>(start_low)] = 0;
    std::vector<std::int64_t> frontier{start_low};
    std::int64_t enumerated = -1;
    for (std::int64_t depth = 0; !frontier.empty(); ++depth) {
      std::vector<std::int64_t> next;
      for (const std::int64_t low : frontier) {
        if (low < majority(t)) {
          enumerated = depth - 1;
          break;
        }
        for (const std::int64_t low2 : {low - 1, low, low + 1}) {
          if (low2 < 0 || low2 > static_cast<std::int64_t>(t)) continue;
          if (dist[static_cast<std::size_t>(low2)] >= 0) continue;
          dist[static_cast<std::size_t>(low2)] = depth + 1;
          next.push_back(low2);
        }
      }
      if (enumerated >= 0) break;
      frontier = std::move(next);
    }
    if (enumerated != r)
      throw std::logic_error("swap oracle disagreement between greedy and enumeration");
  }

  // Witness: budget r + 1 perturbs the median.
  std::vector<double> check = votes.values;
  std::sort(check.begin(), check.end());
  for (std::int64_t i = 0; i < r + 1; ++i) {
    check.erase(check.begin());
    check.push_back(kInf);
  }
  if (median(check) <= votes.threshold)
    throw std::logic_error("swap oracle witness failed to perturb the median");

  std::ostringstream witness;
  witness << "replace the " << (r + 1)
          << " smallest element(s) with arbitrarily large values";
  return {true, r, witness.str()};
}

AttackBudgetResult oracle_insert_delete(const VoteSet& votes) {
  const std::size_t t = votes.size();
  if (t > 15) too_large("insertion/deletion oracle supports T <= 15");
  if (!votes.within_bound()) return {};

  std::vector<double> sorted = votes.values;
  std::sort(sorted.begin(), sorted.end());

  // Worst-case insertions add arbitrarily large values; worst-case deletions
  // remove the smallest remaining element. The final multiset depends only on
  // the counts (a, b), so enumerate every budget split.
  const auto violated = [&](std::int64_t inserts, std::int64_t deletes) {
    std::vector<double> attacked(sorted.begin() + deletes, sorted.end());
    attacked.insert(attacked.end(), static_cast<std::size_t>(inserts), kInf);
    return median(attacked) > votes.threshold;
  };

  for (std::int64_t budget = 1;; ++budget) {
    for (std::int64_t inserts = 0; inserts <= budget; ++inserts) {
      const std::int64_t deletes = budget - inserts;
      if (deletes > static_cast<std::int64_t>(t)) continue;
      if (!violated(inserts, deletes)) continue;
      std::ostringstream witness;
      witness << "insert " << inserts << " arbitrarily large value(s) and delete the "
              << deletes << " smallest element(s)";
      return {true, budget - 1, witness.str()};
    }
    // Deleting everything violates any finite bound, so only an infinite
    // threshold can reach this point.
    if (budget > static_cast<std::int64_t>(t))
      throw std::invalid_argument("threshold admits no successful attack");
  }
}

AttackBudgetResult oracle_weighted_swap(const WeightedVoteSet& wvotes) {
  wvotes.validate();
  const std::size_t t = wvotes.votes.size();
  if (t % 2 == 0)
    throw std::invalid_argument("weighted swap oracle requires odd cardinality");
  if (t > 11) too_large("weighted swap oracle supports T <= 11");
  if (!wvotes.votes.within_bound()) return {};

  std::vector<std::size_t> low_idx;
  for (std::size_t i = 0; i < t; ++i)
    if (wvotes.votes.values[i] <= wvotes.votes.threshold) low_idx.push_back(i);
  const std::int64_t delta =
      static_cast<std::int64_t>(low_idx.size()) - majority(t);

  // An attack fully pays for a subset of low votes and swaps them out; the
  // median is perturbed exactly when at least delta + 1 low votes are gone.
  // Enumerate every subset of the low votes.
  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  std::uint32_t best_mask = 0;
  const std::size_t nlow = low_idx.size();
  for (std::uint32_t mask = 0; mask < (1u << nlow); ++mask) {
    if (std::popcount(mask) < delta + 1) continue;
    std::int64_t cost = 0;
    for (std::size_t i = 0; i < nlow; ++i)
      if (mask & (1u << i)) cost += wvotes.costs[low_idx[i]];
    if (cost < best_cost) {
      best_cost = cost;
      best_mask = mask;
    }
  }
  assert(best_cost != std::numeric_limits<std::int64_t>::max());

  std::ostringstream witness;
  witness << "fully pay and swap out vote(s) at index";
  for (std::size_t i = 0; i < nlow; ++i)
    if (best_mask & (1u << i)) witness << ' ' << low_idx[i];
  witness << " for total budget " << best_cost;
  return {true, best_cost - 1, witness.str()};
}

namespace {

// Minimum total weight placed on blocks so that every entry in `chosen`
// reaches its need, weights capped at r_max. Exhaustive depth-first search
// over the relevant blocks with cost and feasibility pruning.
class SubsetCoverSearch {
 public:
  SubsetCoverSearch(const CoverInstance& inst,
                    const std::vector<std::size_t>& chosen)
      : inst_(inst) {
    for (const std::size_t e : chosen) {
      needs_.push_back(inst.entries[e].need);
      for (const int b : inst.entries[e].blocks)
        if (std::find(blocks_.begin(), blocks_.end(), b) == blocks_.end())
          blocks_.push_back(b);
    }
    std::sort(blocks_.begin(), blocks_.end());
    uses_.resize(blocks_.size());
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
      for (std::size_t ei = 0; ei < chosen.size(); ++ei) {
        const auto& eb = inst_.entries[chosen[ei]].blocks;
        if (std::binary_search(eb.begin(), eb.end(), blocks_[bi]))
          uses_[bi].push_back(ei);
      }
  }

  std::int64_t run(std::vector<int>* best_weights) {
    weights_.assign(blocks_.size(), 0);
    best_ = std::numeric_limits<std::int64_t>::max();
    dfs(0, 0);
    if (best_weights) {
      best_weights->assign(static_cast<std::size_t>(inst_.num_blocks), 0);
      for (std::size_t bi = 0; bi < blocks_.size(); ++bi)
        (*best_weights)[static_cast<std::size_t>(blocks_[bi])] = best_assign_[bi];
    }
    return best_;
  }

 private:
  void dfs(std::size_t bi, std::int64_t cost) {
    if (cost >= best_) return;
    bool satisfied = true;
    for (const std::int64_t need : needs_)
      if (need > 0) { satisfied = false; break; }
    if (satisfied) {
      best_ = cost;
      best_assign_ = weights_;
      return;
    }
    if (bi == blocks_.size()) return;
    // Feasibility: every entry must still be reachable with the leftover
    // blocks at full weight.
    for (std::size_t ei = 0; ei < needs_.size(); ++ei) {
      if (needs_[ei] <= 0) continue;
      std::int64_t potential = 0;
      for (std::size_t bj = bi; bj < blocks_.size(); ++bj)
        if (std::find(uses_[bj].begin(), uses_[bj].end(), ei) != uses_[bj].end())
          potential += inst_.r_max;
      if (potential < needs_[ei]) return;
    }
    std::int64_t cap = 0;
    for (const std::size_t ei : uses_[bi]) cap = std::max(cap, needs_[ei]);
    cap = std::min(cap, inst_.r_max);
    for (std::int64_t w = cap; w >= 0; --w) {
      weights_[bi] = static_cast<int>(w);
      for (const std::size_t ei : uses_[bi]) needs_[ei] -= w;
      dfs(bi + 1, cost + w);
      for (const std::size_t ei : uses_[bi]) needs_[ei] += w;
      weights_[bi] = 0;
    }
  }

  const CoverInstance& inst_;
  std::vector<int> blocks_;                  // relevant block ids
  std::vector<std::vector<std::size_t>> uses_;  // block -> entry positions
  std::vector<std::int64_t> needs_;
  std::vector<int> weights_;
  std::vector<int> best_assign_;
  std::int64_t best_ = 0;
};

}  // namespace

AttackBudgetResult oracle_overlap(const CoverInstance& instance) {
  instance.validate();
  if (instance.num_blocks > 14) too_large("cover oracle supports m <= 14");
  if (instance.entries.size() > 11) too_large("cover oracle supports |T_low| <= 11");
  if (instance.r_max > 3) too_large("cover oracle supports r_max <= 3");

  const std::size_t nlow = instance.entries.size();
  const std::int64_t required = instance.required_cover;
  if (required <= 0) return {true, 0, "empty coverage requirement"};

  // Every optimal cover fully satisfies some subset of exactly
  // `required_cover` entries, so minimizing over those subsets is exact.
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<int> best_weights;
  std::vector<std::size_t> chosen;
  const auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (chosen.size() == static_cast<std::size_t>(required)) {
      std::vector<int> weights;
      SubsetCoverSearch search(instance, chosen);
      const std::int64_t cost = search.run(&weights);
      if (cost < best) {
        best = cost;
        best_weights = std::move(weights);
      }
      return;
    }
    for (std::size_t e = start; e < nlow; ++e) {
      chosen.push_back(e);
      self(self, e + 1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);
  assert(best != std::numeric_limits<std::int64_t>::max());

  std::ostringstream witness;
  witness << "modify blocks (block:count)";
  for (std::size_t j = 0; j < best_weights.size(); ++j)
    if (best_weights[j] > 0) witness << ' ' << j << ':' << best_weights[j];
  witness << " for total cost " << best;
  return {true, best - instance.sigma, witness.str()};
}

}  // namespace certreg
