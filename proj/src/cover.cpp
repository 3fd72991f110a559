#include "certreg/cover.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace certreg {

namespace {
constexpr std::int64_t kHuge = std::numeric_limits<std::int64_t>::max() / 4;

double harmonic(std::int64_t k) {
  double h = 0.0;
  for (std::int64_t i = 1; i <= k; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}
}  // namespace

int CoverInstance::max_spread() const {
  std::vector<int> degree(static_cast<std::size_t>(num_blocks), 0);
  for (const auto& entry : entries)
    for (const int b : entry.blocks) ++degree[static_cast<std::size_t>(b)];
  int best = 0;
  for (const int d : degree) best = std::max(best, d);
  return best;
}

void CoverInstance::validate() const {
  if (num_blocks < 1) throw std::invalid_argument("cover instance needs blocks");
  if (num_models < 1) throw std::invalid_argument("cover instance needs submodels");
  if (sigma != 0 && sigma != 1)
    throw std::invalid_argument("sigma must be 0 or 1");
  if (sigma != (r_max > 1 ? 1 : 0))
    throw std::invalid_argument("sigma must equal 1[r_max > 1]");
  if (required_cover > static_cast<std::int64_t>(entries.size()))
    throw std::invalid_argument("required_cover exceeds |T_low|");
  if (required_cover < 0)
    throw std::invalid_argument("required_cover must be nonnegative");
  for (const auto& entry : entries) {
    if (entry.blocks.empty())
      throw std::invalid_argument("every covered submodel needs at least one block");
    if (entry.need < 1 || entry.need > r_max)
      throw std::invalid_argument("entry need must lie in [1, r_max]");
    if (entry.model < 0 || entry.model >= num_models)
      throw std::invalid_argument("entry model index out of range");
    if (!std::is_sorted(entry.blocks.begin(), entry.blocks.end()))
      throw std::invalid_argument("entry block lists must be sorted");
    for (const int b : entry.blocks)
      if (b < 0 || b >= num_blocks)
        throw std::invalid_argument("entry block index out of range");
  }
}

namespace {

// Shared search state for the branch-and-bound below.
class BranchAndBound {
 public:
  explicit BranchAndBound(const CoverInstance& inst) : inst_(inst) {
    // Only blocks that touch T_low matter; the rest stay at weight zero.
    std::vector<std::vector<std::size_t>> uses(
        static_cast<std::size_t>(inst.num_blocks));
    for (std::size_t ei = 0; ei < inst.entries.size(); ++ei)
      for (const int b : inst.entries[ei].blocks)
        uses[static_cast<std::size_t>(b)].push_back(ei);
    for (int b = 0; b < inst.num_blocks; ++b)
      if (!uses[static_cast<std::size_t>(b)].empty()) order_.push_back(b);
    // Descending coverage count, ties by index: deterministic solve traces.
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return uses[static_cast<std::size_t>(a)].size() >
             uses[static_cast<std::size_t>(b)].size();
    });
    uses_.reserve(order_.size());
    for (const int b : order_) uses_.push_back(uses[static_cast<std::size_t>(b)]);
  }

  // Feasible cover by repeated unit increments: prefer the block that
  // newly satisfies the most entries, then the one reducing the most
  // residual need, then the lowest block id.
  std::vector<int> greedy_weights() const {
    std::vector<std::int64_t> needs;
    needs.reserve(inst_.entries.size());
    for (const auto& e : inst_.entries) needs.push_back(e.need);
    std::int64_t satisfied = 0;
    std::vector<int> weights(static_cast<std::size_t>(inst_.num_blocks), 0);
    while (satisfied < inst_.required_cover) {
      std::size_t best_pos = order_.size();
      std::int64_t best_new = -1, best_red = -1;
      for (std::size_t pos = 0; pos < order_.size(); ++pos) {
        const int b = order_[pos];
        if (weights[static_cast<std::size_t>(b)] >= inst_.r_max) continue;
        std::int64_t newly = 0, reduction = 0;
        for (const std::size_t ei : uses_[pos]) {
          if (needs[ei] <= 0) continue;
          if (needs[ei] == 1) ++newly;
          ++reduction;
        }
        const bool better = newly > best_new ||
                            (newly == best_new && reduction > best_red);
        if (better) {
          best_pos = pos;
          best_new = newly;
          best_red = reduction;
        }
      }
      assert(best_pos < order_.size() && best_red > 0);
      ++weights[static_cast<std::size_t>(order_[best_pos])];
      for (const std::size_t ei : uses_[best_pos])
        if (needs[ei] > 0 && --needs[ei] == 0) ++satisfied;
    }
    return weights;
  }

  CoverSolution solve(double time_limit_seconds) {
    const auto start = std::chrono::steady_clock::now();
    deadline_ = time_limit_seconds > 0.0
                    ? start + std::chrono::duration_cast<
                                  std::chrono::steady_clock::duration>(
                                  std::chrono::duration<double>(time_limit_seconds))
                    : std::chrono::steady_clock::time_point::max();

    CoverSolution sol;
    if (inst_.required_cover <= 0) {
      sol.certified_r = 0;
      sol.exact = true;
      sol.incumbent_cost = 0;
      sol.incumbent_weights.assign(static_cast<std::size_t>(inst_.num_blocks), 0);
      return sol;
    }

    incumbent_weights_ = greedy_weights();
    incumbent_ = std::accumulate(incumbent_weights_.begin(),
                                 incumbent_weights_.end(), std::int64_t{0});

    needs_.clear();
    for (const auto& e : inst_.entries) needs_.push_back(e.need);
    satisfied_ = 0;
    weights_.assign(static_cast<std::size_t>(inst_.num_blocks), 0);
    frontier_lb_ = kHuge;
    aborted_ = false;
    nodes_ = 0;
    dfs(0, 0);

    const std::int64_t lb = std::min(incumbent_, frontier_lb_);
    sol.certified_r = std::max<std::int64_t>(lb - inst_.sigma, 0);
    sol.exact = !aborted_;
    sol.incumbent_cost = incumbent_;
    sol.incumbent_weights = incumbent_weights_;
    sol.node_count = nodes_;
    sol.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return sol;
  }

 private:
  // Admissible optimistic completion cost from position `pos`: pick the
  // cheapest residuals worth `need_more` entries and price every unit of
  // weight at the best per-unit coverage any remaining block can offer.
  std::int64_t completion_bound(std::size_t pos, std::int64_t need_more) const {
    if (need_more <= 0) return 0;
    // Residuals of entries still satisfiable with the remaining blocks.
    std::vector<std::int64_t> residuals;
    std::vector<std::int64_t> capacity;  // per-unit coverage of remaining blocks
    std::vector<std::int64_t> potential(needs_.size(), 0);
    std::vector<std::int64_t> degree;
    for (std::size_t p = pos; p < order_.size(); ++p) {
      std::int64_t live = 0;
      for (const std::size_t ei : uses_[p]) {
        if (needs_[ei] <= 0) continue;
        potential[ei] += inst_.r_max;
        ++live;
      }
      if (live > 0) degree.push_back(live);
    }
    for (std::size_t ei = 0; ei < needs_.size(); ++ei)
      if (needs_[ei] > 0 && potential[ei] >= needs_[ei])
        residuals.push_back(needs_[ei]);
    if (static_cast<std::int64_t>(residuals.size()) < need_more) return kHuge;
    std::sort(residuals.begin(), residuals.end());
    std::int64_t total = std::accumulate(
        residuals.begin(), residuals.begin() + need_more, std::int64_t{0});
    // Each unit of weight on a block advances at most `degree` residuals;
    // a block hosts at most r_max units.
    std::sort(degree.begin(), degree.end(), std::greater<>());
    std::int64_t units = 0;
    for (const std::int64_t deg : degree) {
      for (std::int64_t u = 0; u < inst_.r_max && total > 0; ++u) {
        total -= deg;
        ++units;
      }
      if (total <= 0) break;
    }
    if (total > 0) return kHuge;
    return units;
  }

  void dfs(std::size_t pos, std::int64_t cost) {
    ++nodes_;
    if (satisfied_ >= inst_.required_cover) {
      if (cost < incumbent_) {
        incumbent_ = cost;
        incumbent_weights_ = weights_;
      }
      return;
    }
    if (pos == order_.size()) return;
    if ((nodes_ & 0x3f) == 0 &&
        std::chrono::steady_clock::now() >= deadline_)
      aborted_ = true;

    std::int64_t cap = 0;
    for (const std::size_t ei : uses_[pos])
      if (needs_[ei] > 0) cap = std::max(cap, needs_[ei]);
    cap = std::min(cap, inst_.r_max);

    for (std::int64_t w = cap; w >= 0; --w) {
      const int b = order_[pos];
      weights_[static_cast<std::size_t>(b)] = static_cast<int>(w);
      std::int64_t newly = 0;
      for (const std::size_t ei : uses_[pos]) {
        if (needs_[ei] > 0 && needs_[ei] <= w) ++newly;
        needs_[ei] -= w;
      }
      satisfied_ += newly;

      const std::int64_t child_bound =
          cost + w + completion_bound(pos + 1, inst_.required_cover - satisfied_);
      if (aborted_) {
        frontier_lb_ = std::min(frontier_lb_, child_bound);
      } else if (child_bound < incumbent_) {
        dfs(pos + 1, cost + w);
      }

      satisfied_ -= newly;
      for (const std::size_t ei : uses_[pos]) needs_[ei] += w;
      weights_[static_cast<std::size_t>(b)] = 0;
    }
  }

  const CoverInstance& inst_;
  std::vector<int> order_;                      // blocks worth branching on
  std::vector<std::vector<std::size_t>> uses_;  // position -> entry indices

  std::vector<std::int64_t> needs_;
  std::int64_t satisfied_ = 0;
  std::vector<int> weights_;
  std::int64_t incumbent_ = kHuge;
  std::vector<int> incumbent_weights_;
  std::int64_t frontier_lb_ = kHuge;
  bool aborted_ = false;
  std::uint64_t nodes_ = 0;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace

CoverSolution solve_ilp_bb(const CoverInstance& instance,
                           double time_limit_seconds) {
  instance.validate();
  assert(instance.required_cover <=
         static_cast<std::int64_t>(instance.entries.size()));
  BranchAndBound search(instance);
  return search.solve(time_limit_seconds);
}

GreedyCoverResult greedy_partial_cover(const CoverInstance& instance) {
  instance.validate();
  if (instance.sigma != 0 || instance.r_max != 1)
    throw std::invalid_argument("greedy partial cover expects a unit-cost instance");

  const std::int64_t delta = instance.required_cover;
  GreedyCoverResult result;
  if (delta > 0) {
    BranchAndBound search(instance);
    const std::vector<int> weights = search.greedy_weights();
    result.greedy_cost =
        std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  }
  if (delta >= 2) {
    const double h = harmonic(instance.max_spread());
    const double ln_delta = std::log(static_cast<double>(delta));
    const double slavik = ln_delta - std::log(ln_delta) + 3.0 +
                          std::log(std::log(32.0)) - std::log(32.0);
    const double factor = std::min(h, slavik);
    result.bound = static_cast<std::int64_t>(
        std::ceil(static_cast<double>(result.greedy_cost) / factor));
  }
  return result;
}

double psmc_approx_factor(std::int64_t num_models, std::int64_t d_max,
                          std::int64_t delta) {
  if (num_models < 1 || d_max < 1 || delta < 1)
    throw std::invalid_argument("factor arguments must be positive");
  const double lg_t = std::log2(static_cast<double>(num_models));
  return 4.0 * lg_t * harmonic(d_max) * std::log(static_cast<double>(delta)) +
         2.0 * lg_t * std::sqrt(static_cast<double>(num_models));
}

std::string serialize_cover_instance(const CoverInstance& instance) {
  std::ostringstream os;
  os << instance.num_blocks << ' ' << instance.num_models << ' '
     << instance.required_cover << ' ' << instance.sigma << ' '
     << instance.r_max << '\n';
  for (const auto& entry : instance.entries) {
    os << entry.model << ' ' << entry.need;
    for (const int b : entry.blocks) os << ' ' << b;
    os << '\n';
  }
  return os.str();
}

CoverInstance parse_cover_instance(std::istream& in) {
  CoverInstance inst;
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("cover instance file is empty");
  {
    std::istringstream header(line);
    if (!(header >> inst.num_blocks >> inst.num_models >> inst.required_cover >>
          inst.sigma >> inst.r_max))
      throw std::invalid_argument("malformed cover instance header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    CoverEntry entry;
    if (!(row >> entry.model >> entry.need))
      throw std::invalid_argument("malformed cover instance row: " + line);
    int b;
    while (row >> b) entry.blocks.push_back(b);
    std::sort(entry.blocks.begin(), entry.blocks.end());
    inst.entries.push_back(std::move(entry));
  }
  inst.validate();
  return inst;
}

CoverInstance load_cover_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cover instance file: " + path);
  return parse_cover_instance(in);
}

}  // namespace certreg
