#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "certreg/oracle.hpp"
#include "certreg/rng.hpp"

using namespace certreg;

TEST_CASE("swap oracle") {
  const AttackBudgetResult fig = oracle_swap({{2, 3, 4, 5, 6}, 5.4});
  REQUIRE(fig.robust);
  CHECK(fig.optimal_r == 1);
  CHECK_FALSE(fig.witness.empty());

  CHECK(oracle_swap({{0, 0, 0}, 0.0}).optimal_r == 1);
  CHECK_FALSE(oracle_swap({{6, 7, 8}, 5.0}).robust);

  CHECK_THROWS_AS(oracle_swap({std::vector<double>(17, 0.0), 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle_swap({{1, 2}, 1.0}), std::invalid_argument);
}

TEST_CASE("insertion/deletion oracle") {
  CHECK(oracle_insert_delete({{2, 3, 4, 5, 6}, 5.4}).optimal_r == 2);
  CHECK(oracle_insert_delete({{2, 3, 4, 5, 6}, 5.5}).optimal_r == 3);
  CHECK_FALSE(oracle_insert_delete({{}, 123.0}).robust);
  CHECK_THROWS_AS(oracle_insert_delete({std::vector<double>(16, 0.0), 1.0}),
                  std::invalid_argument);
}

TEST_CASE("weighted swap oracle") {
  const AttackBudgetResult fig =
      oracle_weighted_swap({{{2, 3, 4, 5, 6}, 5.4}, {3, 4, 5, 6, 7}});
  REQUIRE(fig.robust);
  CHECK(fig.optimal_r == 6);

  // Unit costs reduce to the unweighted oracle.
  SplitMix64 rng(7);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> values;
    const std::int64_t t = 2 * rng.next_int(0, 4) + 1;
    for (std::int64_t j = 0; j < t; ++j) values.push_back(rng.next_in(0, 10));
    const double xi = rng.next_in(0, 10);
    const AttackBudgetResult unweighted = oracle_swap({values, xi});
    const AttackBudgetResult unit = oracle_weighted_swap(
        {{values, xi}, std::vector<std::int64_t>(values.size(), 1)});
    REQUIRE(unweighted.robust == unit.robust);
    if (unit.robust) CHECK(unit.optimal_r == unweighted.optimal_r);
  }

  CHECK(oracle_weighted_swap({{{2, 3, 6}, 5.4}, {5, 2, 1}}).optimal_r == 1);
}

namespace {

CoverInstance disjoint_unit_instance() {
  // Five submodels predicting {2,3,4,5,6} against xi = 5.4 over their own
  // blocks: the cover program collapses to the swap bound.
  CoverInstance inst;
  inst.num_blocks = 5;
  inst.num_models = 5;
  inst.sigma = 0;
  inst.r_max = 1;
  for (int t = 0; t < 4; ++t) inst.entries.push_back({t, 1, {t}});
  inst.required_cover = 4 - 3;  // |T_low| - ceil(T/2)
  return inst;
}

}  // namespace

TEST_CASE("cover oracle") {
  const AttackBudgetResult disjoint = oracle_overlap(disjoint_unit_instance());
  REQUIRE(disjoint.robust);
  CHECK(disjoint.optimal_r == 1);

  // One block feeding every submodel: a single modification covers them all.
  CoverInstance shared;
  shared.num_blocks = 1;
  shared.num_models = 5;
  shared.sigma = 0;
  shared.r_max = 1;
  for (int t = 0; t < 5; ++t) shared.entries.push_back({t, 1, {0}});
  shared.required_cover = 2;
  CHECK(oracle_overlap(shared).optimal_r == 1);

  CoverInstance big = disjoint_unit_instance();
  big.num_blocks = 15;
  CHECK_THROWS_AS(oracle_overlap(big), std::invalid_argument);
}

TEST_CASE("cover oracle matches the branch-and-bound solver") {
  SplitMix64 rng(21);
  for (int i = 0; i < 120; ++i) {
    const int num_models = static_cast<int>(2 * rng.next_int(1, 3) + 1);  // 3..7
    const int m = static_cast<int>(rng.next_int(num_models, 10));
    const bool weighted = rng.next_bool();

    // Assign each block to at most d submodels, then keep a majority-sized
    // low set.
    std::vector<std::vector<int>> blocks_of(
        static_cast<std::size_t>(num_models));
    for (int b = 0; b < m; ++b) {
      const int copies = static_cast<int>(rng.next_int(1, 2));
      for (int c = 0; c < copies; ++c) {
        const int t = static_cast<int>(rng.next_below(
            static_cast<std::uint64_t>(num_models)));
        blocks_of[static_cast<std::size_t>(t)].push_back(b);
      }
    }
    CoverInstance inst;
    inst.num_blocks = m;
    inst.num_models = num_models;
    inst.r_max = 1;
    const std::int64_t low =
        rng.next_int((num_models + 1) / 2, num_models);
    for (int t = 0; t < static_cast<int>(low); ++t) {
      CoverEntry entry;
      entry.model = t;
      auto& blocks = blocks_of[static_cast<std::size_t>(t)];
      std::sort(blocks.begin(), blocks.end());
      blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
      if (blocks.empty())
        blocks.push_back(static_cast<int>(rng.next_below(
            static_cast<std::uint64_t>(m))));
      entry.blocks = blocks;
      entry.need = weighted ? rng.next_int(1, 3) : 1;
      inst.r_max = std::max(inst.r_max, entry.need);
      inst.entries.push_back(std::move(entry));
    }
    inst.sigma = inst.r_max > 1 ? 1 : 0;
    inst.required_cover = low - (num_models + 1) / 2 + inst.sigma;

    const AttackBudgetResult oracle = oracle_overlap(inst);
    const CoverSolution solved = solve_ilp_bb(inst);
    REQUIRE(oracle.robust);
    CHECK(solved.exact);
    CHECK(solved.certified_r == oracle.optimal_r);
  }
}
