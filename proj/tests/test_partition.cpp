#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "certreg/partition.hpp"
#include "certreg/rng.hpp"

using namespace certreg;

TEST_CASE("partition shapes") {
  const PartitionAssignment one = partition_train(10, 1, 3);
  CHECK(std::all_of(one.block_of.begin(), one.block_of.end(),
                    [](int b) { return b == 0; }));

  const PartitionAssignment singletons = partition_train(10, 10, 3);
  for (const std::size_t size : singletons.block_sizes()) CHECK(size == 1);

  CHECK(partition_train(10, 3, 7).block_of == partition_train(10, 3, 7).block_of);
  CHECK(partition_train(10, 3, 7).block_of != partition_train(10, 3, 8).block_of);

  CHECK_THROWS_AS(partition_train(5, 6, 1), std::invalid_argument);
  CHECK_THROWS_AS(partition_train(5, 0, 1), std::invalid_argument);
}

TEST_CASE("partition coverage, disjointness and balance under fuzz") {
  SplitMix64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.next_int(1, 200));
    const int m = static_cast<int>(rng.next_int(1, static_cast<std::int64_t>(n)));
    const PartitionAssignment part =
        partition_train(n, m, rng.next());

    CHECK(part.block_of.size() == n);  // every instance placed exactly once
    std::size_t smallest = n, largest = 0;
    for (const std::size_t size : part.block_sizes()) {
      smallest = std::min(smallest, size);
      largest = std::max(largest, size);
    }
    CHECK(largest - smallest <= 1);
    const auto by_block = part.instances_by_block();
    std::size_t total = 0;
    for (const auto& members : by_block) total += members.size();
    CHECK(total == n);
  }
}

TEST_CASE("disjoint and degenerate mappings") {
  const BlockMapping identity = build_block_mapping(5, 5, 1, 9);
  CHECK(identity.disjoint());
  CHECK(identity.model_blocks[2] == std::vector<int>{2});

  const BlockMapping full = build_block_mapping(5, 5, 5, 9);
  for (const auto& blocks : full.model_blocks)
    CHECK(blocks == std::vector<int>{0, 1, 2, 3, 4});

  CHECK_THROWS_AS(build_block_mapping(5, 5, 6, 9), std::invalid_argument);
  CHECK_THROWS_AS(build_block_mapping(4, 5, 1, 9), std::invalid_argument);
}

TEST_CASE("overlapping mapping invariants") {
  SplitMix64 rng(32);
  for (int i = 0; i < 60; ++i) {
    const int t = static_cast<int>(rng.next_int(3, 25));
    const int d = static_cast<int>(rng.next_int(2, t));
    const BlockMapping mapping = build_block_mapping(t, t, d, rng.next());

    for (const int degree : mapping.spread_degrees()) CHECK(degree == d);
    std::size_t total_blocks = 0;
    for (const auto& blocks : mapping.model_blocks) {
      CHECK(blocks.size() == static_cast<std::size_t>(d));
      CHECK(std::set<int>(blocks.begin(), blocks.end()).size() == blocks.size());
      total_blocks += blocks.size();
    }
    // Double counting: sum of spread degrees equals sum of submodel loads.
    const auto degrees = mapping.spread_degrees();
    CHECK(static_cast<std::size_t>(
              std::accumulate(degrees.begin(), degrees.end(), 0)) ==
          total_blocks);
  }
}

TEST_CASE("mapping generation is seed-deterministic") {
  const BlockMapping a = build_block_mapping(9, 9, 3, 1234);
  const BlockMapping b = build_block_mapping(9, 9, 3, 1234);
  CHECK(a.model_blocks == b.model_blocks);
}

TEST_CASE("fixture ingestion accepts uneven spread degrees") {
  // Seven blocks feeding five submodels, two blocks each; spread degrees
  // vary between one and two.
  const BlockMapping fig = mapping_from_lists(
      7, {{1, 3}, {2, 5}, {3, 4}, {0, 6}, {4, 5}});
  CHECK(fig.num_models() == 5);
  CHECK(fig.max_spread() == 2);
  const std::vector<int> degrees = fig.spread_degrees();
  CHECK(degrees == std::vector<int>{1, 1, 1, 2, 2, 2, 1});
  CHECK_FALSE(fig.disjoint());

  CHECK_THROWS_AS(mapping_from_lists(2, {{0}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(mapping_from_lists(2, {{0}, {2}}), std::invalid_argument);
  CHECK_THROWS_AS(mapping_from_lists(3, {{0}, {1}}), std::invalid_argument);
}
