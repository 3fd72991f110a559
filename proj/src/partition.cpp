#include "certreg/partition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "certreg/rng.hpp"

namespace certreg {

std::vector<std::vector<std::size_t>> PartitionAssignment::instances_by_block()
    const {
  std::vector<std::vector<std::size_t>> out(
      static_cast<std::size_t>(num_blocks));
  for (std::size_t i = 0; i < block_of.size(); ++i)
    out[static_cast<std::size_t>(block_of[i])].push_back(i);
  return out;
}

std::vector<std::size_t> PartitionAssignment::block_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(num_blocks), 0);
  for (const int b : block_of) ++sizes[static_cast<std::size_t>(b)];
  return sizes;
}

PartitionAssignment partition_train(std::size_t n, int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("partition needs at least one block");
  if (static_cast<std::size_t>(m) > n)
    throw std::invalid_argument("more blocks than training instances");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(substream(seed, "partition"));
  rng.shuffle(order);

  PartitionAssignment assignment;
  assignment.num_blocks = m;
  assignment.seed = seed;
  assignment.block_of.resize(n);
  for (std::size_t pos = 0; pos < n; ++pos)
    assignment.block_of[order[pos]] = static_cast<int>(pos % static_cast<std::size_t>(m));
  return assignment;
}

bool BlockMapping::disjoint() const {
  if (num_models() != num_blocks) return false;
  for (int t = 0; t < num_models(); ++t)
    if (model_blocks[static_cast<std::size_t>(t)] != std::vector<int>{t})
      return false;
  return true;
}

std::vector<int> BlockMapping::spread_degrees() const {
  std::vector<int> degree(static_cast<std::size_t>(num_blocks), 0);
  for (const auto& blocks : model_blocks)
    for (const int b : blocks) ++degree[static_cast<std::size_t>(b)];
  return degree;
}

int BlockMapping::max_spread() const {
  int best = 0;
  for (const int d : spread_degrees()) best = std::max(best, d);
  return best;
}

void BlockMapping::validate() const {
  if (num_blocks < 1) throw std::invalid_argument("mapping needs blocks");
  if (model_blocks.empty()) throw std::invalid_argument("mapping needs submodels");
  for (const auto& blocks : model_blocks) {
    if (blocks.empty())
      throw std::invalid_argument("every submodel needs at least one block");
    if (!std::is_sorted(blocks.begin(), blocks.end()) ||
        std::adjacent_find(blocks.begin(), blocks.end()) != blocks.end())
      throw std::invalid_argument("submodel block lists must be sorted and unique");
    for (const int b : blocks)
      if (b < 0 || b >= num_blocks)
        throw std::invalid_argument("block index out of range");
  }
  // h_tr partitions the whole training set, so every block must feed at
  // least one submodel.
  for (const int d : spread_degrees())
    if (d == 0) throw std::invalid_argument("unused training block in mapping");
}

BlockMapping disjoint_mapping(int m) {
  if (m < 1) throw std::invalid_argument("mapping needs blocks");
  BlockMapping mapping;
  mapping.num_blocks = m;
  mapping.model_blocks.reserve(static_cast<std::size_t>(m));
  for (int t = 0; t < m; ++t) mapping.model_blocks.push_back({t});
  return mapping;
}

namespace {

// Configuration-model draw: d slots per submodel, shuffled, chunked into
// blocks. Duplicate submodels within a block are repaired by swapping with a
// slot elsewhere that keeps both blocks duplicate-free.
bool try_assign(int m, int num_models, int d, SplitMix64& rng,
                std::vector<std::vector<int>>& out) {
  const std::size_t total = static_cast<std::size_t>(m) * static_cast<std::size_t>(d);
  std::vector<int> slots;
  slots.reserve(total);
  for (int t = 0; t < num_models; ++t)
    slots.insert(slots.end(), static_cast<std::size_t>(d), t);
  rng.shuffle(slots);

  const auto chunk_of = [&](std::size_t pos) { return pos / static_cast<std::size_t>(d); };
  const auto chunk_has = [&](std::size_t chunk, int value, std::size_t skip) {
    const std::size_t begin = chunk * static_cast<std::size_t>(d);
    for (std::size_t p = begin; p < begin + static_cast<std::size_t>(d); ++p)
      if (p != skip && slots[p] == value) return true;
    return false;
  };

  for (int pass = 0; pass < 64; ++pass) {
    bool clean = true;
    for (std::size_t p = 0; p < total; ++p) {
      const std::size_t cj = chunk_of(p);
      if (!chunk_has(cj, slots[p], p)) continue;
      clean = false;
      bool fixed = false;
      for (std::size_t q = 0; q < total && !fixed; ++q) {
        const std::size_t cq = chunk_of(q);
        if (cq == cj) continue;
        if (chunk_has(cj, slots[q], p)) continue;
        if (chunk_has(cq, slots[p], q)) continue;
        std::swap(slots[p], slots[q]);
        fixed = true;
      }
      if (!fixed) return false;
    }
    if (clean) {
      out.assign(static_cast<std::size_t>(num_models), {});
      for (std::size_t p = 0; p < total; ++p)
        out[static_cast<std::size_t>(slots[p])].push_back(
            static_cast<int>(chunk_of(p)));
      return true;
    }
  }
  return false;
}

}  // namespace

BlockMapping build_block_mapping(int m, int num_models, int d,
                                 std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("spread degree must be positive");
  if (d > num_models)
    throw std::invalid_argument("spread degree cannot exceed the submodel count");
  if (d == 1) {
    if (m != num_models)
      throw std::invalid_argument("disjoint mapping requires T == m");
    return disjoint_mapping(m);
  }
  if (m != num_models)
    throw std::invalid_argument("overlapping mappings are generated with m == T");

  BlockMapping mapping;
  mapping.num_blocks = m;
  if (d == num_models) {
    // Full overlap: every submodel trains on every block.
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int b = 0; b < m; ++b) all[static_cast<std::size_t>(b)] = b;
    mapping.model_blocks.assign(static_cast<std::size_t>(num_models), all);
    mapping.validate();
    return mapping;
  }

  SplitMix64 rng(substream(seed, "block-mapping"));
  for (int attempt = 0; attempt < 128; ++attempt) {
    std::vector<std::vector<int>> blocks_of_model;
    if (try_assign(m, num_models, d, rng, blocks_of_model)) {
      for (auto& blocks : blocks_of_model)
        std::sort(blocks.begin(), blocks.end());
      mapping.model_blocks = std::move(blocks_of_model);
      mapping.validate();
      return mapping;
    }
  }
  throw std::runtime_error("could not draw a duplicate-free block mapping");
}

BlockMapping mapping_from_lists(int m, std::vector<std::vector<int>> model_blocks) {
  BlockMapping mapping;
  mapping.num_blocks = m;
  for (auto& blocks : model_blocks) std::sort(blocks.begin(), blocks.end());
  mapping.model_blocks = std::move(model_blocks);
  mapping.validate();
  return mapping;
}

}  // namespace certreg
