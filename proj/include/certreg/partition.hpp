#pragma once

#include <cstdint>
#include <vector>

namespace certreg {

/// Deterministic assignment of training instances to m disjoint blocks.
/// Blocks cover the training set, sizes differ by at most one, and the whole
/// assignment is reproducible from (seed, n, m).
struct PartitionAssignment {
  int num_blocks = 0;
  std::uint64_t seed = 0;
  std::vector<int> block_of;  // instance index -> block in [0, m)

  std::vector<std::vector<std::size_t>> instances_by_block() const;
  std::vector<std::size_t> block_sizes() const;
};

/// Balanced pseudorandom partition: a seeded shuffle of the instance indices
/// followed by round-robin assignment, which bounds block-size skew at one.
PartitionAssignment partition_train(std::size_t n, int m, std::uint64_t seed);

/// Maps training blocks to submodel training sets. Disjoint mode is the
/// identity (T = m); overlapping mode assigns every block to exactly d
/// distinct submodels with balanced submodel loads.
struct BlockMapping {
  int num_blocks = 0;                           // m
  std::vector<std::vector<int>> model_blocks;   // per submodel, sorted block ids

  int num_models() const { return static_cast<int>(model_blocks.size()); }
  bool disjoint() const;
  std::vector<int> spread_degrees() const;      // d_j per block
  int max_spread() const;
  void validate() const;
};

/// Identity mapping: submodel t trains on exactly block t.
BlockMapping disjoint_mapping(int m);

/// Seeded overlapping mapping with fixed spread degree d. Requires m == T
/// (the evaluated shape) and 1 <= d <= T; d == 1 degenerates to the identity
/// and d == T trains every submodel on every block.
BlockMapping build_block_mapping(int m, int num_models, int d, std::uint64_t seed);

/// Ingests an arbitrary block->submodel topology, e.g. from a fixture file.
/// Spread degrees may vary; only well-formedness is enforced.
BlockMapping mapping_from_lists(int m, std::vector<std::vector<int>> model_blocks);

}  // namespace certreg
