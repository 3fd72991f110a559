#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "certreg/certificate.hpp"
#include "certreg/dataset.hpp"
#include "certreg/median_cert.hpp"
#include "certreg/partition.hpp"
#include "certreg/submodels.hpp"

namespace certreg {

/// Per-submodel perturbation costs feeding the weighted certifiers. r[t] is
/// the minimum number of training-set modifications that could push submodel
/// t past the threshold; 0 marks a submodel that already violates it. Costs
/// certified by leave-out retraining hold for deletions only and the profile
/// carries that restriction into every certificate built from it.
struct CostProfile {
  std::vector<std::int64_t> r;
  std::int64_t r_cap = 2;
  ThreatModel threat = ThreatModel::DeletionOnly;
};

/// A trained median-of-submodels regressor: T deterministic submodels (T odd)
/// with their partition and block mapping. Immutable after training;
/// concurrent prediction and certification are safe.
struct EnsembleModel {
  std::vector<Submodel> submodels;
  PartitionAssignment partition;
  BlockMapping mapping;
  SubmodelSpec spec;
  std::uint64_t seed = 0;
  Eigen::Index dim = 0;

  int num_submodels() const { return static_cast<int>(submodels.size()); }
  std::vector<double> submodel_predictions(
      const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

/// Disjoint ensemble: T blocks, submodel t trained exactly on block t.
EnsembleModel train_partitioned(const Dataset& train, int num_models,
                                std::uint64_t seed, const SubmodelSpec& spec);

/// Overlapping ensemble with T = q * d submodels over m = T blocks of fixed
/// spread degree d; every submodel sees 1/q of the data.
EnsembleModel train_overlapping(const Dataset& train, int q, int d,
                                std::uint64_t seed, const SubmodelSpec& spec);

/// As train_partitioned but fitting submodels sequentially. Kept as the
/// reference implementation for the parallel path.
EnsembleModel train_partitioned_serial(const Dataset& train, int num_models,
                                       std::uint64_t seed,
                                       const SubmodelSpec& spec);

double ensemble_predict(const EnsembleModel& model,
                        const Eigen::Ref<const Eigen::VectorXd>& x);

/// Unit-cost certificate over the submodel vote set (requires a disjoint
/// mapping): every training modification hits one submodel, so the swap bound
/// applies with R = |V_low| - ceil(T/2). O(T) per prediction.
Certificate cert_pcr(const EnsembleModel& model,
                     const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                     BoundSide side = BoundSide::UpperOnly);

/// Weighted certificate with per-submodel costs (disjoint mapping). Always at
/// least as strong as cert_pcr since every cost is >= 1.
Certificate cert_wpcr(const EnsembleModel& model,
                      const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                      const CostProfile& costs,
                      BoundSide side = BoundSide::UpperOnly);

}  // namespace certreg
