#pragma once

#include <Eigen/Dense>
#include <optional>

#include "certreg/cover.hpp"
#include "certreg/ensemble.hpp"

namespace certreg {

/// Builds the cover program for one prediction: the submodels at or below the
/// threshold, their coverage needs (1 under unit cost, r_t under weighted
/// costs), and the blocks composing each of their training sets. Returns
/// nullopt when the median prediction already violates the bound.
std::optional<CoverInstance> build_cover_instance(
    const EnsembleModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
    double xi, const CostProfile* costs = nullptr);

/// Unit-cost overlapping certificate via the branch-and-bound solver. Only
/// the proven lower bound is ever reported; a timed-out solve downgrades the
/// provenance to SolverLowerBound but stays sound. Collapses to cert_pcr on
/// disjoint mappings.
Certificate cert_ocr(const EnsembleModel& model,
                     const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                     double time_limit_seconds = kNoTimeLimit,
                     BoundSide side = BoundSide::UpperOnly,
                     CoverSolution* diagnostics = nullptr);

/// Weighted overlapping certificate. The program covers one extra submodel
/// and subtracts one from the objective, so on disjoint mappings it can sit
/// one below cert_wpcr in a rare corner case.
Certificate cert_wocr(const EnsembleModel& model,
                      const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                      const CostProfile& costs,
                      double time_limit_seconds = kNoTimeLimit,
                      BoundSide side = BoundSide::UpperOnly,
                      CoverSolution* diagnostics = nullptr);

}  // namespace certreg
