#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "certreg/dataset.hpp"
#include "certreg/ensemble.hpp"

namespace certreg {

/// Deterministic trainer: fits on the given data and predicts at x_te.
using TrainPredictFn = std::function<double(
    const Eigen::MatrixXd&, const Eigen::VectorXd&,
    const Eigen::Ref<const Eigen::VectorXd>&)>;

/// Constructive deletion-robustness certification: the largest r <= r_cap
/// such that retraining on the data minus ANY subset of fewer than r rows
/// still predicts at most xi at x_te. Returns 0 when the full-data prediction
/// already exceeds xi, and 1 when some single deletion flips it. The result
/// is established by exhaustively retraining on every deletion subset up to
/// size r_cap - 1 (so O(n^(r-1)) fits); subset sizes beyond one are guarded
/// against blowup. Deleting down to an empty training set counts as a flip.
///
/// The certified cost is valid against deletions only.
std::int64_t compute_deletion_cost(const TrainPredictFn& trainer,
                                   const Eigen::MatrixXd& x,
                                   const Eigen::VectorXd& y,
                                   const Eigen::Ref<const Eigen::VectorXd>& x_te,
                                   double xi, std::int64_t r_cap);

/// Amortized leave-one-out layer for ensembles: fits every leave-one-row-out
/// variant of every submodel once, then answers per-test-point cost queries
/// with plain predictions. Supports r_cap <= 2, which needs exactly the
/// |D_t| + 1 models the table stores.
class LeaveOneOutCosts {
 public:
  LeaveOneOutCosts(const EnsembleModel& model, const Dataset& train,
                   bool parallel = true);

  /// Per-submodel deletion costs for one bound side at one test point.
  /// UpperOnly certifies predictions staying <= xi, LowerOnly staying >= xi.
  CostProfile profile(const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                      std::int64_t r_cap, BoundSide side) const;

  std::size_t total_models() const;

 private:
  struct SubmodelTable {
    Submodel base;
    std::vector<Submodel> leave_one_out;
  };
  std::vector<SubmodelTable> tables_;
};

}  // namespace certreg
