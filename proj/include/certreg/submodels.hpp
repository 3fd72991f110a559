#pragma once

#include <Eigen/Dense>
#include <variant>

namespace certreg {

/// Linear model fitted by the regularized normal equations with a centered
/// intercept. Fitting is a deterministic direct solve: the same data and
/// lambda always reproduce bit-identical parameters, which every certificate
/// in this project relies on.
struct RidgeModel {
  Eigen::VectorXd weights;
  double intercept = 0.0;
  double lambda = 0.0;
};

struct ConstantModel {
  double value = 0.0;
};

using Submodel = std::variant<RidgeModel, ConstantModel>;

/// Architecture choice for ensemble submodels. Instance-based learners are
/// deliberately not offered here: splitting a memorized-instance model across
/// an ensemble roughly halves its expected certified robustness, so the
/// instance-based certifiers stay standalone.
struct SubmodelSpec {
  enum class Kind { Ridge, Constant };
  Kind kind = Kind::Ridge;
  double lambda = 1e-3;
  double constant_value = 0.0;

  static SubmodelSpec ridge(double lambda) { return {Kind::Ridge, lambda, 0.0}; }
  static SubmodelSpec constant(double value) {
    return {Kind::Constant, 0.0, value};
  }
};

/// Solves (Xc' Xc + lambda I) w = Xc' yc on column-centered data and checks
/// the residual of the normal equations. lambda must be positive when
/// d >= n; a singular unregularized system is rejected.
RidgeModel train_ridge(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       double lambda);

double predict(const RidgeModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);
double predict(const ConstantModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);
double predict(const Submodel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

Submodel train_submodel(const SubmodelSpec& spec, const Eigen::MatrixXd& x,
                        const Eigen::VectorXd& y);

}  // namespace certreg
