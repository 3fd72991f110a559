#include "certreg/submodels.hpp"

#include <algorithm>
#include <stdexcept>

namespace certreg {

RidgeModel train_ridge(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       double lambda) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (n < 1) throw std::invalid_argument("ridge needs at least one instance");
  if (y.size() != n) throw std::invalid_argument("feature/target row mismatch");
  if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
  if (lambda == 0.0 && d >= n)
    throw std::invalid_argument("lambda > 0 required when d >= n");

  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const double y_mean = y.mean();
  const Eigen::MatrixXd xc = x.rowwise() - x_mean;
  const Eigen::VectorXd yc = y.array() - y_mean;

  Eigen::MatrixXd gram = xc.transpose() * xc;
  gram.diagonal().array() += lambda;
  const Eigen::VectorXd rhs = xc.transpose() * yc;

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  Eigen::VectorXd w = ldlt.solve(rhs);

  const double scale = std::max(1.0, rhs.lpNorm<Eigen::Infinity>());
  const double residual = (gram * w - rhs).lpNorm<Eigen::Infinity>();
  if (!w.allFinite() || residual > 1e-6 * scale)
    throw std::runtime_error("ridge normal equations are singular or ill-posed");

  RidgeModel model;
  model.weights = std::move(w);
  model.intercept = y_mean - model.weights.dot(x_mean.transpose());
  model.lambda = lambda;
  return model;
}

double predict(const RidgeModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != model.weights.size())
    throw std::invalid_argument("feature dimension mismatch");
  return model.weights.dot(x) + model.intercept;
}

double predict(const ConstantModel& model,
               const Eigen::Ref<const Eigen::VectorXd>&) {
  return model.value;
}

double predict(const Submodel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return std::visit([&](const auto& m) { return predict(m, x); }, model);
}

Submodel train_submodel(const SubmodelSpec& spec, const Eigen::MatrixXd& x,
                        const Eigen::VectorXd& y) {
  switch (spec.kind) {
    case SubmodelSpec::Kind::Ridge:
      return train_ridge(x, y, spec.lambda);
    case SubmodelSpec::Kind::Constant:
      return ConstantModel{spec.constant_value};
  }
  throw std::logic_error("unknown submodel architecture");
}

}  // namespace certreg
