#include "certreg/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace certreg {

int default_neighbor_count(std::size_t n) {
  if (n < 1) throw std::invalid_argument("empty training set");
  const double half = static_cast<double>(n) / 2.0;
  // Larger odd integer nearest to n/2.
  std::int64_t k = static_cast<std::int64_t>(std::llround(half));
  if (k % 2 == 0) {
    const double below = std::abs(half - static_cast<double>(k - 1));
    const double above = std::abs(half - static_cast<double>(k + 1));
    k += above <= below ? 1 : -1;
  }
  k = std::max<std::int64_t>(k, 1);
  if (k > static_cast<std::int64_t>(n))
    k = static_cast<std::int64_t>(n % 2 == 1 ? n : n - 1);
  return static_cast<int>(k);
}

Eigen::VectorXd NeighborModel::normalize(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != feat_min.size())
    throw std::invalid_argument("feature dimension mismatch");
  Eigen::VectorXd out(x.size());
  for (Eigen::Index d = 0; d < x.size(); ++d) {
    const double range = feat_max(d) - feat_min(d);
    out(d) = range > 0.0
                 ? std::clamp((x(d) - feat_min(d)) / range, 0.0, 1.0)
                 : 0.0;
  }
  return out;
}

NeighborModel fit_neighbor_model(const Dataset& train, NeighborhoodMode mode,
                                 double p) {
  if (train.size() < 1) throw std::invalid_argument("empty training set");
  if (p <= 0.0) throw std::invalid_argument("Minkowski order must be positive");
  if (const auto* fixed = std::get_if<FixedK>(&mode)) {
    if (fixed->k < 1 || fixed->k % 2 == 0)
      throw std::invalid_argument("k must be a positive odd integer");
    if (static_cast<std::size_t>(fixed->k) > train.size())
      throw std::invalid_argument("k cannot exceed the training set size");
  } else {
    if (std::get<Radius>(mode).radius <= 0.0)
      throw std::invalid_argument("radius must be positive");
  }

  NeighborModel model;
  model.mode = mode;
  model.p = p;
  model.targets = train.y;
  model.feat_min = train.x.colwise().minCoeff();
  model.feat_max = train.x.colwise().maxCoeff();
  model.features.resize(train.x.rows(), train.x.cols());
  for (Eigen::Index r = 0; r < train.x.rows(); ++r)
    model.features.row(r) = model.normalize(train.x.row(r)).transpose();
  return model;
}

namespace {

double minkowski(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                 const Eigen::Ref<const Eigen::VectorXd>& b, double p) {
  double sum = 0.0;
  for (Eigen::Index d = 0; d < a.size(); ++d)
    sum += std::pow(std::abs(a(d) - b(d)), p);
  return std::pow(sum, 1.0 / p);
}

}  // namespace

std::vector<double> neighbor_targets(const NeighborModel& model,
                                     const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::VectorXd q = model.normalize(x);
  const std::size_t n = model.size();

  if (const auto* region = std::get_if<Radius>(&model.mode)) {
    std::vector<double> targets;
    for (std::size_t i = 0; i < n; ++i)
      if (minkowski(model.features.row(static_cast<Eigen::Index>(i)), q,
                    model.p) <= region->radius)
        targets.push_back(model.targets(static_cast<Eigen::Index>(i)));
    return targets;
  }

  const int k = std::get<FixedK>(model.mode).k;
  std::vector<std::pair<double, std::size_t>> ranked(n);
  for (std::size_t i = 0; i < n; ++i)
    ranked[i] = {minkowski(model.features.row(static_cast<Eigen::Index>(i)), q,
                           model.p),
                 i};
  // Selection, not a full sort: distance ties broken by lowest stored index.
  std::nth_element(ranked.begin(), ranked.begin() + (k - 1), ranked.end());
  std::vector<double> targets;
  targets.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    targets.push_back(model.targets(static_cast<Eigen::Index>(ranked[static_cast<std::size_t>(i)].second)));
  return targets;
}

VoteSet neighborhood(const NeighborModel& model,
                     const Eigen::Ref<const Eigen::VectorXd>& x, double xi) {
  return {neighbor_targets(model, x), xi};
}

double neighbor_predict(const NeighborModel& model,
                        const Eigen::Ref<const Eigen::VectorXd>& x) {
  return median(neighbor_targets(model, x));
}

namespace {

Certificate oriented_ibl(const NeighborModel& model,
                         const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                         BoundSide side, Paradigm paradigm) {
  if (side == BoundSide::TwoSided)
    throw std::invalid_argument("certify each side separately and combine");
  VoteSet votes = neighborhood(model, x, xi);
  if (side == BoundSide::LowerOnly) {
    for (double& v : votes.values) v = -v;
    votes.threshold = -votes.threshold;
  }
  const Certificate cert = cert_upper_side(votes, paradigm);
  if (!cert.is_robust()) return Certificate::not_robust(side);
  return Certificate::robust(cert.radius(), side, cert.provenance());
}

}  // namespace

Certificate cert_knn(const NeighborModel& model,
                     const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                     BoundSide side) {
  if (!std::holds_alternative<FixedK>(model.mode))
    throw std::invalid_argument("cert_knn requires a fixed-k model");
  return oriented_ibl(model, x, xi, side, Paradigm::Swap);
}

Certificate cert_rnn(const NeighborModel& model,
                     const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                     Tightness tightness, BoundSide side) {
  if (!std::holds_alternative<Radius>(model.mode))
    throw std::invalid_argument("cert_rnn requires a radius model");
  return oriented_ibl(model, x, xi, side,
                      tightness == Tightness::Tight ? Paradigm::InsertDeleteTight
                                                    : Paradigm::InsertDelete);
}

}  // namespace certreg
