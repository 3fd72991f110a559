#pragma once

#include <Eigen/Dense>
#include <optional>
#include <variant>
#include <vector>

#include "certreg/certificate.hpp"
#include "certreg/dataset.hpp"
#include "certreg/median_cert.hpp"

namespace certreg {

struct FixedK {
  int k = 1;
};
struct Radius {
  double radius = 1.0;
};
using NeighborhoodMode = std::variant<FixedK, Radius>;

/// Memorizing regressor that predicts the median target of a query's
/// neighborhood under Minkowski-p distance. Features are min-max normalized
/// per dimension at fit time; queries are clamped into [0,1] after the same
/// transform, and degenerate (min == max) dimensions collapse to zero.
/// Immutable after fitting; concurrent queries are safe.
struct NeighborModel {
  Eigen::MatrixXd features;  // normalized copies of the training features
  Eigen::VectorXd targets;
  NeighborhoodMode mode;
  double p = 2.0;
  Eigen::VectorXd feat_min;
  Eigen::VectorXd feat_max;

  std::size_t size() const { return static_cast<std::size_t>(features.rows()); }
  Eigen::VectorXd normalize(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

/// The default neighborhood size: the larger odd integer nearest to n/2,
/// clamped to n.
int default_neighbor_count(std::size_t n);

NeighborModel fit_neighbor_model(const Dataset& train, NeighborhoodMode mode,
                                 double p = 2.0);

/// Targets of the query's neighborhood. FixedK: the k nearest stored
/// instances with distance ties at the boundary broken by lowest stored
/// index. Radius: every stored instance within the radius (possibly none).
/// One linear scan over the stored instances.
std::vector<double> neighbor_targets(const NeighborModel& model,
                                     const Eigen::Ref<const Eigen::VectorXd>& x);

/// neighbor_targets wrapped with the threshold, ready for a certifier.
VoteSet neighborhood(const NeighborModel& model,
                     const Eigen::Ref<const Eigen::VectorXd>& x, double xi);

double neighbor_predict(const NeighborModel& model,
                        const Eigen::Ref<const Eigen::VectorXd>& x);

/// Fixed-population certificate: ejecting a neighbor by insertion behaves
/// like a swap, so the swap bound applies to the k neighborhood votes.
Certificate cert_knn(const NeighborModel& model,
                     const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                     BoundSide side = BoundSide::UpperOnly);

/// Region-based certificate: neighborhood membership shrinks and grows with
/// the training set, so the insertion/deletion bound applies.
Certificate cert_rnn(const NeighborModel& model,
                     const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                     Tightness tightness = Tightness::Standard,
                     BoundSide side = BoundSide::UpperOnly);

}  // namespace certreg
