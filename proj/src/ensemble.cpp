#include "certreg/ensemble.hpp"

#include <algorithm>
#include <stdexcept>

#include "certreg/rng.hpp"

namespace certreg {

std::vector<double> EnsembleModel::submodel_predictions(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dim) throw std::invalid_argument("feature dimension mismatch");
  std::vector<double> preds;
  preds.reserve(submodels.size());
  for (const auto& sub : submodels) preds.push_back(predict(sub, x));
  return preds;
}

namespace {

Dataset block_union_data(const Dataset& train,
                         const std::vector<std::vector<std::size_t>>& by_block,
                         const std::vector<int>& blocks) {
  std::vector<std::size_t> rows;
  for (const int b : blocks) {
    const auto& members = by_block[static_cast<std::size_t>(b)];
    rows.insert(rows.end(), members.begin(), members.end());
  }
  std::sort(rows.begin(), rows.end());
  return train.select(rows);
}

EnsembleModel train_with_mapping(const Dataset& train,
                                 PartitionAssignment partition,
                                 BlockMapping mapping, std::uint64_t seed,
                                 const SubmodelSpec& spec, bool parallel) {
  const auto by_block = partition.instances_by_block();
  const int num_models = mapping.num_models();

  EnsembleModel model;
  model.partition = std::move(partition);
  model.mapping = std::move(mapping);
  model.spec = spec;
  model.seed = seed;
  model.dim = train.x.cols();
  model.submodels.resize(static_cast<std::size_t>(num_models));

  // Submodels share no mutable state, so they can be fitted independently.
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int t = 0; t < num_models; ++t) {
    try {
      const Dataset data = block_union_data(
          train, by_block, model.mapping.model_blocks[static_cast<std::size_t>(t)]);
      model.submodels[static_cast<std::size_t>(t)] =
          train_submodel(spec, data.x, data.y);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return model;
}

EnsembleModel train_partitioned_impl(const Dataset& train, int num_models,
                                     std::uint64_t seed,
                                     const SubmodelSpec& spec, bool parallel) {
  if (num_models < 1 || num_models % 2 == 0)
    throw std::invalid_argument("ensemble size must be a positive odd integer");
  if (static_cast<std::size_t>(num_models) > train.size())
    throw std::invalid_argument("more submodels than training instances");
  PartitionAssignment partition = partition_train(train.size(), num_models, seed);
  BlockMapping mapping = disjoint_mapping(num_models);
  return train_with_mapping(train, std::move(partition), std::move(mapping), seed,
                            spec, parallel);
}

}  // namespace

EnsembleModel train_partitioned(const Dataset& train, int num_models,
                                std::uint64_t seed, const SubmodelSpec& spec) {
  return train_partitioned_impl(train, num_models, seed, spec, true);
}

EnsembleModel train_partitioned_serial(const Dataset& train, int num_models,
                                       std::uint64_t seed,
                                       const SubmodelSpec& spec) {
  return train_partitioned_impl(train, num_models, seed, spec, false);
}

EnsembleModel train_overlapping(const Dataset& train, int q, int d,
                                std::uint64_t seed, const SubmodelSpec& spec) {
  if (q < 1) throw std::invalid_argument("q must be positive");
  if (d < 1) throw std::invalid_argument("spread degree must be positive");
  const int num_models = q * d;
  if (num_models % 2 == 0)
    throw std::invalid_argument(
        "overlapping ensembles need odd T = q*d; pick odd q and d");
  if (static_cast<std::size_t>(num_models) > train.size())
    throw std::invalid_argument("more blocks than training instances");
  PartitionAssignment partition = partition_train(train.size(), num_models, seed);
  BlockMapping mapping =
      build_block_mapping(num_models, num_models, d,
                          substream(seed, "mapping"));
  return train_with_mapping(train, std::move(partition), std::move(mapping), seed,
                            spec, true);
}

double ensemble_predict(const EnsembleModel& model,
                        const Eigen::Ref<const Eigen::VectorXd>& x) {
  return median(model.submodel_predictions(x));
}

namespace {

std::vector<double> oriented_predictions(const EnsembleModel& model,
                                         const Eigen::Ref<const Eigen::VectorXd>& x,
                                         double* xi, BoundSide side) {
  if (side == BoundSide::TwoSided)
    throw std::invalid_argument("certify each side separately and combine");
  std::vector<double> preds = model.submodel_predictions(x);
  if (side == BoundSide::LowerOnly) {
    for (double& p : preds) p = -p;
    *xi = -*xi;
  }
  return preds;
}

Certificate oriented(const Certificate& cert, BoundSide side,
                     ThreatModel threat = ThreatModel::InsertDelete) {
  if (!cert.is_robust()) return Certificate::not_robust(side);
  return Certificate::robust(cert.radius(), side, cert.provenance(), threat);
}

}  // namespace

Certificate cert_pcr(const EnsembleModel& model,
                     const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                     BoundSide side) {
  if (!model.mapping.disjoint())
    throw std::invalid_argument("cert_pcr requires a disjoint block mapping");
  const std::vector<double> preds = oriented_predictions(model, x, &xi, side);
  return oriented(cert_swap({preds, xi}), side);
}

Certificate cert_wpcr(const EnsembleModel& model,
                      const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                      const CostProfile& costs, BoundSide side) {
  if (!model.mapping.disjoint())
    throw std::invalid_argument("cert_wpcr requires a disjoint block mapping");
  if (costs.r.size() != model.submodels.size())
    throw std::invalid_argument("need one cost per submodel");
  const std::vector<double> preds = oriented_predictions(model, x, &xi, side);

  WeightedVoteSet wvotes;
  wvotes.votes = {preds, xi};
  wvotes.costs.reserve(preds.size());
  for (std::size_t t = 0; t < preds.size(); ++t) {
    if (preds[t] <= xi) {
      if (costs.r[t] < 1)
        throw std::invalid_argument(
            "submodel at or below the threshold needs a cost >= 1");
      wvotes.costs.push_back(costs.r[t]);
    } else {
      // Never consumed by the certifier; a violating submodel's cost is
      // conceptually zero but the vote set stores a positive placeholder.
      wvotes.costs.push_back(1);
    }
  }
  return oriented(cert_weighted_swap(wvotes), side, costs.threat);
}

}  // namespace certreg
