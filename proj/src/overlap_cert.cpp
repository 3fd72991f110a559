#include "certreg/overlap_cert.hpp"

#include <algorithm>
#include <stdexcept>

namespace certreg {

namespace {

std::int64_t majority(std::size_t t) { return static_cast<std::int64_t>((t + 1) / 2); }

std::optional<CoverInstance> build_oriented(const EnsembleModel& model,
                                            std::vector<double> preds, double xi,
                                            const CostProfile* costs) {
  if (costs && costs->r.size() != preds.size())
    throw std::invalid_argument("need one cost per submodel");
  if (median(preds) > xi) return std::nullopt;

  CoverInstance inst;
  inst.num_blocks = model.mapping.num_blocks;
  inst.num_models = static_cast<int>(preds.size());
  inst.r_max = 1;
  for (std::size_t t = 0; t < preds.size(); ++t) {
    if (preds[t] > xi) continue;
    CoverEntry entry;
    entry.model = static_cast<int>(t);
    if (costs) {
      if (costs->r[t] < 1)
        throw std::invalid_argument(
            "submodel at or below the threshold needs a cost >= 1");
      entry.need = costs->r[t];
      inst.r_max = std::max(inst.r_max, entry.need);
    }
    entry.blocks = model.mapping.model_blocks[t];
    inst.entries.push_back(std::move(entry));
  }
  inst.sigma = inst.r_max > 1 ? 1 : 0;
  inst.required_cover = static_cast<std::int64_t>(inst.entries.size()) -
                        majority(preds.size()) + inst.sigma;
  inst.validate();
  return inst;
}

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

Certificate solve_to_certificate(const std::optional<CoverInstance>& inst,
                                 double time_limit_seconds, BoundSide side,
                                 ThreatModel threat, CoverSolution* diagnostics) {
  if (!inst) return Certificate::not_robust(side);
  const CoverSolution sol = solve_ilp_bb(*inst, time_limit_seconds);
  if (diagnostics) *diagnostics = sol;
  return Certificate::robust(
      sol.certified_r, side,
      sol.exact ? Provenance::SolverExact : Provenance::SolverLowerBound, threat);
}

}  // namespace

std::optional<CoverInstance> build_cover_instance(
    const EnsembleModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
    double xi, const CostProfile* costs) {
  return build_oriented(model, model.submodel_predictions(x), xi, costs);
}

Certificate cert_ocr(const EnsembleModel& model,
                     const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                     double time_limit_seconds, BoundSide side,
                     CoverSolution* diagnostics) {
  const std::vector<double> preds = oriented_predictions(model, x, &xi, side);
  return solve_to_certificate(build_oriented(model, preds, xi, nullptr),
                              time_limit_seconds, side, ThreatModel::InsertDelete,
                              diagnostics);
}

Certificate cert_wocr(const EnsembleModel& model,
                      const Eigen::Ref<const Eigen::VectorXd>& x, double xi,
                      const CostProfile& costs, double time_limit_seconds,
                      BoundSide side, CoverSolution* diagnostics) {
  const std::vector<double> preds = oriented_predictions(model, x, &xi, side);
  return solve_to_certificate(build_oriented(model, preds, xi, &costs),
                              time_limit_seconds, side, costs.threat, diagnostics);
}

}  // namespace certreg
