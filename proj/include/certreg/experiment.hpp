#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "certreg/dataset.hpp"
#include "certreg/deletion_cost.hpp"
#include "certreg/ensemble.hpp"
#include "certreg/neighbors.hpp"

namespace certreg {

/// How per-instance certification bounds are derived from the true target.
/// AbsoluteTwoSided and FractionOfTarget certify y - xi <= f(x) <= y + xi
/// with xi fixed or a fraction of |y|; BinarySign certifies sign agreement
/// (a one-sided bound at zero on the side of the true label).
struct ThresholdSpec {
  enum class Mode { AbsoluteTwoSided, FractionOfTarget, BinarySign };
  Mode mode = Mode::AbsoluteTwoSided;
  double value = 0.0;
};

enum class Method { KnnCr, RnnCr, Pcr, Wpcr, Ocr, Wocr };

Method method_from_string(const std::string& name);
std::string to_string(Method method);

struct ExperimentConfig {
  std::string dataset_path;
  std::string target_column;
  Method method = Method::Pcr;
  int q = 1;        // every (sub)model trains on 1/q of the data
  int d = 0;        // spread degree; overlapping methods only
  std::uint64_t seed = 1;
  int trials = 10;
  int test_samples = 100;
  ThresholdSpec threshold;
  double ilp_time_limit = 1200.0;
  std::int64_t r_cap = 2;
  double lambda = 1e-3;       // ridge regularization for ensemble submodels
  double minkowski_p = 2.0;
  std::optional<int> k;       // neighborhood size override
  std::optional<double> radius;
  bool tight = false;         // opt-in tight insertion/deletion bound
  bool one_hot = true;

  /// Submodel count: q odd-adjusted for disjoint ensembles, q*d (odd
  /// required) for overlapping ones.
  int derived_submodels() const;
  void validate() const;
};

/// Flat key-value JSON, e.g. {"dataset": "...", "method": "pcr", "q": 25}.
ExperimentConfig load_config(const std::string& path);

struct CurveRow {
  std::int64_t psi = 0;
  double mean = 0.0;
  double stdev = 0.0;
};

/// Certified accuracy as a function of the attack budget psi: the fraction of
/// test predictions with certified robustness R >= psi, averaged over trials.
/// Non-increasing in psi by construction.
struct CertCurve {
  std::vector<CurveRow> rows;
};

/// One split's trained model plus everything needed to certify a test point
/// against its per-instance bounds.
class TrainedMethod {
 public:
  static TrainedMethod train(const ExperimentConfig& config,
                             const Dataset& train_split, std::uint64_t model_seed);

  double predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Certificate certify(const Eigen::Ref<const Eigen::VectorXd>& x,
                      double y_true) const;

 private:
  TrainedMethod() = default;

  const ExperimentConfig* config_ = nullptr;
  std::optional<NeighborModel> neighbor_;
  std::optional<EnsembleModel> ensemble_;
  std::optional<LeaveOneOutCosts> loo_;
};

using PointCertifier = std::function<std::optional<std::int64_t>(std::size_t)>;

/// Certifies a batch of test points. Certification of distinct points is
/// pure, so the parallel kernel writes into slot-indexed results and matches
/// the serial reference bit for bit.
std::vector<std::optional<std::int64_t>> certify_batch(std::size_t count,
                                                       const PointCertifier& fn);
std::vector<std::optional<std::int64_t>> certify_batch_serial(
    std::size_t count, const PointCertifier& fn);

/// Full evaluation protocol: seeded 90/10 splits per trial, per-method
/// training, two-sided certification of sampled test points, and the mean /
/// stdev certified-accuracy curve across trials.
CertCurve run_experiment(const ExperimentConfig& config);
CertCurve run_experiment_on(const ExperimentConfig& config, Dataset data);

/// CSV columns exactly `R,mean,stdev`, one row per psi.
void emit_csv(const CertCurve& curve, const std::string& path);
std::string curve_to_csv(const CertCurve& curve);

/// JSON mirror of the same fields; load(emit(x)) round-trips byte-identically.
void emit_json(const CertCurve& curve, const std::string& path);
std::string curve_to_json(const CertCurve& curve);
CertCurve curve_from_json(const std::string& text);
CertCurve load_curve_json(const std::string& path);

}  // namespace certreg
