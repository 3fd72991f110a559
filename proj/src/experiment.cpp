#include "certreg/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "certreg/overlap_cert.hpp"
#include "certreg/rng.hpp"

namespace certreg {

using json = nlohmann::ordered_json;

Method method_from_string(const std::string& name) {
  if (name == "knn-cr") return Method::KnnCr;
  if (name == "rnn-cr") return Method::RnnCr;
  if (name == "pcr") return Method::Pcr;
  if (name == "wpcr") return Method::Wpcr;
  if (name == "ocr") return Method::Ocr;
  if (name == "wocr") return Method::Wocr;
  throw std::invalid_argument("unknown method: " + name);
}

std::string to_string(Method method) {
  switch (method) {
    case Method::KnnCr: return "knn-cr";
    case Method::RnnCr: return "rnn-cr";
    case Method::Pcr: return "pcr";
    case Method::Wpcr: return "wpcr";
    case Method::Ocr: return "ocr";
    case Method::Wocr: return "wocr";
  }
  throw std::logic_error("unknown method");
}

int ExperimentConfig::derived_submodels() const {
  if (method == Method::Ocr || method == Method::Wocr) return q * d;
  return q % 2 == 1 ? q : q + 1;
}

void ExperimentConfig::validate() const {
  if (q < 1) throw std::invalid_argument("q must be positive");
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  if (test_samples < 1) throw std::invalid_argument("test_samples must be positive");
  if (r_cap < 1) throw std::invalid_argument("r_cap must be positive");
  if (threshold.value < 0.0)
    throw std::invalid_argument("threshold value must be nonnegative");
  switch (method) {
    case Method::KnnCr:
      if (q != 1) throw std::invalid_argument("knn-cr always uses q = 1");
      break;
    case Method::RnnCr:
      if (q != 1) throw std::invalid_argument("rnn-cr always uses q = 1");
      if (!radius) throw std::invalid_argument("rnn-cr needs a radius");
      break;
    case Method::Ocr:
    case Method::Wocr:
      if (d < 1)
        throw std::invalid_argument("overlapping methods need a spread degree d");
      if ((q * d) % 2 == 0)
        throw std::invalid_argument("overlapping methods need odd T = q*d");
      break;
    default:
      break;
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;

  ExperimentConfig config;
  config.dataset_path = j.at("dataset").get<std::string>();
  config.target_column = j.at("target").get<std::string>();
  config.method = method_from_string(j.at("method").get<std::string>());
  if (j.contains("q")) config.q = j["q"].get<int>();
  if (j.contains("d")) config.d = j["d"].get<int>();
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("trials")) config.trials = j["trials"].get<int>();
  if (j.contains("test_samples")) config.test_samples = j["test_samples"].get<int>();
  if (j.contains("threshold_mode")) {
    const std::string mode = j["threshold_mode"].get<std::string>();
    if (mode == "absolute")
      config.threshold.mode = ThresholdSpec::Mode::AbsoluteTwoSided;
    else if (mode == "fraction")
      config.threshold.mode = ThresholdSpec::Mode::FractionOfTarget;
    else if (mode == "sign")
      config.threshold.mode = ThresholdSpec::Mode::BinarySign;
    else
      throw std::invalid_argument("unknown threshold_mode: " + mode);
  }
  if (j.contains("threshold_value"))
    config.threshold.value = j["threshold_value"].get<double>();
  if (j.contains("ilp_time_limit"))
    config.ilp_time_limit = j["ilp_time_limit"].get<double>();
  if (j.contains("r_cap")) config.r_cap = j["r_cap"].get<std::int64_t>();
  if (j.contains("lambda")) config.lambda = j["lambda"].get<double>();
  if (j.contains("p")) config.minkowski_p = j["p"].get<double>();
  if (j.contains("k")) config.k = j["k"].get<int>();
  if (j.contains("radius")) config.radius = j["radius"].get<double>();
  if (j.contains("tight")) config.tight = j["tight"].get<bool>();
  if (j.contains("one_hot")) config.one_hot = j["one_hot"].get<bool>();
  config.validate();
  return config;
}

TrainedMethod TrainedMethod::train(const ExperimentConfig& config,
                                   const Dataset& train_split,
                                   std::uint64_t model_seed) {
  config.validate();
  TrainedMethod trained;
  trained.config_ = &config;
  switch (config.method) {
    case Method::KnnCr: {
      const int k = config.k ? *config.k
                             : default_neighbor_count(train_split.size());
      trained.neighbor_ = fit_neighbor_model(train_split, FixedK{k},
                                             config.minkowski_p);
      break;
    }
    case Method::RnnCr:
      trained.neighbor_ = fit_neighbor_model(train_split, Radius{*config.radius},
                                             config.minkowski_p);
      break;
    case Method::Pcr:
    case Method::Wpcr:
      trained.ensemble_ = train_partitioned(
          train_split, config.derived_submodels(), model_seed,
          SubmodelSpec::ridge(config.lambda));
      break;
    case Method::Ocr:
    case Method::Wocr:
      trained.ensemble_ = train_overlapping(train_split, config.q, config.d,
                                            model_seed,
                                            SubmodelSpec::ridge(config.lambda));
      break;
  }
  if (config.method == Method::Wpcr || config.method == Method::Wocr)
    trained.loo_.emplace(*trained.ensemble_, train_split);
  return trained;
}

double TrainedMethod::predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (neighbor_) return neighbor_predict(*neighbor_, x);
  return ensemble_predict(*ensemble_, x);
}

namespace {

struct Bounds {
  bool lower = false;
  bool upper = false;
  double lo = 0.0;
  double hi = 0.0;
};

Bounds bounds_for(const ThresholdSpec& spec, double y_true) {
  Bounds b;
  switch (spec.mode) {
    case ThresholdSpec::Mode::AbsoluteTwoSided:
      b = {true, true, y_true - spec.value, y_true + spec.value};
      break;
    case ThresholdSpec::Mode::FractionOfTarget: {
      const double xi = spec.value * std::abs(y_true);
      b = {true, true, y_true - xi, y_true + xi};
      break;
    }
    case ThresholdSpec::Mode::BinarySign:
      // Sign agreement: keep positive-label predictions above zero and
      // nonpositive-label predictions at or below zero.
      if (y_true > 0.0)
        b = {true, false, 0.0, 0.0};
      else
        b = {false, true, 0.0, 0.0};
      break;
  }
  return b;
}

}  // namespace

Certificate TrainedMethod::certify(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   double y_true) const {
  const ExperimentConfig& config = *config_;
  const Bounds b = bounds_for(config.threshold, y_true);

  Certificate lower = Certificate::robust(0, BoundSide::LowerOnly,
                                          Provenance::ClosedForm);
  Certificate upper = Certificate::robust(0, BoundSide::UpperOnly,
                                          Provenance::ClosedForm);

  switch (config.method) {
    case Method::KnnCr:
    case Method::RnnCr: {
      // One neighborhood scan serves both sides.
      const std::vector<double> votes = neighbor_targets(*neighbor_, x);
      const Paradigm paradigm =
          config.method == Method::KnnCr
              ? Paradigm::Swap
              : (config.tight ? Paradigm::InsertDeleteTight
                              : Paradigm::InsertDelete);
      if (b.lower) lower = cert_lower_side({votes, b.lo}, paradigm);
      if (b.upper) upper = cert_upper_side({votes, b.hi}, paradigm);
      break;
    }
    case Method::Pcr:
      if (b.lower) lower = cert_pcr(*ensemble_, x, b.lo, BoundSide::LowerOnly);
      if (b.upper) upper = cert_pcr(*ensemble_, x, b.hi, BoundSide::UpperOnly);
      break;
    case Method::Wpcr:
      if (b.lower)
        lower = cert_wpcr(*ensemble_, x, b.lo,
                          loo_->profile(x, b.lo, config.r_cap, BoundSide::LowerOnly),
                          BoundSide::LowerOnly);
      if (b.upper)
        upper = cert_wpcr(*ensemble_, x, b.hi,
                          loo_->profile(x, b.hi, config.r_cap, BoundSide::UpperOnly),
                          BoundSide::UpperOnly);
      break;
    case Method::Ocr:
      if (b.lower)
        lower = cert_ocr(*ensemble_, x, b.lo, config.ilp_time_limit,
                         BoundSide::LowerOnly);
      if (b.upper)
        upper = cert_ocr(*ensemble_, x, b.hi, config.ilp_time_limit,
                         BoundSide::UpperOnly);
      break;
    case Method::Wocr:
      if (b.lower)
        lower = cert_wocr(*ensemble_, x, b.lo,
                          loo_->profile(x, b.lo, config.r_cap, BoundSide::LowerOnly),
                          config.ilp_time_limit, BoundSide::LowerOnly);
      if (b.upper)
        upper = cert_wocr(*ensemble_, x, b.hi,
                          loo_->profile(x, b.hi, config.r_cap, BoundSide::UpperOnly),
                          config.ilp_time_limit, BoundSide::UpperOnly);
      break;
  }

  if (b.lower && b.upper) return combine_two_sided(lower, upper);
  const Certificate& one = b.lower ? lower : upper;
  return one;
}

std::vector<std::optional<std::int64_t>> certify_batch(std::size_t count,
                                                       const PointCertifier& fn) {
  std::vector<std::optional<std::int64_t>> out(count);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < count; ++i) {
    try {
      out[i] = fn(i);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<std::optional<std::int64_t>> certify_batch_serial(
    std::size_t count, const PointCertifier& fn) {
  std::vector<std::optional<std::int64_t>> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
  return out;
}

namespace {

// Targets in {0,1} are remapped to {-1,+1} for sign-agreement thresholds so
// that the label space is symmetric around zero.
void remap_binary_targets(Dataset* data) {
  bool zero_one = true;
  for (Eigen::Index i = 0; i < data->y.size(); ++i)
    if (data->y(i) != 0.0 && data->y(i) != 1.0) {
      zero_one = false;
      break;
    }
  if (!zero_one) return;
  for (Eigen::Index i = 0; i < data->y.size(); ++i)
    data->y(i) = data->y(i) == 1.0 ? 1.0 : -1.0;
}

}  // namespace

CertCurve run_experiment_on(const ExperimentConfig& config, Dataset data) {
  config.validate();
  if (config.threshold.mode == ThresholdSpec::Mode::BinarySign)
    remap_binary_targets(&data);

  const std::size_t n = data.size();
  if (n < 10) throw std::invalid_argument("dataset too small for a 90/10 split");
  const std::size_t test_count = std::max<std::size_t>(1, n / 10);

  std::vector<std::vector<std::int64_t>> trial_radii(
      static_cast<std::size_t>(config.trials));
  std::vector<std::size_t> trial_samples(static_cast<std::size_t>(config.trials));

  for (int trial = 0; trial < config.trials; ++trial) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 split_rng(substream(config.seed, "split",
                                   static_cast<std::uint64_t>(trial)));
    split_rng.shuffle(order);

    const std::vector<std::size_t> test_rows(order.begin(),
                                             order.begin() + static_cast<std::ptrdiff_t>(test_count));
    const std::vector<std::size_t> train_rows(order.begin() + static_cast<std::ptrdiff_t>(test_count),
                                              order.end());
    const Dataset train_split = data.select(train_rows);
    const Dataset test_split = data.select(test_rows);

    const TrainedMethod model = TrainedMethod::train(
        config, train_split,
        substream(config.seed, "model", static_cast<std::uint64_t>(trial)));

    std::vector<std::size_t> sample(test_rows.size());
    std::iota(sample.begin(), sample.end(), 0);
    SplitMix64 sample_rng(substream(config.seed, "sampling",
                                    static_cast<std::uint64_t>(trial)));
    sample_rng.shuffle(sample);
    const std::size_t count =
        std::min<std::size_t>(static_cast<std::size_t>(config.test_samples),
                              sample.size());
    sample.resize(count);

    const auto radii = certify_batch(count, [&](std::size_t i) {
      const Eigen::Index row = static_cast<Eigen::Index>(sample[i]);
      const Certificate cert = model.certify(test_split.x.row(row).transpose(),
                                             test_split.y(row));
      return cert.is_robust() ? std::optional<std::int64_t>(cert.radius())
                              : std::nullopt;
    });

    auto& certified = trial_radii[static_cast<std::size_t>(trial)];
    for (const auto& r : radii)
      if (r) certified.push_back(*r);
    trial_samples[static_cast<std::size_t>(trial)] = count;
  }

  std::int64_t max_psi = 0;
  for (const auto& radii : trial_radii)
    for (const std::int64_t r : radii) max_psi = std::max(max_psi, r);

  CertCurve curve;
  for (std::int64_t psi = 0; psi <= max_psi; ++psi) {
    std::vector<double> fractions;
    fractions.reserve(trial_radii.size());
    for (std::size_t trial = 0; trial < trial_radii.size(); ++trial) {
      const auto& radii = trial_radii[trial];
      const auto hits = std::count_if(radii.begin(), radii.end(),
                                      [psi](std::int64_t r) { return r >= psi; });
      fractions.push_back(static_cast<double>(hits) /
                          static_cast<double>(trial_samples[trial]));
    }
    const double mean =
        std::accumulate(fractions.begin(), fractions.end(), 0.0) /
        static_cast<double>(fractions.size());
    double stdev = 0.0;
    if (fractions.size() > 1) {
      double ss = 0.0;
      for (const double f : fractions) ss += (f - mean) * (f - mean);
      stdev = std::sqrt(ss / static_cast<double>(fractions.size() - 1));
    }
    curve.rows.push_back({psi, mean, stdev});
  }

  for (std::size_t i = 1; i < curve.rows.size(); ++i)
    if (curve.rows[i].mean > curve.rows[i - 1].mean)
      throw std::logic_error("certified accuracy curve must be non-increasing");
  return curve;
}

CertCurve run_experiment(const ExperimentConfig& config) {
  return run_experiment_on(config,
                           load_csv(config.dataset_path, config.target_column,
                                    config.one_hot));
}

namespace {
std::string dump_double(double v) { return json(v).dump(); }
}  // namespace

std::string curve_to_csv(const CertCurve& curve) {
  std::ostringstream os;
  os << "R,mean,stdev\n";
  for (const auto& row : curve.rows)
    os << row.psi << ',' << dump_double(row.mean) << ',' << dump_double(row.stdev)
       << '\n';
  return os.str();
}

void emit_csv(const CertCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << curve_to_csv(curve);
}

std::string curve_to_json(const CertCurve& curve) {
  json rows = json::array();
  for (const auto& row : curve.rows)
    rows.push_back(json{{"R", row.psi}, {"mean", row.mean}, {"stdev", row.stdev}});
  return json{{"curve", rows}}.dump(2) + "\n";
}

void emit_json(const CertCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << curve_to_json(curve);
}

CertCurve curve_from_json(const std::string& text) {
  const json j = json::parse(text);
  CertCurve curve;
  for (const auto& row : j.at("curve"))
    curve.rows.push_back({row.at("R").get<std::int64_t>(),
                          row.at("mean").get<double>(),
                          row.at("stdev").get<double>()});
  return curve;
}

CertCurve load_curve_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return curve_from_json(buffer.str());
}

}  // namespace certreg
