#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "certreg/cover.hpp"
#include "certreg/experiment.hpp"
#include "certreg/median_cert.hpp"
#include "certreg/oracle.hpp"
#include "certreg/parallel.hpp"
#include "certreg/rng.hpp"

namespace {

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

certreg::ThresholdSpec::Mode mode_from_string(const std::string& mode) {
  if (mode == "absolute") return certreg::ThresholdSpec::Mode::AbsoluteTwoSided;
  if (mode == "fraction") return certreg::ThresholdSpec::Mode::FractionOfTarget;
  if (mode == "sign") return certreg::ThresholdSpec::Mode::BinarySign;
  throw CLI::ValidationError("--mode must be absolute, fraction or sign");
}

int run_command(const std::string& config_path, const std::string& out_path,
                const std::string& format) {
  const certreg::ExperimentConfig config = certreg::load_config(config_path);
  const certreg::CertCurve curve = certreg::run_experiment(config);
  if (out_path.empty()) {
    std::cout << certreg::curve_to_csv(curve);
  } else if (format == "json") {
    certreg::emit_json(curve, out_path);
  } else {
    certreg::emit_csv(curve, out_path);
  }
  return 0;
}

int cert_command(const certreg::ExperimentConfig& config, int samples) {
  certreg::Dataset data =
      certreg::load_csv(config.dataset_path, config.target_column, config.one_hot);
  const std::size_t n = data.size();
  const std::size_t test_count = std::max<std::size_t>(1, n / 10);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  certreg::SplitMix64 rng(certreg::substream(config.seed, "split", 0));
  rng.shuffle(order);
  const std::vector<std::size_t> test_rows(order.begin(),
                                           order.begin() + static_cast<std::ptrdiff_t>(test_count));
  const std::vector<std::size_t> train_rows(order.begin() + static_cast<std::ptrdiff_t>(test_count),
                                            order.end());
  const certreg::Dataset train = data.select(train_rows);
  const certreg::Dataset test = data.select(test_rows);

  const certreg::TrainedMethod model = certreg::TrainedMethod::train(
      config, train, certreg::substream(config.seed, "model", 0));

  const std::size_t count =
      std::min<std::size_t>(static_cast<std::size_t>(samples), test.size());
  std::printf("row,y,prediction,certificate\n");
  for (std::size_t i = 0; i < count; ++i) {
    const Eigen::Index row = static_cast<Eigen::Index>(i);
    const Eigen::VectorXd x = test.x.row(row).transpose();
    const certreg::Certificate cert = model.certify(x, test.y(row));
    std::printf("%zu,%g,%g,%s\n", test_rows[i], test.y(row), model.predict(x),
                certreg::to_string(cert).c_str());
  }
  return 0;
}

int solve_psmc_command(const std::string& path, double time_limit) {
  const certreg::CoverInstance instance = certreg::load_cover_instance(path);
  const certreg::CoverSolution solution = certreg::solve_ilp_bb(instance, time_limit);
  std::printf("certified_R=%lld exact=%s nodes=%llu elapsed=%.3fs\n",
              static_cast<long long>(solution.certified_r),
              solution.exact ? "yes" : "no",
              static_cast<unsigned long long>(solution.node_count),
              solution.elapsed_seconds);
  if (solution.incumbent_cost)
    std::printf("incumbent_cost=%lld (feasible attack, diagnostic only)\n",
                static_cast<long long>(*solution.incumbent_cost));
  if (instance.sigma == 0 && instance.r_max == 1) {
    const certreg::GreedyCoverResult greedy = certreg::greedy_partial_cover(instance);
    std::printf("greedy_cost=%lld", static_cast<long long>(greedy.greedy_cost));
    if (greedy.bound)
      std::printf(" greedy_bound=%lld", static_cast<long long>(*greedy.bound));
    std::printf("\n");
  }
  return 0;
}

void print_oracle(const certreg::AttackBudgetResult& result) {
  if (!result.robust) {
    std::printf("not-robust\n");
    return;
  }
  std::printf("optimal_R=%lld\nwitness: %s\n",
              static_cast<long long>(result.optimal_r), result.witness.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  certreg::configure_threads_from_env();

  CLI::App app{"certreg: pointwise certified robustness for regression"};
  app.require_subcommand(1);

  // run
  std::string config_path, out_path, out_format = "csv";
  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--out", out_path, "output path (stdout when omitted)");
  run->add_option("--format", out_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // cert
  certreg::ExperimentConfig cc;
  std::string method_name = "pcr", mode_name = "absolute";
  double xi = 0.0;
  int samples = 20;
  auto* cert = app.add_subcommand("cert", "train once and certify test points");
  cert->add_option("--data", cc.dataset_path, "CSV dataset")->required();
  cert->add_option("--target", cc.target_column, "target column name")->required();
  cert->add_option("--method", method_name, "knn-cr|rnn-cr|pcr|wpcr|ocr|wocr");
  cert->add_option("--q", cc.q, "data fraction denominator");
  cert->add_option("--d", cc.d, "spread degree (overlapping methods)");
  cert->add_option("--xi", xi, "threshold value")->required();
  cert->add_option("--mode", mode_name, "absolute|fraction|sign");
  cert->add_option("--seed", cc.seed, "random seed");
  cert->add_option("--samples", samples, "number of test points to certify");
  cert->add_option("--lambda", cc.lambda, "ridge regularization");
  cert->add_option("--r-cap", cc.r_cap, "deletion-cost cap for weighted methods");
  cert->add_option("--ilp-time-limit", cc.ilp_time_limit, "seconds per solve");
  double radius = 0.0;
  cert->add_option("--radius", radius, "neighborhood radius (rnn-cr)");
  int k = 0;
  cert->add_option("--k", k, "neighborhood size (knn-cr)");

  // solve-psmc
  std::string instance_path;
  double time_limit = 0.0;
  auto* solve = app.add_subcommand(
      "solve-psmc", "solve a partial set multicover instance file");
  solve->add_option("instance", instance_path, "instance file")->required();
  solve->add_option("--time-limit", time_limit, "seconds (0 = none)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force attack oracles");
  oracle->require_subcommand(1);
  std::string votes_csv, costs_csv, oracle_instance;
  double oracle_xi = 0.0;
  auto* oswap = oracle->add_subcommand("swap", "optimal R under swaps");
  oswap->add_option("--votes", votes_csv)->required();
  oswap->add_option("--xi", oracle_xi)->required();
  auto* oid = oracle->add_subcommand("insert-delete",
                                     "optimal R under insertions/deletions");
  oid->add_option("--votes", votes_csv)->required();
  oid->add_option("--xi", oracle_xi)->required();
  auto* ows = oracle->add_subcommand("weighted-swap",
                                     "optimal budget under weighted swaps");
  ows->add_option("--votes", votes_csv)->required();
  ows->add_option("--costs", costs_csv)->required();
  ows->add_option("--xi", oracle_xi)->required();
  auto* oov = oracle->add_subcommand("overlap", "exact cover program optimum");
  oov->add_option("instance", oracle_instance, "instance file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(config_path, out_path, out_format);
    if (*cert) {
      cc.method = certreg::method_from_string(method_name);
      cc.threshold.mode = mode_from_string(mode_name);
      cc.threshold.value = xi;
      if (radius > 0.0) cc.radius = radius;
      if (k > 0) cc.k = k;
      cc.trials = 1;
      cc.test_samples = samples;
      cc.validate();
      return cert_command(cc, samples);
    }
    if (*solve) return solve_psmc_command(instance_path, time_limit);
    if (*oswap)
      print_oracle(certreg::oracle_swap({parse_doubles(votes_csv), oracle_xi}));
    else if (*oid)
      print_oracle(
          certreg::oracle_insert_delete({parse_doubles(votes_csv), oracle_xi}));
    else if (*ows)
      print_oracle(certreg::oracle_weighted_swap(
          {{parse_doubles(votes_csv), oracle_xi}, parse_ints(costs_csv)}));
    else if (*oov)
      print_oracle(
          certreg::oracle_overlap(certreg::load_cover_instance(oracle_instance)));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
