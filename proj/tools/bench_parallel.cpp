// Benchmarks the OpenMP kernels against their serial reference
// implementations on synthetic workloads and verifies they agree.

#include <chrono>
#include <cstdio>
#include <vector>

#include "certreg/deletion_cost.hpp"
#include "certreg/ensemble.hpp"
#include "certreg/experiment.hpp"
#include "certreg/neighbors.hpp"
#include "certreg/parallel.hpp"
#include "certreg/rng.hpp"

namespace {

using certreg::Dataset;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

Dataset synthetic_dataset(std::size_t n, std::size_t dim, std::uint64_t seed) {
  certreg::SplitMix64 rng(seed);
  Dataset data;
  data.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  data.y.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double target = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double v = rng.next_in(-1.0, 1.0);
      data.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      target += (j % 2 == 0 ? 1.0 : -0.5) * v;
    }
    data.y(static_cast<Eigen::Index>(i)) = target + 0.1 * rng.next_in(-1.0, 1.0);
  }
  return data;
}

struct BenchRow {
  const char* name;
  double serial_s;
  double parallel_s;
  bool match;
};

void print_row(const BenchRow& row) {
  std::printf("%-28s %10.3fs %10.3fs %8.2fx   %s\n", row.name, row.serial_s,
              row.parallel_s, row.serial_s / row.parallel_s,
              row.match ? "outputs match" : "OUTPUT MISMATCH");
}

BenchRow bench_training(const Dataset& data) {
  const auto spec = certreg::SubmodelSpec::ridge(1e-3);
  const double t0 = now_seconds();
  const auto serial = certreg::train_partitioned_serial(data, 51, 7, spec);
  const double t1 = now_seconds();
  const auto parallel = certreg::train_partitioned(data, 51, 7, spec);
  const double t2 = now_seconds();

  bool match = true;
  certreg::SplitMix64 rng(99);
  for (int probe = 0; probe < 32 && match; ++probe) {
    Eigen::VectorXd x(data.x.cols());
    for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = rng.next_in(-1.0, 1.0);
    match = certreg::ensemble_predict(serial, x) ==
            certreg::ensemble_predict(parallel, x);
  }
  return {"ensemble training", t1 - t0, t2 - t1, match};
}

BenchRow bench_deletion_costs(const Dataset& data) {
  const auto spec = certreg::SubmodelSpec::ridge(1e-3);
  const auto model = certreg::train_partitioned(data, 25, 7, spec);
  const double t0 = now_seconds();
  const certreg::LeaveOneOutCosts serial(model, data, /*parallel=*/false);
  const double t1 = now_seconds();
  const certreg::LeaveOneOutCosts parallel(model, data, /*parallel=*/true);
  const double t2 = now_seconds();

  bool match = true;
  certreg::SplitMix64 rng(123);
  for (int probe = 0; probe < 16 && match; ++probe) {
    Eigen::VectorXd x(data.x.cols());
    for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = rng.next_in(-1.0, 1.0);
    match = serial.profile(x, 0.5, 2, certreg::BoundSide::UpperOnly).r ==
            parallel.profile(x, 0.5, 2, certreg::BoundSide::UpperOnly).r;
  }
  return {"leave-one-out retraining", t1 - t0, t2 - t1, match};
}

BenchRow bench_certification(const Dataset& data) {
  const auto model =
      certreg::fit_neighbor_model(data, certreg::FixedK{501}, 2.0);
  const std::size_t queries = 256;
  certreg::SplitMix64 rng(5);
  std::vector<Eigen::VectorXd> points;
  for (std::size_t i = 0; i < queries; ++i) {
    Eigen::VectorXd x(data.x.cols());
    for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = rng.next_in(-1.0, 1.0);
    points.push_back(std::move(x));
  }
  const certreg::PointCertifier certify = [&](std::size_t i) {
    const certreg::Certificate cert =
        certreg::cert_knn(model, points[i], 0.25);
    return cert.is_robust() ? std::optional<std::int64_t>(cert.radius())
                            : std::nullopt;
  };
  const double t0 = now_seconds();
  const auto serial = certreg::certify_batch_serial(queries, certify);
  const double t1 = now_seconds();
  const auto parallel = certreg::certify_batch(queries, certify);
  const double t2 = now_seconds();
  return {"batch point certification", t1 - t0, t2 - t1, serial == parallel};
}

}  // namespace

int main() {
  certreg::configure_threads_from_env();
  std::printf("threads: %d\n", certreg::max_threads());
  std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

  const Dataset train = synthetic_dataset(4000, 32, 42);
  int failures = 0;
  for (const BenchRow& row :
       {bench_training(train), bench_deletion_costs(train),
        bench_certification(train)}) {
    print_row(row);
    failures += row.match ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
