#include "certreg/deletion_cost.hpp"

#include <algorithm>
#include <stdexcept>

namespace certreg {

namespace {

constexpr std::int64_t kMaxSubsetFits = 50000;

Eigen::MatrixXd drop_rows(const Eigen::MatrixXd& x,
                          const std::vector<std::int64_t>& dropped) {
  Eigen::MatrixXd out(x.rows() - static_cast<Eigen::Index>(dropped.size()),
                      x.cols());
  Eigen::Index w = 0;
  std::size_t next = 0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    if (next < dropped.size() && dropped[next] == r) {
      ++next;
      continue;
    }
    out.row(w++) = x.row(r);
  }
  return out;
}

Eigen::VectorXd drop_rows(const Eigen::VectorXd& y,
                          const std::vector<std::int64_t>& dropped) {
  Eigen::VectorXd out(y.size() - static_cast<Eigen::Index>(dropped.size()));
  Eigen::Index w = 0;
  std::size_t next = 0;
  for (Eigen::Index r = 0; r < y.size(); ++r) {
    if (next < dropped.size() && dropped[next] == r) {
      ++next;
      continue;
    }
    out(w++) = y(r);
  }
  return out;
}

std::int64_t binomial_or_huge(std::int64_t n, std::int64_t k) {
  std::int64_t result = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    result = result * (n - i) / (i + 1);
    if (result > kMaxSubsetFits) return kMaxSubsetFits + 1;
  }
  return result;
}

// Visits every subset of {0..n-1} of the given size in lexicographic order;
// stops early when the visitor returns true.
bool any_subset(std::int64_t n, std::int64_t size,
                const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
  std::vector<std::int64_t> subset(static_cast<std::size_t>(size));
  for (std::int64_t i = 0; i < size; ++i) subset[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (visit(subset)) return true;
    std::int64_t pos = size - 1;
    while (pos >= 0 &&
           subset[static_cast<std::size_t>(pos)] == n - size + pos)
      --pos;
    if (pos < 0) return false;
    ++subset[static_cast<std::size_t>(pos)];
    for (std::int64_t p = pos + 1; p < size; ++p)
      subset[static_cast<std::size_t>(p)] =
          subset[static_cast<std::size_t>(p - 1)] + 1;
  }
}

}  // namespace

std::int64_t compute_deletion_cost(const TrainPredictFn& trainer,
                                   const Eigen::MatrixXd& x,
                                   const Eigen::VectorXd& y,
                                   const Eigen::Ref<const Eigen::VectorXd>& x_te,
                                   double xi, std::int64_t r_cap) {
  if (r_cap < 1) throw std::invalid_argument("r_cap must be at least 1");
  const std::int64_t n = x.rows();
  if (n < 1) throw std::invalid_argument("deletion cost needs training data");

  if (trainer(x, y, x_te) > xi) return 0;

  const std::int64_t cap = std::min(r_cap, n);
  for (std::int64_t level = 1; level < cap; ++level) {
    if (level > 1 && binomial_or_huge(n, level) > kMaxSubsetFits)
      throw std::invalid_argument(
          "deletion subsets too numerous; lower r_cap or shrink the block");
    const bool flipped = any_subset(n, level, [&](const auto& subset) {
      return trainer(drop_rows(x, subset), drop_rows(y, subset), x_te) > xi;
    });
    if (flipped) return level;
  }
  return cap;
}

LeaveOneOutCosts::LeaveOneOutCosts(const EnsembleModel& model,
                                   const Dataset& train, bool parallel) {
  const auto by_block = model.partition.instances_by_block();
  const int num_models = model.num_submodels();
  tables_.resize(static_cast<std::size_t>(num_models));

  // Enumerate (submodel, dropped-row) pairs into one flat list so the
  // retrainings can be spread evenly across threads.
  struct Job {
    int model;
    std::int64_t drop;  // -1 trains the base model
  };
  std::vector<Job> jobs;
  std::vector<Dataset> data(static_cast<std::size_t>(num_models));
  for (int t = 0; t < num_models; ++t) {
    std::vector<std::size_t> rows;
    for (const int b : model.mapping.model_blocks[static_cast<std::size_t>(t)]) {
      const auto& members = by_block[static_cast<std::size_t>(b)];
      rows.insert(rows.end(), members.begin(), members.end());
    }
    std::sort(rows.begin(), rows.end());
    data[static_cast<std::size_t>(t)] = train.select(rows);
    const std::int64_t nt = static_cast<std::int64_t>(rows.size());
    tables_[static_cast<std::size_t>(t)].leave_one_out.resize(
        nt > 1 ? static_cast<std::size_t>(nt) : 0);
    jobs.push_back({t, -1});
    if (nt > 1)
      for (std::int64_t i = 0; i < nt; ++i) jobs.push_back({t, i});
  }

  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    try {
      const Job& job = jobs[j];
      const Dataset& d = data[static_cast<std::size_t>(job.model)];
      auto& table = tables_[static_cast<std::size_t>(job.model)];
      if (job.drop < 0) {
        table.base = train_submodel(model.spec, d.x, d.y);
      } else {
        const std::vector<std::int64_t> dropped{job.drop};
        table.leave_one_out[static_cast<std::size_t>(job.drop)] =
            train_submodel(model.spec, drop_rows(d.x, dropped),
                           drop_rows(d.y, dropped));
      }
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

std::size_t LeaveOneOutCosts::total_models() const {
  std::size_t count = 0;
  for (const auto& table : tables_) count += 1 + table.leave_one_out.size();
  return count;
}

CostProfile LeaveOneOutCosts::profile(const Eigen::Ref<const Eigen::VectorXd>& x,
                                      double xi, std::int64_t r_cap,
                                      BoundSide side) const {
  if (r_cap < 1) throw std::invalid_argument("r_cap must be at least 1");
  if (r_cap > 2)
    throw std::invalid_argument(
        "the leave-one-out table certifies r_cap <= 2; use "
        "compute_deletion_cost for deeper enumeration");
  if (side == BoundSide::TwoSided)
    throw std::invalid_argument("request each side separately");
  const double sign = side == BoundSide::LowerOnly ? -1.0 : 1.0;

  CostProfile profile;
  profile.r_cap = r_cap;
  profile.threat = ThreatModel::DeletionOnly;
  profile.r.reserve(tables_.size());
  for (const auto& table : tables_) {
    if (sign * predict(table.base, x) > sign * xi) {
      profile.r.push_back(0);
      continue;
    }
    const std::int64_t nt = table.leave_one_out.empty()
                                ? 1
                                : static_cast<std::int64_t>(table.leave_one_out.size());
    std::int64_t cost = std::min<std::int64_t>(r_cap, nt);
    if (cost >= 2) {
      for (const auto& loo : table.leave_one_out) {
        if (sign * predict(loo, x) > sign * xi) {
          cost = 1;
          break;
        }
      }
    }
    profile.r.push_back(cost);
  }
  return profile;
}

}  // namespace certreg
