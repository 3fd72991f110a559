#include "certreg/median_cert.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace certreg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t majority(std::size_t t) {  // ceil(T/2)
  return static_cast<std::int64_t>((t + 1) / 2);
}
}  // namespace

double median(std::vector<double> values) {
  const std::size_t t = values.size();
  if (t == 0) return kInf;
  const std::size_t mid = t / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (t % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return (lower + upper) / 2.0;
}

std::size_t VoteSet::low_count() const {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(),
                    [this](double v) { return v <= threshold; }));
}

void WeightedVoteSet::validate() const {
  if (costs.size() != votes.size())
    throw std::invalid_argument("weighted vote set needs one cost per vote");
  for (const std::int64_t c : costs)
    if (c < 1) throw std::invalid_argument("vote costs must be positive integers");
}

Certificate cert_swap(const VoteSet& votes) {
  if (votes.size() % 2 == 0)
    throw std::invalid_argument("swap paradigm requires odd cardinality");
  if (!votes.within_bound()) return Certificate::not_robust(BoundSide::UpperOnly);
  const std::int64_t low = static_cast<std::int64_t>(votes.low_count());
  return Certificate::robust(low - majority(votes.size()), BoundSide::UpperOnly,
                             Provenance::ClosedForm);
}

Certificate cert_insert_delete(const VoteSet& votes, Tightness tightness) {
  if (!votes.within_bound()) return Certificate::not_robust(BoundSide::UpperOnly);
  const std::int64_t t = static_cast<std::int64_t>(votes.size());
  const std::int64_t low = static_cast<std::int64_t>(votes.low_count());
  std::int64_t r = 2 * low - t - 1;
  if (tightness == Tightness::Tight && low >= 1) {
    double max_low = -kInf;
    double min_up = kInf;
    for (const double v : votes.values) {
      if (v <= votes.threshold)
        max_low = std::max(max_low, v);
      else
        min_up = std::min(min_up, v);
    }
    if ((max_low + min_up) / 2.0 <= votes.threshold) r += 1;
  }
  return Certificate::robust(std::max<std::int64_t>(r, 0), BoundSide::UpperOnly,
                             Provenance::ClosedForm);
}

namespace {
// Costs of the low-side votes, i.e. of votes with value <= threshold.
std::vector<std::int64_t> low_costs(const WeightedVoteSet& wvotes) {
  std::vector<std::int64_t> out;
  out.reserve(wvotes.votes.size());
  for (std::size_t i = 0; i < wvotes.votes.size(); ++i)
    if (wvotes.votes.values[i] <= wvotes.votes.threshold)
      out.push_back(wvotes.costs[i]);
  return out;
}
}  // namespace

Certificate cert_weighted_swap(const WeightedVoteSet& wvotes) {
  wvotes.validate();
  if (wvotes.votes.size() % 2 == 0)
    throw std::invalid_argument("weighted swap paradigm requires odd cardinality");
  if (!wvotes.votes.within_bound())
    return Certificate::not_robust(BoundSide::UpperOnly);

  std::vector<std::int64_t> rlow = low_costs(wvotes);
  const std::int64_t delta = static_cast<std::int64_t>(rlow.size()) -
                             majority(wvotes.votes.size());
  assert(delta >= 0 && delta + 1 <= static_cast<std::int64_t>(rlow.size()));
  const auto cut = rlow.begin() + (delta + 1);
  std::nth_element(rlow.begin(), cut - 1, rlow.end());
  const std::int64_t sum = std::accumulate(rlow.begin(), cut, std::int64_t{0});
  return Certificate::robust(sum - 1, BoundSide::UpperOnly,
                             Provenance::ClosedForm);
}

std::int64_t weighted_swap_naive_bound(const WeightedVoteSet& wvotes) {
  wvotes.validate();
  if (wvotes.votes.size() % 2 == 0)
    throw std::invalid_argument("weighted swap paradigm requires odd cardinality");
  if (!wvotes.votes.within_bound())
    throw std::invalid_argument("naive bound undefined for violated predictions");
  std::vector<std::int64_t> rlow = low_costs(wvotes);
  const std::int64_t delta = static_cast<std::int64_t>(rlow.size()) -
                             majority(wvotes.votes.size());
  std::sort(rlow.begin(), rlow.end());
  return std::accumulate(rlow.begin(), rlow.begin() + delta, std::int64_t{0});
}

VoteSet binarize(const VoteSet& votes) {
  VoteSet out;
  out.threshold = 0.0;
  out.values.reserve(votes.size());
  for (const double v : votes.values)
    out.values.push_back(v > votes.threshold ? 1.0 : -1.0);
  return out;
}

Certificate cert_upper_side(const VoteSet& votes, Paradigm paradigm) {
  switch (paradigm) {
    case Paradigm::Swap:
      return cert_swap(votes);
    case Paradigm::InsertDelete:
      return cert_insert_delete(votes, Tightness::Standard);
    case Paradigm::InsertDeleteTight:
      return cert_insert_delete(votes, Tightness::Tight);
  }
  throw std::logic_error("unknown paradigm");
}

namespace {
VoteSet negated(const VoteSet& votes) {
  VoteSet out;
  out.threshold = -votes.threshold;
  out.values.reserve(votes.size());
  for (const double v : votes.values) out.values.push_back(-v);
  return out;
}

Certificate with_side(const Certificate& cert, BoundSide side) {
  if (!cert.is_robust()) return Certificate::not_robust(side);
  return Certificate::robust(cert.radius(), side, cert.provenance(), cert.threat());
}
}  // namespace

Certificate cert_lower_side(const VoteSet& votes, Paradigm paradigm) {
  return with_side(cert_upper_side(negated(votes), paradigm),
                   BoundSide::LowerOnly);
}

Certificate combine_two_sided(const Certificate& lower, const Certificate& upper) {
  const ThreatModel threat =
      (lower.threat() == ThreatModel::DeletionOnly ||
       upper.threat() == ThreatModel::DeletionOnly)
          ? ThreatModel::DeletionOnly
          : ThreatModel::InsertDelete;
  if (!lower.is_robust() || !upper.is_robust())
    return Certificate::not_robust(BoundSide::TwoSided);
  const Certificate& binding =
      upper.radius() < lower.radius() ? upper : lower;
  return Certificate::robust(binding.radius(), BoundSide::TwoSided,
                             binding.provenance(), threat);
}

Certificate cert_two_sided(const std::vector<double>& values, double xi_low,
                           double xi_up, Paradigm paradigm) {
  if (xi_low > xi_up)
    throw std::invalid_argument("two-sided bound needs xi_low <= xi_up");
  const Certificate lower = cert_lower_side({values, xi_low}, paradigm);
  const Certificate upper = cert_upper_side({values, xi_up}, paradigm);
  return combine_two_sided(lower, upper);
}

Certificate cert_two_sided_weighted(const std::vector<double>& values,
                                    const std::vector<std::int64_t>& costs_lower,
                                    const std::vector<std::int64_t>& costs_upper,
                                    double xi_low, double xi_up,
                                    ThreatModel threat) {
  if (xi_low > xi_up)
    throw std::invalid_argument("two-sided bound needs xi_low <= xi_up");
  VoteSet neg{{}, -xi_low};
  neg.values.reserve(values.size());
  for (const double v : values) neg.values.push_back(-v);
  Certificate lower = cert_weighted_swap({neg, costs_lower});
  Certificate upper = cert_weighted_swap({{values, xi_up}, costs_upper});
  if (lower.is_robust())
    lower = Certificate::robust(lower.radius(), BoundSide::LowerOnly,
                                lower.provenance(), threat);
  if (upper.is_robust())
    upper = Certificate::robust(upper.radius(), BoundSide::UpperOnly,
                                upper.provenance(), threat);
  return combine_two_sided(lower, upper);
}

std::string to_string(const Certificate& cert) {
  std::ostringstream os;
  if (!cert.is_robust()) {
    os << "not-robust";
  } else {
    os << "R=" << cert.radius();
    switch (cert.provenance()) {
      case Provenance::ClosedForm: os << " (closed form)"; break;
      case Provenance::SolverExact: os << " (solver, exact)"; break;
      case Provenance::SolverLowerBound: os << " (solver, lower bound)"; break;
      case Provenance::GreedyFactor: os << " (greedy factor)"; break;
    }
  }
  if (cert.threat() == ThreatModel::DeletionOnly) os << " [deletion-only]";
  return os.str();
}

}  // namespace certreg
