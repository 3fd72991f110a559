#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "certreg/certificate.hpp"

namespace certreg {

/// Median of a real multiset. Odd cardinality: the ceil(T/2)-th order
/// statistic. Even cardinality: exact midpoint of the two middle order
/// statistics. Empty: +infinity, matching the convention that deleting every
/// element behaves like inserting arbitrarily large values.
double median(std::vector<double> values);

/// A multiset of real "votes" together with the threshold xi that partitions
/// it into V_low = {v : v <= xi} and V_up = V \ V_low. Ties v == xi count as
/// low ("at most xi"); comparisons are exact floating point with no epsilon.
struct VoteSet {
  std::vector<double> values;
  double threshold = 0.0;

  std::size_t size() const { return values.size(); }
  std::size_t low_count() const;
  double median_value() const { return median(values); }
  /// True when the unperturbed median satisfies the upper bound med(V) <= xi.
  bool within_bound() const { return median_value() <= threshold; }
};

/// VoteSet with one positive integral perturbation cost per vote. Costs of
/// votes above the threshold are carried but never consumed by the certifier;
/// only the low-side costs enter the bound.
struct WeightedVoteSet {
  VoteSet votes;
  std::vector<std::int64_t> costs;

  /// Throws std::invalid_argument on size mismatch or any cost < 1.
  void validate() const;
};

/// Fixed-cardinality swap paradigm: each modification replaces one vote with
/// an arbitrary real. Requires odd T. R = |V_low| - ceil(T/2).
Certificate cert_swap(const VoteSet& votes);

enum class Tightness { Standard, Tight };

/// Variable-cardinality paradigm: each modification inserts or deletes one
/// vote. T may be even or odd. Standard mode: R = 2|V_low| - T - 1, which may
/// undershoot the true optimum by one. Tight mode adds the indicator
/// 1[(max V_low + min(V_up u {+inf})) / 2 <= xi].
Certificate cert_insert_delete(const VoteSet& votes,
                               Tightness tightness = Tightness::Standard);

/// Weighted swap paradigm: fully paying a low vote's cost swaps it out.
/// R = (sum of the Delta+1 smallest low-side costs) - 1 where
/// Delta = |V_low| - ceil(T/2); the (Delta+1)-th cheapest vote can only ever
/// be partially paid. Requires odd T and all costs >= 1.
Certificate cert_weighted_swap(const WeightedVoteSet& wvotes);

/// The looser direct bound: sum of the Delta smallest low-side costs, i.e.
/// the unweighted bound with each swap priced individually. Kept for
/// comparison; cert_weighted_swap dominates it. Requires med(V) <= xi.
std::int64_t weighted_swap_naive_bound(const WeightedVoteSet& wvotes);

/// Maps votes to {-1, +1} by sign(v - xi) (ties map to -1) with threshold 0.
/// The binarized set certifies the same R as the original under every
/// paradigm above.
VoteSet binarize(const VoteSet& votes);

enum class Paradigm { Swap, InsertDelete, InsertDeleteTight };

Certificate cert_upper_side(const VoteSet& votes, Paradigm paradigm);

/// Certifies the lower bound f >= xi_low by negation: the chosen upper-side
/// certifier applied to (-V, -xi_low). votes.threshold holds xi_low.
Certificate cert_lower_side(const VoteSet& votes, Paradigm paradigm);

/// Two-sided certificate xi_low <= med(V) <= xi_up: the worse of the two
/// one-sided certificates. Throws if xi_low > xi_up.
Certificate cert_two_sided(const std::vector<double>& values, double xi_low,
                           double xi_up, Paradigm paradigm);

/// Weighted two-sided variant; the two sides may carry different costs (a
/// vote that is hard to push up may be easy to pull down).
Certificate cert_two_sided_weighted(const std::vector<double>& values,
                                    const std::vector<std::int64_t>& costs_lower,
                                    const std::vector<std::int64_t>& costs_upper,
                                    double xi_low, double xi_up,
                                    ThreatModel threat = ThreatModel::InsertDelete);

}  // namespace certreg
