#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace certreg {

/// Which prediction bound a certificate protects.
enum class BoundSide { UpperOnly, LowerOnly, TwoSided };

/// How a certified radius was obtained.
enum class Provenance { ClosedForm, SolverExact, SolverLowerBound, GreedyFactor };

/// Attack operations a guarantee holds against. Costs certified by
/// leave-out retraining are valid for deletions only; certificates built
/// from them must carry that restriction.
enum class ThreatModel { InsertDelete, DeletionOnly };

/// Pointwise certified robustness for one prediction: either a guarantee that
/// up to radius() training-set modifications cannot push the prediction past
/// the protected bound, or NotRobust when the unperturbed prediction already
/// violates it. NotRobust is a distinct state rather than a sentinel radius so
/// callers cannot mistake a violated prediction for a weak certificate.
class Certificate {
 public:
  static Certificate robust(std::int64_t radius, BoundSide side, Provenance prov,
                            ThreatModel threat = ThreatModel::InsertDelete) {
    if (radius < 0) throw std::logic_error("certified radius must be nonnegative");
    Certificate c;
    c.robust_ = true;
    c.radius_ = radius;
    c.side_ = side;
    c.prov_ = prov;
    c.threat_ = threat;
    return c;
  }

  static Certificate not_robust(BoundSide side) {
    Certificate c;
    c.side_ = side;
    return c;
  }

  bool is_robust() const { return robust_; }

  std::int64_t radius() const {
    if (!robust_) throw std::logic_error("NotRobust certificate has no radius");
    return radius_;
  }

  BoundSide side() const { return side_; }
  Provenance provenance() const { return prov_; }
  ThreatModel threat() const { return threat_; }

  friend bool operator==(const Certificate& a, const Certificate& b) {
    if (a.robust_ != b.robust_) return false;
    if (!a.robust_) return true;
    return a.radius_ == b.radius_;
  }

 private:
  Certificate() = default;

  bool robust_ = false;
  std::int64_t radius_ = 0;
  BoundSide side_ = BoundSide::UpperOnly;
  Provenance prov_ = Provenance::ClosedForm;
  ThreatModel threat_ = ThreatModel::InsertDelete;
};

/// Combines the two one-sided certificates of a two-sided bound: NotRobust if
/// either side is, otherwise the worse (smaller) radius. The combined
/// guarantee inherits the binding side's provenance and the more restrictive
/// threat model of the pair.
Certificate combine_two_sided(const Certificate& lower, const Certificate& upper);

std::string to_string(const Certificate& cert);

}  // namespace certreg
