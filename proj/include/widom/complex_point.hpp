#pragma once

#include <complex>

namespace widom {

using cplx = std::complex<double>;

/// A point of the extended complex plane.
class ComplexPoint {
 public:
  constexpr ComplexPoint() = default;
  constexpr ComplexPoint(cplx z) : z_(z) {}  // NOLINT: implicit by intent
  constexpr ComplexPoint(double re, double im = 0.0) : z_(re, im) {}

  static constexpr ComplexPoint infinity() {
    ComplexPoint p;
    p.infinite_ = true;
    return p;
  }

  constexpr bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// Coordinates of a finite point; throws for the point at infinity.
  cplx value() const;
  double re() const { return value().real(); }
  double im() const { return value().imag(); }

  friend bool operator==(const ComplexPoint& a, const ComplexPoint& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.z_ == b.z_;
  }

 private:
  cplx z_{};
  bool infinite_ = false;
};

}  // namespace widom
