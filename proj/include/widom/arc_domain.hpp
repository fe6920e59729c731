#pragma once

#include "widom/complex_point.hpp"

namespace widom {

inline constexpr double kPi = 3.14159265358979323846;

/// Points closer than this to the arc are treated as lying on it.
inline constexpr double kArcExclusion = 1e-12;

/// Default distance kept between alpha and the degenerate angles 0 and pi.
inline constexpr double kAlphaMargin = 1e-3;

/// The circular arc {e^{it} : |t| <= alpha} on the unit circle.
class ArcDomain {
 public:
  /// Throws invalid_argument unless margin <= alpha <= pi - margin (and 0 < alpha < pi).
  explicit ArcDomain(double alpha, double margin = kAlphaMargin);

  double alpha() const { return alpha_; }
  double capacity() const { return capacity_; }
  cplx upper_endpoint() const { return upper_; }
  cplx lower_endpoint() const { return lower_; }

  /// Euclidean distance from z to the closed arc.
  double distance(cplx z) const;
  /// Closest point of the arc to z.
  cplx nearest_point(cplx z) const;
  bool on_arc(cplx z, double exclusion = kArcExclusion) const { return distance(z) < exclusion; }

 private:
  double alpha_;
  double capacity_;
  cplx upper_;
  cplx lower_;
};

}  // namespace widom
