#include "widom/arc_domain.hpp"

#include <cmath>
#include <sstream>

#include "widom/error.hpp"

namespace widom {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::point_on_arc: return "PointOnArc";
    case ErrorCode::infinity_pole: return "InfinityPole";
    case ErrorCode::outside_image: return "OutsideImage";
    case ErrorCode::outside_arc: return "OutsideArc";
    case ErrorCode::singular_node: return "SingularNode";
    case ErrorCode::quadrature_failure: return "QuadratureFailure";
    case ErrorCode::size_too_small: return "SizeTooSmall";
    case ErrorCode::degenerate_normalization: return "DegenerateNormalization";
    case ErrorCode::wrong_normalization: return "WrongNormalization";
    case ErrorCode::lp_failure: return "LPFailure";
    case ErrorCode::empty_extremal_set: return "EmptyExtremalSet";
    case ErrorCode::u0_outside_disk: return "U0OutsideDisk";
    case ErrorCode::ill_conditioned_fit: return "IllConditionedFit";
    case ErrorCode::no_convergence: return "NoConvergence";
  }
  return "Unknown";
}

cplx ComplexPoint::value() const {
  if (infinite_) throw Error(ErrorCode::invalid_argument, "point at infinity has no coordinates");
  return z_;
}

ArcDomain::ArcDomain(double alpha, double margin) : alpha_(alpha) {
  const double lo = std::max(margin, 0.0);
  const double hi = kPi - std::max(margin, 0.0);
  if (!std::isfinite(alpha) || !(alpha > 0.0) || !(alpha < kPi) || alpha < lo || alpha > hi) {
    std::ostringstream os;
    os << "alpha=" << alpha << " outside [" << lo << ", " << hi << "] (open interval (0, pi))";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  capacity_ = std::sin(0.5 * alpha_);
  upper_ = std::polar(1.0, alpha_);
  lower_ = std::conj(upper_);
}

cplx ArcDomain::nearest_point(cplx z) const {
  if (std::abs(z) == 0.0) return 1.0;  // every arc point is equidistant; pick the midpoint
  const double t = std::arg(z);
  if (std::abs(t) <= alpha_) return std::polar(1.0, t);
  return std::abs(z - upper_) <= std::abs(z - lower_) ? upper_ : lower_;
}

double ArcDomain::distance(cplx z) const { return std::abs(z - nearest_point(z)); }

}  // namespace widom
