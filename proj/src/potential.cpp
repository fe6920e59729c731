#include "widom/potential.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "widom/error.hpp"

namespace widom {

namespace {

// Poisson kernels whose pole is this close to the unit circle get a breakpoint at the peak.
constexpr double kNearCircle = 0.5;

cplx sqrt_product(cplx z, const ArcDomain& d) {
  return std::sqrt((z - d.upper_endpoint()) * (z - d.lower_endpoint()));
}

// The two roots of w^2 + (1 - z) w - z sin^2(alpha/2) = 0; the exterior map is the
// larger one (the other lies inside the image disk).
std::array<cplx, 2> preimage_roots(cplx z, const ArcDomain& d) {
  const cplx s = sqrt_product(z, d);
  return {0.5 * (z - 1.0 + s), 0.5 * (z - 1.0 - s)};
}

void require_off_arc(cplx z, const ArcDomain& d, double exclusion) {
  if (d.distance(z) < exclusion) throw Error(ErrorCode::point_on_arc, "point lies on the arc");
}

// Boundary angle phi (on |w| = cap) -> angle theta of the arc point.
double arc_angle(double phi, const ArcDomain& d) {
  const cplx x = inverse_exterior_map(ComplexPoint(std::polar(d.capacity(), phi)), d).value();
  const double theta = std::arg(x);
  return std::clamp(theta, -d.alpha(), d.alpha());
}

void push_preimages(std::vector<double>& out, double theta, const ArcDomain& d) {
  for (const cplx& w : exterior_map_boundary(theta, d)) out.push_back(std::arg(w));
}

std::vector<double> table_breakpoints(const WeightSpec& weight, const ArcDomain& d) {
  std::vector<double> out;
  for (const auto& k : weight.table)
    if (std::abs(k.theta) < d.alpha()) push_preimages(out, k.theta, d);
  return out;
}

// Mean of log|zeta - a| over the unit circle against the harmonic measure of |zeta| > 1 with
// pole zeta0 (normalized arc length for zeta0 = inf). The boundary values extend to
// log|1 - a/zeta| for |a| <= 1 and to log|1/zeta - conj(a)| for |a| > 1.
double circle_log_mean(cplx a, const ComplexPoint& zeta0) {
  if (std::abs(a) <= 1.0) return zeta0.is_infinite() ? 0.0 : std::log(std::abs(1.0 - a / zeta0.value()));
  return zeta0.is_infinite() ? std::log(std::abs(a)) : std::log(std::abs(1.0 / zeta0.value() - std::conj(a)));
}

double clamp_log(double v) {
  constexpr double big = 700.0;
  if (std::isnan(v)) return v;
  return std::clamp(v, -big, big);
}

}  // namespace

double capacity_arc(const ArcDomain& domain) { return domain.capacity(); }

ComplexPoint exterior_map(ComplexPoint z, const ArcDomain& domain, double exclusion) {
  if (z.is_infinite()) return z;
  require_off_arc(z.value(), domain, exclusion);
  const auto roots = preimage_roots(z.value(), domain);
  return std::abs(roots[0]) >= std::abs(roots[1]) ? roots[0] : roots[1];
}

std::array<cplx, 2> exterior_map_boundary(double theta, const ArcDomain& domain) {
  if (std::abs(theta) > domain.alpha() + 1e-12)
    throw Error(ErrorCode::outside_arc, "boundary angle outside [-alpha, alpha]");
  return preimage_roots(std::polar(1.0, theta), domain);
}

ComplexPoint inverse_exterior_map(ComplexPoint w, const ArcDomain& domain) {
  if (w.is_infinite()) return w;
  const cplx v = w.value();
  if (std::abs(v) < domain.capacity() * (1.0 - 1e-12))
    throw Error(ErrorCode::outside_image, "|w| below sin(alpha/2)");
  return 2.0 * v * (v + 1.0) / (2.0 * v + 1.0 - std::cos(domain.alpha()));
}

double green_inf(ComplexPoint z, const ArcDomain& domain) {
  if (z.is_infinite()) throw Error(ErrorCode::infinity_pole, "Green's function has its pole at infinity");
  const cplx v = z.value();
  if (domain.on_arc(v)) return 0.0;
  const auto roots = preimage_roots(v, domain);
  const double m = std::max(std::abs(roots[0]), std::abs(roots[1]));
  return std::max(0.0, std::log(m / domain.capacity()));
}

double c_r_alpha(double r, const ArcDomain& domain) {
  if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "c(r, alpha) needs r > 0");
  const double a = domain.alpha();
  const double num = std::abs(1.0 - r) + std::sqrt(1.0 - 2.0 * r * std::cos(a) + r * r);
  return num / (2.0 * r * std::sin(0.5 * a));
}

double mu_log_integral(const WeightSpec& weight, const ArcDomain& domain, const QuadratureOptions& opts) {
  return harmonic_measure_log_integral(weight, ComplexPoint::infinity(), domain, opts);
}

double harmonic_measure_log_integral(const WeightSpec& weight, ComplexPoint u0, const ArcDomain& domain,
                                     const QuadratureOptions& opts) {
  weight.validate(domain);
  const double cap = domain.capacity();
  const ComplexPoint zeta0 = u0.is_infinite() ? u0 : ComplexPoint(exterior_map(u0, domain).value() / cap);

  // Power factors in closed form: with x = x(cap zeta) and w1, w2 the preimages of the node,
  //   x - u_j = cap (zeta - w1/cap)(zeta - w2/cap) / (zeta + cap).
  double total = std::log(weight.constant);
  const double den = circle_log_mean(cplx(-cap), zeta0);
  for (const auto& p : weight.powers) {
    if (p.exponent == 0.0) continue;
    const auto roots = preimage_roots(p.node, domain);
    total += p.exponent *
             (std::log(cap) + circle_log_mean(roots[0] / cap, zeta0) + circle_log_mean(roots[1] / cap, zeta0) - den);
  }
  if (weight.table.empty()) return total;

  std::vector<double> breaks = table_breakpoints(weight, domain);
  auto log_base = [&](double phi) { return clamp_log(std::log(weight.base(arc_angle(phi, domain)))); };
  std::function<double(double)> integrand;
  if (zeta0.is_infinite()) {
    integrand = log_base;
  } else {
    const cplx z0 = zeta0.value();
    const double rho2 = std::norm(z0);
    if (std::abs(z0) - 1.0 < kNearCircle) breaks.push_back(std::arg(z0));
    integrand = [&, z0, rho2](double phi) { return (rho2 - 1.0) / std::norm(z0 - std::polar(1.0, phi)) * log_base(phi); };
  }
  return total + periodic_mean_split(integrand, std::move(breaks), opts);
}

ComplexPoint lambda_map(ComplexPoint u, const ArcDomain& domain) {
  const cplx e = domain.upper_endpoint();
  if (u.is_infinite()) return std::sqrt(std::sqrt(e));
  const cplx z = u.value();
  require_off_arc(z, domain, kArcExclusion);
  // Principal root: the Moebius factor sends the arc onto (-inf, 0].
  const cplx m = (z * e - 1.0) / (z - e);
  return std::sqrt(std::sqrt(m));
}

cplx kernel_k(ComplexPoint u, ComplexPoint u0, const ArcDomain& domain) {
  const cplx l = lambda_map(u, domain).value();
  const cplx l0 = std::conj(lambda_map(u0, domain).value());
  const cplx s = l + l0;
  return 2.0 * l * l0 / (s * s);
}

double outer_modulus(const WeightSpec& weight, ComplexPoint u, const ArcDomain& domain,
                     const QuadratureOptions& opts) {
  return std::exp(-harmonic_measure_log_integral(weight, u, domain, opts));
}

}  // namespace widom
