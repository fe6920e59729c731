#pragma once

#include <array>

#include "widom/arc_domain.hpp"
#include "widom/complex_point.hpp"
#include "widom/quadrature.hpp"
#include "widom/weights.hpp"

namespace widom {

/// Logarithmic capacity sin(alpha/2) of the arc.
double capacity_arc(const ArcDomain& domain);

/// Exterior conformal map f(z) = (z - 1 + sqrt((z - e^{ia})(z - e^{-ia}))) / 2 of the
/// complement of the arc onto |w| > sin(alpha/2), normalized by f(z) = z + O(1).
ComplexPoint exterior_map(ComplexPoint z, const ArcDomain& domain, double exclusion = kArcExclusion);

/// The two boundary values of the exterior map at e^{i theta}, one from each side of the arc.
/// They coincide at the endpoints.
std::array<cplx, 2> exterior_map_boundary(double theta, const ArcDomain& domain);

/// Algebraic inverse z = 2w(w + 1) / (2w + 1 - cos alpha).
ComplexPoint inverse_exterior_map(ComplexPoint w, const ArcDomain& domain);

/// Green's function with pole at infinity, log(|f(z)| / sin(alpha/2)).
/// Points on the arc get the boundary value 0.
double green_inf(ComplexPoint z, const ArcDomain& domain);

/// c(r, alpha) = (|1 - r| + sqrt(1 - 2r cos alpha + r^2)) / (2r sin(alpha/2)) = exp(g(1/r, inf)).
double c_r_alpha(double r, const ArcDomain& domain);

/// Integral of log w against the equilibrium measure of the arc.
double mu_log_integral(const WeightSpec& weight, const ArcDomain& domain,
                       const QuadratureOptions& opts = {});

/// Integral of log w against harmonic measure at u0 (the equilibrium measure when u0 = inf).
double harmonic_measure_log_integral(const WeightSpec& weight, ComplexPoint u0, const ArcDomain& domain,
                                     const QuadratureOptions& opts = {});

/// Conformal map ((u e^{ia} - 1)/(u - e^{ia}))^{1/4} onto the sector |arg| < pi/4.
ComplexPoint lambda_map(ComplexPoint u, const ArcDomain& domain);

/// Kernel 2 lambda conj(lambda0) / (lambda + conj(lambda0))^2 with lambda = lambda_map(u).
cplx kernel_k(ComplexPoint u, ComplexPoint u0, const ArcDomain& domain);

/// |F_w(u)| = exp(-int log w d omega(u, .)); the phase is never computed.
double outer_modulus(const WeightSpec& weight, ComplexPoint u, const ArcDomain& domain,
                     const QuadratureOptions& opts = {});

}  // namespace widom
