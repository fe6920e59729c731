#include <doctest.h>

#include <cmath>

#include "widom/asymptotics.hpp"
#include "widom/error.hpp"
#include "widom/grid.hpp"
#include "widom/minimax.hpp"
#include "widom/potential.hpp"

using namespace widom;

namespace {

WeightSpec power_weight(cplx node, double s) {
  WeightSpec w;
  w.powers.push_back({node, s});
  return w;
}

// Limit modulus evaluated literally as the product of the h-ratio and Blaschke-ratio factors.
double raw_residual_modulus(const ArcDomain& d, const WeightSpec& w, cplx u, cplx u0) {
  const cplx l = lambda_map(u, d).value(), l0 = lambda_map(u0, d).value();
  const double a2 = std::norm(l0);
  auto h = [&](cplx x) { return x * x / ((x * x - a2) * (x * x + a2)); };
  const cplx first = 0.5 * (1.0 + h(l) / h(l0));
  const cplx second = a2 * (l * l - a2) * (l * l + l0 * l0) / (l0 * l0 * (l * l + a2) * (l * l - std::conj(l0 * l0)));
  return std::abs(first) * std::abs(second) * outer_modulus(w, u, d);
}

}  // namespace

TEST_CASE("Widom limit examples and sandwich") {
  const PredictionReport unit = predict_widom_limit(ArcDomain(kPi / 2), WeightSpec::unit());
  CHECK(unit.kind == PredictionKind::widom_limit);
  CHECK(unit.value == doctest::Approx(1.70710678118654752).epsilon(1e-12));
  CHECK(*unit.lower_bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*unit.upper_bound == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(unit.components.at("alpha_constant") == doctest::Approx(unit.value).epsilon(1e-15));
  CHECK(unit.components.at("capacity") == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

  for (double gap : {1e-1, 1e-2, 1e-3}) {
    const double v = predict_widom_limit(ArcDomain(kPi - gap), WeightSpec::unit()).value;
    CHECK(std::abs(v - 1.0) < gap);
  }

  const PredictionReport sq = predict_widom_limit(ArcDomain(kPi / 2), power_weight(1.0, 0.5));
  CHECK(sq.value == doctest::Approx(1.70710678118654752 * std::sqrt(std::sqrt(0.5))).epsilon(1e-9));
  CHECK(sq.value == doctest::Approx(1.4355000).epsilon(1e-7));

  for (double alpha = 0.05; alpha < kPi; alpha += 0.3) {
    const ArcDomain d(alpha);
    const PredictionReport r = predict_widom_limit(d, power_weight(cplx(0.2, 0.9), 1.3));
    CHECK(*r.lower_bound < r.value);
    CHECK(r.value < *r.upper_bound);
    CHECK(r.value / *r.lower_bound == doctest::Approx(2 * std::pow(std::cos(alpha / 4), 2)).epsilon(1e-12));
    CHECK(alpha_constant(d) > 1.0);
    CHECK(alpha_constant(d) < 2.0);
  }
}

TEST_CASE("Szego-Widom bounds") {
  const ArcDomain d(kPi / 2);
  auto [lo, hi] = szego_widom_bounds(d, WeightSpec::unit());
  CHECK(lo == doctest::Approx(1.0));
  CHECK(hi == doctest::Approx(2.0));
  WeightSpec w = power_weight(0.5, 1.0);
  w.constant = 2.0;  // |2 zeta - 1| = 2 |zeta - 1/2|
  std::tie(lo, hi) = szego_widom_bounds(d, w);
  CHECK(lo == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-9));
  CHECK(hi == doctest::Approx(1 + std::sqrt(5.0)).epsilon(1e-9));
  WeightSpec c;
  c.constant = 0.37;
  std::tie(lo, hi) = szego_widom_bounds(ArcDomain(2.2), c);
  CHECK(lo == doctest::Approx(0.37).epsilon(1e-12));
  CHECK(hi == doctest::Approx(0.74).epsilon(1e-12));
}

TEST_CASE("pointwise limit examples") {
  const ArcDomain d(kPi / 2);
  const PredictionReport at2 = predict_pointwise_limit(d, WeightSpec::unit(), 2.0);
  CHECK(at2.kind == PredictionKind::pointwise_limit);
  CHECK(at2.value == doctest::Approx(1.0 / kernel_k(2.0, 2.0, d).real()).epsilon(1e-12));
  CHECK(at2.value == doctest::Approx(1.31624).epsilon(1e-5));

  // positive Moebius value gives real lambda and k = 1/2
  const cplx e = d.upper_endpoint();
  const cplx u_real_lambda = (2.0 * e - 1.0) / (2.0 - e);
  CHECK(predict_pointwise_limit(d, WeightSpec::unit(), u_real_lambda).value ==
        doctest::Approx(2.0).epsilon(1e-9));

  const PredictionReport at0 = predict_pointwise_limit(d, power_weight(std::polar(1.0, kPi / 2), 1.0), 0.0);
  CHECK(at0.value == doctest::Approx(1.70710678118654752 * std::sqrt(0.5)).epsilon(1e-9));
  CHECK(at0.value == doctest::Approx(1.20711).epsilon(1e-5));

  const PredictionReport inf = predict_pointwise_limit(d, WeightSpec::unit(), ComplexPoint::infinity());
  CHECK(inf.kind == PredictionKind::widom_limit);
  CHECK_THROWS_AS(predict_pointwise_limit(d, WeightSpec::unit(), 1.0), Error);
}

TEST_CASE("pointwise limit approaches the Widom limit far away") {
  const ArcDomain d(1.1);
  const WeightSpec w = power_weight(cplx(0.4, -0.3), 0.9);
  const double target = predict_widom_limit(d, w).value;
  CHECK(predict_pointwise_limit(d, w, 1e6).value == doctest::Approx(target).epsilon(1e-3));
  CHECK(predict_pointwise_limit(d, w, -1e6).value == doctest::Approx(target).epsilon(1e-3));
}

TEST_CASE("lemniscate limit examples") {
  LemniscateSpec s;
  s.m = 2;
  s.r = 1.0;
  s.l = 1;
  CHECK(predict_lemniscate_limit(s).value == doctest::Approx(1.70710678118654752).epsilon(1e-12));
  s.r = 2.0;
  const PredictionReport r2 = predict_lemniscate_limit(s);
  CHECK(r2.value == doctest::Approx(1.825984).epsilon(1e-6));
  CHECK(r2.value == doctest::Approx(1.70710678118654752 * std::sqrt(c_r_alpha(2.0, ArcDomain(kPi / 2)))).epsilon(1e-12));
  CHECK(*r2.lower_bound < r2.value);
  CHECK(r2.value < *r2.upper_bound);
  s.m = 3;
  s.r = 0.5;
  s.l = 0;
  for (double alpha : {0.3, 1.0, 2.9}) {
    s.alpha = alpha;
    CHECK(predict_lemniscate_limit(s).value == doctest::Approx(2 * std::pow(std::cos(alpha / 4), 2)).epsilon(1e-14));
  }
  s.r = 1.0;
  s.alpha = 1.9;
  const double l0 = predict_lemniscate_limit(s).value;
  for (int l : {1, 2}) {
    s.l = l;
    CHECK(predict_lemniscate_limit(s).value == l0);
  }
}

TEST_CASE("limit residual modulus") {
  const ArcDomain d(kPi / 2);
  const WeightSpec w = power_weight(cplx(1.0, 0.0), 0.5);
  const cplx u0s[] = {cplx(0.0, 0.0), cplx(0.3, 0.2), cplx(-0.5, -0.1)};
  const cplx us[] = {cplx(2.0, 1.0), cplx(-0.4, 0.3), cplx(0.7, -1.6), cplx(-3.0, 0.0)};
  for (cplx u0 : u0s) {
    // reduces to the reciprocal of the pointwise limit at u = u0
    const double at = limit_residual_modulus(d, w, u0, u0);
    CHECK(at * predict_pointwise_limit(d, w, u0).value == doctest::Approx(1.0).epsilon(1e-8));
    for (cplx u : us) {
      const double v = limit_residual_modulus(d, w, u, u0);
      CHECK(v > 0);
      CHECK(v == doctest::Approx(raw_residual_modulus(d, w, u, u0)).epsilon(1e-9));
    }
  }
  // continuity far from the arc
  const double a = limit_residual_modulus(d, WeightSpec::unit(), cplx(5.0, 5.0), 0.0);
  const double b = limit_residual_modulus(d, WeightSpec::unit(), cplx(5.0, 5.0 + 1e-6), 0.0);
  CHECK(std::abs(a - b) < 1e-5);
  CHECK(std::isfinite(limit_residual_modulus(d, WeightSpec::unit(), ComplexPoint::infinity(), 0.0)));

  CHECK_THROWS_AS(limit_residual_modulus(d, w, 2.0, 1.5), Error);
  CHECK_THROWS_AS(limit_residual_modulus(d, w, 1.0, 0.2), Error);

  const std::vector<ComplexPoint> pts = {ComplexPoint(2.0), ComplexPoint(0.0, 3.0)};
  const PredictionReport prof = predict_residual_profile(d, w, 0.1, pts);
  CHECK(prof.kind == PredictionKind::residual_modulus_profile);
  REQUIRE(prof.profile.size() == 2);
  CHECK(prof.profile[1].second == doctest::Approx(limit_residual_modulus(d, w, cplx(0.0, 3.0), 0.1)));
}

TEST_CASE("residual profile against solver output") {
  const ArcDomain d(kPi / 2);
  const Grid g = build_grid(d, 2048, GridStrategy::chebyshev_theta);
  const int n = 32;
  const PolySolution t = solve_minimax(g, n, Normalization::at(0.0));
  const double cap = capacity_arc(d);
  // e^{-n g(u)} |R_n(u, 0)| with R_n = T_n / norm
  const double at_inf = std::abs(t.leading_coefficient()) * std::pow(cap, n) / t.norm;
  CHECK(at_inf == doctest::Approx(limit_residual_modulus(d, WeightSpec::unit(), ComplexPoint::infinity(), 0.0))
                      .epsilon(5e-2));
  for (cplx u : {cplx(3.0, 0.0), cplx(-1.0, 2.0)}) {
    const double val = std::exp(-n * green_inf(u, d)) * std::abs(t(u)) / t.norm;
    CHECK(val == doctest::Approx(limit_residual_modulus(d, WeightSpec::unit(), u, 0.0)).epsilon(5e-2));
  }
}

TEST_CASE("Richardson extrapolation") {
  const std::vector<std::pair<int, double>> constant = {{8, 2.0}, {16, 2.0}, {32, 2.0}};
  CHECK(richardson_extrapolate(constant).limit == doctest::Approx(2.0).epsilon(1e-14));
  std::vector<std::pair<int, double>> exact;
  for (int n : {8, 16, 32, 64}) exact.emplace_back(n, 1.0 + 1.0 / n);
  const Extrapolation e = richardson_extrapolate(exact);
  CHECK(std::abs(e.limit - 1.0) < 1e-10);
  CHECK(e.residual < 1e-12);
  REQUIRE(e.coefficients.size() == 2);
  CHECK(e.coefficients[1] == doctest::Approx(1.0).epsilon(1e-10));

  std::vector<std::pair<int, double>> quad;
  for (int n = 4; n <= 40; n += 4) quad.emplace_back(n, 3.0 - 2.0 / n + 5.0 / (n * n));
  const Extrapolation q = richardson_extrapolate(quad);
  CHECK(q.coefficients.size() == 3);
  CHECK(std::abs(q.limit - 3.0) < 1e-9);

  const std::vector<std::pair<int, double>> few = {{8, 1.0}, {16, 1.0}};
  CHECK_THROWS_AS(richardson_extrapolate(few), Error);
  const std::vector<std::pair<int, double>> unordered = {{8, 1.0}, {8, 1.0}, {16, 1.0}};
  CHECK_THROWS_AS(richardson_extrapolate(unordered), Error);
  std::vector<std::pair<int, double>> narrow;
  for (int n = 100000; n < 100005; ++n) narrow.emplace_back(n, 1.0);
  try {
    richardson_extrapolate(narrow);
    FAIL("expected IllConditionedFit");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::ill_conditioned_fit);
  }
}
