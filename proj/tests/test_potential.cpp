#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "widom/error.hpp"
#include "widom/potential.hpp"

using namespace widom;

namespace {

bool throws_code(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

WeightSpec power_weight(cplx node, double s, double constant = 1.0) {
  WeightSpec w;
  w.constant = constant;
  w.powers.push_back({node, s});
  return w;
}

}  // namespace

TEST_CASE("arc domain basics") {
  ArcDomain d(kPi / 2);
  CHECK(capacity_arc(d) == doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(capacity_arc(ArcDomain(kPi / 3)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(capacity_arc(ArcDomain(kPi - 1e-6, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(std::abs(d.upper_endpoint()) - 1.0) < 1e-15);
  CHECK_THROWS(ArcDomain(0.0));
  CHECK_THROWS(ArcDomain(kPi));
  CHECK_THROWS(ArcDomain(1e-4));
}

TEST_CASE("exterior map values") {
  ArcDomain d(kPi / 2);
  const cplx f0 = exterior_map(cplx(0.0), d).value();
  CHECK(std::abs(f0 - cplx(-1.0)) < 1e-14);
  CHECK(std::abs(f0 - oracle::exterior_map_by_continuation(0.0, kPi / 2)) < 1e-10);

  const cplx big = exterior_map(cplx(1e6), d).value();
  CHECK(std::abs(big - 1e6) < 1.0);
  CHECK(exterior_map(ComplexPoint::infinity(), d).is_infinite());

  for (double alpha : {0.4, kPi / 2, 2.5}) {
    ArcDomain a(alpha);
    const auto ends = exterior_map_boundary(alpha, a);
    CHECK(std::abs(ends[0] - 0.5 * (std::polar(1.0, alpha) - 1.0)) < 1e-12);
    CHECK(std::abs(std::abs(ends[0]) - std::sin(alpha / 2)) < 1e-12);
  }
  CHECK(throws_code(ErrorCode::point_on_arc, [&] { exterior_map(cplx(1.0), d); }));
  CHECK(throws_code(ErrorCode::point_on_arc, [&] { exterior_map(std::polar(1.0, 0.3), d); }));
}

TEST_CASE("exterior map agrees with continuation oracle") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> mod(0.05, 5.0), arg(-kPi, kPi);
  for (double alpha : {0.5, kPi / 2, 2.6}) {
    ArcDomain d(alpha);
    int checked = 0;
    while (checked < 40) {
      const cplx z = std::polar(mod(rng), arg(rng));
      // the ray from infinity must not cross the arc
      if (std::abs(z) < 1.0 && std::abs(std::arg(z)) <= alpha + 0.05) continue;
      if (d.distance(z) < 0.05) continue;
      const cplx ref = oracle::exterior_map_by_continuation(z, alpha);
      CHECK(std::abs(exterior_map(z, d).value() - ref) < 1e-9 * (1 + std::abs(ref)));
      ++checked;
    }
  }
}

TEST_CASE("inverse map: closed form, round trips and boundary") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double alpha : {0.3, 1.0, kPi / 2, 2.0, 3.0}) {
    ArcDomain d(alpha);
    const double cap = std::sin(alpha / 2);
    CHECK(std::abs(inverse_exterior_map(cplx(-1.0), ArcDomain(kPi / 2)).value()) < 1e-15);
    for (int i = 0; i < 500; ++i) {
      const double rho = cap * (1.0 + 1e-3 + 20.0 * unit(rng) * unit(rng));
      const cplx w = std::polar(rho, 2 * kPi * unit(rng));
      const cplx z = inverse_exterior_map(w, d).value();
      // root-solving oracle: w solves the defining quadratic at z
      const cplx q = w * w + (1.0 - z) * w - z * cap * cap;
      CHECK(std::abs(q) < 1e-12 * (1 + std::norm(w) + std::abs(z)));
      CHECK(std::abs(exterior_map(z, d).value() - w) <= 1e-10 * (1 + std::abs(w)));
    }
    for (int i = 0; i < 200; ++i) {
      const double phi = 2 * kPi * i / 200.0 + 1e-3;
      const cplx z = inverse_exterior_map(std::polar(cap, phi), d).value();
      CHECK(std::abs(std::abs(z) - 1.0) < 1e-10);
      CHECK(std::abs(std::arg(z)) <= alpha + 1e-10);
    }
    CHECK(throws_code(ErrorCode::outside_image, [&] { inverse_exterior_map(cplx(0.5 * cap), d); }));
  }
  const cplx far = inverse_exterior_map(cplx(1e6), ArcDomain(kPi / 2)).value();
  CHECK(std::abs(far - 1e6) / 1e6 < 1e-5);
}

TEST_CASE("Green's function") {
  ArcDomain d(kPi / 2);
  CHECK(green_inf(cplx(0.5), d) == doctest::Approx(std::log((1 + std::sqrt(5.0)) / (4 * std::sin(kPi / 4)))).epsilon(1e-13));
  CHECK(green_inf(cplx(0.5), d) == doctest::Approx(0.1346385).epsilon(1e-6));
  CHECK(green_inf(cplx(1.0), d) == 0.0);
  CHECK(throws_code(ErrorCode::infinity_pole, [&] { green_inf(ComplexPoint::infinity(), d); }));
  for (double r : {1e3, 1e6}) {
    const double g = green_inf(cplx(r), d);
    // f(z) = z + (cos(alpha) - 1)/2 + O(1/z)
    CHECK(std::abs(g - std::log(r) + std::log(std::sin(kPi / 4))) < 1.0 / r);
  }
  // harmonic off the arc (five-point Laplacian) and positive
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const cplx z(u(rng), u(rng));
    if (d.distance(z) < 0.2) continue;
    const double h = 1e-3;
    const double lap = green_inf(z + h, d) + green_inf(z - h, d) + green_inf(z + cplx(0, h), d) +
                       green_inf(z - cplx(0, h), d) - 4 * green_inf(z, d);
    CHECK(std::abs(lap) / (h * h) < 1e-3);
    CHECK(green_inf(z, d) > 0.0);
  }
  // vanishes continuously at the arc
  CHECK(green_inf(std::polar(1.0 + 1e-9, 0.4), d) < 1e-4);
}

TEST_CASE("c(r, alpha)") {
  for (double alpha : {0.5, kPi / 2, 2.5}) {
    ArcDomain d(alpha);
    CHECK(c_r_alpha(1.0, d) == doctest::Approx(1.0).epsilon(1e-15));
    for (double r : {0.1, 0.2, 0.5, 0.9, 1.1, 2.0, 5.0, 10.0})
      CHECK(std::abs(c_r_alpha(r, d) / std::exp(green_inf(cplx(1.0 / r), d)) - 1.0) < 1e-12);
  }
  ArcDomain d(kPi / 2);
  CHECK(c_r_alpha(2.0, d) == doctest::Approx(1.144122).epsilon(1e-6));
  CHECK(c_r_alpha(1e9, d) == doctest::Approx(1.0 / std::sin(kPi / 4)).epsilon(1e-8));
}

TEST_CASE("equilibrium log integrals") {
  ArcDomain d(kPi / 2);
  CHECK(mu_log_integral(WeightSpec::unit(), d) == 0.0);
  const double golden = mu_log_integral(power_weight(0.5, 1.0, 2.0), d);
  CHECK(golden == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-10));
  CHECK(golden == doctest::Approx(0.4812118).epsilon(1e-7));
  CHECK(mu_log_integral(power_weight(1.0, 1.0), d) == doctest::Approx(std::log(std::sin(kPi / 4))).epsilon(1e-9));

  // independent quadrature in the flat variable psi
  for (double alpha : {0.7, kPi / 2, 2.2}) {
    ArcDomain a(alpha);
    WeightSpec w;
    w.constant = 1.3;
    w.powers = {{cplx(0.3, 0.8), 0.7}, {cplx(-1.5, 0.2), -1.1}};
    w.table = {{-alpha, 1.5}, {0.0, 0.7}, {alpha, 1.2}};
    w.bound = 2.0;
    const double ref = oracle::equilibrium_integral(
        [&](double t) { return std::log(eval_weight(w, std::polar(1.0, t), a)); }, alpha);
    CHECK(std::abs(mu_log_integral(w, a) - ref) < 1e-8);
  }
}

TEST_CASE("harmonic measure integrals") {
  ArcDomain d(kPi / 2);
  const WeightSpec endpoint = power_weight(d.upper_endpoint(), 1.0);
  CHECK(harmonic_measure_log_integral(endpoint, cplx(0.0), d) ==
        doctest::Approx(-0.3465735902799727).epsilon(1e-9));
  const WeightSpec w = power_weight(cplx(0.2, 1.4), 0.6, 1.7);
  CHECK(harmonic_measure_log_integral(w, ComplexPoint::infinity(), d) == doctest::Approx(mu_log_integral(w, d)).epsilon(1e-14));
  CHECK(harmonic_measure_log_integral(WeightSpec::unit(), cplx(0.3, 0.2), d) == 0.0);
  CHECK(throws_code(ErrorCode::point_on_arc, [&] { harmonic_measure_log_integral(w, cplx(1.0), d); }));
}

TEST_CASE("Poisson kernel has unit mass") {
  // log w == 1 through a flat table, which goes through the quadrature path
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (double alpha : {0.5, kPi / 2, 2.8}) {
    ArcDomain d(alpha);
    WeightSpec e_weight;
    e_weight.table = {{-alpha, std::exp(1.0)}, {0.0, std::exp(1.0)}, {alpha, std::exp(1.0)}};
    e_weight.bound = 3.0;
    for (int i = 0; i < 20; ++i) {
      const cplx z(u(rng), u(rng));
      if (d.distance(z) < 1e-3) continue;
      CHECK(std::abs(harmonic_measure_log_integral(e_weight, z, d) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("Frostman identity") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0), t(-1.0, 1.0);
  int count = 0;
  for (double alpha : {0.6, kPi / 2, 2.4}) {
    ArcDomain d(alpha);
    while (count < 50) {
      const cplx node = std::polar(1.0, alpha * t(rng));
      const cplx z(u(rng), u(rng));
      if (d.distance(z) < 0.05) continue;
      const double lhs = std::exp(harmonic_measure_log_integral(power_weight(node, 1.0), z, d));
      const double rhs = std::abs(z - node) * std::exp(-green_inf(z, d));
      CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, rhs));
      if (++count % 17 == 0) break;
    }
  }
  CHECK(count >= 50 / 3);
}

TEST_CASE("lambda map and kernel") {
  ArcDomain d(kPi / 2);
  CHECK(std::abs(lambda_map(ComplexPoint::infinity(), d).value() - std::polar(1.0, kPi / 8)) < 1e-15);
  CHECK(std::abs(lambda_map(cplx(0.0), d).value() - std::polar(1.0, -kPi / 8)) < 1e-15);
  const cplx l2 = lambda_map(cplx(2.0), d).value();
  CHECK(std::abs(l2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::arg(l2) == doctest::Approx(std::atan2(3.0, -4.0) / 4).epsilon(1e-14));
  CHECK(std::arg(l2) == doctest::Approx(0.6245).epsilon(1e-4));

  const cplx kinf = kernel_k(ComplexPoint::infinity(), ComplexPoint::infinity(), d);
  CHECK(kinf.real() == doctest::Approx(1.0 / (2 * std::pow(std::cos(kPi / 8), 2))).epsilon(1e-14));
  CHECK(std::abs(kinf.imag()) < 1e-15);
  const cplx k2 = kernel_k(cplx(2.0), cplx(2.0), d);
  CHECK(k2.real() == doctest::Approx(0.75974).epsilon(1e-5));
  CHECK(1.0 / k2.real() == doctest::Approx(1.31624).epsilon(1e-5));
  // lambda is real on the preimage of the positive axis: u = (t e^{ia} - 1)/(t - e^{ia})... take t = 1/|.|
  const cplx e = d.upper_endpoint();
  const cplx u_real = (2.0 * e - 1.0) / (2.0 - e);  // Moebius value 2 -> lambda = 2^{1/4}
  CHECK(std::abs(lambda_map(u_real, d).value().imag()) < 1e-14);
  CHECK(kernel_k(u_real, u_real, d).real() == doctest::Approx(0.5).epsilon(1e-14));

  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (double alpha : {0.5, kPi / 2, 2.9}) {
    ArcDomain a(alpha);
    for (int i = 0; i < 100; ++i) {
      const cplx z(u(rng), u(rng));
      if (a.distance(z) < 1e-6) continue;
      const cplx l = lambda_map(z, a).value();
      CHECK(std::abs(std::arg(l)) <= kPi / 4 + 1e-12);
      const cplx k = kernel_k(z, z, a);
      CHECK(k.real() > 0.0);
      CHECK(std::abs(k.imag()) < 1e-12 * k.real());
      CHECK(1.0 / k.real() == doctest::Approx(2 * std::pow(std::cos(std::arg(l)), 2)).epsilon(1e-12));
    }
  }
}

TEST_CASE("outer modulus") {
  ArcDomain d(kPi / 2);
  CHECK(outer_modulus(WeightSpec::unit(), cplx(3.0), d) == 1.0);
  const WeightSpec w = power_weight(0.5, 1.0, 2.0);
  CHECK(outer_modulus(w, ComplexPoint::infinity(), d) == doctest::Approx(0.618034).epsilon(1e-6));
  CHECK(outer_modulus(w, ComplexPoint::infinity(), d) == doctest::Approx(std::exp(-mu_log_integral(w, d))).epsilon(1e-14));
}
