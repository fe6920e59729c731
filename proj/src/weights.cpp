#include "widom/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "widom/error.hpp"

namespace widom {

namespace {

constexpr double kOnCircleTol = 1e-10;
constexpr double kNodeHitTol = 1e-15;

}  // namespace

void WeightSpec::validate() const {
  if (!(constant > 0.0) || !std::isfinite(constant))
    throw Error(ErrorCode::invalid_argument, "weight constant must be positive and finite");
  for (const auto& p : powers) {
    if (!std::isfinite(p.node.real()) || !std::isfinite(p.node.imag()) || !std::isfinite(p.exponent))
      throw Error(ErrorCode::invalid_argument, "power factor must have a finite node and exponent");
  }
  if (table.empty()) return;
  if (!(bound >= 1.0)) throw Error(ErrorCode::invalid_argument, "base bound M must be >= 1");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i > 0 && !(table[i].theta > table[i - 1].theta))
      throw Error(ErrorCode::invalid_argument, "table thetas must be strictly increasing");
    const double v = table[i].value;
    if (!(v >= 1.0 / bound) || !(v <= bound)) {
      std::ostringstream os;
      os << "table value " << v << " outside [1/M, M] with M=" << bound;
      throw Error(ErrorCode::invalid_argument, os.str());
    }
  }
}

void WeightSpec::validate(const ArcDomain& domain) const {
  validate();
  if (!table.empty()) {
    const double a = domain.alpha();
    if (table.front().theta > -a + 1e-12 || table.back().theta < a - 1e-12)
      throw Error(ErrorCode::invalid_argument, "table must cover [-alpha, alpha]");
  }
  if (!allow_singular && !singular_on_arc(domain).empty())
    throw Error(ErrorCode::singular_node,
                "negative exponent at a node on the arc (enable allow_singular to accept)");
}

bool WeightSpec::node_on_arc(cplx node, const ArcDomain& domain) { return domain.on_arc(node); }

std::vector<std::size_t> WeightSpec::singular_on_arc(const ArcDomain& domain) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < powers.size(); ++i)
    if (powers[i].exponent < 0.0 && node_on_arc(powers[i].node, domain)) out.push_back(i);
  return out;
}

double WeightSpec::base(double theta) const {
  if (table.empty()) return 1.0;
  if (theta <= table.front().theta) return table.front().value;
  if (theta >= table.back().theta) return table.back().value;
  const auto it = std::upper_bound(table.begin(), table.end(), theta,
                                   [](double t, const TableKnot& k) { return t < k.theta; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double s = (theta - lo.theta) / (hi.theta - lo.theta);
  return lo.value + s * (hi.value - lo.value);
}

double WeightSpec::log_at_angle(double theta) const {
  double acc = std::log(constant) + std::log(base(theta));
  const cplx u = std::polar(1.0, theta);
  for (const auto& p : powers) {
    if (p.exponent == 0.0) continue;
    acc += p.exponent * std::log(std::abs(u - p.node));
  }
  return acc;
}

double eval_weight(const WeightSpec& spec, ComplexPoint u, const ArcDomain& domain) {
  if (u.is_infinite()) throw Error(ErrorCode::outside_arc, "point at infinity");
  const cplx z = u.value();
  const double theta = std::arg(z);
  if (std::abs(std::abs(z) - 1.0) > kOnCircleTol || std::abs(theta) > domain.alpha() + kOnCircleTol)
    throw Error(ErrorCode::outside_arc, "evaluation point is not on the arc");
  double value = spec.constant * spec.base(theta);
  for (const auto& p : spec.powers) {
    const double d = std::abs(z - p.node);
    if (p.exponent < 0.0 && d <= kNodeHitTol)
      throw Error(ErrorCode::singular_node, "evaluation at a pole of the weight");
    if (p.exponent == 0.0) continue;
    value *= std::pow(d, p.exponent);
  }
  return value;
}

WeightSpec lemniscate_reduced_weight(int m, double r, int l) {
  if (m < 1 || l < 0 || l >= m || !(r > 0.0))
    throw Error(ErrorCode::invalid_argument, "reduced weight needs m >= 1, r > 0, 0 <= l < m");
  WeightSpec w;
  if (l == 0) return w;
  const double s = static_cast<double>(l) / m;
  w.constant = std::pow(r, s);
  w.powers.push_back({cplx(1.0 / r, 0.0), s});
  return w;
}

}  // namespace widom
