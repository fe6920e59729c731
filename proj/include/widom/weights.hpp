#pragma once

#include <vector>

#include "widom/arc_domain.hpp"
#include "widom/complex_point.hpp"

namespace widom {

/// Factor |u - node|^exponent.
struct PowerFactor {
  cplx node;
  double exponent;
};

/// Knot of the tabulated base factor, interpolated linearly in theta = arg u.
struct TableKnot {
  double theta;
  double value;
};

/// Product-form weight on an arc:
///   w(u) = constant * base(arg u) * prod_j |u - u_j|^{s_j}.
/// The base factor is optional; without a table it is identically one.
struct WeightSpec {
  double constant = 1.0;
  std::vector<PowerFactor> powers;
  std::vector<TableKnot> table;
  /// Bound M with base in [1/M, M].
  double bound = 1.0;
  /// Permit negative exponents at nodes lying on the arc.
  bool allow_singular = false;

  static WeightSpec unit() { return {}; }

  bool is_unit() const { return constant == 1.0 && powers.empty() && table.empty(); }

  /// Checks the invariants that do not depend on the arc.
  void validate() const;
  /// Full check against an arc: table coverage, singular nodes.
  void validate(const ArcDomain& domain) const;

  /// True when the node lies on the closed arc.
  static bool node_on_arc(cplx node, const ArcDomain& domain);
  /// Indices of negative-exponent factors whose node lies on the arc.
  std::vector<std::size_t> singular_on_arc(const ArcDomain& domain) const;

  /// Tabulated base factor at angle theta (clamped to the table range).
  double base(double theta) const;
  /// log w(e^{i theta}) without range checks. -inf at a zero, +inf at a pole.
  double log_at_angle(double theta) const;
};

/// Weight value at a point of the arc.
double eval_weight(const WeightSpec& spec, ComplexPoint u, const ArcDomain& domain);

/// |r zeta - 1|^{l/m} written as r^{l/m} |zeta - 1/r|^{l/m}; the unit weight for l = 0.
WeightSpec lemniscate_reduced_weight(int m, double r, int l);

}  // namespace widom
