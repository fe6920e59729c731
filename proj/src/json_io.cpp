#include "widom/json_io.hpp"

#include <fstream>

#include "widom/error.hpp"

namespace widom {

using nlohmann::json;

namespace {

double number(const json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::invalid_argument, std::string("expected a number for ") + what);
  return j.get<double>();
}

}  // namespace

WeightSpec weight_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::invalid_argument, "weight must be a JSON object");
  if (!j.contains("const") && !j.contains("powers") && !j.contains("table"))
    throw Error(ErrorCode::invalid_argument, "weight needs at least one of const, powers, table");
  WeightSpec w;
  if (j.contains("const")) w.constant = number(j["const"], "const");
  if (j.contains("powers")) {
    if (!j["powers"].is_array()) throw Error(ErrorCode::invalid_argument, "powers must be an array");
    for (const auto& p : j["powers"]) {
      if (!p.is_object() || !p.contains("s")) throw Error(ErrorCode::invalid_argument, "power factor needs s");
      const double re = p.contains("re") ? number(p["re"], "re") : 0.0;
      const double im = p.contains("im") ? number(p["im"], "im") : 0.0;
      w.powers.push_back({cplx(re, im), number(p["s"], "s")});
    }
  }
  if (j.contains("table")) {
    if (!j["table"].is_array()) throw Error(ErrorCode::invalid_argument, "table must be an array");
    for (const auto& k : j["table"]) {
      if (!k.is_array() || k.size() != 2) throw Error(ErrorCode::invalid_argument, "table rows are [theta, value]");
      w.table.push_back({number(k[0], "theta"), number(k[1], "value")});
    }
  }
  if (j.contains("M")) {
    w.bound = number(j["M"], "M");
  } else {
    for (const auto& k : w.table)
      if (k.value > 0.0) w.bound = std::max({w.bound, k.value, 1.0 / k.value});
  }
  if (j.contains("allow_singular")) {
    if (!j["allow_singular"].is_boolean()) throw Error(ErrorCode::invalid_argument, "allow_singular must be boolean");
    w.allow_singular = j["allow_singular"].get<bool>();
  }
  w.validate();
  return w;
}

json weight_to_json(const WeightSpec& w) {
  json j;
  j["const"] = w.constant;
  j["powers"] = json::array();
  for (const auto& p : w.powers) j["powers"].push_back({{"re", p.node.real()}, {"im", p.node.imag()}, {"s", p.exponent}});
  j["table"] = json::array();
  for (const auto& k : w.table) j["table"].push_back({k.theta, k.value});
  j["M"] = w.bound;
  if (w.allow_singular) j["allow_singular"] = true;
  return j;
}

WeightSpec load_weight_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open weight file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::invalid_argument, std::string("weight file: ") + e.what());
  }
  return weight_from_json(j);
}

json point_to_json(const ComplexPoint& p) {
  if (p.is_infinite()) return "inf";
  return {{"re", p.re()}, {"im", p.im()}};
}

ComplexPoint point_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ComplexPoint::infinity();
  if (!j.is_object()) throw Error(ErrorCode::invalid_argument, "point must be \"inf\" or {re, im}");
  return ComplexPoint(number(j.value("re", json(0.0)), "re"), number(j.value("im", json(0.0)), "im"));
}

json solution_to_json(const PolySolution& s, const Grid& grid) {
  json j;
  j["degree"] = s.degree;
  j["normalization"] = s.normalization.is_monic() ? json("monic") : json{{"point", point_to_json(s.normalization.target())}};
  const Eigen::VectorXcd mono = s.monomial_coefficients();
  j["coefficients"] = json::array();
  for (Eigen::Index k = 0; k < mono.size(); ++k) j["coefficients"].push_back({mono(k).real(), mono(k).imag()});
  j["ill_conditioned"] = s.degree > 40;
  j["norm"] = s.norm;
  j["lower_bound"] = s.lower_bound;
  j["extremal_theta"] = json::array();
  for (std::size_t idx : s.extremal_set) j["extremal_theta"].push_back(grid.params.at(idx));
  j["certificate"] = s.certificate;
  j["iterations"] = s.iterations;
  j["converged"] = s.converged;
  j["grid_size"] = grid.size();
  return j;
}

json report_to_json(const PredictionReport& r) {
  json j;
  j["kind"] = to_string(r.kind);
  j["value"] = r.value;
  if (r.lower_bound) j["lower_bound"] = *r.lower_bound;
  if (r.upper_bound) j["upper_bound"] = *r.upper_bound;
  j["components"] = json::object();
  for (const auto& [name, v] : r.components) j["components"][name] = v;
  if (!r.profile.empty()) {
    j["profile"] = json::array();
    for (const auto& [u, v] : r.profile) j["profile"].push_back({{"u", point_to_json(u)}, {"value", v}});
  }
  return j;
}

json comparison_to_json(const ComparisonRecord& c) {
  return {{"n", c.n},
          {"direct_degree", c.direct_degree},
          {"direct_norm", c.direct_norm},
          {"reduced_norm", c.reduced_norm},
          {"scale", c.scale},
          {"gap", c.gap},
          {"widom_direct", c.widom_direct},
          {"widom_reduced", c.widom_reduced},
          {"widom_predicted", c.widom_predicted},
          {"direct_certificate", c.direct_certificate},
          {"reduced_certificate", c.reduced_certificate},
          {"converged", c.converged},
          {"near_singular", c.near_singular}};
}

}  // namespace widom
