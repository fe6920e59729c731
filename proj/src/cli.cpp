#include "widom/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include "widom/asymptotics.hpp"
#include "widom/error.hpp"
#include "widom/grid.hpp"
#include "widom/json_io.hpp"
#include "widom/lemniscate.hpp"
#include "widom/minimax.hpp"
#include "widom/potential.hpp"

namespace widom {

namespace {

using nlohmann::json;

constexpr double kFitResidualLimit = 1e-2;

ComplexPoint parse_point(const std::string& text) {
  if (text == "inf" || text == "infinity") return ComplexPoint::infinity();
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return ComplexPoint(re, 0.0);
    }
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    std::size_t ua = 0, ub = 0;
    const double re = std::stod(a, &ua);
    const double im = std::stod(b, &ub);
    if (ua != a.size() || ub != b.size()) throw std::invalid_argument(text);
    return ComplexPoint(re, im);
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("point", "expected RE,IM or inf, got '" + text + "'");
  }
}

struct Range {
  int first = 0;
  int last = 0;
  int step = 1;
};

Range parse_range(const std::string& text) {
  Range r;
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ':')) {
      std::size_t used = 0;
      parts.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    }
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--n", "expected A:B:S, got '" + text + "'");
  }
  if (parts.empty() || parts.size() > 3) throw CLI::ValidationError("--n", "expected A:B:S, got '" + text + "'");
  r.first = parts[0];
  r.last = parts.size() > 1 ? parts[1] : parts[0];
  r.step = parts.size() > 2 ? parts[2] : 1;
  if (r.first < 0 || r.last < r.first || r.step < 1)
    throw CLI::ValidationError("--n", "range must satisfy 0 <= A <= B and S >= 1");
  return r;
}

std::vector<double> parse_list(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  } catch (const std::logic_error&) {
    values.clear();
  }
  if (values.size() != count) throw CLI::ValidationError(what, "malformed value '" + text + "'");
  return values;
}

// Angle options shared by every subcommand.
struct AngleOptions {
  double alpha = std::nan("");
  double alpha_deg = std::nan("");

  void attach(CLI::App* app, bool required = true) {
    auto* a = app->add_option("--alpha", alpha, "half-angle of the arc in radians");
    auto* d = app->add_option("--alpha-deg", alpha_deg, "half-angle of the arc in degrees");
    a->excludes(d);
    d->excludes(a);
    if (required) {
      app->callback([a, d] {
        if (a->count() == 0 && d->count() == 0) throw CLI::RequiredError("--alpha or --alpha-deg");
      });
    }
  }

  double value() const { return std::isnan(alpha_deg) ? alpha : alpha_deg * kPi / 180.0; }
};

WeightSpec weight_or_unit(const std::string& path, bool allow_singular) {
  WeightSpec w = path.empty() ? WeightSpec::unit() : load_weight_file(path);
  if (allow_singular) w.allow_singular = true;
  return w;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot write " + path);
  f << text;
}

struct SweepRow {
  int n = 0;
  std::size_t grid = 0;
  double norm = 0.0;
  double widom = 0.0;
  double certificate = 0.0;
  bool converged = false;
  std::optional<double> extrapolated;
};

std::string render_svg(const std::vector<SweepRow>& rows, double predicted) {
  const double width = 640, height = 400, left = 60, right = 20, top = 20, bottom = 40;
  double ymin = predicted, ymax = predicted;
  for (const auto& r : rows) {
    ymin = std::min(ymin, r.widom);
    ymax = std::max(ymax, r.widom);
  }
  const double pad = std::max(1e-6, 0.05 * (ymax - ymin));
  ymin -= pad;
  ymax += pad;
  const double nmin = rows.front().n;
  const double nmax = std::max(rows.back().n, rows.front().n + 1);
  auto x = [&](double n) { return left + (n - nmin) / (nmax - nmin) * (width - left - right); };
  auto y = [&](double v) { return top + (ymax - v) / (ymax - ymin) * (height - top - bottom); };

  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
     << height - bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << y(predicted) << "\" x2=\"" << width - right << "\" y2=\""
     << y(predicted) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (const auto& r : rows) os << x(r.n) << ',' << y(r.widom) << ' ';
  os << "\"/>\n";
  for (const auto& r : rows) os << "<circle cx=\"" << x(r.n) << "\" cy=\"" << y(r.widom) << "\" r=\"3\" fill=\"steelblue\"/>\n";
  os << "<text x=\"" << left << "\" y=\"" << height - 10 << "\" font-size=\"12\">n = " << rows.front().n << "</text>\n";
  os << "<text x=\"" << width - right - 60 << "\" y=\"" << height - 10 << "\" font-size=\"12\">n = " << rows.back().n
     << "</text>\n";
  os << "<text x=\"4\" y=\"" << y(ymax) + 12 << "\" font-size=\"12\">" << ymax << "</text>\n";
  os << "<text x=\"4\" y=\"" << y(ymin) << "\" font-size=\"12\">" << ymin << "</text>\n";
  os << "<text x=\"" << left + 6 << "\" y=\"" << y(predicted) - 4 << "\" font-size=\"12\" fill=\"gray\">limit "
     << predicted << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

int cmd_potential(const AngleOptions& angle, const std::string& green, bool cap, const std::optional<double>& c_r,
                  const std::string& mu_file, const std::string& omega_file, const std::string& point,
                  bool allow_singular, std::ostream& out) {
  const ArcDomain domain(angle.value());
  json j;
  if (!green.empty()) {
    j = {{"quantity", "green"}, {"value", green_inf(parse_point(green), domain)}};
  } else if (cap) {
    j = {{"quantity", "capacity"}, {"value", capacity_arc(domain)}};
  } else if (c_r) {
    j = {{"quantity", "c_r_alpha"}, {"value", c_r_alpha(*c_r, domain)}};
  } else if (!mu_file.empty()) {
    j = {{"quantity", "mu_log_integral"},
         {"value", mu_log_integral(weight_or_unit(mu_file, allow_singular), domain)}};
  } else if (!omega_file.empty()) {
    if (point.empty()) throw CLI::RequiredError("--point");
    j = {{"quantity", "omega_log_integral"},
         {"value",
          harmonic_measure_log_integral(weight_or_unit(omega_file, allow_singular), parse_point(point), domain)}};
  } else {
    throw CLI::RequiredError("one of --green, --cap, --c-r, --mu-log-int, --omega-log-int");
  }
  out << j.dump() << '\n';
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Chebyshev polynomials and Widom factors on circular arcs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // potential
  auto* pot = app.add_subcommand("potential", "Green's function, capacity and logarithmic integrals");
  AngleOptions pot_angle;
  pot_angle.attach(pot);
  std::string pot_green, pot_mu, pot_omega, pot_point;
  bool pot_cap = false, pot_singular = false;
  std::optional<double> pot_cr;
  auto* g_opt = pot->add_option("--green", pot_green, "Green's function at RE,IM");
  auto* c_opt = pot->add_flag("--cap", pot_cap, "logarithmic capacity");
  auto* r_opt = pot->add_option("--c-r", pot_cr, "c(r, alpha)");
  auto* m_opt = pot->add_option("--mu-log-int", pot_mu, "integral of log w against the equilibrium measure");
  auto* o_opt = pot->add_option("--omega-log-int", pot_omega, "integral of log w against harmonic measure at --point");
  pot->add_option("--point", pot_point, "pole of the harmonic measure (RE,IM or inf)");
  pot->add_flag("--allow-singular", pot_singular, "permit negative exponents at nodes on the arc");
  for (auto* a : {g_opt, c_opt, r_opt, m_opt, o_opt})
    for (auto* b : {g_opt, c_opt, r_opt, m_opt, o_opt})
      if (a != b) a->excludes(b);

  // solve
  auto* solve = app.add_subcommand("solve", "weighted minimax polynomial of one degree");
  AngleOptions solve_angle;
  solve_angle.attach(solve);
  int solve_n = 0;
  std::string solve_weight, solve_point = "inf", solve_out, solve_strategy = "chebyshev_theta";
  std::size_t solve_grid = 0;
  bool solve_singular = false;
  solve->add_option("--n", solve_n, "degree")->required()->check(CLI::NonNegativeNumber);
  solve->add_option("--weight", solve_weight, "weight JSON file (unit weight if omitted)");
  solve->add_option("--point", solve_point, "normalization point RE,IM or inf (monic)");
  solve->add_option("--grid", solve_grid, "grid size (default max(16n+64, 1024))");
  solve->add_option("--strategy", solve_strategy, "grid strategy")
      ->check(CLI::IsMember({"chebyshev_theta", "uniform_theta", "hybrid"}));
  solve->add_option("--out", solve_out, "write the solution JSON to this file");
  solve->add_flag("--allow-singular", solve_singular, "permit negative exponents at nodes on the arc");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "solve over a range of degrees");
  AngleOptions sweep_angle;
  sweep_angle.attach(sweep);
  std::string sweep_range, sweep_weight, sweep_point = "inf", sweep_csv, sweep_svg, sweep_strategy = "chebyshev_theta";
  std::size_t sweep_grid = 0;
  unsigned sweep_threads = 0;
  bool sweep_extrapolate = false, sweep_singular = false;
  sweep->add_option("--n", sweep_range, "degree range A:B:S (inclusive)")->required();
  sweep->add_option("--weight", sweep_weight, "weight JSON file (unit weight if omitted)");
  sweep->add_option("--point", sweep_point, "normalization point RE,IM or inf (monic)");
  sweep->add_option("--grid", sweep_grid, "fixed grid size (default max(16n+64, 1024) per degree)");
  sweep->add_option("--strategy", sweep_strategy, "grid strategy")
      ->check(CLI::IsMember({"chebyshev_theta", "uniform_theta", "hybrid"}));
  sweep->add_option("--csv", sweep_csv, "write the table to this CSV file");
  sweep->add_option("--svg", sweep_svg, "write a line chart to this SVG file");
  sweep->add_option("--threads", sweep_threads, "worker threads (default: hardware concurrency)");
  sweep->add_flag("--extrapolate", sweep_extrapolate, "extrapolate the normalized norms to n = infinity");
  sweep->add_flag("--allow-singular", sweep_singular, "permit negative exponents at nodes on the arc");

  // lemniscate
  auto* lem = app.add_subcommand("lemniscate", "Chebyshev polynomials on lemniscatic arcs");
  LemniscateSpec lem_spec;
  AngleOptions lem_angle;
  lem_angle.attach(lem);
  int lem_n = 0;
  std::size_t lem_grid = 0;
  bool lem_compare = false;
  lem->add_option("--m", lem_spec.m, "number of arcs")->required();
  lem->add_option("--r", lem_spec.r, "radius parameter")->required();
  lem->add_option("--l", lem_spec.l, "residue of the degree modulo m")->required();
  lem->add_option("--n", lem_n, "reduced degree; the full degree is nm + l")->required()->check(CLI::NonNegativeNumber);
  lem->add_option("--grid", lem_grid, "number of theta nodes (default max(16n+64, 1024))");
  lem->add_flag("--compare", lem_compare, "also solve directly on the lemniscate and compare");

  // predict
  auto* pred = app.add_subcommand("predict", "asymptotic predictions and bounds");
  AngleOptions pred_angle;
  pred_angle.attach(pred);
  std::string pred_weight, pred_point, pred_lem;
  bool pred_singular = false;
  pred->add_option("--weight", pred_weight, "weight JSON file (unit weight if omitted)");
  pred->add_option("--point", pred_point, "normalization point RE,IM or inf");
  pred->add_option("--lemniscate", pred_lem, "M,R,L for the lemniscatic limit");
  pred->add_flag("--allow-singular", pred_singular, "permit negative exponents at nodes on the arc");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_parse_error;
  }

  try {
    if (pot->parsed()) {
      return cmd_potential(pot_angle, pot_green, pot_cap, pot_cr, pot_mu, pot_omega, pot_point, pot_singular, out);
    }

    if (solve->parsed()) {
      const ArcDomain domain(solve_angle.value());
      const WeightSpec weight = weight_or_unit(solve_weight, solve_singular);
      const ComplexPoint u0 = parse_point(solve_point);
      const std::size_t size = solve_grid ? solve_grid : default_grid_size(solve_n);
      const Grid grid = build_grid(domain, size, grid_strategy_from_string(solve_strategy), weight, solve_n);
      const Normalization nz = u0.is_infinite() ? Normalization::monic() : Normalization::at(u0);
      const PolySolution sol = solve_minimax(grid, solve_n, nz);
      json j = solution_to_json(sol, grid);
      if (nz.is_monic()) j["widom"] = widom_factor(sol, capacity_arc(domain));
      if (!solve_out.empty()) {
        write_text(solve_out, j.dump(2) + "\n");
        json summary = {{"degree", sol.degree}, {"norm", sol.norm}, {"certificate", sol.certificate},
                        {"converged", sol.converged}, {"out", solve_out}};
        if (j.contains("widom")) summary["widom"] = j["widom"];
        out << summary.dump() << '\n';
      } else {
        out << j.dump(2) << '\n';
      }
      if (!sol.converged) {
        err << "warning: solver did not reach the optimality certificate\n";
        return exit_no_convergence;
      }
      return exit_ok;
    }

    if (sweep->parsed()) {
      const ArcDomain domain(sweep_angle.value());
      const WeightSpec weight = weight_or_unit(sweep_weight, sweep_singular);
      const ComplexPoint u0 = parse_point(sweep_point);
      const Range range = parse_range(sweep_range);
      const GridStrategy strategy = grid_strategy_from_string(sweep_strategy);
      const Normalization nz = u0.is_infinite() ? Normalization::monic() : Normalization::at(u0);
      const PredictionReport prediction = predict_pointwise_limit(domain, weight, u0);
      const double cap = capacity_arc(domain);
      const double green = u0.is_infinite() ? 0.0 : green_inf(u0, domain);

      std::vector<int> degrees;
      for (int n = range.first; n <= range.last; n += range.step) degrees.push_back(n);
      std::vector<SweepRow> rows(degrees.size());
      std::vector<std::string> failures(degrees.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i = next++; i < degrees.size(); i = next++) {
          const int n = degrees[i];
          try {
            const std::size_t size = sweep_grid ? sweep_grid : default_grid_size(n);
            const Grid grid = build_grid(domain, size, strategy, weight, n);
            const PolySolution sol = solve_minimax(grid, n, nz);
            SweepRow& r = rows[i];
            r.n = n;
            r.grid = grid.size();
            r.norm = sol.norm;
            r.widom = nz.is_monic() ? sol.norm / std::pow(cap, n) : sol.norm * std::exp(n * green);
            r.certificate = sol.certificate;
            r.converged = sol.converged;
          } catch (const std::exception& e) {
            failures[i] = e.what();
          }
        }
      };
      unsigned threads = sweep_threads ? sweep_threads : std::max(1u, std::thread::hardware_concurrency());
      threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, degrees.size())));
      std::vector<std::thread> pool;
      for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
      for (const auto& f : failures)
        if (!f.empty()) throw Error(ErrorCode::invalid_argument, f);

      std::optional<Extrapolation> fit;
      std::string fit_error;
      std::vector<std::pair<int, double>> seq;
      for (auto& r : rows) {
        if (r.n == 0) continue;
        seq.emplace_back(r.n, r.widom);
        if (sweep_extrapolate && seq.size() >= 3) {
          try {
            fit = richardson_extrapolate(seq);
            r.extrapolated = fit->limit;
            fit_error.clear();
          } catch (const Error& e) {
            fit.reset();
            fit_error = e.what();
          }
        }
      }

      std::ostringstream csv;
      csv << "n,grid,norm,widom,certificate,predicted,extrapolated\n";
      for (const auto& r : rows) {
        csv << r.n << ',' << r.grid << ',' << format_number(r.norm) << ',' << format_number(r.widom) << ','
            << format_number(r.certificate) << ',' << format_number(prediction.value) << ','
            << (r.extrapolated ? format_number(*r.extrapolated) : "") << '\n';
      }
      if (!sweep_svg.empty()) write_text(sweep_svg, render_svg(rows, prediction.value));

      bool all_converged = true;
      for (const auto& r : rows) all_converged = all_converged && r.converged;
      if (nz.is_monic() && prediction.lower_bound) {
        for (const auto& r : rows)
          if (r.widom < *prediction.lower_bound - 1e-3)
            err << "warning: n=" << r.n << " Widom factor " << format_number(r.widom) << " below the Szego bound "
                << format_number(*prediction.lower_bound) << '\n';
      }
      if (!sweep_csv.empty()) {
        write_text(sweep_csv, csv.str());
        json summary = {{"rows", rows.size()}, {"predicted", prediction.value}, {"converged", all_converged}};
        if (fit) {
          summary["extrapolated"] = fit->limit;
          summary["fit_residual"] = fit->residual;
        }
        out << summary.dump() << '\n';
      } else {
        out << csv.str();
      }
      if (sweep_extrapolate) {
        if (!fit) {
          err << "error: extrapolation failed" << (fit_error.empty() ? std::string(" (too few degrees)") : ": " + fit_error)
              << '\n';
          return exit_fit_residual;
        }
        if (fit->residual > kFitResidualLimit) {
          err << "error: extrapolation residual " << fit->residual << " exceeds " << kFitResidualLimit << '\n';
          return exit_fit_residual;
        }
      }
      if (!all_converged) {
        err << "warning: some degrees did not reach the optimality certificate\n";
        return exit_no_convergence;
      }
      return exit_ok;
    }

    if (lem->parsed()) {
      lem_spec.alpha = lem_angle.value();
      lem_spec.validate();
      const std::size_t size = lem_grid ? lem_grid : default_grid_size(lem_n);
      if (lem_compare) {
        const ComparisonRecord rec = direct_vs_reduced(lem_spec, lem_n, size);
        out << comparison_to_json(rec).dump(2) << '\n';
        return rec.converged ? exit_ok : exit_no_convergence;
      }
      const ReducedProblem red = reduce(lem_spec, lem_n);
      const Grid grid = build_grid(lem_spec.arc(), size, GridStrategy::chebyshev_theta, red.weight, lem_n);
      const PolySolution sol = solve_minimax(grid, lem_n, Normalization::monic());
      const int degree = lem_n * lem_spec.m + lem_spec.l;
      const double norm = red.scale * sol.norm;
      json j = {{"n", lem_n},
                {"degree", degree},
                {"reduced_norm", sol.norm},
                {"scale", red.scale},
                {"norm", norm},
                {"capacity", lem_spec.capacity()},
                {"widom", norm / std::pow(lem_spec.capacity(), degree)},
                {"widom_predicted", predict_lemniscate_limit(lem_spec).value},
                {"certificate", sol.certificate},
                {"converged", sol.converged},
                {"near_singular", !lem_spec.connected() && std::abs(lem_spec.r - 1.0) < 1e-3}};
      out << j.dump(2) << '\n';
      return sol.converged ? exit_ok : exit_no_convergence;
    }

    if (pred->parsed()) {
      const ArcDomain domain(pred_angle.value());
      PredictionReport rep;
      if (!pred_lem.empty()) {
        const auto v = parse_list(pred_lem, 3, "--lemniscate");
        LemniscateSpec spec;
        spec.m = static_cast<int>(v[0]);
        spec.r = v[1];
        spec.l = static_cast<int>(v[2]);
        spec.alpha = domain.alpha();
        if (spec.m != v[0] || spec.l != v[2]) throw Error(ErrorCode::invalid_argument, "M and L must be integers");
        rep = predict_lemniscate_limit(spec);
      } else {
        const WeightSpec weight = weight_or_unit(pred_weight, pred_singular);
        const ComplexPoint u0 = pred_point.empty() ? ComplexPoint::infinity() : parse_point(pred_point);
        rep = predict_pointwise_limit(domain, weight, u0);
      }
      out << report_to_json(rep).dump(2) << '\n';
      return exit_ok;
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_parse_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::no_convergence ? exit_no_convergence : exit_domain_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_domain_error;
  }
  return exit_parse_error;
}

}  // namespace widom
