#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "halfplane/approx.hpp"
#include "halfplane/json_io.hpp"
#include "halfplane/verify.hpp"
#include "halfplane/version.hpp"

using namespace halfplane;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitNonFinite = 3;
constexpr int kExitDomain = 4;

struct Options {
  std::vector<std::string> tol;
  double rho = ExtractionParams{}.rho;
  std::optional<std::size_t> samples;
  std::size_t degree = ExtractionParams{}.degree;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
};

struct Run {
  VerifyConfig config;
  std::string format;
};

Run resolve(const Options& o, bool samples_are_monte_carlo) {
  Run r;
  r.format = o.format;
  r.config.params.rho = o.rho;
  r.config.params.degree = o.degree;
  r.config.seed = o.seed;
  if (o.samples) (samples_are_monte_carlo ? r.config.mc_samples : r.config.params.samples) = *o.samples;
  if (!(o.rho > 0.0 && o.rho < 1.0)) throw ParseError("--rho must lie in (0, 1)");
  const std::size_t m = r.config.params.samples;
  if (m < 2 || (m & (m - 1)) != 0) throw ParseError("--samples must be a power of two");
  if (2 * o.degree >= m) throw ParseError("--degree must be below samples/2");
  if (samples_are_monte_carlo && r.config.mc_samples == 0) throw ParseError("--samples must be positive");
  for (const std::string& t : o.tol) {
    const auto eq = t.find('=');
    const std::string value = eq == std::string::npos ? t : t.substr(eq + 1);
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ParseError("bad --tol value '" + t + "'");
    }
    if (!(v > 0.0)) throw ParseError("--tol values must be positive");
    if (eq == std::string::npos) {
      r.config.quad.tol = v;
    } else {
      const std::string name = t.substr(0, eq);
      if (!default_tolerances().contains(name)) throw ParseError("unknown tolerance '" + name + "'");
      r.config.tolerances[name] = v;
    }
  }
  return r;
}

Json config_json(const Run& r) {
  Json tol = Json::object();
  for (const auto& [name, value] : r.config.tolerances) tol[name] = value;
  return Json{{"rho", r.config.params.rho},
              {"samples", r.config.params.samples},
              {"degree", r.config.params.degree},
              {"quadrature_tol", r.config.quad.tol},
              {"monte_carlo_samples", r.config.mc_samples},
              {"seed", r.config.seed},
              {"format", r.format},
              {"tolerances", tol}};
}

Json envelope(const std::string& command, const Run& r) {
  return Json{{"command", command}, {"version", kVersion}, {"config", config_json(r)}};
}

// Spec arguments are inline JSON or a path to a JSON file.
Json load_spec(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json_text(arg);
  std::ifstream in(arg);
  if (!in) throw ParseError("cannot read spec file '" + arg + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_json_text(text.str());
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_residuals(const std::vector<std::tuple<std::string, std::size_t, double>>& rows) {
  std::string out = "target_id,degree,residual\n";
  for (const auto& [id, degree, residual] : rows) out += id + "," + std::to_string(degree) + "," + number(residual) + "\n";
  return out;
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

std::string cmd_norm(const Run& r, const std::string& spec) {
  const HalfPlaneFn f = parse_function(load_spec(spec));
  const NormReport exact = dirichlet_norm_halfplane(f, NormMethod::kExactCoefficient, r.config.params);
  const NormReport quad = dirichlet_norm_halfplane(f, NormMethod::kQuadrature, r.config.params, r.config.quad);
  if (r.format == "csv") {
    std::string out = "method,squared_norm,basepoint_term,energy_term,finite\n";
    for (const NormReport* n : {&exact, &quad})
      out += to_string(n->method) + "," + number(n->squared_norm) + "," + number(n->basepoint_term) + "," +
             number(n->energy_term) + "," + (n->finite ? "true" : "false") + "\n";
    return out;
  }
  Json j = envelope("norm", r);
  j["function"] = load_spec(spec);
  j["exact"] = to_json(exact);
  j["quadrature"] = to_json(quad);
  j["difference"] = std::abs(exact.squared_norm - quad.squared_norm);
  return render(j);
}

std::string cmd_approx(const Run& r, const std::string& spec, std::size_t k_max) {
  const HalfPlaneFn f = parse_function(load_spec(spec));
  const std::vector<Approximant> a = rational_approximants(f, k_max, r.config.params);
  if (r.format == "csv") {
    std::vector<std::tuple<std::string, std::size_t, double>> rows;
    for (const Approximant& x : a) rows.emplace_back(f.label(), x.degree, std::sqrt(x.error_squared));
    return csv_residuals(rows);
  }
  Json curve = Json::array();
  for (const Approximant& x : a)
    curve.push_back(Json{{"degree", x.degree}, {"error", std::sqrt(x.error_squared)}, {"error_squared", x.error_squared}});
  Json j = envelope("approx", r);
  j["function"] = load_spec(spec);
  j["approximants"] = curve;
  return render(j);
}

std::string cmd_member(const Run& r, const std::string& spec) {
  const HalfPlaneFn f = parse_function(load_spec(spec));
  if (!f.is_rational()) throw ParseError("member expects a rational function spec");
  const Membership m = membership_dirichlet(std::get<RationalFn>(f.representation()), {16, 32, 64}, r.config.params);
  if (r.format == "csv") {
    std::string out = "truncation,finite\n";
    for (std::size_t k = 0; k < m.truncations.size(); ++k)
      out += std::to_string(m.truncations[k]) + "," + (m.numeric_finite[k] ? "true" : "false") + "\n";
    return out;
  }
  Json checks = Json::array();
  for (std::size_t k = 0; k < m.truncations.size(); ++k)
    checks.push_back(Json{{"truncation", m.truncations[k]}, {"finite", static_cast<bool>(m.numeric_finite[k])}});
  Json j = envelope("member", r);
  j["function"] = load_spec(spec);
  j["member"] = m.member;
  j["reason"] = m.reason;
  j["numeric"] = checks;
  j["numeric_agrees"] = m.numeric_agrees;
  if (m.member) j["norm"] = to_json(dirichlet_norm_halfplane(f, NormMethod::kExactCoefficient, r.config.params));
  return render(j);
}

std::string cmd_compose(const Run& r, const std::string& map_spec, const std::string& fn_spec) {
  const SelfMap phi = parse_selfmap(load_spec(map_spec));
  const HalfPlaneFn f = parse_function(load_spec(fn_spec));
  const HalfPlaneFn g = apply_composition(phi, f, r.config.params);
  const BoundednessCheck b = boundedness_check(phi, f, r.config.params, r.config.quad);
  const NormReport norm = dirichlet_norm_halfplane(g, NormMethod::kExactCoefficient, r.config.params);
  if (r.format == "csv") {
    std::string out = "quantity,value\n";
    out += "squared_norm," + number(norm.squared_norm) + "\n";
    out += "inequality_lhs," + number(b.lhs) + "\n";
    out += "inequality_rhs," + number(b.rhs) + "\n";
    return out;
  }
  Json j = envelope("compose", r);
  j["map"] = load_spec(map_spec);
  j["function"] = load_spec(fn_spec);
  j["composition"] = function_to_json(g);
  j["composition_norm"] = to_json(norm);
  j["univalence"] = to_json(check_univalent(phi));
  j["boundedness"] = Json{{"lhs", b.lhs}, {"rhs", b.rhs}, {"lhs_exact", b.lhs_exact}, {"holds", b.holds}};
  if (const auto omega = phi.image_region()) j["image_region"] = region_to_json(*omega);
  return render(j);
}

HalfPlaneFn disk_basis(std::size_t k) {
  Coeffs c(k + 1, 0.0);
  c[k] = 1.0;
  return HalfPlaneFn::from_disk(DiskSeries(c)).labeled("e" + std::to_string(k));
}

std::string cmd_diagnose(const Run& r, const std::string& map_spec, const std::vector<std::string>& target_specs,
                         std::vector<std::size_t> degrees) {
  const SelfMap phi = parse_selfmap(load_spec(map_spec));
  std::vector<HalfPlaneFn> targets;
  if (target_specs.empty())
    for (std::size_t k = 1; k <= 4; ++k) targets.push_back(disk_basis(k));
  for (std::size_t k = 0; k < target_specs.size(); ++k)
    targets.push_back(parse_function(load_spec(target_specs[k])).labeled("target" + std::to_string(k)));
  if (degrees.empty())
    for (std::size_t n = 1; n <= 32; ++n) degrees.push_back(n);
  const std::vector<ResidualCurve> curves = dense_range_residuals(phi, targets, degrees, r.config.params);
  if (r.format == "csv") {
    std::vector<std::tuple<std::string, std::size_t, double>> rows;
    for (const ResidualCurve& c : curves)
      for (std::size_t i = 0; i < c.degrees.size(); ++i) rows.emplace_back(c.target_id, c.degrees[i], c.residuals[i]);
    return csv_residuals(rows);
  }
  Json out = Json::array();
  for (const ResidualCurve& c : curves) {
    Json points = Json::array();
    for (std::size_t i = 0; i < c.degrees.size(); ++i)
      points.push_back(Json{{"degree", c.degrees[i]}, {"residual", c.residuals[i]}, {"regularized", static_cast<bool>(c.regularized[i])}});
    out.push_back(Json{{"target_id", c.target_id}, {"curve", points}});
  }
  Json j = envelope("diagnose-range", r);
  j["map"] = load_spec(map_spec);
  j["curves"] = out;
  return render(j);
}

std::string cmd_complement(const Run& r, const std::string& map_spec, const std::vector<double>& box_values) {
  const SelfMap phi = parse_selfmap(load_spec(map_spec));
  SampleBox box;
  if (!box_values.empty()) {
    if (box_values.size() != 4) throw ParseError("--box takes x_min,x_max,y_min,y_max");
    box = {box_values[0], box_values[1], box_values[2], box_values[3]};
  }
  const ComplementEstimate e = complement_measure_estimate(phi, box, r.config.mc_samples, r.config.seed);
  if (r.format == "csv") {
    return "estimate,ci,samples,outside,inconclusive\n" + number(e.estimate) + "," + number(e.ci) + "," +
           std::to_string(e.samples) + "," + std::to_string(e.outside) + "," + std::to_string(e.inconclusive) + "\n";
  }
  Json j = envelope("complement", r);
  j["map"] = load_spec(map_spec);
  j["box"] = region_to_json(RegionMask(BoxRegion{box.x_min, box.x_max, box.y_min, box.y_max}));
  j["estimate"] = e.estimate;
  j["ci"] = e.ci;
  j["samples"] = e.samples;
  j["outside"] = e.outside;
  j["inconclusive"] = e.inconclusive;
  return render(j);
}

std::string cmd_verify(const Run& r, const std::string& suite, bool& passed) {
  const std::vector<SuiteReport> reports = run_verify(suite, r.config);
  passed = std::all_of(reports.begin(), reports.end(), [](const SuiteReport& s) { return s.all_pass(); });
  if (r.format == "csv") {
    std::string out = "check_id,measured,tolerance,pass\n";
    for (const SuiteReport& s : reports)
      for (const CheckResult& c : s.checks)
        out += c.id + "," + number(c.measured) + "," + number(c.tolerance) + "," + (c.pass ? "true" : "false") + "\n";
    return out;
  }
  Json suites = Json::array();
  for (const SuiteReport& s : reports) {
    Json checks = Json::array();
    for (const CheckResult& c : s.checks)
      checks.push_back(Json{{"check_id", c.id}, {"measured", c.measured}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    suites.push_back(Json{{"suite", s.suite},
                          {"passed", s.checks.size() - s.failures()},
                          {"failed", s.failures()},
                          {"checks", checks}});
  }
  Json j = envelope("verify", r);
  j["suite"] = suite;
  j["pass"] = passed;
  j["suites"] = suites;
  return render(j);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet and Hardy space numerics on the upper half-plane"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--tol", o.tol, "Quadrature tolerance, or NAME=VALUE to override a verify tolerance")->allow_extra_args(false);
  app.add_option("--rho", o.rho, "Sampling radius for coefficient extraction");
  app.add_option("--samples", o.samples, "Extraction sample count (Monte Carlo count for complement)");
  app.add_option("--degree", o.degree, "Truncation degree");
  app.add_option("--seed", o.seed, "Monte Carlo seed");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out, "Write the report to PATH instead of stdout");

  std::string fn_spec, map_spec, suite;
  std::size_t k_max = 10;
  std::vector<std::string> targets;
  std::vector<std::size_t> degrees;
  std::vector<double> box;

  auto* norm = app.add_subcommand("norm", "Dirichlet norm by both the coefficient and quadrature paths");
  norm->add_option("function", fn_spec, "Function spec (JSON or file)")->required();
  auto* approx = app.add_subcommand("approx", "Rational approximation error curve");
  approx->add_option("function", fn_spec, "Function spec (JSON or file)")->required();
  approx->add_option("--kmax", k_max, "Largest partial-sum degree");
  auto* member = app.add_subcommand("member", "Membership of a rational function");
  member->add_option("function", fn_spec, "Rational function spec (JSON or file)")->required();
  auto* compose = app.add_subcommand("compose", "Composition with a self-map");
  compose->add_option("map", map_spec, "Self-map spec (JSON or file)")->required();
  compose->add_option("function", fn_spec, "Function spec (JSON or file)")->required();
  auto* diagnose = app.add_subcommand("diagnose-range", "Dense-range residual curves");
  diagnose->add_option("map", map_spec, "Self-map spec (JSON or file)")->required();
  diagnose->add_option("--target", targets, "Target function spec; defaults to e_1..e_4");
  diagnose->add_option("--degrees", degrees, "Span degrees; defaults to 1..32")->delimiter(',');
  auto* complement = app.add_subcommand("complement", "Area of the sample box missed by the image");
  complement->add_option("map", map_spec, "Self-map spec (JSON or file)")->required();
  complement->add_option("--box", box, "x_min,x_max,y_min,y_max")->delimiter(',');
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "lemma1, lemma41, thm1, thm2, thm4, thm5, thm6 or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    const Run run = resolve(o, complement->parsed());
    std::string text;
    bool passed = true;
    if (norm->parsed()) text = cmd_norm(run, fn_spec);
    if (approx->parsed()) text = cmd_approx(run, fn_spec, k_max);
    if (member->parsed()) text = cmd_member(run, fn_spec);
    if (compose->parsed()) text = cmd_compose(run, map_spec, fn_spec);
    if (diagnose->parsed()) text = cmd_diagnose(run, map_spec, targets, degrees);
    if (complement->parsed()) text = cmd_complement(run, map_spec, box);
    if (verify->parsed()) text = cmd_verify(run, suite, passed);
    emit(text, o.out);
    return passed ? 0 : kExitVerifyFailed;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const NonFiniteSample& e) {
    std::cerr << "non-finite sample: " << e.what() << "\n";
    return kExitNonFinite;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
