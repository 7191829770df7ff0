#include "halfplane/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "halfplane/approx.hpp"
#include "halfplane/catalog.hpp"
#include "halfplane/norms.hpp"
#include "halfplane/operators.hpp"

namespace halfplane {

namespace {

class Suite {
 public:
  Suite(std::string name, const VerifyConfig& config) : config_(config) { report_.suite = std::move(name); }

  void add(std::string id, double measured, double tolerance) {
    report_.checks.push_back({report_.suite + "." + id, measured, tolerance, measured <= tolerance});
  }
  void named(std::string id, double measured, const std::string& tol_name) {
    add(std::move(id), measured, config_.tol(tol_name));
  }
  void flag(std::string id, bool ok) { add(std::move(id), ok ? 0.0 : 1.0, 0.0); }

  SuiteReport take() { return std::move(report_); }

 private:
  const VerifyConfig& config_;
  SuiteReport report_;
};

double rel_dev(double value, double target) {
  if (value == target) return 0.0;
  return std::abs(value - target) / std::max(std::abs(target), 1e-300);
}

double rel1_dev(double value, double target) { return std::abs(value - target) / (1.0 + std::abs(target)); }

HalfPlaneFn disk_basis(std::size_t j) {
  Coeffs c(j + 1, 0.0);
  c[j] = 1.0;
  return HalfPlaneFn::from_disk(DiskSeries(c)).labeled("e" + std::to_string(j));
}

double derivative_energy_integrand(const HalfPlaneFn& df, cplx z) { return std::norm(df.eval_unchecked(z)); }

std::vector<SelfMap> automorphisms() {
  std::vector<SelfMap> out;
  for (const char* name : {"identity", "affine_auto", "neg_inverse", "dilation_2"}) out.push_back(SelfMap::named(name));
  return out;
}

SuiteReport lemma1(const VerifyConfig& cfg) {
  Suite s("lemma1", cfg);
  std::mt19937_64 gen(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> deg(1, 12);
  for (int k = 0; k < 20; ++k) {
    const int d = deg(gen);
    Coeffs c;
    for (int n = 0; n <= d; ++n) {
      const double re = unit(gen);
      c.emplace_back(re, unit(gen));
    }
    const DiskSeries p(c);
    const NormReport q = dirichlet_norm_halfplane(HalfPlaneFn(pushforward_polynomial(p)), NormMethod::kQuadrature,
                                                  cfg.params, cfg.quad);
    s.named("random_poly_" + std::to_string(k), q.finite ? rel_dev(q.energy_term, dirichlet_energy_disk(p)) : HUGE_VAL,
            "lemma1.isometry");
  }
  for (std::size_t n = 1; n <= 12; ++n) {
    Coeffs c(n + 1, 0.0);
    c[n] = 1.0;
    const double exact = dirichlet_energy_disk(DiskSeries(c));
    s.add("monomial_" + std::to_string(n) + ".exact", std::abs(exact - kPi * static_cast<double>(n)), 0.0);
    const QuadratureResult q = integrate_disk(
        [n](cplx w) { return static_cast<double>(n * n) * std::pow(std::abs(w), 2.0 * static_cast<double>(n) - 2.0); },
        cfg.quad);
    s.named("monomial_" + std::to_string(n) + ".quadrature", rel_dev(q.value, exact), "lemma1.monomial");
  }
  return s.take();
}

SuiteReport lemma41(const VerifyConfig& cfg) {
  Suite s("lemma41", cfg);
  const HalfPlaneFn ci(RationalFn({kI, -1.0}, {kI, 1.0}));
  const ChangeOfVariables shift = change_of_variables_check(SelfMap::named("shift_i"), ci, RegionMask(ImAbove{1.0}), cfg.quad);
  s.named("shift_i.cayley_inverse.left", std::abs(shift.left - kPi / 4), "lemma41.identity");
  s.named("shift_i.cayley_inverse.right", std::abs(shift.right - kPi / 4), "lemma41.identity");

  for (const SelfMap& phi : automorphisms())
    for (const HalfPlaneFn& f : dirichlet_catalog()) {
      const double energy = dirichlet_norm_halfplane(f, NormMethod::kExactCoefficient, cfg.params).energy_term;
      const ChangeOfVariables c = change_of_variables_check(phi, f, RegionMask::full(), cfg.quad);
      const std::string id = phi.name() + "." + f.label();
      s.named(id + ".left", c.diverged ? HUGE_VAL : std::abs(c.left - energy), "lemma41.identity");
      s.named(id + ".right", c.diverged ? HUGE_VAL : std::abs(c.right - energy), "lemma41.identity");
    }

  for (const SelfMap& phi : univalent_catalog()) {
    const RegionMask omega = *phi.image_region();
    for (const HalfPlaneFn& f : dirichlet_catalog()) {
      const std::string id = phi.name() + "." + f.label();
      const ChangeOfVariables c = change_of_variables_check(phi, f, omega, cfg.quad);
      s.named(id + ".change_of_variables", c.diverged ? HUGE_VAL : rel1_dev(c.left, c.right), "lemma41.identity");
      const NormReport on_omega = dirichlet_norm_region(f, omega, phi.eval(kI), cfg.quad);
      const NormReport pulled =
          dirichlet_norm_halfplane(composition_closure(phi, f), NormMethod::kQuadrature, cfg.params, cfg.quad);
      s.named(id + ".unitary", rel_dev(pulled.squared_norm, on_omega.squared_norm), "lemma41.unitary");
    }
  }
  return s.take();
}

SuiteReport thm1(const VerifyConfig& cfg) {
  Suite s("thm1", cfg);
  const std::vector<Approximant> e = rational_approximants(HalfPlaneFn::builtin("exp_pullback"), 10, cfg.params);
  for (std::size_t k = 0; k <= 10; ++k) {
    double tail = 0.0;
    double fact = 1.0;
    for (int n = 1; n <= 40; ++n) {
      fact *= n;
      if (n > static_cast<int>(k)) tail += kPi * n / (fact * fact);
    }
    s.named("exp.tail_" + std::to_string(k), std::abs(e[k].error_squared - tail), "thm1.tail");
  }
  s.named("exp.error_10", std::sqrt(e[10].error_squared), "thm1.error_10");

  for (const HalfPlaneFn& f : dirichlet_catalog()) {
    const std::vector<Approximant> a = rational_approximants(f, 20, cfg.params);
    double rise = 0.0;
    for (std::size_t k = 1; k < a.size(); ++k) rise = std::max(rise, a[k].error_squared - a[k - 1].error_squared);
    s.add("catalog." + f.label() + ".monotone", rise, 0.0);
    s.named("catalog." + f.label() + ".error_sq_20", a.back().error_squared, "thm1.catalog");
  }

  const std::vector<std::size_t> cuts{16, 32, 64};
  const auto rejected = [&](const std::string& id, const RationalFn& r) {
    const Membership m = membership_dirichlet(r, cuts, cfg.params);
    s.flag("member." + id + ".rejected", !m.member);
    s.flag("member." + id + ".numeric_nonfinite",
           std::none_of(m.numeric_finite.begin(), m.numeric_finite.end(), [](bool b) { return b; }));
  };
  rejected("z", RationalFn::polynomial({0.0, 1.0}));
  rejected("z2_over_z_plus_1", RationalFn({0.0, 0.0, 1.0}, {1.0, 1.0}));

  const RationalFn inv(RationalFn({1.0}, {kI, 1.0}));
  const Membership m = membership_dirichlet(inv, cuts, cfg.params);
  s.flag("member.inv_z_plus_i.accepted", m.member && m.numeric_agrees);
  const double target = 0.25 + kPi / 4;
  const NormReport exact = dirichlet_norm_halfplane(HalfPlaneFn(inv), NormMethod::kExactCoefficient, cfg.params);
  const NormReport quad = dirichlet_norm_halfplane(HalfPlaneFn(inv), NormMethod::kQuadrature, cfg.params, cfg.quad);
  s.named("member.inv_z_plus_i.norm_exact", std::abs(exact.squared_norm - target), "thm1.norm_exact");
  s.named("member.inv_z_plus_i.norm_quadrature", std::abs(quad.squared_norm - target), "thm1.norm_quadrature");
  return s.take();
}

SuiteReport thm2(const VerifyConfig& cfg) {
  Suite s("thm2", cfg);
  std::vector<std::size_t> all;
  for (std::size_t n = 1; n <= 64; ++n) all.push_back(n);
  const auto square = dense_range_residuals(SelfMap::named("square_conjugate"), {disk_basis(1)}, all, cfg.params);
  const double lowest = *std::min_element(square[0].residuals.begin(), square[0].residuals.end());
  s.add("square_conjugate.e1.margin_below_0.9pi", 0.9 * kPi - lowest, 0.0);

  const std::vector<std::size_t> degrees{8, 16, 24, 32};
  const SelfMap aut = SelfMap::named("affine_auto");
  const auto curves =
      dense_range_residuals(aut, {disk_basis(1), disk_basis(2), disk_basis(3), disk_basis(4)}, degrees, cfg.params);
  for (const ResidualCurve& c : curves) {
    double rise = 0.0;
    for (std::size_t i = 1; i < c.residuals.size(); ++i) rise = std::max(rise, c.residuals[i] - c.residuals[i - 1]);
    s.add("affine_auto." + c.target_id + ".monotone", rise, 0.0);
    s.named("affine_auto." + c.target_id + ".residual_32", c.residuals.back(), "thm2.residual");
  }

  const auto slit = dense_range_residuals(SelfMap::named("slit_sqrt"), {disk_basis(1)}, {32}, cfg.params);
  const double ratio = slit[0].residuals[0] > 0.0 ? 10.0 * curves[0].residuals.back() / slit[0].residuals[0] : HUGE_VAL;
  s.add("slit_sqrt.e1.separation_32", ratio, 1.0);
  return s.take();
}

SuiteReport thm4(const VerifyConfig& cfg) {
  Suite s("thm4", cfg);
  for (const SelfMap& phi : univalent_catalog()) {
    const UnivalenceVerdict v = check_univalent(phi);
    s.flag(phi.name() + ".univalent", v.kind == UnivalenceVerdict::Kind::kUnivalentLikely);
    const bool full = phi.image_region() && phi.image_region()->type() == "halfplane";
    for (const HalfPlaneFn& f : dirichlet_catalog()) {
      const BoundednessCheck b = boundedness_check(phi, f, cfg.params, cfg.quad);
      const std::string id = phi.name() + "." + f.label();
      s.named(id + ".slack", b.holds || std::isfinite(b.lhs) ? b.lhs - b.rhs : HUGE_VAL, "thm4.slack");
      if (full) s.named(id + ".equality", std::abs(b.lhs - b.rhs), "thm4.equality");
    }
  }
  const SelfMap square = SelfMap::named("square_conjugate");
  s.flag("square_conjugate.not_univalent", check_univalent(square).kind == UnivalenceVerdict::Kind::kNotUnivalent);
  const BoundednessCheck b = boundedness_check(square, HalfPlaneFn(RationalFn({kI, -1.0}, {kI, 1.0})), cfg.params, cfg.quad);
  s.add("square_conjugate.cayley_inverse.exceeds", b.rhs - b.lhs, 0.0);
  return s.take();
}

SuiteReport thm5(const VerifyConfig& cfg) {
  Suite s("thm5", cfg);
  std::vector<SelfMap> null_complement = automorphisms();
  null_complement.push_back(SelfMap::named("slit_sqrt"));
  for (const SelfMap& phi : null_complement) {
    const ComplementEstimate e = complement_measure_estimate(phi, {}, cfg.mc_samples, cfg.seed);
    s.add(phi.name() + ".complement", e.estimate, e.ci);
  }
  const ComplementEstimate shift = complement_measure_estimate(SelfMap::named("shift_i"), {}, cfg.mc_samples, cfg.seed);
  s.named("shift_i.complement", std::abs(shift.estimate - 4.0), "thm5.shift_area");

  for (const SelfMap& phi : full_image_catalog()) {
    const RegionMask omega = *phi.image_region();
    for (const HalfPlaneFn& f : dirichlet_catalog()) {
      const HalfPlaneFn df = f.derivative();
      const auto g = [&df](cplx z) { return derivative_energy_integrand(df, z); };
      const QuadratureResult on_omega = integrate_region(g, omega, cfg.quad);
      const QuadratureResult whole = integrate_halfplane(g, cfg.quad);
      const bool ok = !on_omega.diverged && !whole.diverged;
      s.named(phi.name() + "." + f.label() + ".norm_equivalence", ok ? rel_dev(on_omega.value, whole.value) : HUGE_VAL,
              "thm5.norm_equivalence");
    }
  }
  return s.take();
}

SuiteReport thm6(const VerifyConfig& cfg) {
  Suite s("thm6", cfg);
  const QuadratureResult line = integrate_line([](double x) { return 2.0 / (1.0 + x * x); }, cfg.quad);
  s.named("boundary_measure", rel_dev(line.value, 2 * kPi), "thm6.boundary_measure");

  const std::vector<double> grid = default_hardy_grid();
  for (const HalfPlaneFn& f : dirichlet_catalog()) {
    const HardyReport h = hardy_norm_halfplane(embed_theorem6(f), grid, cfg.quad);
    s.flag(f.label() + ".finite", h.finite);
    double rise = 0.0;
    for (std::size_t k = 1; k < h.profile.size(); ++k) {
      const HardyProfilePoint& lo = h.profile[k - 1].y < h.profile[k].y ? h.profile[k - 1] : h.profile[k];
      const HardyProfilePoint& hi = h.profile[k - 1].y < h.profile[k].y ? h.profile[k] : h.profile[k - 1];
      rise = std::max(rise, (hi.line.value - lo.line.value) / (1.0 + std::abs(lo.line.value)));
    }
    s.named(f.label() + ".profile_nonincreasing", rise, "thm6.profile");
    if (f.label() == "const_1") s.named(f.label() + ".value", rel_dev(h.value, 2 * kPi), "thm6.const_value");
  }
  s.flag("unweighted_const_1.diverges", !hardy_norm_halfplane(HalfPlaneFn::constant(1.0), grid, cfg.quad).finite);
  return s.take();
}

}  // namespace

bool SuiteReport::all_pass() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tols{
      {"lemma1.isometry", 1e-6},   {"lemma1.monomial", 1e-6},     {"lemma41.identity", 1e-6},
      {"lemma41.unitary", 1e-6},   {"thm1.tail", 1e-10},          {"thm1.error_10", 1e-6},
      {"thm1.catalog", 1e-4},      {"thm1.norm_exact", 1e-8},     {"thm1.norm_quadrature", 1e-6},
      {"thm2.residual", 1e-4},     {"thm4.slack", 1e-6},          {"thm4.equality", 1e-6},
      {"thm5.shift_area", 0.05},   {"thm5.norm_equivalence", 1e-5}, {"thm6.boundary_measure", 1e-8},
      {"thm6.profile", 1e-8},      {"thm6.const_value", 1e-6},
  };
  return tols;
}

double VerifyConfig::tol(const std::string& name) const {
  if (const auto it = tolerances.find(name); it != tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma1", "lemma41", "thm1", "thm2", "thm4", "thm5", "thm6"};
  return names;
}

std::vector<SuiteReport> run_verify(const std::string& suite, const VerifyConfig& config) {
  for (const auto& [name, value] : config.tolerances) {
    if (!default_tolerances().contains(name)) throw ParseError("unknown tolerance '" + name + "'");
    if (!(value > 0.0)) throw ParseError("tolerance '" + name + "' must be positive");
  }
  using Runner = SuiteReport (*)(const VerifyConfig&);
  static const std::map<std::string, Runner> runners{{"lemma1", lemma1}, {"lemma41", lemma41}, {"thm1", thm1},
                                                     {"thm2", thm2},     {"thm4", thm4},       {"thm5", thm5},
                                                     {"thm6", thm6}};
  std::vector<SuiteReport> out;
  if (suite == "all") {
    for (const std::string& name : suite_names()) out.push_back(runners.at(name)(config));
    return out;
  }
  const auto it = runners.find(suite);
  if (it == runners.end()) throw ParseError("unknown verify suite '" + suite + "'");
  out.push_back(it->second(config));
  return out;
}

}  // namespace halfplane
