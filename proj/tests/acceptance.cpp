// Acceptance gate: one PASS/FAIL line per criterion, tolerances fixed here.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "halfplane/approx.hpp"
#include "halfplane/catalog.hpp"
#include "halfplane/norms.hpp"
#include "halfplane/operators.hpp"

using namespace halfplane;

namespace {

constexpr double kIsometryRel = 1e-6;
constexpr double kIsometrySeconds = 60.0;
constexpr double kMonomialRel = 1e-6;
constexpr double kTailAbs = 1e-10;
constexpr double kError10 = 1e-6;
constexpr double kThm1Seconds = 5.0;
constexpr double kMemberExact = 1e-8;
constexpr double kMemberQuadrature = 1e-6;
constexpr double kChangeOfVariables = 1e-6;
constexpr double kSlack = 1e-6;
constexpr double kLineIntegral = 1e-8;
constexpr double kHardyConst = 1e-6;
constexpr double kSquareFraction = 0.9;
constexpr double kResidual = 1e-4;
constexpr double kSlitFactor = 10.0;
constexpr double kThm2Seconds = 300.0;
constexpr double kShiftArea = 4.0;
constexpr double kShiftAreaTol = 0.05;
constexpr double kNormEquivalence = 1e-5;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, bool pass, const std::string& what) {
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  %s\n", n, pass ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

HalfPlaneFn disk_basis(std::size_t j) {
  Coeffs c(j + 1, 0.0);
  c[j] = 1.0;
  return HalfPlaneFn::from_disk(DiskSeries(c)).labeled("e" + std::to_string(j));
}

void lemma1_isometry() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> deg(1, 12);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int d = deg(gen);
    Coeffs c;
    double expected = 0.0;
    for (int n = 0; n <= d; ++n) {
      const double re = unit(gen);
      const double im = unit(gen);
      c.emplace_back(re, im);
      expected += kPi * n * (re * re + im * im);
    }
    const NormReport q =
        dirichlet_norm_halfplane(HalfPlaneFn(pushforward_polynomial(DiskSeries(c))), NormMethod::kQuadrature);
    worst = std::max(worst, q.finite ? std::abs(q.energy_term - expected) / expected : HUGE_VAL);
  }
  const double t = seconds_since(t0);
  report(1, worst <= kIsometryRel && t <= kIsometrySeconds,
         fmt("pullback isometry, 20 random polynomials: worst rel dev %.2e (tol %.0e), %.2fs", worst, kIsometryRel, t));
}

void monomial_energies() {
  bool exact = true;
  double worst = 0.0;
  for (int n = 1; n <= 12; ++n) {
    Coeffs c(n + 1, 0.0);
    c[n] = 1.0;
    const double e = dirichlet_energy_disk(DiskSeries(c));
    exact = exact && e == kPi * n;
    const QuadratureResult q = integrate_disk([n](cplx w) { return n * n * std::pow(std::abs(w), 2 * n - 2); });
    worst = std::max(worst, std::abs(q.value - kPi * n) / (kPi * n));
  }
  report(2, exact && worst <= kMonomialRel,
         fmt("monomial energies pi*n exact=%s, quadrature worst rel dev %.2e (tol %.0e)", exact ? "yes" : "no", worst,
             kMonomialRel));
}

void rational_convergence() {
  const auto t0 = Clock::now();
  const std::vector<Approximant> a = rational_approximants(HalfPlaneFn::builtin("exp_pullback", {1.0}), 10);
  double worst = 0.0;
  for (std::size_t k = 0; k <= 10; ++k) {
    double tail = 0.0;
    double fact = 1.0;
    for (int n = 1; n <= 40; ++n) {
      fact *= n;
      if (n > static_cast<int>(k)) tail += kPi * n / (fact * fact);
    }
    worst = std::max(worst, std::abs(a[k].error_squared - tail));
  }
  const double e10 = std::sqrt(a[10].error_squared);
  const double t = seconds_since(t0);
  report(3, worst <= kTailAbs && e10 < kError10 && t <= kThm1Seconds,
         fmt("exp tail worst abs dev %.2e (tol %.0e), error_10 %.3e (< %.0e), %.3fs", worst, kTailAbs, e10, kError10, t));
}

void membership() {
  const std::vector<std::size_t> cuts{16, 32, 64};
  const auto rejected = [&](const RationalFn& r) {
    const Membership m = membership_dirichlet(r, cuts);
    bool all_infinite = m.numeric_finite.size() == cuts.size();
    for (bool f : m.numeric_finite) all_infinite = all_infinite && !f;
    return !m.member && all_infinite;
  };
  const bool z = rejected(RationalFn::polynomial({0.0, 1.0}));
  const bool q = rejected(RationalFn({0.0, 0.0, 1.0}, {1.0, 1.0}));
  const RationalFn inv({1.0}, {kI, 1.0});
  const bool accepted = membership_dirichlet(inv, cuts).member;
  const double target = 0.25 + kPi / 4;
  const double de = std::abs(dirichlet_norm_halfplane(HalfPlaneFn(inv)).squared_norm - target);
  const double dq = std::abs(dirichlet_norm_halfplane(HalfPlaneFn(inv), NormMethod::kQuadrature).squared_norm - target);
  report(4, z && q && accepted && de <= kMemberExact && dq <= kMemberQuadrature,
         fmt("z rejected=%d, z^2/(z+1) rejected=%d, 1/(z+i) accepted=%d, norm dev exact %.2e quad %.2e", z, q, accepted,
             de, dq));
}

void change_of_variables() {
  const HalfPlaneFn ci(RationalFn({kI, -1.0}, {kI, 1.0}));
  const ChangeOfVariables s = change_of_variables_check(SelfMap::named("shift_i"), ci, RegionMask(ImAbove{1.0}));
  double worst = std::max(std::abs(s.left - kPi / 4), std::abs(s.right - kPi / 4));
  for (const char* name : {"identity", "affine_auto", "neg_inverse", "dilation_2"})
    for (const HalfPlaneFn& f : dirichlet_catalog()) {
      const double full = dirichlet_norm_halfplane(f).energy_term;
      const ChangeOfVariables c = change_of_variables_check(SelfMap::named(name), f, RegionMask::full());
      worst = std::max({worst, std::abs(c.left - full), std::abs(c.right - full), c.diverged ? HUGE_VAL : 0.0});
    }
  report(5, worst <= kChangeOfVariables,
         fmt("change of variables, shift and 4 automorphisms x 6 functions: worst abs dev %.2e (tol %.0e)", worst,
             kChangeOfVariables));
}

void boundedness() {
  double worst_slack = -HUGE_VAL;
  double worst_equal = 0.0;
  std::size_t maps = 0;
  std::size_t pairs = 0;
  for (const SelfMap& phi : univalent_catalog()) {
    ++maps;
    const bool automorphism = phi.as_moebius() && is_halfplane_automorphism(*phi.as_moebius());
    for (const HalfPlaneFn& f : dirichlet_catalog()) {
      ++pairs;
      const BoundednessCheck b = boundedness_check(phi, f);
      worst_slack = std::max(worst_slack, std::isfinite(b.lhs) ? b.lhs - b.rhs : HUGE_VAL);
      if (automorphism) worst_equal = std::max(worst_equal, std::abs(b.lhs - b.rhs));
    }
  }
  report(6, maps >= 5 && pairs >= 30 && worst_slack <= kSlack && worst_equal <= kSlack,
         fmt("%zu maps x 6 functions: max(lhs-rhs) %.2e, automorphism |lhs-rhs| %.2e (tol %.0e)", maps, worst_slack,
             worst_equal, kSlack));
}

void boundary_measure() {
  const QuadratureResult q = integrate_line([](double x) { return 2.0 / (1.0 + x * x); });
  const double dev = std::abs(q.value - 2 * kPi);
  report(7, dev <= kLineIntegral, fmt("line integral of 2/(1+x^2) dev from 2pi %.2e (tol %.0e)", dev, kLineIntegral));
}

void hardy_embedding() {
  bool finite = true;
  bool monotone = true;
  double const_dev = HUGE_VAL;
  for (const HalfPlaneFn& f : dirichlet_catalog()) {
    const HardyReport h = hardy_norm_halfplane(embed_theorem6(f));
    finite = finite && h.finite;
    // Grid ordered by decreasing y: line integrals must not decrease.
    for (std::size_t k = 1; k < h.profile.size(); ++k) {
      const bool down = h.profile[k].y < h.profile[k - 1].y;
      const double smaller_y = down ? h.profile[k].line.value : h.profile[k - 1].line.value;
      const double larger_y = down ? h.profile[k - 1].line.value : h.profile[k].line.value;
      monotone = monotone && larger_y <= smaller_y * (1 + 1e-8);
    }
    if (f.label() == "const_1") const_dev = std::abs(h.value - 2 * kPi) / (2 * kPi);
  }
  const bool unweighted_diverges = !hardy_norm_halfplane(HalfPlaneFn::constant(1.0)).finite;
  report(8, finite && monotone && const_dev <= kHardyConst && unweighted_diverges,
         fmt("weighted catalog finite=%d, profiles monotone=%d, const rel dev %.2e (tol %.0e), unweighted diverges=%d",
             finite, monotone, const_dev, kHardyConst, unweighted_diverges));
}

void square_residual() {
  std::vector<std::size_t> all;
  for (std::size_t n = 1; n <= 64; ++n) all.push_back(n);
  const DiskSeries square({0.0, 0.0, 1.0});
  const auto c = dense_range_residuals(SelfMap::disk_conjugate(square), {disk_basis(1)}, all);
  const double lowest = *std::min_element(c[0].residuals.begin(), c[0].residuals.end());
  report(9, lowest >= kSquareFraction * kPi,
         fmt("psi=w^2, target e_1: min residual over N<=64 is %.6f (>= %.4f)", lowest, kSquareFraction * kPi));
}

void dense_range() {
  const auto t0 = Clock::now();
  const SelfMap aut = SelfMap::moebius(MoebiusMap(2.0, 1.0, 1.0, 1.0));
  const auto curves = dense_range_residuals(aut, {disk_basis(1), disk_basis(2), disk_basis(3), disk_basis(4)}, {32});
  bool below = true;
  std::string values;
  for (const ResidualCurve& c : curves) {
    below = below && c.residuals[0] < kResidual;
    values += fmt(" %s=%.2e", c.target_id.c_str(), c.residuals[0]);
  }
  const auto slit = dense_range_residuals(SelfMap::named("slit_sqrt"), {disk_basis(1)}, {32});
  const bool separated = slit[0].residuals[0] > kSlitFactor * curves[0].residuals[0];
  const double t = seconds_since(t0);
  report(10, below && separated && t <= kThm2Seconds,
         fmt("automorphism residuals at N=32:%s (tol %.0e); slit e1 %.3e vs 10x automorphism e1 %.3e; %.2fs",
             values.c_str(), kResidual, slit[0].residuals[0], kSlitFactor * curves[0].residuals[0], t));
}

void complement() {
  bool zero = true;
  std::string values;
  for (const char* name : {"identity", "affine_auto", "neg_inverse", "dilation_2", "slit_sqrt"}) {
    const ComplementEstimate e = complement_measure_estimate(SelfMap::named(name));
    zero = zero && e.estimate <= e.ci;
    values += fmt(" %s=%.3g+-%.2g", name, e.estimate, e.ci);
  }
  const ComplementEstimate s = complement_measure_estimate(SelfMap::named("shift_i"));
  const bool shift = std::abs(s.estimate - kShiftArea) <= kShiftAreaTol;
  double worst = 0.0;
  for (const SelfMap& phi : full_image_catalog())
    for (const HalfPlaneFn& f : dirichlet_catalog()) {
      const HalfPlaneFn df = f.derivative();
      const auto g = [&df](cplx z) { return std::norm(df.eval_unchecked(z)); };
      const QuadratureResult a = integrate_region(g, *phi.image_region());
      const QuadratureResult b = integrate_halfplane(g);
      const double dev = a.diverged || b.diverged ? HUGE_VAL : std::abs(a.value - b.value) / std::max(b.value, 1e-300);
      worst = std::max(worst, a.value == b.value ? 0.0 : dev);
    }
  report(11, zero && shift && worst <= kNormEquivalence,
         fmt("complement%s; shift_i=%.4f+-%.3f (target 4 +- %.2f); norm equivalence worst rel dev %.2e (tol %.0e)",
             values.c_str(), s.estimate, s.ci, kShiftAreaTol, worst, kNormEquivalence));
}

std::string run_capture(const std::string& cli, const std::string& path) {
  const std::string cmd = "\"" + cli + "\" verify all --seed 0 --out \"" + path + "\"";
  [[maybe_unused]] const int rc = std::system(cmd.c_str());
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism(const char* cli) {
  if (cli == nullptr) {
    report(12, false, "CLI path not supplied");
    return;
  }
  const std::string a = run_capture(cli, "acceptance_verify_run1.json");
  const std::string b = run_capture(cli, "acceptance_verify_run2.json");
  report(12, !a.empty() && a == b, fmt("verify all --seed 0 twice: %zu bytes, identical=%d", a.size(), a == b));
}

}  // namespace

int main(int argc, char** argv) {
  lemma1_isometry();
  monomial_energies();
  rational_convergence();
  membership();
  change_of_variables();
  boundedness();
  boundary_measure();
  hardy_embedding();
  square_residual();
  dense_range();
  complement();
  determinism(argc > 1 ? argv[1] : nullptr);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
