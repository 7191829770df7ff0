#include "halfplane/norms.hpp"

#include <cmath>

namespace halfplane {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const cplx kSqrtMinus2i = std::sqrt(cplx{0.0, -2.0});

double partial_energy(std::span<const cplx> a, std::size_t upto) {
  double e = 0.0;
  for (std::size_t n = 1; n <= upto && n < a.size(); ++n) e += static_cast<double>(n) * std::norm(a[n]);
  return kPi * e;
}

PlaneIntegrand squared_modulus_of_derivative(const HalfPlaneFn& f) {
  // The derivative object is built once; its evaluation skips pole checks so
  // that a blow-up surfaces as a non-finite value or divergence.
  auto df = std::make_shared<HalfPlaneFn>(f.derivative());
  return [df](cplx z) { return std::norm(df->eval_unchecked(z)); };
}

}  // namespace

std::string to_string(NormMethod m) {
  return m == NormMethod::kExactCoefficient ? "exact-coefficient" : "quadrature";
}

double dirichlet_energy_disk(const DiskSeries& s) {
  return partial_energy(s.coefficients(), s.truncation_degree());
}

bool energy_partial_sums_converge(const DiskSeries& s) {
  const std::size_t n = s.truncation_degree();
  if (n < 4) return true;
  const auto a = s.coefficients();
  const double e1 = partial_energy(a, n / 4);
  const double e2 = partial_energy(a, n / 2);
  const double e3 = partial_energy(a, n);
  const double late = e3 - e2;
  const double early = e2 - e1;
  if (late <= 1e-12 * (1.0 + e3)) return true;
  return late <= 0.5 * early;
}

double hardy_norm_disk(const DiskSeries& s) {
  double sum = 0.0;
  for (const cplx a : s.coefficients()) sum += std::norm(a);
  return 2.0 * kPi * sum;
}

NormReport dirichlet_norm_halfplane(const HalfPlaneFn& f, NormMethod method,
                                    const ExtractionParams& params, const QuadratureOptions& opts) {
  NormReport report;
  report.method = method;
  report.basepoint_term = std::norm(f.eval(kI));
  if (method == NormMethod::kExactCoefficient) {
    const DiskSeries s = pullback(f, params);
    report.energy_term = dirichlet_energy_disk(s);
    report.finite = energy_partial_sums_converge(s);
  } else {
    const QuadratureResult q = integrate_halfplane(squared_modulus_of_derivative(f), opts);
    report.energy_term = q.value;
    report.finite = !q.diverged;
    report.error_estimate = q.error_estimate;
    report.nodes_used = q.nodes_used;
  }
  report.squared_norm = report.basepoint_term + report.energy_term;
  return report;
}

NormReport dirichlet_norm_region(const HalfPlaneFn& f, const RegionMask& region, cplx basepoint,
                                 const QuadratureOptions& opts) {
  if (!region.contains(basepoint))
    throw BasepointOutsideRegion("basepoint lies outside the " + region.type() + " region");
  NormReport report;
  report.method = NormMethod::kQuadrature;
  report.basepoint_term = std::norm(f.eval(basepoint));
  const QuadratureResult q = integrate_region(squared_modulus_of_derivative(f), region, opts);
  report.energy_term = q.value;
  report.finite = !q.diverged;
  report.error_estimate = q.error_estimate;
  report.nodes_used = q.nodes_used;
  report.squared_norm = report.basepoint_term + report.energy_term;
  return report;
}

QuadratureResult bergman_norm_region(const HalfPlaneFn& f, const RegionMask& region,
                                     const QuadratureOptions& opts) {
  return integrate_region([&f](cplx z) { return std::norm(f.eval_unchecked(z)); }, region, opts);
}

std::vector<double> default_hardy_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(std::ldexp(1.0, -k));
  return grid;
}

HardyReport hardy_norm_halfplane(const HalfPlaneFn& f, const std::vector<double>& y_grid,
                                 const QuadratureOptions& opts) {
  HardyReport report;
  for (const double y : y_grid) {
    HardyProfilePoint p;
    p.y = y;
    p.line = integrate_line([&f, y](double x) { return std::norm(f.eval_unchecked(cplx{x, y})); },
                            opts);
    report.finite = report.finite && !p.line.diverged;
    report.value = std::max(report.value, p.line.value);
    report.profile.push_back(p);
  }
  return report;
}

HalfPlaneFn embed_theorem6(const HalfPlaneFn& f) {
  HalfPlaneFn out = std::visit(
      Overloaded{
          [](const RationalFn& r) {
            return HalfPlaneFn(RationalFn(poly::scale(r.numerator(), kSqrtMinus2i),
                                          poly::multiply(r.denominator(), Coeffs{kI, 1.0})));
          },
          [](const DiskSeries& s) {
            // √(−2i)/(z+i) pulls back to √(−2i)(1+w)/(2i).
            const cplx c = kSqrtMinus2i / (2.0 * kI);
            return HalfPlaneFn::from_disk(
                DiskSeries(poly::multiply(s.coefficients(), Coeffs{c, c}), s.sample_radius()));
          },
          [](const BuiltinFn& b) {
            return HalfPlaneFn(b.times(
                "embed", [](cplx z) { return kSqrtMinus2i / (z + kI); },
                [](cplx z) { return -kSqrtMinus2i / ((z + kI) * (z + kI)); }));
          }},
      f.representation());
  return out.labeled("embed(" + f.label() + ")");
}

}  // namespace halfplane
