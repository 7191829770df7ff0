#include "halfplane/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace halfplane {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

cplx moebius_unchecked(const MoebiusMap& m, cplx z) { return (m.a() * z + m.b()) / (m.c() * z + m.d()); }

cplx slit_eval(cplx z) { return std::sqrt(z - 1.0) * std::sqrt(z + 1.0); }

// Circumscribed circle of three points: (center, radius).
std::pair<cplx, double> circle_through(cplx p, cplx q, cplx r) {
  const cplx u = q - p;
  const cplx v = r - p;
  const double d = 2.0 * (u.real() * v.imag() - u.imag() * v.real());
  const double nu = std::norm(u);
  const double nv = std::norm(v);
  const cplx c{(v.imag() * nu - u.imag() * nv) / d, (u.real() * nv - v.real() * nu) / d};
  return {p + c, std::abs(c)};
}

// ψ(𝔻) ⊂ 𝔻 for a Möbius ψ: the pole lies outside the closed disk and the
// image of the unit circle lies inside it.
bool moebius_maps_disk_into_disk(const MoebiusMap& psi) {
  const double scale = std::max({std::abs(psi.a()), std::abs(psi.b()), std::abs(psi.c()), std::abs(psi.d())});
  if (std::abs(psi.c()) >= std::abs(psi.d()) * (1.0 - 1e-14)) return false;
  if (std::abs(psi.c()) <= 1e-15 * scale) {
    // Affine: |a|+|b| ≤ |d|.
    return std::abs(psi.a()) + std::abs(psi.b()) <= std::abs(psi.d()) * (1.0 + 1e-12);
  }
  const auto [center, radius] = circle_through(psi.eval(1.0), psi.eval(kI), psi.eval(-1.0));
  return std::abs(center) + radius <= 1.0 + 1e-12;
}

}  // namespace

// ---------------------------------------------------------------- SelfMap

SelfMap SelfMap::moebius(const MoebiusMap& phi) {
  SelfMap m;
  m.form_ = Form::kMoebius;
  m.phi_ = phi;
  m.psi_moebius_ = moebius_compose(inverse_cayley(), moebius_compose(phi, cayley()));
  return m;
}

SelfMap SelfMap::disk_conjugate(const MoebiusMap& psi) {
  SelfMap m;
  m.form_ = Form::kDiskConjugate;
  m.psi_moebius_ = psi;
  m.phi_ = moebius_compose(cayley(), moebius_compose(psi, inverse_cayley()));
  return m;
}

SelfMap SelfMap::disk_conjugate(DiskSeries psi) {
  SelfMap m;
  m.form_ = Form::kDiskConjugate;
  m.psi_series_ = std::move(psi);
  return m;
}

const std::vector<std::string>& SelfMap::catalog_names() {
  static const std::vector<std::string> names = {"identity",   "shift_i",   "affine_auto",
                                                 "neg_inverse", "dilation_2", "disk_half",
                                                 "square_conjugate", "slit_sqrt"};
  return names;
}

SelfMap SelfMap::named(const std::string& name) {
  SelfMap m;
  if (name == "identity") {
    m = moebius(MoebiusMap::identity());
  } else if (name == "shift_i") {
    m = moebius({1.0, kI, 0.0, 1.0});
  } else if (name == "affine_auto") {
    m = moebius({2.0, 1.0, 1.0, 1.0});
  } else if (name == "neg_inverse") {
    m = moebius({0.0, -1.0, 1.0, 0.0});
  } else if (name == "dilation_2") {
    m = moebius({2.0, 0.0, 0.0, 1.0});
  } else if (name == "disk_half") {
    m = disk_conjugate(MoebiusMap(0.5, 0.0, 0.0, 1.0));
  } else if (name == "square_conjugate") {
    m = disk_conjugate(DiskSeries({0.0, 0.0, 1.0}));
  } else if (name == "slit_sqrt") {
    m.slit_ = true;
  } else {
    throw ParseError("unknown self-map '" + name + "'");
  }
  m.form_ = Form::kNamed;
  m.name_ = name;
  m.claimed_univalent = name != "square_conjugate";
  return m;
}

std::string SelfMap::label() const {
  if (!name_.empty()) return name_;
  if (form_ == Form::kMoebius) return "moebius";
  return psi_series_ ? "disk_series" : "disk_moebius";
}

cplx SelfMap::eval(cplx z) const {
  if (phi_) return moebius_unchecked(*phi_, z);
  if (psi_series_) return cayley_eval(psi_series_->eval(inverse_cayley_eval(z)));
  return slit_eval(z);
}

cplx SelfMap::derivative(cplx z) const {
  if (phi_) return phi_->derivative(z);
  if (psi_series_) {
    const cplx w = inverse_cayley_eval(z);
    const cplx dpsi = poly::horner(poly::derivative(psi_series_->coefficients()), w);
    return cayley_derivative(psi_series_->eval(w)) * dpsi * inverse_cayley_derivative(z);
  }
  return z / slit_eval(z);
}

cplx SelfMap::disk_eval(cplx w) const {
  if (psi_moebius_) return moebius_unchecked(*psi_moebius_, w);
  if (psi_series_) return psi_series_->eval(w);
  return inverse_cayley_eval(slit_eval(cayley_eval(w)));
}

cplx SelfMap::disk_derivative(cplx w) const {
  if (psi_moebius_) return psi_moebius_->derivative(w);
  if (psi_series_) return poly::horner(poly::derivative(psi_series_->coefficients()), w);
  const cplx z = cayley_eval(w);
  return inverse_cayley_derivative(slit_eval(z)) * derivative(z) * cayley_derivative(w);
}

std::optional<RegionMask> SelfMap::image_region() const {
  if (slit_) return RegionMask(SlitVertical{0.0, 1.0});
  if (name_ == "disk_half") return RegionMask(MoebiusImageOfDisk{cayley(), 0.5});
  if (name_ == "square_conjugate") return RegionMask::full();
  if (!phi_) return std::nullopt;
  if (is_halfplane_automorphism(*phi_)) return RegionMask::full();
  const MoebiusMap& m = *phi_;
  const double scale = std::max({std::abs(m.a()), std::abs(m.b()), std::abs(m.c()), std::abs(m.d())});
  if (std::abs(m.c()) <= 1e-15 * scale) {
    const cplx slope = m.a() / m.d();
    const cplx offset = m.b() / m.d();
    if (std::abs(slope.imag()) <= kDetTol * std::abs(slope) && slope.real() > 0 && offset.imag() >= 0)
      return RegionMask(ImAbove{offset.imag()});
  }
  return RegionMask(MoebiusImageOfDisk{moebius_compose(m, cayley()), 1.0});
}

// ------------------------------------------------------------ DiskSelfMap

cplx DiskSelfMap::eval(cplx w) const {
  return std::visit(Overloaded{[w](const MoebiusMap& m) { return moebius_unchecked(m, w); },
                               [w](const DiskSeries& s) { return s.eval(w); },
                               [w](const std::function<cplx(cplx)>& f) { return f(w); }},
                    map);
}

DiskSeries DiskSelfMap::series(std::size_t degree, const ExtractionParams& params) const {
  return std::visit(
      Overloaded{[degree](const MoebiusMap& m) {
                   // (a w + b) · (1/d) Σ (−c/d)ⁿ wⁿ
                   Coeffs g(degree + 1);
                   const cplx ratio = -m.c() / m.d();
                   cplx p = 1.0 / m.d();
                   for (std::size_t n = 0; n <= degree; ++n, p *= ratio) g[n] = p;
                   Coeffs out(degree + 1);
                   for (std::size_t n = 0; n <= degree; ++n)
                     out[n] = m.b() * g[n] + (n > 0 ? m.a() * g[n - 1] : cplx{0.0});
                   return DiskSeries(std::move(out));
                 },
                 [degree](const DiskSeries& s) { return s.truncated(degree); },
                 [&](const std::function<cplx(cplx)>& f) {
                   return series_from_samples(f, params.rho, params.samples, degree);
                 }},
      map);
}

DiskSelfMap conjugate_selfmap(const SelfMap& phi) {
  constexpr int kRadii = 20;
  constexpr int kAngles = 20;
  for (int j = 0; j < kRadii; ++j) {
    const double r = 0.98 * (j + 1) / kRadii;
    for (int k = 0; k < kAngles; ++k) {
      const cplx w = std::polar(r, 2.0 * kPi * (k + 0.5 * (j % 2)) / kAngles);
      const cplx z = cayley_eval(w);
      const cplx v = phi.eval(z);
      const cplx u = phi.disk_eval(w);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || !(v.imag() > 0.0) || !(std::abs(u) < 1.0))
        throw NotSelfMap(phi.label() + " leaves the upper half-plane near z = (" +
                         std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
    }
  }
  if (phi.psi_moebius()) {
    if (!moebius_maps_disk_into_disk(*phi.psi_moebius()))
      throw NotSelfMap(phi.label() + " does not map the upper half-plane into itself");
    return {*phi.psi_moebius()};
  }
  if (phi.psi_series()) return {*phi.psi_series()};
  return {std::function<cplx(cplx)>([phi](cplx w) { return phi.disk_eval(w); })};
}

// ------------------------------------------------------------ composition

HalfPlaneFn apply_composition(const SelfMap& phi, const HalfPlaneFn& f, const ExtractionParams& params) {
  const std::string label = "compose(" + phi.label() + "," + f.label() + ")";
  const auto* rational = std::get_if<RationalFn>(&f.representation());
  if (phi.as_moebius() && rational) {
    // N(φ)/D(φ) with both multiplied through by (cz+d)^m.
    const MoebiusMap& m = *phi.as_moebius();
    const auto substitute = [&m](const Coeffs& p, unsigned top) {
      Coeffs out{0.0};
      for (unsigned k = 0; k < p.size(); ++k) {
        if (p[k] == 0.0) continue;
        const Coeffs term = poly::multiply(poly::linear_power(m.b(), m.a(), k),
                                           poly::linear_power(m.d(), m.c(), top - k));
        out = poly::add(out, poly::scale(term, p[k]));
      }
      return out;
    };
    const auto top = static_cast<unsigned>(
        std::max({rational->numerator_degree(), rational->denominator_degree(), 0}));
    return HalfPlaneFn(RationalFn(substitute(rational->numerator(), top),
                                  substitute(rational->denominator(), top)))
        .labeled(label);
  }
  const auto* series = std::get_if<DiskSeries>(&f.representation());
  if (series && (phi.psi_moebius() || phi.psi_series())) {
    const std::size_t length = params.degree + 1;
    const DiskSeries psi = conjugate_selfmap(phi).series(params.degree, params);
    const auto s = series->coefficients();
    Coeffs acc{s.back()};
    for (std::size_t n = s.size() - 1; n-- > 0;) {
      acc = poly::multiply_truncated(acc, psi.coefficients(), length);
      acc[0] += s[n];
    }
    acc.resize(length, cplx{0.0});
    return HalfPlaneFn::from_disk(DiskSeries(std::move(acc))).labeled(label);
  }
  const DiskSeries s = series_from_samples(
      [&](cplx w) { return f.eval_unchecked(phi.eval(cayley_eval(w))); }, params.rho, params.samples,
      params.degree);
  return HalfPlaneFn::from_disk(s).labeled(label);
}

HalfPlaneFn composition_closure(const SelfMap& phi, const HalfPlaneFn& f) {
  auto df = std::make_shared<HalfPlaneFn>(f.derivative());
  return HalfPlaneFn(BuiltinFn::closure(
      "compose(" + phi.label() + "," + f.label() + ")",
      [phi, f](cplx z) { return f.eval_unchecked(phi.eval(z)); },
      [phi, df](cplx z) { return df->eval_unchecked(phi.eval(z)) * phi.derivative(z); }));
}

// ------------------------------------------------------------- univalence

std::string to_string(UnivalenceVerdict::Kind k) {
  switch (k) {
    case UnivalenceVerdict::Kind::kUnivalentLikely:
      return "univalent_likely";
    case UnivalenceVerdict::Kind::kNotUnivalent:
      return "not_univalent";
    default:
      return "inconclusive";
  }
}

int disk_winding_number(const std::function<cplx(cplx)>& psi, double r, cplx center) {
  constexpr int kStart = 1024;
  constexpr int kMaxDepth = 24;
  double total = 0.0;
  const auto arc = [&](auto&& self, double t0, double t1, cplx v0, cplx v1, int depth) -> void {
    const double step = std::arg(v1 / v0);
    if (std::abs(step) <= kPi / 8 || depth >= kMaxDepth) {
      total += step;
      return;
    }
    const double tm = 0.5 * (t0 + t1);
    const cplx vm = psi(std::polar(r, tm)) - center;
    self(self, t0, tm, v0, vm, depth + 1);
    self(self, tm, t1, vm, v1, depth + 1);
  };
  cplx prev = psi(cplx{r, 0.0}) - center;
  for (int k = 1; k <= kStart; ++k) {
    const double t0 = 2.0 * kPi * (k - 1) / kStart;
    const double t1 = 2.0 * kPi * k / kStart;
    const cplx next = psi(std::polar(r, t1)) - center;
    arc(arc, t0, t1, prev, next, 0);
    prev = next;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

UnivalenceVerdict check_univalent(const SelfMap& phi, const UnivalenceGrid& grid) {
  UnivalenceVerdict verdict;
  const std::size_t nx = grid.nx;
  const std::size_t ny = grid.ny;
  std::vector<cplx> z(nx * ny), v(nx * ny), dv(nx * ny);
  std::vector<double> spacing(nx * ny);
  const double dx = 2.0 * grid.x_max / static_cast<double>(nx - 1);
  const double ratio = std::pow(grid.y_max / grid.y_min, 1.0 / static_cast<double>(ny - 1));
  double max_slope = 0.0;
  for (std::size_t k = 0; k < ny; ++k) {
    const double y = grid.y_min * std::pow(ratio, static_cast<double>(k));
    for (std::size_t j = 0; j < nx; ++j) {
      const std::size_t p = k * nx + j;
      z[p] = {-grid.x_max + dx * static_cast<double>(j), y};
      v[p] = phi.eval(z[p]);
      dv[p] = phi.derivative(z[p]);
      spacing[p] = std::max(dx, y * (ratio - 1.0));
      if (!std::isfinite(std::abs(v[p])) || !std::isfinite(std::abs(dv[p]))) {
        verdict.detail = "non-finite value on the grid";
        return verdict;
      }
      max_slope = std::max(max_slope, std::abs(dv[p]));
    }
  }

  // Collision candidates: for each node the non-adjacent node whose image is
  // closest relative to the local image spacing, certified by Newton.
  const auto newton = [&](cplx target, cplx start) -> std::optional<cplx> {
    cplx x = start;
    for (int it = 0; it < 80; ++it) {
      const cplx r = phi.eval(x) - target;
      if (std::abs(r) < 1e-13 * std::max(1.0, std::abs(target))) return x;
      cplx step = r / phi.derivative(x);
      int halvings = 0;
      while (!((x - step).imag() > 0.0) && halvings < 30) {
        step *= 0.5;
        ++halvings;
      }
      if (halvings == 30) return std::nullopt;
      x -= step;
    }
    return std::nullopt;
  };
  for (std::size_t p = 0; p < z.size(); ++p) {
    std::size_t best = p;
    double best_ratio = std::numeric_limits<double>::infinity();
    const auto pj = static_cast<long>(p % nx), pk = static_cast<long>(p / nx);
    for (std::size_t q = 0; q < z.size(); ++q) {
      const auto qj = static_cast<long>(q % nx), qk = static_cast<long>(q / nx);
      if (std::abs(pj - qj) <= 1 && std::abs(pk - qk) <= 1) continue;
      const double d = std::abs(v[p] - v[q]);
      const double scale = std::abs(dv[p]) * spacing[p] + std::abs(dv[q]) * spacing[q];
      const double r = d < grid.collide_tol ? 0.0 : d / scale;
      if (r < best_ratio) {
        best_ratio = r;
        best = q;
      }
    }
    if (best == p || best_ratio >= 1.0) continue;
    const auto root = newton(v[p], z[best]);
    if (!root) continue;
    const cplx z2 = *root;
    if (z2.imag() > 0.0 && std::abs(z2 - z[p]) > 1e-6 &&
        std::abs(phi.eval(z2) - v[p]) < 1e-12 * std::max(1.0, std::abs(v[p]))) {
      verdict.kind = UnivalenceVerdict::Kind::kNotUnivalent;
      verdict.z1 = z[p];
      verdict.z2 = z2;
      verdict.detail = "collision certified by Newton refinement";
      return verdict;
    }
  }

  bool nonvanishing = true;
  for (const cplx d : dv) nonvanishing = nonvanishing && std::abs(d) > 1e-12 * max_slope;
  const cplx center = phi.disk_eval(0.0);
  bool winding_one = true;
  for (double r : {0.3, 0.6, 0.9}) {
    const int n = disk_winding_number([&phi](cplx w) { return phi.disk_eval(w); }, r, center);
    verdict.windings.push_back(n);
    winding_one = winding_one && n == 1;
  }
  if (nonvanishing && winding_one) {
    verdict.kind = UnivalenceVerdict::Kind::kUnivalentLikely;
    verdict.detail = "no collision, nonvanishing derivative, winding number 1";
  } else {
    verdict.detail = nonvanishing ? "winding number differs from 1" : "derivative vanishes on the grid";
  }
  return verdict;
}

// ------------------------------------------------------------ inequalities

BoundednessCheck boundedness_check(const SelfMap& phi, const HalfPlaneFn& f, const ExtractionParams& params,
                                   const QuadratureOptions& opts) {
  BoundednessCheck out;
  const double base = std::norm(f.eval(phi.eval(kI)));
  const NormReport composed =
      dirichlet_norm_halfplane(composition_closure(phi, f), NormMethod::kQuadrature, params, opts);
  out.lhs = base + composed.energy_term;
  out.rhs = base + dirichlet_norm_halfplane(f, NormMethod::kExactCoefficient, params, opts).energy_term;
  out.lhs_exact = dirichlet_norm_halfplane(apply_composition(phi, f, params), NormMethod::kExactCoefficient,
                                           params, opts)
                      .squared_norm;
  out.holds = composed.finite && out.lhs <= out.rhs + 1e-6;
  return out;
}

ChangeOfVariables change_of_variables_check(const SelfMap& phi, const HalfPlaneFn& f, const RegionMask& omega,
                                            const QuadratureOptions& opts) {
  auto df = std::make_shared<HalfPlaneFn>(f.derivative());
  const QuadratureResult left = integrate_halfplane(
      [&](cplx z) { return std::norm(df->eval_unchecked(phi.eval(z)) * phi.derivative(z)); }, opts);
  const QuadratureResult right =
      integrate_region([&](cplx z) { return std::norm(df->eval_unchecked(z)); }, omega, opts);
  return {left.value, right.value, left.diverged || right.diverged};
}

// ----------------------------------------------------------------- matrix

double basis_norm(std::size_t n) { return n == 0 ? 1.0 : std::sqrt(kPi * static_cast<double>(n)); }

cplx dirichlet_inner(const DiskSeries& f, const DiskSeries& g) {
  cplx acc = f[0] * std::conj(g[0]);
  cplx energy{0.0};
  const std::size_t n = std::min(f.truncation_degree(), g.truncation_degree());
  for (std::size_t k = 1; k <= n; ++k) energy += static_cast<double>(k) * f[k] * std::conj(g[k]);
  return acc + kPi * energy;
}

OperatorMatrix operator_matrix(const SelfMap& phi, std::size_t degree, const ExtractionParams& params) {
  OperatorMatrix out;
  out.basis_degree = degree;
  const std::size_t size = degree + 1;
  out.entries.assign(size * size, cplx{0.0});

  const DiskSeries psi = conjugate_selfmap(phi).series(degree, params);
  Coeffs power{1.0};
  for (std::size_t m = 0; m < size; ++m) {
    if (m > 0) power = poly::multiply_truncated(power, psi.coefficients(), size);
    power.resize(size, cplx{0.0});
    for (std::size_t n = 0; n < size; ++n) {
      const cplx inner = n == 0 ? power[0] : kPi * static_cast<double>(n) * power[n];
      out.entries[n * size + m] = inner / (basis_norm(m) * basis_norm(n));
    }
  }

  // Basis Gram matrix from extracted pullbacks.
  ExtractionParams p = params;
  p.degree = degree;
  std::vector<DiskSeries> basis;
  for (std::size_t n = 0; n < size; ++n) {
    const auto k = static_cast<int>(n);
    basis.push_back(series_from_samples([k](cplx w) { return std::pow(inverse_cayley_eval(cayley_eval(w)), k); },
                                        p.rho, p.samples, p.degree));
  }
  for (std::size_t n = 0; n < size; ++n)
    for (std::size_t m = 0; m < size; ++m) {
      const cplx g = dirichlet_inner(basis[m], basis[n]) / (basis_norm(m) * basis_norm(n));
      out.gram_residual = std::max(out.gram_residual, std::abs(g - (n == m ? 1.0 : 0.0)));
    }

  Eigen::MatrixXcd a(size, size);
  for (std::size_t n = 0; n < size; ++n)
    for (std::size_t m = 0; m < size; ++m) a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) = out(n, m);
  out.norm_lower_bound = Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues()(0);
  return out;
}

}  // namespace halfplane
