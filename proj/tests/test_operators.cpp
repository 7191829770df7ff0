#include <doctest.h>

#include <Eigen/Dense>

#include "halfplane/catalog.hpp"
#include "halfplane/operators.hpp"
#include "oracle.hpp"

using namespace halfplane;

namespace {
const HalfPlaneFn kCayleyInverse(RationalFn({kI, -1.0}, {kI, 1.0}));
const HalfPlaneFn kInvZPlusI(RationalFn({1.0}, {kI, 1.0}));
bool rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }
}  // namespace

TEST_CASE("conjugation") {
  const DiskSelfMap id = conjugate_selfmap(SelfMap::named("identity"));
  for (cplx w : oracle::random_disk(10, 40)) CHECK(std::abs(id.eval(w) - w) <= 1e-14);

  const DiskSelfMap shift = conjugate_selfmap(SelfMap::named("shift_i"));
  CHECK(std::abs(shift.eval(0.0) + 1.0 / 3.0) <= kEvalTol);
  CHECK(std::abs(cayley_eval(shift.eval(0.0)) - 2.0 * kI) <= kEvalTol);
  for (cplx w : oracle::random_disk(20, 41)) CHECK(std::abs(shift.eval(w) - (w - 1.0) / (w + 3.0)) <= kEvalTol);

  const DiskSelfMap aut = conjugate_selfmap(SelfMap::named("affine_auto"));
  for (int j = 1; j <= 20; ++j)
    for (int k = 0; k < 20; ++k) CHECK(std::abs(aut.eval(std::polar(0.99 * j / 20, 2 * kPi * k / 20))) < 1.0);

  CHECK_THROWS_AS(conjugate_selfmap(SelfMap::moebius({-1.0, 0.0, 0.0, 1.0})), NotSelfMap);
  CHECK_THROWS_AS(conjugate_selfmap(SelfMap::moebius({1.0, -0.001 * kI, 0.0, 1.0})), NotSelfMap);
  CHECK_THROWS_AS(conjugate_selfmap(SelfMap::disk_conjugate(DiskSeries({0.0, 2.0}))), NotSelfMap);
  CHECK_THROWS_AS(SelfMap::named("nope"), ParseError);
}

TEST_CASE("conjugation consistency for every catalog map") {
  for (const std::string& name : SelfMap::catalog_names()) {
    const SelfMap phi = SelfMap::named(name);
    const DiskSelfMap psi = conjugate_selfmap(phi);
    for (cplx z : oracle::random_upper(50, 42)) {
      const cplx v = phi.eval(z);
      CHECK(std::abs(cayley_eval(psi.eval(inverse_cayley_eval(z))) - v) <= 1e-9 * (1 + std::abs(v)));
      CHECK(v.imag() > 0.0);
      const cplx fd = oracle::central_difference([&](cplx p) { return phi.eval(p); }, z, 1e-6 * (1 + z.imag()));
      CHECK(std::abs(phi.derivative(z) - fd) <= 1e-5 * (1 + std::abs(fd)));
    }
  }
}

TEST_CASE("slit map geometry") {
  const SelfMap slit = SelfMap::named("slit_sqrt");
  CHECK(std::abs(slit.eval(kI) - std::sqrt(2.0) * kI) <= 1e-14);
  // Points just either side of 0 on the real axis map near the slit (0, i].
  const cplx left = slit.eval(cplx{-0.5, 1e-12});
  const cplx right = slit.eval(cplx{0.5, 1e-12});
  CHECK(std::abs(left.real()) <= 1e-9);
  CHECK(std::abs(right.real()) <= 1e-9);
  CHECK(left.imag() == doctest::Approx(std::sqrt(0.75)));
  CHECK(slit.eval(cplx{1e3, 1.0}).imag() > 0.0);
  const RegionMask omega = *slit.image_region();
  for (cplx z : oracle::random_upper(200, 43)) CHECK(omega.contains(slit.eval(z)));
}

TEST_CASE("composition") {
  const SelfMap id = SelfMap::named("identity");
  const SelfMap shift = SelfMap::named("shift_i");
  for (const HalfPlaneFn& f : dirichlet_catalog()) {
    const HalfPlaneFn g = apply_composition(id, f);
    for (cplx z : oracle::random_upper(20, 44)) CHECK(std::abs(g.eval(z) - f.eval(z)) <= 1e-9 * (1 + std::abs(f.eval(z))));
  }
  const HalfPlaneFn a = apply_composition(shift, kCayleyInverse);
  CHECK(a.is_rational());
  CHECK(std::abs(a.eval(kI) + 1.0 / 3.0) <= 1e-14);
  for (cplx z : oracle::random_upper(20, 45)) CHECK(std::abs(a.eval(z) - (-z) / (z + 2.0 * kI)) <= kEvalTol);
  const HalfPlaneFn b = apply_composition(shift, kInvZPlusI);
  for (cplx z : oracle::random_upper(20, 46)) CHECK(std::abs(b.eval(z) - 1.0 / (z + 2.0 * kI)) <= kEvalTol);

  // Series and sampled paths.
  for (const SelfMap& phi : {SelfMap::named("disk_half"), SelfMap::named("square_conjugate"), SelfMap::named("slit_sqrt")}) {
    for (const HalfPlaneFn& f : dirichlet_catalog()) {
      const HalfPlaneFn g = apply_composition(phi, f);
      for (cplx w : oracle::random_disk(10, 47, 0.6)) {
        const cplx z = cayley_eval(w);
        CHECK(std::abs(g.eval(z) - f.eval(phi.eval(z))) <= 1e-8 * (1 + std::abs(f.eval(phi.eval(z)))));
      }
    }
  }
}

TEST_CASE("univalence verdicts") {
  using K = UnivalenceVerdict::Kind;
  CHECK(check_univalent(SelfMap::named("shift_i")).kind == K::kUnivalentLikely);
  CHECK(check_univalent(SelfMap::moebius({3.0, 1.0, 1.0, 2.0})).kind == K::kUnivalentLikely);
  CHECK(check_univalent(SelfMap::named("slit_sqrt")).kind == K::kUnivalentLikely);
  const UnivalenceVerdict sq = check_univalent(SelfMap::named("square_conjugate"));
  REQUIRE(sq.kind == K::kNotUnivalent);
  CHECK(std::abs(sq.z1 - sq.z2) > 1e-6);
  CHECK(sq.z2.imag() > 0.0);
  // ψ(w) = w² identifies w and −w.
  const cplx w1 = inverse_cayley_eval(sq.z1);
  const cplx w2 = inverse_cayley_eval(sq.z2);
  CHECK(std::abs(w1 + w2) <= 1e-9);
  const SelfMap phi = SelfMap::named("square_conjugate");
  CHECK(std::abs(phi.eval(sq.z1) - phi.eval(sq.z2)) < 1e-12 * std::max(1.0, std::abs(phi.eval(sq.z1))));
  CHECK(disk_winding_number([](cplx w) { return w * w; }, 0.5, 0.0) == 2);
}

TEST_CASE("boundedness inequality") {
  for (const HalfPlaneFn& f : dirichlet_catalog()) {
    const BoundednessCheck id = boundedness_check(SelfMap::named("identity"), f);
    CHECK(id.holds);
    CHECK(rel(id.lhs, id.rhs, 1e-9));
  }
  const BoundednessCheck s = boundedness_check(SelfMap::named("shift_i"), kCayleyInverse);
  CHECK(s.holds);
  CHECK(rel(s.lhs, 1.0 / 9.0 + kPi / 4, 1e-8));
  CHECK(rel(s.rhs, 1.0 / 9.0 + kPi, 1e-8));
  CHECK(rel(s.lhs_exact, s.lhs, 1e-8));
  const BoundednessCheck a = boundedness_check(SelfMap::named("affine_auto"), kCayleyInverse);
  CHECK(a.holds);
  CHECK(std::abs(a.lhs - a.rhs) <= 1e-6);
}

TEST_CASE("change of variables") {
  const ChangeOfVariables s = change_of_variables_check(SelfMap::named("shift_i"), kCayleyInverse, RegionMask(ImAbove{1.0}));
  CHECK(rel(s.left, kPi / 4, 1e-8));
  CHECK(rel(s.right, kPi / 4, 1e-8));
  const double left_oracle = oracle::halfplane_above([](cplx z) { return 4 / std::pow(std::abs(z + 2.0 * kI), 4); });
  CHECK(rel(left_oracle, kPi / 4, 1e-8));
  const ChangeOfVariables a = change_of_variables_check(SelfMap::named("affine_auto"), kInvZPlusI, RegionMask::full());
  CHECK(rel(a.left, kPi / 4, 1e-8));
  CHECK(rel(a.right, kPi / 4, 1e-8));
  for (const HalfPlaneFn& f : dirichlet_catalog())
    for (const SelfMap& phi : univalent_catalog()) {
      const ChangeOfVariables c = change_of_variables_check(phi, f, *phi.image_region());
      CHECK_FALSE(c.diverged);
      CHECK(std::abs(c.left - c.right) <= 1e-6 * (1 + c.right));
    }
}

TEST_CASE("unitarity onto the image") {
  for (const SelfMap& phi : univalent_catalog()) {
    const RegionMask omega = *phi.image_region();
    for (const HalfPlaneFn& f : dirichlet_catalog()) {
      const NormReport on_omega = dirichlet_norm_region(f, omega, phi.eval(kI));
      const NormReport pulled = dirichlet_norm_halfplane(composition_closure(phi, f), NormMethod::kQuadrature);
      CHECK(rel(on_omega.squared_norm, pulled.squared_norm, 1e-6));
    }
  }
}

TEST_CASE("operator matrix") {
  const OperatorMatrix id = operator_matrix(SelfMap::named("identity"), 16);
  CHECK(id.gram_residual < 1e-8);
  for (std::size_t n = 0; n <= 16; ++n)
    for (std::size_t m = 0; m <= 16; ++m) CHECK(std::abs(id(n, m) - (n == m ? 1.0 : 0.0)) <= 1e-10);

  // Column m holds normalized coefficients of ((w−1)/(w+3))^m, checked by
  // sampling and projecting with the trapezoidal rule.
  const OperatorMatrix sh = operator_matrix(SelfMap::named("shift_i"), 12);
  CHECK(sh.gram_residual < 1e-8);
  for (std::size_t m = 0; m <= 12; ++m) {
    for (std::size_t n = 0; n <= 12; ++n) {
      const int nn = static_cast<int>(n), mm = static_cast<int>(m);
      const double r = 0.5;
      cplx acc{0.0};
      constexpr int kNodes = 256;
      for (int k = 0; k < kNodes; ++k) {
        const cplx w = std::polar(r, 2 * kPi * k / kNodes);
        acc += std::pow((w - 1.0) / (w + 3.0), mm) * std::pow(w, -nn);
      }
      const cplx coeff = acc / static_cast<double>(kNodes);
      const cplx expected = (n == 0 ? coeff : kPi * nn * coeff) / (basis_norm(m) * basis_norm(n));
      CHECK(std::abs(sh(n, m) - expected) <= 1e-10);
    }
  }

  const OperatorMatrix sq = operator_matrix(SelfMap::named("square_conjugate"), 20);
  for (std::size_t m = 0; m <= 20; ++m)
    for (std::size_t n = 0; n <= 20; ++n)
      if (n != 2 * m) CHECK(std::abs(sq(n, m)) <= 1e-14);
  CHECK(std::abs(sq(2, 1) - kPi * 2 / (basis_norm(1) * basis_norm(2))) <= 1e-14);
  CHECK(sq.norm_lower_bound >= 1.0);
}

TEST_CASE("matrix consistency with composition") {
  const SelfMap phi = SelfMap::named("affine_auto");
  const std::size_t n_max = 16;
  const OperatorMatrix m = operator_matrix(phi, n_max);
  const DiskSeries p({0.3, 1.0, -0.5 * kI, 0.2, 0.0, 0.1, 0.0, 0.0, 0.05});
  const HalfPlaneFn f = HalfPlaneFn::from_disk(p);
  const DiskSeries composed = pullback(apply_composition(phi, f, {0.9, 512, 200}), {0.9, 512, 200});
  for (std::size_t n = 0; n <= n_max; ++n) {
    cplx via_matrix{0.0};
    for (std::size_t k = 0; k <= 8; ++k) via_matrix += m(n, k) * p[k] * basis_norm(k);
    Coeffs en(n + 1, 0.0);
    en[n] = 1.0;
    const cplx direct = dirichlet_inner(composed, DiskSeries(en)) / basis_norm(n);
    CHECK(std::abs(via_matrix - direct) <= 1e-6);
  }
}
