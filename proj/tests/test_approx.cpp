#include <doctest.h>

#include <Eigen/Dense>

#include "halfplane/approx.hpp"
#include "halfplane/catalog.hpp"
#include "oracle.hpp"

using namespace halfplane;

namespace {
const HalfPlaneFn kInvZPlusI(RationalFn({1.0}, {kI, 1.0}));

HalfPlaneFn basis(int j) {
  Coeffs c(j + 1, 0.0);
  c[j] = 1.0;
  return HalfPlaneFn::from_disk(DiskSeries(c)).labeled("e" + std::to_string(j));
}

// Squared distance from e_j to span{ψ^k : k ≤ N} for a disk automorphism ψ:
// the Gram matrix is diag(πk) plus the rank-one basepoint term, and the
// coefficients of ψ^k come from contour integrals of the closed form.
double automorphism_residual(const std::function<cplx(cplx)>& psi, int j, int n) {
  const auto size = static_cast<Eigen::Index>(n + 1);
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(size, size);
  Eigen::VectorXcd rhs(size);
  Eigen::VectorXcd v(size);
  constexpr int kNodes = 512;
  for (int k = 0; k <= n; ++k) {
    cplx acc{0.0};
    for (int q = 0; q < kNodes; ++q) {
      const cplx w = std::polar(1.0, 2 * kPi * q / kNodes);
      acc += std::pow(psi(w), k) * std::pow(w, -j);
    }
    const cplx coeff_j = acc / static_cast<double>(kNodes);
    v(k) = std::pow(psi(0.0), k);
    rhs(k) = kPi * j * std::conj(coeff_j);
    gram(k, k) = kPi * k;
  }
  gram += v.conjugate() * v.transpose();
  const Eigen::VectorXcd c = gram.ldlt().solve(rhs);
  return kPi * j - std::real(rhs.dot(c));
}
}  // namespace

TEST_CASE("rational approximants") {
  const std::vector<Approximant> a = rational_approximants(kInvZPlusI, 3);
  CHECK(a[1].error_squared <= 1e-20);
  for (cplx z : oracle::random_upper(20, 50)) CHECK(std::abs(a[1].rational.eval(z) - 1.0 / (z + kI)) <= 1e-10);
  CHECK(rational_approximants(HalfPlaneFn::constant({2.0, 1.0}), 0)[0].error_squared <= 1e-24);

  const std::vector<Approximant> e = rational_approximants(HalfPlaneFn::builtin("exp_pullback"), 10);
  for (std::size_t k = 0; k <= 10; ++k) {
    double tail = 0.0, fact = 1.0;
    for (int n = 1; n <= 40; ++n) {
      fact *= n;
      if (n > static_cast<int>(k)) tail += kPi * n / (fact * fact);
    }
    CHECK(std::abs(e[k].error_squared - tail) <= 1e-10);
    if (k > 0) CHECK(e[k].error_squared <= e[k - 1].error_squared);
  }
  CHECK(std::sqrt(e[10].error_squared) < 1e-6);
  CHECK_THROWS_AS(rational_approximants(RationalFn::polynomial({0.0, 1.0}), 3), NotInSpace);
}

TEST_CASE("approximants of the catalog") {
  for (const HalfPlaneFn& f : dirichlet_catalog()) {
    const std::vector<Approximant> a = rational_approximants(f, 20);
    const DiskSeries s = pullback(f);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (k > 0) CHECK(a[k].error_squared <= a[k - 1].error_squared);
      double tail = 0.0;
      for (std::size_t n = k + 1; n <= s.truncation_degree(); ++n) tail += kPi * n * std::norm(s[n]);
      CHECK(std::abs(a[k].error_squared - tail) <= 1e-10);
      CHECK(membership_dirichlet(a[k].rational, {}).member);
      for (const cplx p : a[k].rational.poles()) CHECK(std::abs(p + kI) <= 1e-12);
    }
    CHECK(a.back().error_squared < 1e-4);
  }
}

TEST_CASE("membership") {
  const Membership z = membership_dirichlet(RationalFn::polynomial({0.0, 1.0}));
  CHECK_FALSE(z.member);
  CHECK(z.numeric_agrees);
  CHECK(z.reason.find("degree") != std::string::npos);
  const Membership q = membership_dirichlet(RationalFn({0.0, 0.0, 1.0}, {1.0, 1.0}));
  CHECK_FALSE(q.member);
  CHECK(q.numeric_agrees);
  CHECK(q.reason.find("pole") != std::string::npos);
  const Membership r = membership_dirichlet(RationalFn({1.0}, {kI, 1.0}));
  CHECK(r.member);
  CHECK(r.numeric_agrees);
  CHECK(r.numeric_finite == std::vector<bool>{true, true, true});
  // A pole just above the real axis.
  CHECK_FALSE(membership_dirichlet(RationalFn({1.0}, {-0.5 * kI, 1.0}), {}).member);
}

TEST_CASE("dense range residuals") {
  const std::vector<std::size_t> degrees{1, 2, 3, 4, 8, 16, 24, 32};
  const auto id = dense_range_residuals(SelfMap::named("identity"), {basis(3)}, degrees);
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (degrees[i] >= 3) CHECK(id[0].residuals[i] <= 1e-20);

  const SelfMap aut = SelfMap::named("affine_auto");
  const auto psi = [&aut](cplx w) { return aut.disk_eval(w); };
  const auto curves = dense_range_residuals(aut, {basis(1), basis(2), basis(3), basis(4)}, degrees);
  for (int j = 1; j <= 4; ++j) {
    const ResidualCurve& c = curves[j - 1];
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      const double exact = automorphism_residual(psi, j, static_cast<int>(degrees[i]));
      CHECK(std::abs(c.residuals[i] - exact) <= 1e-9 * (1 + exact));
      if (i > 0) CHECK(c.residuals[i] <= c.residuals[i - 1]);
      CHECK(c.residuals[i] >= 0.0);
    }
  }
}

TEST_CASE("univalence is necessary for dense range") {
  std::vector<std::size_t> degrees;
  for (std::size_t n = 1; n <= 64; ++n) degrees.push_back(n);
  const auto c = dense_range_residuals(SelfMap::named("square_conjugate"), {basis(1)}, degrees);
  for (double r : c[0].residuals) CHECK(std::abs(r - kPi) <= 1e-12);
}

TEST_CASE("slit separation is comparative") {
  const auto slit = dense_range_residuals(SelfMap::named("slit_sqrt"), {basis(1)}, {8, 16, 32});
  const auto aut = dense_range_residuals(SelfMap::named("affine_auto"), {basis(1)}, {8, 16, 32});
  for (std::size_t i = 0; i < 3; ++i) CHECK(slit[0].residuals[i] > 10 * aut[0].residuals[i]);
  CHECK(slit[0].residuals[2] <= slit[0].residuals[0]);
}

TEST_CASE("complement measure") {
  const ComplementEstimate id = complement_measure_estimate(SelfMap::named("identity"));
  CHECK(id.estimate == 0.0);
  const ComplementEstimate sh = complement_measure_estimate(SelfMap::named("shift_i"));
  CHECK(std::abs(sh.estimate - 4.0) <= std::max(sh.ci, 0.05));
  CHECK(sh.inconclusive == 0);
  const ComplementEstimate sl = complement_measure_estimate(SelfMap::named("slit_sqrt"));
  CHECK(sl.estimate <= sl.ci);

  // Disk of radius 1/2 on the disk side: an Apollonius circle with centre 5i/3
  // and radius 4/3, clipped to the box; area by 1-D quadrature of chord lengths.
  const ComplementEstimate dh = complement_measure_estimate(SelfMap::named("disk_half"));
  const double inside = boost::math::quadrature::tanh_sinh<double>().integrate(
      [](double y) {
        const double h = 16.0 / 9.0 - (y - 5.0 / 3.0) * (y - 5.0 / 3.0);
        return h > 0 ? 2 * std::min(std::sqrt(h), 2.0) : 0.0;
      },
      1.0 / 3.0, 2.0);
  CHECK(std::abs(dh.estimate - (8.0 - inside)) <= 3 * dh.ci);

  // Same seed, same answer; different seed, (almost surely) different draws.
  const ComplementEstimate again = complement_measure_estimate(SelfMap::named("shift_i"));
  CHECK(again.outside == sh.outside);
  CHECK(complement_measure_estimate(SelfMap::named("shift_i"), {}, 100000, 7).outside != sh.outside);
  CHECK_THROWS_AS(complement_measure_estimate(SelfMap::named("identity"), {0.0, -1.0, 0.0, 1.0}), ParseError);
}
