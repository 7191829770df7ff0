#include <doctest.h>

#include "halfplane/moebius.hpp"
#include "oracle.hpp"

using namespace halfplane;
using doctest::Approx;

namespace {
bool close(cplx a, cplx b, double tol = kEvalTol) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_CASE("cayley transform values") {
  const MoebiusMap a = cayley();
  CHECK(close(a.eval(0.0), kI));
  CHECK(close(a.eval(0.5), kI / 3.0));
  for (double t : {kPi / 3, kPi / 2, 2 * kPi / 3}) CHECK(std::abs(a.eval(std::polar(1.0, t)).imag()) <= kEvalTol);
}

TEST_CASE("inverse cayley values") {
  const MoebiusMap b = inverse_cayley();
  CHECK(close(b.eval(kI), 0.0));
  CHECK(close(b.eval(2.0 * kI), -1.0 / 3.0));
  CHECK(std::abs(std::abs(b.eval(1.0)) - 1.0) <= kEvalTol);
  CHECK(close(b.eval(1.0), kI));
  CHECK(same_action(b, moebius_inverse(cayley())));
}

TEST_CASE("composition") {
  for (cplx z : oracle::random_upper(10, 1)) CHECK(close(moebius_compose(cayley(), inverse_cayley()).eval(z), z));
  const MoebiusMap shift(1.0, kI, 0.0, 1.0);
  const MoebiusMap dil(2.0, 0.0, 0.0, 1.0);
  CHECK(close(moebius_compose(shift, dil).eval(kI), 3.0 * kI));
  const MoebiusMap psi = moebius_compose(inverse_cayley(), moebius_compose(shift, cayley()));
  CHECK(close(psi.eval(0.0), -1.0 / 3.0));
  for (cplx w : oracle::random_disk(20, 2)) CHECK(close(psi.eval(w), (w - 1.0) / (w + 3.0)));
  CHECK_THROWS_AS(moebius_compose(MoebiusMap(1.0, 1.0, 1.0, 1.0), shift), DegenerateMap);
}

TEST_CASE("inverse") {
  CHECK(same_action(moebius_inverse(MoebiusMap::identity()), MoebiusMap::identity()));
  const MoebiusMap inv = moebius_inverse(cayley());
  for (cplx z : oracle::random_upper(10, 3)) CHECK(close(inv.eval(z), (kI - z) / (kI + z)));
  const MoebiusMap aut(2.0, 1.0, 1.0, 1.0);
  CHECK(close(moebius_inverse(aut).eval((2.0 * kI + 1.0) / (kI + 1.0)), kI));
  CHECK_THROWS_AS(moebius_inverse(MoebiusMap(2.0, 4.0, 1.0, 2.0)), DegenerateMap);
}

TEST_CASE("automorphism detection") {
  CHECK_FALSE(is_halfplane_automorphism(MoebiusMap(1.0, kI, 0.0, 1.0)));
  CHECK(is_halfplane_automorphism(MoebiusMap(2.0, 1.0, 1.0, 1.0)));
  CHECK_FALSE(is_halfplane_automorphism(cayley()));
  // Real rescaling by a complex unit is still an automorphism.
  const cplx u = std::polar(3.0, 0.7);
  CHECK(is_halfplane_automorphism(MoebiusMap(2.0 * u, u, u, u)));
  // Negative determinant maps ℂ⁺ to the lower half-plane.
  CHECK_FALSE(is_halfplane_automorphism(MoebiusMap(0.0, 1.0, 1.0, 0.0)));
  CHECK(is_halfplane_automorphism(MoebiusMap(0.0, -1.0, 1.0, 0.0)));
}

TEST_CASE("boundary weight") {
  CHECK(boundary_weight(0.0) == 2.0);
  CHECK(boundary_weight(1.0) == 1.0);
  CHECK(oracle::line([](double x) { return boundary_weight(x); }) == Approx(2 * kPi).epsilon(1e-10));
}

TEST_CASE("pole evaluates to infinity") {
  const MoebiusMap b = inverse_cayley();
  CHECK(b(SpherePoint(-kI)).is_infinite());
  CHECK_THROWS_AS(b.eval(-kI), PoleHit);
  CHECK(close(b(SpherePoint::infinity()).value(), -1.0));
  CHECK(MoebiusMap(1.0, kI, 0.0, 1.0)(SpherePoint::infinity()).is_infinite());
}

TEST_CASE("group laws on random maps") {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> n;
  auto rnd = [&] { return MoebiusMap({n(gen), n(gen)}, {n(gen), n(gen)}, {n(gen), n(gen)}, {n(gen), n(gen)}); };
  for (int k = 0; k < 20; ++k) {
    const MoebiusMap a = rnd(), b = rnd(), c = rnd();
    CHECK(same_action(moebius_compose(a, moebius_compose(b, c)), moebius_compose(moebius_compose(a, b), c), 1e-8));
    CHECK(same_action(moebius_compose(a, moebius_inverse(a)), MoebiusMap::identity(), 1e-8));
    CHECK(same_action(moebius_compose(moebius_inverse(a), a), MoebiusMap::identity(), 1e-8));
  }
}

TEST_CASE("cayley maps disk to half-plane and back") {
  for (cplx w : oracle::random_disk(100, 11, 0.999)) CHECK(cayley().eval(w).imag() > 0.0);
  for (cplx z : oracle::random_upper(100, 12, 50.0)) CHECK(std::abs(inverse_cayley().eval(z)) < 1.0);
}

TEST_CASE("boundary correspondence") {
  for (int k = -40; k <= 40; ++k) {
    const double t = kPi * k / 41.0;
    const cplx x = cayley().eval(std::polar(1.0, t));
    CHECK(std::abs(x.imag()) <= kEvalTol);
    CHECK(std::abs(x.real() - std::tan(t / 2)) <= kEvalTol * (1 + std::abs(x.real())));
  }
}

TEST_CASE("pushforward of boundary measure") {
  auto g = [](cplx w) { return 1.0 + std::norm(w - 0.3) + std::real(w * w); };
  const double circle = boost::math::quadrature::trapezoidal(
      [&](double t) { return g(std::polar(1.0, t)); }, 0.0, 2 * kPi, 1e-13);
  const double line = oracle::line([&](double x) { return g(inverse_cayley_eval(x)) * boundary_weight(x); });
  CHECK(line == Approx(circle).epsilon(1e-9));
}
