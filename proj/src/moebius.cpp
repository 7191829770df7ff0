#include "halfplane/moebius.hpp"

#include <algorithm>
#include <cmath>

namespace halfplane {

cplx SpherePoint::value() const {
  if (infinite_) throw PoleHit("point at infinity has no finite value");
  return value_;
}

MoebiusMap::MoebiusMap(cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) {}

bool MoebiusMap::is_degenerate() const {
  const double scale = std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
  if (scale == 0.0) return true;
  return std::abs(determinant()) <= kDetTol * scale * scale;
}

SpherePoint MoebiusMap::operator()(SpherePoint z) const {
  if (z.is_infinite()) {
    if (c_ == 0.0) return SpherePoint::infinity();
    return a_ / c_;
  }
  const cplx w = z.value();
  const cplx den = c_ * w + d_;
  if (den == 0.0) return SpherePoint::infinity();
  return (a_ * w + b_) / den;
}

cplx MoebiusMap::eval(cplx z) const { return (*this)(z).value(); }

cplx MoebiusMap::derivative(cplx z) const {
  const cplx den = c_ * z + d_;
  return determinant() / (den * den);
}

SpherePoint MoebiusMap::pole() const {
  if (c_ == 0.0) return SpherePoint::infinity();
  return -d_ / c_;
}

MoebiusMap moebius_compose(const MoebiusMap& m1, const MoebiusMap& m2) {
  if (m1.is_degenerate() || m2.is_degenerate()) throw DegenerateMap("compose: degenerate operand");
  MoebiusMap out(m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
                 m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d());
  if (out.is_degenerate()) throw DegenerateMap("compose: degenerate result");
  return out;
}

MoebiusMap moebius_inverse(const MoebiusMap& m) {
  if (m.is_degenerate()) throw DegenerateMap("inverse of a degenerate map");
  return {m.d(), -m.b(), -m.c(), m.a()};
}

bool same_action(const MoebiusMap& m1, const MoebiusMap& m2, double tol) {
  static constexpr std::array<cplx, 3> kProbe{cplx{0.3141, 0.2718}, cplx{-0.577, 1.414},
                                              cplx{1.732, 0.618}};
  for (const cplx z : kProbe) {
    const SpherePoint p = m1(z);
    const SpherePoint q = m2(z);
    if (p.is_infinite() != q.is_infinite()) return false;
    if (!p.is_infinite() && std::abs(p.value() - q.value()) > tol * (1.0 + std::abs(q.value())))
      return false;
  }
  return true;
}

MoebiusMap cayley() { return {-kI, kI, 1.0, 1.0}; }

MoebiusMap inverse_cayley() { return {-1.0, kI, 1.0, kI}; }

bool is_halfplane_automorphism(const MoebiusMap& m) {
  if (m.is_degenerate()) return false;
  const std::array<cplx, 4> coef{m.a(), m.b(), m.c(), m.d()};
  const cplx pivot = *std::max_element(coef.begin(), coef.end(), [](cplx x, cplx y) {
    return std::abs(x) < std::abs(y);
  });
  std::array<double, 4> real{};
  for (std::size_t k = 0; k < 4; ++k) {
    const cplx r = coef[k] / pivot;
    if (std::abs(r.imag()) > kDetTol) return false;
    real[k] = r.real();
  }
  return real[0] * real[3] - real[1] * real[2] > kDetTol;
}

}  // namespace halfplane
