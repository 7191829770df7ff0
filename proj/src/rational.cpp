#include "halfplane/rational.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace halfplane {

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs) {
  Coeffs c(coeffs.begin(), coeffs.end());
  poly::trim(c, 0.0);
  const int deg = poly::degree(c);
  if (deg <= 0) return {};
  const cplx lead = c[static_cast<std::size_t>(deg)];
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int k = 1; k < deg; ++k) companion(k, k - 1) = 1.0;
  for (int k = 0; k < deg; ++k) companion(k, deg - 1) = -c[static_cast<std::size_t>(k)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  const Coeffs dc = poly::derivative(c);
  std::vector<cplx> roots;
  roots.reserve(static_cast<std::size_t>(deg));
  for (int k = 0; k < deg; ++k) {
    cplx r = solver.eigenvalues()[k];
    const cplx slope = poly::horner(dc, r);
    if (std::abs(slope) > 0.0) {
      const cplx step = poly::horner(c, r) / slope;
      // Newton is only trusted when it moves the root a little.
      if (std::isfinite(std::abs(step)) && std::abs(step) < 1e-3 * (1.0 + std::abs(r))) r -= step;
    }
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

namespace {

Coeffs normalized(Coeffs c) {
  poly::trim(c);
  return c;
}

}  // namespace

RationalFn::RationalFn(Coeffs numerator, Coeffs denominator)
    : num_(normalized(std::move(numerator))), den_(normalized(std::move(denominator))) {
  if (poly::degree(den_) < 0) throw ParseError("rational function with zero denominator");
  poles_ = polynomial_roots(den_);
}

RationalFn::RationalFn(Coeffs numerator, Coeffs denominator, std::vector<cplx> poles)
    : num_(normalized(std::move(numerator))),
      den_(normalized(std::move(denominator))),
      poles_(std::move(poles)) {
  if (poly::degree(den_) < 0) throw ParseError("rational function with zero denominator");
}

cplx RationalFn::eval(cplx z) const {
  for (const cplx p : poles_)
    if (std::abs(z - p) < kPoleTol) throw PoleHit("evaluation at a pole of a rational function");
  return eval_unchecked(z);
}

cplx RationalFn::eval_unchecked(cplx z) const {
  if (std::abs(z) <= 1.0) return poly::horner(num_, z) / poly::horner(den_, z);
  const cplx u = 1.0 / z;
  const cplx ratio = poly::horner_reversed(num_, u) / poly::horner_reversed(den_, u);
  const int shift = static_cast<int>(num_.size()) - static_cast<int>(den_.size());
  if (shift == 0) return ratio;
  cplx power{1.0};
  const cplx base = shift > 0 ? z : u;
  for (int k = 0; k < std::abs(shift); ++k) power *= base;
  return ratio * power;
}

RationalFn RationalFn::derivative() const {
  const Coeffs dn = poly::derivative(num_);
  const Coeffs dd = poly::derivative(den_);
  Coeffs top = poly::subtract(poly::multiply(dn, den_), poly::multiply(num_, dd));
  // Equal degrees: the z^{2d-1} terms cancel exactly; drop the round-off residue.
  const int dnum = poly::degree(num_);
  const int dden = poly::degree(den_);
  if (dnum == dden && dnum > 0 && top.size() > static_cast<std::size_t>(2 * dnum - 1))
    top.resize(static_cast<std::size_t>(2 * dnum - 1));
  if (top.empty()) top.push_back(0.0);
  std::vector<cplx> poles;
  poles.reserve(2 * poles_.size());
  for (const cplx p : poles_) {
    poles.push_back(p);
    poles.push_back(p);
  }
  std::sort(poles.begin(), poles.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return {std::move(top), poly::multiply(den_, den_), std::move(poles)};
}

}  // namespace halfplane
