#pragma once

#include <vector>

#include "halfplane/series.hpp"

namespace halfplane {

/// Roots of a polynomial (ascending coefficients) from the eigenvalues of its
/// companion matrix, each polished by one Newton step. Multiple roots repeat.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs);

/// Quotient of two polynomials in z with cached pole locations.
class RationalFn {
 public:
  /// Throws ParseError when the denominator is identically zero.
  RationalFn(Coeffs numerator, Coeffs denominator);
  /// Same, with poles supplied by the caller (e.g. a known factorization).
  RationalFn(Coeffs numerator, Coeffs denominator, std::vector<cplx> poles);

  static RationalFn polynomial(Coeffs numerator) { return {std::move(numerator), {cplx{1.0}}}; }

  const Coeffs& numerator() const { return num_; }
  const Coeffs& denominator() const { return den_; }
  /// Roots of the denominator with multiplicity.
  const std::vector<cplx>& poles() const { return poles_; }

  int numerator_degree() const { return poly::degree(num_); }
  int denominator_degree() const { return poly::degree(den_); }

  /// Throws PoleHit within kPoleTol of a recorded pole.
  cplx eval(cplx z) const;
  cplx operator()(cplx z) const { return eval(z); }
  /// No pole check; may return inf/nan. Used inside quadrature integrands.
  cplx eval_unchecked(cplx z) const;

  /// Quotient rule (N'D − ND')/D², poles carried over with doubled multiplicity.
  RationalFn derivative() const;

 private:
  Coeffs num_;
  Coeffs den_;
  std::vector<cplx> poles_;
};

}  // namespace halfplane
