#pragma once

#include <array>

#include "halfplane/types.hpp"

namespace halfplane {

/// A point of the Riemann sphere: either a finite complex number or infinity.
class SpherePoint {
 public:
  SpherePoint(cplx z) : value_(z), infinite_(false) {}  // NOLINT(google-explicit-constructor)
  static SpherePoint infinity() { return SpherePoint(); }

  bool is_infinite() const { return infinite_; }
  /// Throws PoleHit when the point is infinity.
  cplx value() const;

 private:
  SpherePoint() : value_(0.0), infinite_(true) {}
  cplx value_;
  bool infinite_;
};

/// Fractional linear map z ↦ (a z + b) / (c z + d).
///
/// Coefficients are stored unnormalized; two maps are equal when they agree
/// on generic points (see same_action), not when their coefficients match.
class MoebiusMap {
 public:
  MoebiusMap(cplx a, cplx b, cplx c, cplx d);

  static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }

  cplx determinant() const { return a_ * d_ - b_ * c_; }
  /// |det| ≤ kDetTol · max|coef|².
  bool is_degenerate() const;

  SpherePoint operator()(SpherePoint z) const;
  /// Finite evaluation; throws PoleHit at the pole.
  cplx eval(cplx z) const;
  /// Derivative det / (c z + d)².
  cplx derivative(cplx z) const;

  /// Location of the pole (−d/c), infinity for affine maps.
  SpherePoint pole() const;

 private:
  cplx a_, b_, c_, d_;
};

/// Returns m1 ∘ m2. Throws DegenerateMap if the product is singular.
MoebiusMap moebius_compose(const MoebiusMap& m1, const MoebiusMap& m2);
/// Throws DegenerateMap for a singular map.
MoebiusMap moebius_inverse(const MoebiusMap& m);

/// True when both maps agree (within tol) on three generic points.
bool same_action(const MoebiusMap& m1, const MoebiusMap& m2, double tol = kEvalTol);

/// The Cayley transform w ↦ i(1−w)/(1+w), mapping the unit disk onto ℂ⁺.
MoebiusMap cayley();
/// z ↦ (i−z)/(i+z), mapping ℂ⁺ onto the unit disk.
MoebiusMap inverse_cayley();

// Direct (allocation-free) forms used in hot loops.
inline cplx cayley_eval(cplx w) { return kI * (1.0 - w) / (1.0 + w); }
inline cplx inverse_cayley_eval(cplx z) { return (kI - z) / (kI + z); }
/// (α⁻¹)'(z) = −2i/(z+i)².
inline cplx inverse_cayley_derivative(cplx z) { return -2.0 * kI / ((z + kI) * (z + kI)); }
/// α'(w) = −2i/(1+w)².
inline cplx cayley_derivative(cplx w) { return -2.0 * kI / ((1.0 + w) * (1.0 + w)); }

/// True iff the map is a self-map (automorphism) of the upper half-plane:
/// coefficients rescale to real numbers with a·d − b·c > 0.
bool is_halfplane_automorphism(const MoebiusMap& m);

/// Density relating arc length on the circle to Lebesgue measure on ℝ under
/// the Cayley transform: dθ = 2/(1+x²) dx.
inline double boundary_weight(double x) { return 2.0 / (1.0 + x * x); }

}  // namespace halfplane
