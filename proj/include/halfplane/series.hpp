#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "halfplane/types.hpp"

namespace halfplane {

using Coeffs = std::vector<cplx>;

/// Dense polynomial helpers over ascending coefficient vectors.
namespace poly {

cplx horner(std::span<const cplx> c, cplx z);
/// Evaluates a polynomial at large |z| as z^deg · c̃(1/z), avoiding overflow.
/// Returns the mantissa c̃(1/z); the caller applies the power of z.
cplx horner_reversed(std::span<const cplx> c, cplx inv_z);
Coeffs derivative(std::span<const cplx> c);
Coeffs add(std::span<const cplx> a, std::span<const cplx> b);
Coeffs subtract(std::span<const cplx> a, std::span<const cplx> b);
Coeffs multiply(std::span<const cplx> a, std::span<const cplx> b);
/// Product truncated to the first `length` coefficients.
Coeffs multiply_truncated(std::span<const cplx> a, std::span<const cplx> b, std::size_t length);
Coeffs scale(std::span<const cplx> a, cplx s);
/// (a)^k truncated to `length` coefficients.
Coeffs power_truncated(std::span<const cplx> a, unsigned k, std::size_t length);
/// (x + y z)^k expanded exactly.
Coeffs linear_power(cplx x, cplx y, unsigned k);
/// Drops leading coefficients with |c| ≤ rel · max|c|; keeps at least one entry.
void trim(Coeffs& c, double rel = 1e-14);
/// Degree after trimming; −1 for the zero polynomial.
int degree(std::span<const cplx> c);

}  // namespace poly

/// Truncated Taylor series a_0 + a_1 w + … + a_N w^N of a function analytic on
/// the unit disk. `sample_radius` records how the coefficients were obtained:
/// 1 means exact, ρ < 1 means extracted from samples on |w| = ρ.
class DiskSeries {
 public:
  DiskSeries() : coeffs_{cplx{0.0}} {}
  explicit DiskSeries(Coeffs coeffs, double sample_radius = 1.0);

  std::span<const cplx> coefficients() const { return coeffs_; }
  std::size_t truncation_degree() const { return coeffs_.size() - 1; }
  double sample_radius() const { return sample_radius_; }

  /// a_n, or zero past the truncation degree.
  cplx operator[](std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : cplx{0.0}; }

  /// Nested (Horner) evaluation.
  cplx eval(cplx w) const { return poly::horner(coeffs_, w); }
  cplx operator()(cplx w) const { return eval(w); }

  /// Coefficients n·a_n shifted down one index.
  DiskSeries derivative() const;
  /// First N+1 coefficients (zero padded).
  DiskSeries truncated(std::size_t degree) const;

 private:
  Coeffs coeffs_;
  double sample_radius_ = 1.0;
};

/// Taylor coefficients of f from M equispaced samples on |w| = ρ:
/// a_n = ρ^{-n} · (1/M) Σ_k f(ρ ω^k) ω^{-nk}, ω = e^{2πi/M}, for n ≤ N.
///
/// Coefficients below the round-off floor 8·ε·max|f|·ρ^{-n} are set to zero.
/// Requires ρ ∈ (0,1), M a power of two, N < M/2. Throws NonFiniteSample.
DiskSeries series_from_samples(const std::function<cplx(cplx)>& f, double rho, std::size_t samples,
                               std::size_t degree);

}  // namespace halfplane
