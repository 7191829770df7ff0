#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "halfplane/function.hpp"
#include "halfplane/operators.hpp"

namespace halfplane {

struct Approximant {
  std::size_t degree = 0;
  /// S_k∘α⁻¹ with S_k the degree-k Taylor partial sum of the pullback.
  RationalFn rational;
  /// ‖r_k − f‖² = |S_k(0) − f(i)|² + π Σ_{n>k} n|a_n|².
  double error_squared = 0.0;
};

/// Partial-sum approximants r_0, …, r_kmax. Throws NotInSpace when the
/// Dirichlet norm of f is not finite.
std::vector<Approximant> rational_approximants(const HalfPlaneFn& f, std::size_t k_max,
                                               const ExtractionParams& params = {});

struct Membership {
  bool member = false;
  std::string reason;
  /// finite flag of the coefficient-path norm at each cross-check truncation.
  std::vector<std::size_t> truncations;
  std::vector<bool> numeric_finite;
  /// True when every numeric flag agrees with `member`.
  bool numeric_agrees = false;
};

/// r ∈ 𝔇(ℂ⁺) iff every pole lies strictly below ℝ (by more than kPoleTol)
/// and deg numerator ≤ deg denominator; cross-checked numerically.
Membership membership_dirichlet(const RationalFn& r, const std::vector<std::size_t>& truncations = {16, 32, 64},
                                const ExtractionParams& params = {});

struct ResidualCurve {
  std::string target_id;
  std::vector<std::size_t> degrees;
  /// Squared 𝔇(ℂ⁺) distance from the target to span{C_φ e_k : k ≤ N}.
  std::vector<double> residuals;
  /// Whether the ridge regularization was applied at each degree.
  std::vector<bool> regularized;
};

/// Length of the coefficient vectors used by the least-squares solves.
std::size_t residual_basis_length(std::size_t max_degree);

std::vector<ResidualCurve> dense_range_residuals(const SelfMap& phi, const std::vector<HalfPlaneFn>& targets,
                                                 const std::vector<std::size_t>& degrees,
                                                 const ExtractionParams& params = {});

struct SampleBox {
  double x_min = -2.0;
  double x_max = 2.0;
  double y_min = 0.0;
  double y_max = 2.0;
  double area() const { return (x_max - x_min) * (y_max - y_min); }
};

struct ComplementEstimate {
  /// Area of box ∖ φ(ℂ⁺).
  double estimate = 0.0;
  /// 95% Wilson half-width, scaled by the box area.
  double ci = 0.0;
  std::size_t samples = 0;
  std::size_t outside = 0;
  std::size_t inconclusive = 0;
};

/// Stratified Monte Carlo over the box. Membership of z is decided on the
/// disk side by the winding number of ψ(r·e^{iθ}) around α⁻¹(z) for
/// r = 1 − 10^{−k}, k = 1..6. Throws InconclusiveMembership when more than
/// 1% of the samples cannot be classified.
ComplementEstimate complement_measure_estimate(const SelfMap& phi, const SampleBox& box = {},
                                               std::size_t samples = 100000, std::uint64_t seed = 0);

}  // namespace halfplane
