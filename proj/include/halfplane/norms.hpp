#pragma once

#include <string>
#include <vector>

#include "halfplane/function.hpp"
#include "halfplane/quadrature.hpp"

namespace halfplane {

enum class NormMethod { kExactCoefficient, kQuadrature };

std::string to_string(NormMethod m);

/// ‖f‖² = basepoint_term + energy_term. When `finite` is false the energy
/// term holds the partial value reached before divergence was declared.
struct NormReport {
  double squared_norm = 0.0;
  double basepoint_term = 0.0;
  double energy_term = 0.0;
  NormMethod method = NormMethod::kExactCoefficient;
  bool finite = true;
  /// Quadrature diagnostics (quadrature path only).
  double error_estimate = 0.0;
  std::size_t nodes_used = 0;
};

/// π Σ_{n≥1} n |a_n|², the Dirichlet energy of a disk series.
double dirichlet_energy_disk(const DiskSeries& s);

/// Convergence test on the partial energies at N/4, N/2, N: the energy is
/// declared finite when the last increment is at most half of the previous
/// one (or negligible).
bool energy_partial_sums_converge(const DiskSeries& s);

/// 2π Σ |a_n|² (arc-length measure on the circle).
double hardy_norm_disk(const DiskSeries& s);

/// Dirichlet norm on ℂ⁺ with basepoint i. The exact path works on the
/// pullback coefficients; the quadrature path integrates |f'|² over ℂ⁺.
NormReport dirichlet_norm_halfplane(const HalfPlaneFn& f,
                                    NormMethod method = NormMethod::kExactCoefficient,
                                    const ExtractionParams& params = {},
                                    const QuadratureOptions& opts = {});

/// |f(basepoint)|² + ∫_region |f'|² dA. Throws BasepointOutsideRegion.
NormReport dirichlet_norm_region(const HalfPlaneFn& f, const RegionMask& region, cplx basepoint,
                                 const QuadratureOptions& opts = {});

/// ∫_region |f|² dA; divergence is flagged in the result.
QuadratureResult bergman_norm_region(const HalfPlaneFn& f, const RegionMask& region,
                                     const QuadratureOptions& opts = {});

struct HardyProfilePoint {
  double y = 0.0;
  QuadratureResult line;
};

struct HardyReport {
  /// sup over the grid of ∫ |f(x+iy)|² dx (a squared norm).
  double value = 0.0;
  bool finite = true;
  std::vector<HardyProfilePoint> profile;
};

/// Geometric grid {2^{-k} : k = 0..20}.
std::vector<double> default_hardy_grid();

HardyReport hardy_norm_halfplane(const HalfPlaneFn& f,
                                 const std::vector<double>& y_grid = default_hardy_grid(),
                                 const QuadratureOptions& opts = {});

/// z ↦ √(−2i)/(z+i) · f(z), with the principal root √2·e^{−iπ/4}.
HalfPlaneFn embed_theorem6(const HalfPlaneFn& f);

}  // namespace halfplane
