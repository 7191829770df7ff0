#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>

#include "halfplane/moebius.hpp"

namespace halfplane {

struct QuadratureOptions {
  /// Relative tolerance: converged when |error| ≤ tol·(1 + |value|).
  double tol = 1e-8;
  /// Integrand evaluation budget.
  std::size_t max_evals = std::size_t{1} << 22;
  /// Running values above this are reported as divergent.
  double divergence_cap = 1e12;
};

/// Outcome of an adaptive integration. `error_estimate` is normalized,
/// |abs error| / (1 + |value|), so a non-divergent result satisfies
/// error_estimate ≤ tol. On divergence `value` holds the partial sum.
struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t nodes_used = 0;
  bool diverged = false;
};

using PlaneIntegrand = std::function<double(cplx)>;
using LineIntegrand = std::function<double(double)>;

// Region masks. Each supported shape is integrated through an exact
// parameterization, so no cell ever straddles the mask boundary.

struct HalfPlaneRegion {};
/// {Im z > y0}, y0 ≥ 0.
struct ImAbove {
  double y0 = 0.0;
};
/// {y0 < Im z ≤ y1}.
struct ImBetween {
  double y0 = 0.0;
  double y1 = 1.0;
};
/// ℂ⁺ minus the segment {x + i t : 0 < t ≤ y_max}.
struct SlitVertical {
  double x = 0.0;
  double y_max = 1.0;
};
/// M({|w| < radius}); M must carry that disk into ℂ⁺.
struct MoebiusImageOfDisk {
  MoebiusMap map = cayley();
  double radius = 1.0;
};
/// [x_min, x_max] × (y_min, y_max] with y_min ≥ 0.
struct BoxRegion {
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};
struct EmptyRegion {};

class RegionMask {
 public:
  using Shape = std::variant<HalfPlaneRegion, ImAbove, ImBetween, SlitVertical, MoebiusImageOfDisk,
                             BoxRegion, EmptyRegion>;

  /// Validates the shape; throws ParseError on inconsistent parameters.
  RegionMask(Shape shape);  // NOLINT(google-explicit-constructor)
  static RegionMask full() { return RegionMask(HalfPlaneRegion{}); }

  const Shape& shape() const { return shape_; }
  /// JSON "type" tag.
  std::string type() const;
  /// Pointwise membership (always false outside ℂ⁺).
  bool contains(cplx z) const;

 private:
  Shape shape_;
};

/// ∫_𝔻 g dA in adaptive polar cells (r, θ).
QuadratureResult integrate_disk(const PlaneIntegrand& g, const QuadratureOptions& opts = {});

/// ∫_{ℂ⁺} g dA via z = α(w) with Jacobian |α'(w)|² = 4/|1+w|⁴ on the disk.
QuadratureResult integrate_halfplane(const PlaneIntegrand& g, const QuadratureOptions& opts = {});

/// ∫_ℝ g dx via x = tan(θ/2), dx = (1+x²)/2 dθ, θ ∈ (−π, π).
QuadratureResult integrate_line(const LineIntegrand& g, const QuadratureOptions& opts = {});

/// ∫ over {z ∈ ℂ⁺ : mask(z)} of g dA.
QuadratureResult integrate_region(const PlaneIntegrand& g, const RegionMask& region,
                                  const QuadratureOptions& opts = {});

/// ∫_{M(D_R)} g dA = ∫_{D_R} g(M(w))·|M'(w)|² dA(w).
QuadratureResult integrate_moebius_disk(const PlaneIntegrand& g, const MoebiusMap& map,
                                        double radius, const QuadratureOptions& opts = {});

}  // namespace halfplane
