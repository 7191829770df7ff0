#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "halfplane/function.hpp"
#include "halfplane/norms.hpp"
#include "halfplane/quadrature.hpp"

namespace halfplane {

/// Analytic self-map φ of ℂ⁺, given in one of three forms:
///   moebius         φ itself as a fractional linear map;
///   disk_conjugate  a disk self-map ψ (Möbius or series), φ = α∘ψ∘α⁻¹;
///   named           a catalog entry.
///
/// Catalog: identity, shift_i (z+i), affine_auto ((2z+1)/(z+1)),
/// neg_inverse (−1/z), dilation_2 (2z), disk_half (ψ = w/2),
/// square_conjugate (ψ = w², not univalent), slit_sqrt (√(z−1)·√(z+1),
/// onto ℂ⁺ minus the segment (0, i]).
class SelfMap {
 public:
  enum class Form { kMoebius, kDiskConjugate, kNamed };

  static SelfMap moebius(const MoebiusMap& phi);
  static SelfMap disk_conjugate(const MoebiusMap& psi);
  static SelfMap disk_conjugate(DiskSeries psi);
  /// Throws ParseError for unknown names.
  static SelfMap named(const std::string& name);
  static const std::vector<std::string>& catalog_names();

  Form form() const { return form_; }
  /// Catalog name for named maps, empty otherwise.
  const std::string& name() const { return name_; }
  std::string label() const;

  std::optional<bool> claimed_univalent;

  /// φ(z) and φ'(z); no domain checks.
  cplx eval(cplx z) const;
  cplx derivative(cplx z) const;
  /// ψ(w) = α⁻¹(φ(α(w))) and ψ'(w).
  cplx disk_eval(cplx w) const;
  cplx disk_derivative(cplx w) const;

  /// φ as a Möbius map, when it is one.
  const std::optional<MoebiusMap>& as_moebius() const { return phi_; }
  /// ψ given as a Möbius map in the disk_conjugate form.
  const std::optional<MoebiusMap>& psi_moebius() const { return psi_moebius_; }
  /// ψ given as a series in the disk_conjugate form.
  const std::optional<DiskSeries>& psi_series() const { return psi_series_; }

  /// Ω = φ(ℂ⁺) when it is one of the supported region masks.
  std::optional<RegionMask> image_region() const;

 private:
  SelfMap() = default;
  Form form_ = Form::kMoebius;
  std::string name_;
  std::optional<MoebiusMap> phi_;
  std::optional<MoebiusMap> psi_moebius_;
  std::optional<DiskSeries> psi_series_;
  bool slit_ = false;
};

/// Disk self-map ψ = α⁻¹∘φ∘α.
struct DiskSelfMap {
  std::variant<MoebiusMap, DiskSeries, std::function<cplx(cplx)>> map;
  cplx eval(cplx w) const;
  /// Taylor coefficients up to `degree`: exact for Möbius and series forms,
  /// extracted from samples on |w| = ρ otherwise.
  DiskSeries series(std::size_t degree, const ExtractionParams& params = {}) const;
};

/// Throws NotSelfMap if Im φ(z) ≤ 0 or |ψ(w)| ≥ 1 on a 400-point grid, or,
/// for Möbius maps, if ψ(𝔻) is not contained in 𝔻.
DiskSelfMap conjugate_selfmap(const SelfMap& phi);

/// f∘φ. Exact rational when φ is Möbius and f rational; exact series
/// composition when f is a pullback and ψ has a series; otherwise the
/// pullback of f∘φ∘α is extracted from samples.
HalfPlaneFn apply_composition(const SelfMap& phi, const HalfPlaneFn& f,
                              const ExtractionParams& params = {});

/// f∘φ as a closed form evaluated pointwise, with (f∘φ)' = f'(φ)·φ'.
HalfPlaneFn composition_closure(const SelfMap& phi, const HalfPlaneFn& f);

struct UnivalenceGrid {
  std::size_t nx = 40;
  std::size_t ny = 40;
  double x_max = 8.0;
  double y_min = 1e-3;
  double y_max = 8.0;
  double collide_tol = 1e-4;
};

struct UnivalenceVerdict {
  enum class Kind { kUnivalentLikely, kNotUnivalent, kInconclusive };
  Kind kind = Kind::kInconclusive;
  /// Witness pair for kNotUnivalent.
  cplx z1{0.0};
  cplx z2{0.0};
  /// Winding numbers of φ around φ(i) on the nested test contours.
  std::vector<int> windings;
  std::string detail;
};

std::string to_string(UnivalenceVerdict::Kind k);

UnivalenceVerdict check_univalent(const SelfMap& phi, const UnivalenceGrid& grid = {});

/// Winding number of ψ(r·e^{iθ}), θ ∈ [0, 2π], around `center`.
int disk_winding_number(const std::function<cplx(cplx)>& psi, double r, cplx center);

struct BoundednessCheck {
  /// ‖C_φ f‖² = |f(φ(i))|² + ∫_{ℂ⁺} |(f∘φ)'|² dA.
  double lhs = 0.0;
  /// |f(φ(i))|² + ∫_{ℂ⁺} |f'|² dA.
  double rhs = 0.0;
  /// The same lhs from the coefficient path on apply_composition(φ, f).
  double lhs_exact = 0.0;
  bool holds = false;
};

BoundednessCheck boundedness_check(const SelfMap& phi, const HalfPlaneFn& f,
                                   const ExtractionParams& params = {},
                                   const QuadratureOptions& opts = {});

struct ChangeOfVariables {
  /// ∫_{ℂ⁺} |(f∘φ)'|² dA.
  double left = 0.0;
  /// ∫_Ω |f'|² dA.
  double right = 0.0;
  bool diverged = false;
};

ChangeOfVariables change_of_variables_check(const SelfMap& phi, const HalfPlaneFn& f,
                                            const RegionMask& omega,
                                            const QuadratureOptions& opts = {});

/// Normalized matrix of C_φ on e_0 = 1, e_n = (α⁻¹)ⁿ (n ≤ N); entry (n, m)
/// is ⟨C_φ e_m, e_n⟩ / (‖e_m‖·‖e_n‖).
struct OperatorMatrix {
  std::size_t basis_degree = 0;
  /// Row-major (N+1)×(N+1).
  std::vector<cplx> entries;
  /// Max deviation of the basis Gram matrix (from extracted pullbacks) from I.
  double gram_residual = 0.0;
  /// Largest singular value: a lower bound for ‖C_φ‖.
  double norm_lower_bound = 0.0;

  cplx operator()(std::size_t n, std::size_t m) const { return entries[n * (basis_degree + 1) + m]; }
};

OperatorMatrix operator_matrix(const SelfMap& phi, std::size_t degree,
                               const ExtractionParams& params = {});

/// ‖e_n‖ in 𝔇(ℂ⁺): 1 for n = 0, √(πn) otherwise.
double basis_norm(std::size_t n);

/// f(i)·conj(g(i)) + π Σ n a_n conj(b_n) on pullback coefficients.
cplx dirichlet_inner(const DiskSeries& f, const DiskSeries& g);

}  // namespace halfplane
