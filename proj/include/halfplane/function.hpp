#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "halfplane/moebius.hpp"
#include "halfplane/rational.hpp"
#include "halfplane/series.hpp"

namespace halfplane {

/// Parameters of Taylor-coefficient extraction on |w| = ρ.
struct ExtractionParams {
  double rho = 0.9;
  std::size_t samples = 512;
  std::size_t degree = 64;
};

/// Named closed-form analytic function on ℂ⁺.
///
/// Catalog names (params in brackets, defaults after '='):
///   const [re=1, im=0]        c
///   identity                  z
///   cayley_inverse            (i−z)/(i+z)
///   inv_z_plus_i              1/(z+i)
///   exp_pullback [λ=1]        exp(λ·α⁻¹(z))
///   log_pullback [r=0.5]      log(1 − r·α⁻¹(z)),  |r| < 1
///   hardy_weight              √(−2i)/(z+i)
///
/// Derivatives and weighted products of builtins are builtins too; their
/// names are decorated (e.g. "d(exp_pullback)") and they are not parseable.
class BuiltinFn {
 public:
  /// Throws ParseError for unknown names or bad parameters.
  static BuiltinFn make(const std::string& name, std::vector<double> params = {});
  /// Ad-hoc closed form from a value and a derivative; not a catalog entry.
  static BuiltinFn closure(std::string label, std::function<cplx(cplx)> value,
                           std::function<cplx(cplx)> slope);

  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }
  /// True for catalog entries that round-trip through the JSON spec format.
  bool is_catalog_entry() const { return catalog_entry_; }

  cplx eval(cplx z) const { return impl_->value(z); }
  cplx derivative_at(cplx z) const { return impl_->slope(z); }

  /// Builtin whose value is this function's derivative; its own derivative
  /// is evaluated by the Cauchy integral on a small circle inside ℂ⁺.
  BuiltinFn derivative() const;
  /// Pointwise product with an analytic weight (value, derivative).
  BuiltinFn times(std::string label, std::function<cplx(cplx)> weight,
                  std::function<cplx(cplx)> weight_slope) const;

 private:
  struct Impl {
    std::function<cplx(cplx)> value;
    std::function<cplx(cplx)> slope;
  };
  BuiltinFn(std::string name, std::vector<double> params, bool catalog_entry,
            std::shared_ptr<const Impl> impl)
      : name_(std::move(name)),
        params_(std::move(params)),
        catalog_entry_(catalog_entry),
        impl_(std::move(impl)) {}

  std::string name_;
  std::vector<double> params_;
  bool catalog_entry_ = false;
  std::shared_ptr<const Impl> impl_;
};

/// Analytic function on the upper half-plane. Representations:
///   RationalFn: an explicit rational literal in z;
///   DiskSeries: a pullback s, meaning f = s ∘ α⁻¹;
///   BuiltinFn: a named closed form.
class HalfPlaneFn {
 public:
  using Repr = std::variant<RationalFn, DiskSeries, BuiltinFn>;

  HalfPlaneFn(RationalFn r) : HalfPlaneFn(Repr(std::move(r))) {}  // NOLINT
  HalfPlaneFn(BuiltinFn b) : HalfPlaneFn(Repr(std::move(b))) {}   // NOLINT
  /// f = s ∘ α⁻¹.
  static HalfPlaneFn from_disk(DiskSeries s) { return HalfPlaneFn(Repr(std::move(s))); }
  static HalfPlaneFn builtin(const std::string& name, std::vector<double> params = {}) {
    return BuiltinFn::make(name, std::move(params));
  }
  static HalfPlaneFn constant(cplx c) { return builtin("const", {c.real(), c.imag()}); }

  const Repr& representation() const { return repr_; }
  bool is_rational() const { return std::holds_alternative<RationalFn>(repr_); }
  bool is_pullback() const { return std::holds_alternative<DiskSeries>(repr_); }
  bool is_builtin() const { return std::holds_alternative<BuiltinFn>(repr_); }

  /// Throws PoleHit at poles of rational literals.
  cplx eval(cplx z) const;
  cplx operator()(cplx z) const { return eval(z); }
  /// Pole checks skipped; may return inf/nan.
  cplx eval_unchecked(cplx z) const;
  /// f'(z) without building the derivative function.
  cplx derivative_at(cplx z) const;

  /// Exact formal derivative of the same kind. For pullbacks the chain rule
  /// gives (s∘α⁻¹)' = [s'(w)·(i/2)(1+w)²]∘α⁻¹, again a finite series.
  HalfPlaneFn derivative() const;

  /// Cached f(i).
  cplx basepoint_value() const { return basepoint_; }

  /// Short description used as target_id in reports.
  std::string label() const;
  /// Copy carrying an explicit label.
  HalfPlaneFn labeled(std::string id) const;

 private:
  explicit HalfPlaneFn(Repr repr);
  Repr repr_;
  cplx basepoint_{0.0};
  std::string label_;
};

/// Taylor data of f∘α extracted on |w| = ρ. A pullback representation is
/// returned exactly, truncated or padded to the requested degree.
DiskSeries pullback(const HalfPlaneFn& f, const ExtractionParams& params = {});

/// p∘α⁻¹ expanded over the common denominator (i+z)^N.
RationalFn pushforward_polynomial(const DiskSeries& p);

}  // namespace halfplane
