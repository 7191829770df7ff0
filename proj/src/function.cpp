#include "halfplane/function.hpp"

#include <cmath>
#include <sstream>

namespace halfplane {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double param_or(const std::vector<double>& p, std::size_t k, double fallback) {
  return k < p.size() ? p[k] : fallback;
}

// Cauchy integral for f'(z) on a circle of radius Im(z)/4 (stays inside ℂ⁺).
cplx cauchy_derivative(const std::function<cplx(cplx)>& f, cplx z) {
  constexpr int kNodes = 32;
  const double radius = 0.25 * std::max(z.imag(), 1e-12);
  cplx acc{0.0};
  for (int k = 0; k < kNodes; ++k) {
    const cplx e = std::polar(1.0, 2.0 * kPi * k / kNodes);
    acc += f(z + radius * e) / e;
  }
  return acc / (static_cast<double>(kNodes) * radius);
}

const cplx kSqrtMinus2i = std::sqrt(cplx{0.0, -2.0});

}  // namespace

BuiltinFn BuiltinFn::make(const std::string& name, std::vector<double> params) {
  auto impl = std::make_shared<Impl>();
  if (name == "const") {
    const cplx c{param_or(params, 0, 1.0), param_or(params, 1, 0.0)};
    impl->value = [c](cplx) { return c; };
    impl->slope = [](cplx) { return cplx{0.0}; };
  } else if (name == "identity") {
    impl->value = [](cplx z) { return z; };
    impl->slope = [](cplx) { return cplx{1.0}; };
  } else if (name == "cayley_inverse") {
    impl->value = inverse_cayley_eval;
    impl->slope = inverse_cayley_derivative;
  } else if (name == "inv_z_plus_i") {
    impl->value = [](cplx z) { return 1.0 / (z + kI); };
    impl->slope = [](cplx z) { return -1.0 / ((z + kI) * (z + kI)); };
  } else if (name == "exp_pullback") {
    const double lam = param_or(params, 0, 1.0);
    impl->value = [lam](cplx z) { return std::exp(lam * inverse_cayley_eval(z)); };
    impl->slope = [lam](cplx z) {
      return lam * std::exp(lam * inverse_cayley_eval(z)) * inverse_cayley_derivative(z);
    };
  } else if (name == "log_pullback") {
    const double r = param_or(params, 0, 0.5);
    if (!(std::abs(r) < 1.0)) throw ParseError("log_pullback requires |r| < 1");
    impl->value = [r](cplx z) { return std::log(1.0 - r * inverse_cayley_eval(z)); };
    impl->slope = [r](cplx z) {
      return -r / (1.0 - r * inverse_cayley_eval(z)) * inverse_cayley_derivative(z);
    };
  } else if (name == "hardy_weight") {
    impl->value = [](cplx z) { return kSqrtMinus2i / (z + kI); };
    impl->slope = [](cplx z) { return -kSqrtMinus2i / ((z + kI) * (z + kI)); };
  } else {
    throw ParseError("unknown builtin function '" + name + "'");
  }
  return BuiltinFn(name, std::move(params), true, std::move(impl));
}

BuiltinFn BuiltinFn::closure(std::string label, std::function<cplx(cplx)> value,
                             std::function<cplx(cplx)> slope) {
  auto impl = std::make_shared<Impl>();
  impl->value = std::move(value);
  impl->slope = std::move(slope);
  return BuiltinFn(std::move(label), {}, false, std::move(impl));
}

BuiltinFn BuiltinFn::derivative() const {
  auto impl = std::make_shared<Impl>();
  impl->value = impl_->slope;
  impl->slope = [f = impl_->slope](cplx z) { return cauchy_derivative(f, z); };
  return BuiltinFn("d(" + name_ + ")", params_, false, std::move(impl));
}

BuiltinFn BuiltinFn::times(std::string label, std::function<cplx(cplx)> weight,
                           std::function<cplx(cplx)> weight_slope) const {
  auto impl = std::make_shared<Impl>();
  impl->value = [base = impl_, weight](cplx z) { return weight(z) * base->value(z); };
  impl->slope = [base = impl_, weight, weight_slope](cplx z) {
    return weight_slope(z) * base->value(z) + weight(z) * base->slope(z);
  };
  return BuiltinFn(std::move(label) + "(" + name_ + ")", params_, false, std::move(impl));
}

HalfPlaneFn::HalfPlaneFn(Repr repr) : repr_(std::move(repr)) { basepoint_ = eval_unchecked(kI); }

cplx HalfPlaneFn::eval(cplx z) const {
  return std::visit(Overloaded{[z](const RationalFn& r) { return r.eval(z); },
                               [z](const DiskSeries& s) { return s.eval(inverse_cayley_eval(z)); },
                               [z](const BuiltinFn& b) { return b.eval(z); }},
                    repr_);
}

cplx HalfPlaneFn::eval_unchecked(cplx z) const {
  return std::visit(Overloaded{[z](const RationalFn& r) { return r.eval_unchecked(z); },
                               [z](const DiskSeries& s) { return s.eval(inverse_cayley_eval(z)); },
                               [z](const BuiltinFn& b) { return b.eval(z); }},
                    repr_);
}

cplx HalfPlaneFn::derivative_at(cplx z) const {
  return std::visit(
      Overloaded{[z](const RationalFn& r) {
                   // f' = (N'D − ND')/D² evaluated pointwise.
                   return r.derivative().eval_unchecked(z);
                 },
                 [z](const DiskSeries& s) {
                   const cplx w = inverse_cayley_eval(z);
                   return poly::horner(poly::derivative(s.coefficients()), w) *
                          inverse_cayley_derivative(z);
                 },
                 [z](const BuiltinFn& b) { return b.derivative_at(z); }},
      repr_);
}

HalfPlaneFn HalfPlaneFn::derivative() const {
  HalfPlaneFn out = std::visit(
      Overloaded{[](const RationalFn& r) { return HalfPlaneFn(r.derivative()); },
                 [](const DiskSeries& s) {
                   const Coeffs chain{0.5 * kI, kI, 0.5 * kI};  // (i/2)(1+w)²
                   return HalfPlaneFn::from_disk(
                       DiskSeries(poly::multiply(poly::derivative(s.coefficients()), chain),
                                  s.sample_radius()));
                 },
                 [](const BuiltinFn& b) { return HalfPlaneFn(b.derivative()); }},
      repr_);
  if (!label_.empty()) out.label_ = "d(" + label_ + ")";
  return out;
}

std::string HalfPlaneFn::label() const {
  if (!label_.empty()) return label_;
  std::ostringstream os;
  std::visit(Overloaded{[&os](const RationalFn& r) {
                          os << "rational[" << r.numerator_degree() << "/"
                             << r.denominator_degree() << "]";
                        },
                        [&os](const DiskSeries& s) { os << "diskpoly[" << s.truncation_degree() << "]"; },
                        [&os](const BuiltinFn& b) { os << b.name(); }},
             repr_);
  return os.str();
}

HalfPlaneFn HalfPlaneFn::labeled(std::string id) const {
  HalfPlaneFn out = *this;
  out.label_ = std::move(id);
  return out;
}

DiskSeries pullback(const HalfPlaneFn& f, const ExtractionParams& params) {
  if (const auto* s = std::get_if<DiskSeries>(&f.representation())) return s->truncated(params.degree);
  return series_from_samples([&f](cplx w) { return f.eval_unchecked(cayley_eval(w)); }, params.rho,
                             params.samples, params.degree);
}

RationalFn pushforward_polynomial(const DiskSeries& p) {
  Coeffs c(p.coefficients().begin(), p.coefficients().end());
  poly::trim(c, 0.0);
  const auto degree = static_cast<unsigned>(std::max(poly::degree(c), 0));
  Coeffs num(degree + 1, cplx{0.0});
  for (unsigned n = 0; n < c.size() && n <= degree; ++n) {
    if (c[n] == 0.0) continue;
    // a_n (i − z)^n (i + z)^{N−n}
    const Coeffs term = poly::multiply(poly::linear_power(kI, -1.0, n),
                                       poly::linear_power(kI, 1.0, degree - n));
    for (std::size_t k = 0; k < term.size(); ++k) num[k] += c[n] * term[k];
  }
  std::vector<cplx> poles(degree, -kI);
  return {std::move(num), poly::linear_power(kI, 1.0, degree), std::move(poles)};
}

}  // namespace halfplane
