#include "halfplane/series.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace halfplane {
namespace poly {

cplx horner(std::span<const cplx> c, cplx z) {
  cplx acc{0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx horner_reversed(std::span<const cplx> c, cplx inv_z) {
  cplx acc{0.0};
  for (const cplx ck : c) acc = acc * inv_z + ck;
  return acc;
}

Coeffs derivative(std::span<const cplx> c) {
  if (c.size() <= 1) return {cplx{0.0}};
  Coeffs out(c.size() - 1);
  for (std::size_t n = 1; n < c.size(); ++n) out[n - 1] = static_cast<double>(n) * c[n];
  return out;
}

Coeffs add(std::span<const cplx> a, std::span<const cplx> b) {
  Coeffs out(std::max(a.size(), b.size()), cplx{0.0});
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return out;
}

Coeffs subtract(std::span<const cplx> a, std::span<const cplx> b) {
  Coeffs out(std::max(a.size(), b.size()), cplx{0.0});
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] -= b[k];
  return out;
}

Coeffs multiply(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.empty() || b.empty()) return {cplx{0.0}};
  return multiply_truncated(a, b, a.size() + b.size() - 1);
}

Coeffs multiply_truncated(std::span<const cplx> a, std::span<const cplx> b, std::size_t length) {
  Coeffs out(length, cplx{0.0});
  for (std::size_t i = 0; i < a.size() && i < length; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < length; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Coeffs scale(std::span<const cplx> a, cplx s) {
  Coeffs out(a.begin(), a.end());
  for (auto& x : out) x *= s;
  return out;
}

Coeffs power_truncated(std::span<const cplx> a, unsigned k, std::size_t length) {
  Coeffs result(length, cplx{0.0});
  if (length == 0) return result;
  result[0] = 1.0;
  Coeffs base(a.begin(), a.end());
  base.resize(std::min(base.size(), length));
  while (k > 0) {
    if (k & 1U) result = multiply_truncated(result, base, length);
    k >>= 1U;
    if (k > 0) base = multiply_truncated(base, base, length);
  }
  return result;
}

Coeffs linear_power(cplx x, cplx y, unsigned k) {
  const Coeffs lin{x, y};
  return power_truncated(lin, k, k + 1);
}

void trim(Coeffs& c, double rel) {
  if (c.empty()) {
    c.push_back(0.0);
    return;
  }
  double mx = 0.0;
  for (const cplx x : c) mx = std::max(mx, std::abs(x));
  while (c.size() > 1 && std::abs(c.back()) <= rel * mx) c.pop_back();
}

int degree(std::span<const cplx> c) {
  for (std::size_t k = c.size(); k-- > 0;)
    if (c[k] != 0.0) return static_cast<int>(k);
  return -1;
}

}  // namespace poly

DiskSeries::DiskSeries(Coeffs coeffs, double sample_radius)
    : coeffs_(std::move(coeffs)), sample_radius_(sample_radius) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

DiskSeries DiskSeries::derivative() const {
  return DiskSeries(poly::derivative(coeffs_), sample_radius_);
}

DiskSeries DiskSeries::truncated(std::size_t degree) const {
  Coeffs c(degree + 1, cplx{0.0});
  std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), c.size()), c.begin());
  return DiskSeries(std::move(c), sample_radius_);
}

DiskSeries series_from_samples(const std::function<cplx(cplx)>& f, double rho, std::size_t samples,
                               std::size_t degree) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("sample radius must lie in (0,1)");
  if (samples < 2 || !std::has_single_bit(samples))
    throw std::invalid_argument("sample count must be a power of two");
  if (2 * degree >= samples) throw std::invalid_argument("truncation degree must be < samples/2");

  std::vector<cplx> roots(samples);
  for (std::size_t k = 0; k < samples; ++k)
    roots[k] = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(samples));

  std::vector<cplx> values(samples);
  double peak = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    values[k] = f(rho * roots[k]);
    if (!std::isfinite(values[k].real()) || !std::isfinite(values[k].imag()))
      throw NonFiniteSample("non-finite sample at w = " + std::to_string(rho) + "·e^{2πi·" +
                            std::to_string(k) + "/" + std::to_string(samples) + "}");
    peak = std::max(peak, std::abs(values[k]));
  }

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  Coeffs coeffs(degree + 1, cplx{0.0});
  double inv_rho_n = 1.0;
  for (std::size_t n = 0; n <= degree; ++n) {
    cplx acc{0.0};
    for (std::size_t k = 0; k < samples; ++k)
      acc += values[k] * std::conj(roots[(n * k) % samples]);
    const cplx an = acc * (inv_rho_n / static_cast<double>(samples));
    const double floor = 8.0 * kEps * peak * inv_rho_n;
    coeffs[n] = std::abs(an) <= floor ? cplx{0.0} : an;
    inv_rho_n /= rho;
  }
  return DiskSeries(std::move(coeffs), rho);
}

}  // namespace halfplane
