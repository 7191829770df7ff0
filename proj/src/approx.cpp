#include "halfplane/approx.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "halfplane/norms.hpp"

namespace halfplane {

// ------------------------------------------------------------ approximants

std::vector<Approximant> rational_approximants(const HalfPlaneFn& f, std::size_t k_max,
                                               const ExtractionParams& params) {
  const DiskSeries s = pullback(f, params);
  if (!energy_partial_sums_converge(s))
    throw NotInSpace(f.label() + " has infinite Dirichlet norm");
  const std::size_t n_max = s.truncation_degree();
  // tail[k] = π Σ_{n>k} n|a_n|², summed from the top for accuracy.
  std::vector<double> tail(n_max + 2, 0.0);
  for (std::size_t n = n_max; n >= 1; --n)
    tail[n - 1] = tail[n] + kPi * static_cast<double>(n) * std::norm(s[n]);
  const double base_gap = std::norm(s[0] - f.basepoint_value());

  std::vector<Approximant> out;
  for (std::size_t k = 0; k <= k_max; ++k) {
    Approximant a{k, pushforward_polynomial(s.truncated(k)), 0.0};
    a.error_squared = base_gap + (k < tail.size() ? tail[k] : 0.0);
    out.push_back(std::move(a));
  }
  return out;
}

// -------------------------------------------------------------- membership

Membership membership_dirichlet(const RationalFn& r, const std::vector<std::size_t>& truncations,
                                const ExtractionParams& params) {
  Membership m;
  const bool degree_ok = r.numerator_degree() <= r.denominator_degree();
  bool poles_ok = true;
  cplx offending{0.0};
  for (const cplx p : r.poles()) {
    if (!(p.imag() < -kPoleTol)) {
      poles_ok = false;
      offending = p;
      break;
    }
  }
  m.member = degree_ok && poles_ok;
  if (m.member) {
    m.reason = "poles strictly below the real axis and deg numerator <= deg denominator";
  } else {
    std::string why;
    if (!degree_ok)
      why = "numerator degree " + std::to_string(r.numerator_degree()) + " exceeds denominator degree " +
            std::to_string(r.denominator_degree());
    if (!poles_ok) {
      if (!why.empty()) why += "; ";
      why += "pole at (" + std::to_string(offending.real()) + ", " + std::to_string(offending.imag()) +
             ") not below the real axis";
    }
    m.reason = why;
  }

  m.truncations = truncations;
  m.numeric_agrees = true;
  const HalfPlaneFn f(r);
  for (const std::size_t n : truncations) {
    ExtractionParams p = params;
    p.degree = n;
    bool finite = false;
    try {
      finite = dirichlet_norm_halfplane(f, NormMethod::kExactCoefficient, p).finite;
    } catch (const NonFiniteSample&) {
      finite = false;
    } catch (const PoleHit&) {
      finite = false;
    }
    m.numeric_finite.push_back(finite);
    m.numeric_agrees = m.numeric_agrees && finite == m.member;
  }
  return m;
}

// ---------------------------------------------------------- dense range

std::size_t residual_basis_length(std::size_t max_degree) {
  return std::max<std::size_t>(96, (3 * max_degree + 1) / 2);
}

namespace {

// Pullback coefficients of ψ^k for k ≤ max_degree, each of the given length.
std::vector<Coeffs> selfmap_powers(const DiskSeries& psi, std::size_t max_degree, std::size_t length) {
  std::vector<Coeffs> out;
  Coeffs power{1.0};
  for (std::size_t k = 0; k <= max_degree; ++k) {
    if (k > 0) power = poly::multiply_truncated(power, psi.coefficients(), length);
    power.resize(length, cplx{0.0});
    out.push_back(power);
  }
  return out;
}

double weighted_energy(const Coeffs& c, std::size_t from, std::size_t to) {
  double e = 0.0;
  for (std::size_t n = from; n < to && n < c.size(); ++n) e += (n == 0 ? 1.0 : kPi * static_cast<double>(n)) * std::norm(c[n]);
  return e;
}

}  // namespace

std::vector<ResidualCurve> dense_range_residuals(const SelfMap& phi, const std::vector<HalfPlaneFn>& targets,
                                                 const std::vector<std::size_t>& degrees,
                                                 const ExtractionParams& params) {
  const std::size_t max_degree = degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
  const DiskSelfMap conjugate = conjugate_selfmap(phi);
  const bool exact = !std::holds_alternative<std::function<cplx(cplx)>>(conjugate.map);

  // Exactly known ψ: grow the length until the highest power keeps less than
  // 1e−14 of its weighted energy past the cut. Sampled ψ: fixed length.
  constexpr std::size_t kMaxLength = 4096;
  std::size_t length = residual_basis_length(max_degree);
  std::vector<Coeffs> powers;
  ExtractionParams big = params;
  if (exact) {
    for (;;) {
      const DiskSeries psi = conjugate.series(2 * length - 1);
      powers = selfmap_powers(psi, max_degree, 2 * length);
      const Coeffs& top = powers.back();
      const double total = weighted_energy(top, 0, 2 * length);
      if (weighted_energy(top, length, 2 * length) <= 1e-14 * total || 2 * length > kMaxLength) break;
      length *= 2;
    }
    for (Coeffs& c : powers) c.resize(length);
  } else {
    big.degree = length - 1;
    while (big.samples <= 2 * big.degree) big.samples *= 2;
    powers = selfmap_powers(conjugate.series(big.degree, big), max_degree, length);
  }
  big.degree = length - 1;
  while (big.samples <= 2 * big.degree) big.samples *= 2;

  // Columns: pullback coefficients of C_φ e_k = ψ^k, rows scaled by √w_n.
  const auto rows = static_cast<Eigen::Index>(length);
  std::vector<double> root_weight(length);
  for (std::size_t n = 0; n < length; ++n) root_weight[n] = std::sqrt(n == 0 ? 1.0 : kPi * static_cast<double>(n));
  Eigen::MatrixXcd columns(rows, static_cast<Eigen::Index>(max_degree + 1));
  for (std::size_t k = 0; k <= max_degree; ++k)
    for (std::size_t n = 0; n < length; ++n)
      columns(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) = root_weight[n] * powers[k][n];

  std::vector<ResidualCurve> out;
  for (const HalfPlaneFn& target : targets) {
    const DiskSeries t = pullback(target, big);
    Eigen::VectorXcd b(rows);
    for (std::size_t n = 0; n < length; ++n) b(static_cast<Eigen::Index>(n)) = root_weight[n] * t[n];

    ResidualCurve curve;
    curve.target_id = target.label();
    Eigen::VectorXcd best_coeffs;
    double best = b.squaredNorm();
    for (const std::size_t degree : degrees) {
      const auto cols = static_cast<Eigen::Index>(degree + 1);
      const Eigen::MatrixXcd a = columns.leftCols(cols);
      Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const Eigen::VectorXd sigma = svd.singularValues();
      const double smax = sigma(0);
      const double smin = sigma(sigma.size() - 1);
      const double cond_gram = smin > 0.0 ? (smax / smin) * (smax / smin) : INFINITY;
      const bool ridge = !(cond_gram <= 1e12);
      // Ridge λ = 1e−12 · trace(G)/N, G = AᴴA.
      const double lambda = ridge ? 1e-12 * a.squaredNorm() / static_cast<double>(cols) : 0.0;
      const Eigen::VectorXcd ub = svd.matrixU().adjoint() * b;
      Eigen::VectorXcd scaled(sigma.size());
      for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        const double s = sigma(i);
        scaled(i) = s > 0.0 ? ub(i) * (s / (s * s + lambda)) : cplx{0.0};
      }
      Eigen::VectorXcd c = svd.matrixV() * scaled;
      double residual = (a * c - b).squaredNorm();
      // Any coefficient vector found for a smaller degree is admissible here.
      if (best_coeffs.size() > 0 && best_coeffs.size() <= cols && best < residual) {
        c = Eigen::VectorXcd::Zero(cols);
        c.head(best_coeffs.size()) = best_coeffs;
        residual = best;
      }
      if (residual <= best || best_coeffs.size() == 0) {
        best = residual;
        best_coeffs = c;
      }
      curve.degrees.push_back(degree);
      curve.residuals.push_back(residual);
      curve.regularized.push_back(ridge);
    }
    out.push_back(std::move(curve));
  }
  return out;
}

// ------------------------------------------------------- complement area

namespace {

// Closed polygon ψ(r·e^{iθ}) refined until chord deviation ≤ tol, with edges
// bucketed into horizontal bands for winding-number queries.
class ContourIndex {
 public:
  ContourIndex(const std::function<cplx(cplx)>& psi, double r, double tol) {
    constexpr int kStart = 512;
    constexpr int kMaxDepth = 22;
    const auto refine = [&](auto&& self, double t0, double t1, cplx v0, cplx v1, int depth) -> void {
      const double tm = 0.5 * (t0 + t1);
      const cplx vm = psi(std::polar(r, tm));
      if (depth >= kMaxDepth || std::abs(vm - 0.5 * (v0 + v1)) <= tol) {
        vertices_.push_back(v1);
        return;
      }
      self(self, t0, tm, v0, vm, depth + 1);
      self(self, tm, t1, vm, v1, depth + 1);
    };
    cplx prev = psi(cplx{r, 0.0});
    vertices_.push_back(prev);
    for (int k = 1; k <= kStart; ++k) {
      const double t0 = 2.0 * kPi * (k - 1) / kStart;
      const double t1 = 2.0 * kPi * k / kStart;
      const cplx next = psi(std::polar(r, t1));
      refine(refine, t0, t1, prev, next, 0);
      prev = next;
    }
    vertices_.back() = vertices_.front();

    lo_ = hi_ = vertices_.front();
    for (const cplx v : vertices_) {
      lo_ = {std::min(lo_.real(), v.real()), std::min(lo_.imag(), v.imag())};
      hi_ = {std::max(hi_.real(), v.real()), std::max(hi_.imag(), v.imag())};
    }
    const double height = std::max(hi_.imag() - lo_.imag(), 1e-300);
    band_height_ = height / kBands;
    bands_.assign(kBands, {});
    for (std::size_t e = 0; e + 1 < vertices_.size(); ++e) {
      const double y0 = std::min(vertices_[e].imag(), vertices_[e + 1].imag());
      const double y1 = std::max(vertices_[e].imag(), vertices_[e + 1].imag());
      for (std::size_t b = band(y0); b <= band(y1); ++b) bands_[b].push_back(e);
    }
  }

  /// Winding number around p, or nullopt when p lies within `near` of an edge.
  std::optional<int> winding(cplx p, double near) const {
    if (p.real() < lo_.real() - near || p.real() > hi_.real() + near || p.imag() < lo_.imag() - near ||
        p.imag() > hi_.imag() + near)
      return 0;
    int wn = 0;
    for (const std::size_t e : bands_[band(p.imag())]) {
      const cplx a = vertices_[e];
      const cplx b = vertices_[e + 1];
      if (segment_distance(p, a, b) <= near) return std::nullopt;
      const double side = (b.real() - a.real()) * (p.imag() - a.imag()) - (p.real() - a.real()) * (b.imag() - a.imag());
      if (a.imag() <= p.imag()) {
        if (b.imag() > p.imag() && side > 0) ++wn;
      } else if (b.imag() <= p.imag() && side < 0) {
        --wn;
      }
    }
    return wn;
  }

 private:
  static constexpr std::size_t kBands = 4096;

  std::size_t band(double y) const {
    const double k = std::floor((y - lo_.imag()) / band_height_);
    return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(kBands - 1)));
  }

  static double segment_distance(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    const double t = len2 > 0.0 ? std::clamp(std::real((p - a) * std::conj(d)) / len2, 0.0, 1.0) : 0.0;
    return std::abs(p - (a + t * d));
  }

  std::vector<cplx> vertices_;
  std::vector<std::vector<std::size_t>> bands_;
  cplx lo_, hi_;
  double band_height_ = 1.0;
};

}  // namespace

ComplementEstimate complement_measure_estimate(const SelfMap& phi, const SampleBox& box, std::size_t samples,
                                               std::uint64_t seed) {
  if (!(box.x_max > box.x_min) || !(box.y_max > box.y_min) || box.y_min < 0.0)
    throw ParseError("complement sample box must be a nonempty rectangle in the upper half-plane");
  if (samples == 0) throw ParseError("sample count must be positive");
  const DiskSelfMap psi = conjugate_selfmap(phi);
  const std::function<cplx(cplx)> disk = [&psi](cplx w) { return psi.eval(w); };

  constexpr double kChordTol = 1e-8;
  constexpr double kNear = 1e-7;
  std::vector<ContourIndex> levels;
  for (int k = 1; k <= 6; ++k) levels.emplace_back(disk, 1.0 - std::pow(10.0, -k), kChordTol);

  const auto rows = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(samples))));
  const std::size_t cols = (samples + rows - 1) / rows;
  const double dx = (box.x_max - box.x_min) / static_cast<double>(cols);
  const double dy = (box.y_max - box.y_min) / static_cast<double>(rows);

  ComplementEstimate out;
  out.samples = rows * cols;
  for (std::size_t i = 0; i < rows; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 gen(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = box.x_min + (static_cast<double>(j) + unit(gen)) * dx;
      const double y = box.y_max - (static_cast<double>(i) + unit(gen)) * dy;
      const cplx zeta = inverse_cayley_eval(cplx{x, y});
      bool inside = false;
      bool undecided = false;
      for (const ContourIndex& level : levels) {
        const std::optional<int> wn = level.winding(zeta, kNear);
        if (!wn) {
          undecided = true;
          continue;
        }
        if (*wn < 0) {
          undecided = true;
          break;
        }
        if (*wn >= 1) {
          inside = true;
          undecided = false;
          break;
        }
      }
      if (inside) continue;
      if (undecided) {
        ++out.inconclusive;
      } else {
        ++out.outside;
      }
    }
  }
  if (out.inconclusive * 100 > out.samples)
    throw InconclusiveMembership(std::to_string(out.inconclusive) + " of " + std::to_string(out.samples) +
                                 " samples could not be classified");

  const double n = static_cast<double>(out.samples);
  const double p = static_cast<double>(out.outside) / n;
  constexpr double z = 1.959963984540054;
  const double half = z / (1.0 + z * z / n) * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
  out.estimate = p * box.area();
  out.ci = half * box.area();
  return out;
}

}  // namespace halfplane
