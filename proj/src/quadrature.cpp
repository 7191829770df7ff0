#include "halfplane/quadrature.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

namespace halfplane {

namespace {

// 15-point Kronrod rule on [-1, 1] with the embedded 7-point Gauss weights
// (zero on the Kronrod-only nodes).
struct Rule15 {
  std::array<double, 15> x{};
  std::array<double, 15> wk{};
  std::array<double, 15> wg{};
};

const Rule15& kronrod_rule() {
  static const Rule15 rule = [] {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    const auto& ka = gauss_kronrod<double, 15>::abscissa();
    const auto& kw = gauss_kronrod<double, 15>::weights();
    const auto& gw = gauss<double, 7>::weights();
    Rule15 r;
    // Boost lists non-negative abscissas; Gauss nodes sit at even indices.
    std::size_t slot = 0;
    for (std::size_t k = ka.size(); k-- > 1;) {
      r.x[slot] = -ka[k];
      r.wk[slot] = kw[k];
      r.wg[slot] = (k % 2 == 0) ? gw[k / 2] : 0.0;
      ++slot;
    }
    for (std::size_t k = 0; k < ka.size(); ++k) {
      r.x[slot] = ka[k];
      r.wk[slot] = kw[k];
      r.wg[slot] = (k % 2 == 0) ? gw[k / 2] : 0.0;
      ++slot;
    }
    return r;
  }();
  return rule;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

template <std::size_t D>
struct Cell {
  std::array<double, D> lo{};
  std::array<double, D> hi{};
  double value = 0.0;
  double error = 0.0;
  int level = 0;
};

template <std::size_t D>
using Point = std::array<double, D>;

// Global adaptive Gauss–Kronrod cubature on axis-aligned cells in a
// parameter box of dimension 1 or 2. The worst cell (largest error) is split
// in half along the dimension with the largest scaled extent.
template <std::size_t D>
class AdaptiveCubature {
 public:
  using Integrand = std::function<double(const Point<D>&)>;
  using Extents = std::function<Point<D>(const Cell<D>&)>;

  AdaptiveCubature(Integrand f, Extents extents, const QuadratureOptions& opts)
      : f_(std::move(f)), extents_(std::move(extents)), opts_(opts) {}

  QuadratureResult run(const Point<D>& lo, const Point<D>& hi, const std::array<int, D>& splits);

 private:
  static constexpr std::size_t kCost = D == 1 ? 15 : 225;
  static constexpr int kLevelCap = D == 1 ? 56 : 110;
  // Depth at which the divergence tail test starts, and the level stride
  // that halves every side once.
  static constexpr int kTailStart = D == 1 ? 20 : 40;
  static constexpr int kStride = static_cast<int>(D);

  bool evaluate(Cell<D>& c);
  bool tail_diverges(double total) const;

  Integrand f_;
  Extents extents_;
  QuadratureOptions opts_;
  std::size_t evals_ = 0;
  std::vector<double> first_total_at_level_;
};

template <std::size_t D>
bool AdaptiveCubature<D>::evaluate(Cell<D>& c) {
  const Rule15& r = kronrod_rule();
  Point<D> mid{};
  Point<D> half{};
  for (std::size_t d = 0; d < D; ++d) {
    mid[d] = 0.5 * (c.lo[d] + c.hi[d]);
    half[d] = 0.5 * (c.hi[d] - c.lo[d]);
  }
  double k_sum = 0.0;
  double g_sum = 0.0;
  bool finite = true;
  if constexpr (D == 1) {
    for (std::size_t i = 0; i < 15; ++i) {
      const double v = f_({mid[0] + half[0] * r.x[i]});
      finite = finite && std::isfinite(v);
      k_sum += r.wk[i] * v;
      g_sum += r.wg[i] * v;
    }
  } else {
    for (std::size_t i = 0; i < 15; ++i) {
      const double u = mid[0] + half[0] * r.x[i];
      double k_row = 0.0;
      double g_row = 0.0;
      for (std::size_t j = 0; j < 15; ++j) {
        const double v = f_({u, mid[1] + half[1] * r.x[j]});
        finite = finite && std::isfinite(v);
        k_row += r.wk[j] * v;
        g_row += r.wg[j] * v;
      }
      k_sum += r.wk[i] * k_row;
      g_sum += r.wg[i] * g_row;
    }
  }
  evals_ += kCost;
  double jac = 1.0;
  for (std::size_t d = 0; d < D; ++d) jac *= half[d];
  c.value = k_sum * jac;
  c.error = std::abs(k_sum - g_sum) * jac;
  return finite && std::isfinite(c.value);
}

// Increments of the running total between successive new depth levels: for a
// non-integrable point singularity every halving adds a non-shrinking amount.
template <std::size_t D>
bool AdaptiveCubature<D>::tail_diverges(double total) const {
  const int top = static_cast<int>(first_total_at_level_.size()) - 1;
  if (top < kTailStart) return false;
  const auto q = [&](int level) { return first_total_at_level_[static_cast<std::size_t>(level)]; };
  const double d1 = q(top) - q(top - kStride);
  const double d2 = q(top - kStride) - q(top - 2 * kStride);
  const double d3 = q(top - 2 * kStride) - q(top - 3 * kStride);
  const double significant = 1e3 * opts_.tol * (1.0 + std::abs(total));
  return d1 > significant && d2 > 0.0 && d3 > 0.0 && d1 >= 0.95 * d2 && d2 >= 0.95 * d3;
}

template <std::size_t D>
QuadratureResult AdaptiveCubature<D>::run(const Point<D>& lo, const Point<D>& hi,
                                          const std::array<int, D>& splits) {
  std::vector<Cell<D>> cells;
  QuadratureResult out;
  bool broken = false;

  // Initial uniform partition.
  std::array<int, D> idx{};
  const auto make_initial = [&](auto&& self, std::size_t d) -> void {
    if (d == D) {
      Cell<D> c;
      for (std::size_t k = 0; k < D; ++k) {
        const double step = (hi[k] - lo[k]) / splits[k];
        c.lo[k] = lo[k] + step * idx[k];
        c.hi[k] = idx[k] + 1 == splits[k] ? hi[k] : lo[k] + step * (idx[k] + 1);
      }
      broken = !evaluate(c) || broken;
      cells.push_back(c);
      return;
    }
    for (idx[d] = 0; idx[d] < splits[d]; ++idx[d]) self(self, d + 1);
  };
  make_initial(make_initial, 0);

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    heap.emplace(cells[k].error, k);
    total += cells[k].value;
    total_err += cells[k].error;
  }
  first_total_at_level_.assign(1, total);

  bool converged = false;
  std::size_t iteration = 0;
  while (!broken) {
    if (++iteration % 512 == 0) {
      std::vector<double> v(cells.size());
      std::vector<double> e(cells.size());
      for (std::size_t k = 0; k < cells.size(); ++k) {
        v[k] = cells[k].value;
        e[k] = cells[k].error;
      }
      total = pairwise_sum(v);
      total_err = pairwise_sum(e);
    }
    if (std::abs(total) > opts_.divergence_cap) break;
    if (total_err <= opts_.tol * (1.0 + std::abs(total))) {
      converged = true;
      break;
    }
    if (heap.empty() || evals_ + 2 * kCost > opts_.max_evals) break;

    const std::size_t at = heap.top().second;
    heap.pop();
    const Cell<D> parent = cells[at];
    if (parent.level >= kLevelCap) continue;  // frozen: its error stays in the total

    const Point<D> ext = extents_(parent);
    std::size_t axis = 0;
    for (std::size_t d = 1; d < D; ++d)
      if (ext[d] > ext[axis]) axis = d;
    const double cut = 0.5 * (parent.lo[axis] + parent.hi[axis]);
    Cell<D> left = parent;
    Cell<D> right = parent;
    left.hi[axis] = cut;
    right.lo[axis] = cut;
    left.level = right.level = parent.level + 1;
    if (!evaluate(left) || !evaluate(right)) {
      broken = true;
      break;
    }
    total += left.value + right.value - parent.value;
    total_err += left.error + right.error - parent.error;
    cells[at] = left;
    cells.push_back(right);
    heap.emplace(left.error, at);
    heap.emplace(right.error, cells.size() - 1);

    if (left.level >= static_cast<int>(first_total_at_level_.size())) {
      first_total_at_level_.push_back(total);
      if (tail_diverges(total)) break;
    }
  }

  std::vector<double> v(cells.size());
  std::vector<double> e(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    v[k] = cells[k].value;
    e[k] = cells[k].error;
  }
  out.value = pairwise_sum(v);
  const double abs_err = pairwise_sum(e);
  out.error_estimate = abs_err / (1.0 + std::abs(out.value));
  out.nodes_used = evals_;
  out.diverged = broken || !converged || !std::isfinite(out.value);
  if (!out.diverged && out.error_estimate > opts_.tol) out.diverged = true;
  return out;
}

// Polar integral over the disk of radius R of h(w)·r dr dθ.
QuadratureResult polar_integral(const std::function<double(cplx)>& h, double radius,
                                const QuadratureOptions& opts) {
  AdaptiveCubature<2> engine(
      [&h](const Point<2>& p) {
        const double r = p[0];
        return h(std::polar(r, p[1])) * r;
      },
      [](const Cell<2>& c) {
        const double r_mid = 0.5 * (c.lo[0] + c.hi[0]);
        return Point<2>{c.hi[0] - c.lo[0], r_mid * (c.hi[1] - c.lo[1])};
      },
      opts);
  return engine.run({0.0, 0.0}, {radius, 2.0 * kPi}, {2, 8});
}

QuadratureResult strip_integral(const PlaneIntegrand& g, double y0, double y1,
                                const QuadratureOptions& opts) {
  // x = tan(u), dx = sec²(u) du.
  AdaptiveCubature<2> engine(
      [&g](const Point<2>& p) {
        const double c = std::cos(p[0]);
        return g(cplx{std::tan(p[0]), p[1]}) / (c * c);
      },
      [](const Cell<2>& c) { return Point<2>{c.hi[0] - c.lo[0], c.hi[1] - c.lo[1]}; }, opts);
  return engine.run({-0.5 * kPi, y0}, {0.5 * kPi, y1}, {8, 2});
}

QuadratureResult box_integral(const PlaneIntegrand& g, const BoxRegion& box,
                              const QuadratureOptions& opts) {
  AdaptiveCubature<2> engine(
      [&g](const Point<2>& p) { return g(cplx{p[0], p[1]}); },
      [](const Cell<2>& c) { return Point<2>{c.hi[0] - c.lo[0], c.hi[1] - c.lo[1]}; }, opts);
  return engine.run({box.x_min, box.y_min}, {box.x_max, box.y_max}, {4, 4});
}

// {±(x − a) > 0, y > 0} with x = a ± tan(u), y = tan(v).
QuadratureResult quarter_plane_integral(const PlaneIntegrand& g, double a, double side,
                                        const QuadratureOptions& opts) {
  AdaptiveCubature<2> engine(
      [&g, a, side](const Point<2>& p) {
        const double cu = std::cos(p[0]);
        const double cv = std::cos(p[1]);
        return g(cplx{a + side * std::tan(p[0]), std::tan(p[1])}) / (cu * cu * cv * cv);
      },
      [](const Cell<2>& c) { return Point<2>{c.hi[0] - c.lo[0], c.hi[1] - c.lo[1]}; }, opts);
  return engine.run({0.0, 0.0}, {0.5 * kPi, 0.5 * kPi}, {4, 4});
}

QuadratureResult combine(const QuadratureResult& a, const QuadratureResult& b) {
  QuadratureResult out;
  out.value = a.value + b.value;
  const double abs_err = a.error_estimate * (1.0 + std::abs(a.value)) + b.error_estimate * (1.0 + std::abs(b.value));
  out.error_estimate = abs_err / (1.0 + std::abs(out.value));
  out.nodes_used = a.nodes_used + b.nodes_used;
  out.diverged = a.diverged || b.diverged;
  return out;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate(const RegionMask::Shape& shape) {
  std::visit(
      Overloaded{
          [](const HalfPlaneRegion&) {}, [](const EmptyRegion&) {},
          [](const ImAbove& s) {
            if (!(s.y0 >= 0.0)) throw ParseError("im_above requires y0 ≥ 0");
          },
          [](const ImBetween& s) {
            if (!(s.y0 >= 0.0 && s.y1 > s.y0)) throw ParseError("im_between requires 0 ≤ y0 < y1");
          },
          [](const SlitVertical& s) {
            if (!(s.y_max > 0.0)) throw ParseError("slit_vertical requires y_max > 0");
          },
          [](const BoxRegion& b) {
            if (!(b.x_max > b.x_min && b.y_max > b.y_min && b.y_min >= 0.0))
              throw ParseError("box requires x_min < x_max and 0 ≤ y_min < y_max");
          },
          [](const MoebiusImageOfDisk& m) {
            if (!(m.radius > 0.0)) throw ParseError("disk image requires radius > 0");
            if (m.map.is_degenerate()) throw ParseError("disk image: degenerate map");
            const SpherePoint pole = m.map.pole();
            if (!pole.is_infinite() && std::abs(pole.value()) < m.radius * (1.0 - 1e-12))
              throw ParseError("disk image: map has a pole inside the disk");
            if (!(m.map.eval(0.0).imag() > 0.0))
              throw ParseError("disk image: center does not map into the upper half-plane");
            for (int k = 0; k < 64; ++k) {
              const cplx w = std::polar(m.radius, 2.0 * kPi * (k + 0.5) / 64.0);
              const SpherePoint z = m.map(w);
              if (!z.is_infinite() && z.value().imag() < -1e-9 * (1.0 + std::abs(z.value())))
                throw ParseError("disk image leaves the upper half-plane");
            }
          }},
      shape);
}

}  // namespace

RegionMask::RegionMask(Shape shape) : shape_(std::move(shape)) { validate(shape_); }

std::string RegionMask::type() const {
  return std::visit(Overloaded{[](const HalfPlaneRegion&) { return std::string("halfplane"); },
                               [](const ImAbove&) { return std::string("im_above"); },
                               [](const ImBetween&) { return std::string("im_between"); },
                               [](const SlitVertical&) { return std::string("slit_vertical"); },
                               [](const MoebiusImageOfDisk&) {
                                 return std::string("moebius_image_of_disk");
                               },
                               [](const BoxRegion&) { return std::string("complement_sample_box"); },
                               [](const EmptyRegion&) { return std::string("empty"); }},
                    shape_);
}

bool RegionMask::contains(cplx z) const {
  if (!(z.imag() > 0.0)) return false;
  return std::visit(
      Overloaded{[](const HalfPlaneRegion&) { return true; },
                 [](const EmptyRegion&) { return false; },
                 [z](const ImAbove& s) { return z.imag() > s.y0; },
                 [z](const ImBetween& s) { return z.imag() > s.y0 && z.imag() <= s.y1; },
                 [z](const SlitVertical& s) { return !(z.real() == s.x && z.imag() <= s.y_max); },
                 [z](const BoxRegion& b) {
                   return z.real() >= b.x_min && z.real() <= b.x_max && z.imag() > b.y_min &&
                          z.imag() <= b.y_max;
                 },
                 [z](const MoebiusImageOfDisk& m) {
                   const SpherePoint w = moebius_inverse(m.map)(z);
                   return !w.is_infinite() && std::abs(w.value()) < m.radius;
                 }},
      shape_);
}

QuadratureResult integrate_disk(const PlaneIntegrand& g, const QuadratureOptions& opts) {
  return polar_integral(g, 1.0, opts);
}

QuadratureResult integrate_halfplane(const PlaneIntegrand& g, const QuadratureOptions& opts) {
  return polar_integral(
      [&g](cplx w) {
        const double m = std::norm(1.0 + w);
        return g(cayley_eval(w)) * 4.0 / (m * m);
      },
      1.0, opts);
}

QuadratureResult integrate_moebius_disk(const PlaneIntegrand& g, const MoebiusMap& map,
                                        double radius, const QuadratureOptions& opts) {
  return polar_integral(
      [&g, &map](cplx w) { return g(map.eval(w)) * std::norm(map.derivative(w)); }, radius, opts);
}

QuadratureResult integrate_line(const LineIntegrand& g, const QuadratureOptions& opts) {
  AdaptiveCubature<1> engine(
      [&g](const Point<1>& p) {
        const double x = std::tan(0.5 * p[0]);
        return g(x) * 0.5 * (1.0 + x * x);
      },
      [](const Cell<1>& c) { return Point<1>{c.hi[0] - c.lo[0]}; }, opts);
  return engine.run({-kPi}, {kPi}, {8});
}

QuadratureResult integrate_region(const PlaneIntegrand& g, const RegionMask& region,
                                  const QuadratureOptions& opts) {
  return std::visit(
      Overloaded{
          [&](const HalfPlaneRegion&) { return integrate_halfplane(g, opts); },
          // Two quarter-planes meeting along the slit line.
          [&](const SlitVertical& s) {
            return combine(quarter_plane_integral(g, s.x, -1.0, opts), quarter_plane_integral(g, s.x, 1.0, opts));
          },
          [&](const EmptyRegion&) { return QuadratureResult{}; },
          [&](const ImAbove& s) {
            const double y0 = s.y0;
            return integrate_halfplane([&g, y0](cplx z) { return g(z + cplx{0.0, y0}); }, opts);
          },
          [&](const ImBetween& s) { return strip_integral(g, s.y0, s.y1, opts); },
          [&](const BoxRegion& b) { return box_integral(g, b, opts); },
          [&](const MoebiusImageOfDisk& m) {
            return integrate_moebius_disk(g, m.map, m.radius, opts);
          }},
      region.shape());
}

}  // namespace halfplane
