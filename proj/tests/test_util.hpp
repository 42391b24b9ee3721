#pragma once

// Shared helpers for the test suites: independent quadrature oracles, a
// bilinear resampler, and width measurement from samples.

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "nhwigner/grid.hpp"

namespace testutil {

// Composite Simpson on [a, b] with an even panel count.
template <typename F>
double simpson(F&& f, double a, double b, int panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int k = 1; k < panels; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return acc * h / 3.0;
}

namespace detail {
template <typename F>
double adaptive_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}
}  // namespace detail

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol = 1e-10, int depth = 40) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Bilinear interpolation of a sampled grid; zero outside the domain.
inline double bilinear(const nhwigner::WignerGridd& g, double q, double p) {
  const double h = g.spacing();
  const double fi = (q + g.half_width) / h;
  const double fj = (p + g.half_width) / h;
  const auto n = g.n_points;
  const auto i0 = static_cast<Eigen::Index>(std::floor(fi));
  const auto j0 = static_cast<Eigen::Index>(std::floor(fj));
  if (i0 < 0 || j0 < 0 || i0 + 1 >= n || j0 + 1 >= n) return 0.0;
  const double x = fi - i0, y = fj - j0;
  return g.values(i0, j0) * (1 - x) * (1 - y) + g.values(i0 + 1, j0) * x * (1 - y) +
         g.values(i0, j0 + 1) * (1 - x) * y + g.values(i0 + 1, j0 + 1) * x * y;
}

// Values of g resampled after rotating the pattern by `angle` about the
// origin (a positive angle turns counterclockwise).
inline nhwigner::WignerGridd rotate_resample(const nhwigner::WignerGridd& g, double angle) {
  auto out = nhwigner::make_grid(g.half_width, g.n_points);
  const double c = std::cos(angle), s = std::sin(angle);
  nhwigner::sample_cartesian(out, [&](double q, double p) {
    // value at (q, p) comes from the pre-image under the rotation
    return bilinear(g, c * q + s * p, -s * q + c * p);
  });
  return out;
}

// Half width at half maximum measured from samples of a single-peak curve,
// with linear interpolation at the half-height crossings.
inline double measure_hwhm(const std::vector<double>& e, const std::vector<double>& f) {
  if (e.size() != f.size() || e.size() < 5)
    throw std::invalid_argument("measure_hwhm: bad sample vectors");
  std::size_t peak = 0;
  for (std::size_t k = 1; k < f.size(); ++k)
    if (f[k] > f[peak]) peak = k;
  const double half = 0.5 * f[peak];
  auto cross = [&](bool right) {
    std::size_t k = peak;
    while (true) {
      const std::size_t next = right ? k + 1 : k - 1;
      if (next >= f.size()) throw std::invalid_argument("measure_hwhm: no crossing in window");
      if (f[next] <= half) {
        const double t = (f[k] - half) / (f[k] - f[next]);
        return e[k] + t * (e[next] - e[k]);
      }
      k = next;
      if (!right && k == 0) throw std::invalid_argument("measure_hwhm: no crossing in window");
    }
  };
  const double right = cross(true), left = cross(false);
  return 0.5 * (right - left);
}

inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed1234u);
  return gen;
}

inline double uniform(double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng());
}

}  // namespace testutil
