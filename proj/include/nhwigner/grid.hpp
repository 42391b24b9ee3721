#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nhwigner {

/// Real-valued Wigner function sampled on a uniform, endpoint-inclusive
/// square grid covering [-L, L] x [-L, L].
///
/// values(i, j) stores W(q_i, p_j) with q_i = -L + i h, p_j = -L + j h and
/// spacing h = 2L/(N-1).  A timestamp travels with the samples so evolved
/// grids remember their own time.
template <typename Scalar = double>
struct WignerGrid {
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Scalar half_width = Scalar(0);   // L
  Eigen::Index n_points = 0;       // N per axis
  Array values;                    // N x N, indexed (q index, p index)
  Scalar time = Scalar(0);

  Scalar spacing() const {
    return Scalar(2) * half_width / Scalar(n_points - 1);
  }
  Scalar q(Eigen::Index i) const { return -half_width + Scalar(i) * spacing(); }
  Scalar p(Eigen::Index j) const { return -half_width + Scalar(j) * spacing(); }

  /// Coordinate samples, shared by both axes.
  Eigen::Array<Scalar, Eigen::Dynamic, 1> axis() const {
    Eigen::Array<Scalar, Eigen::Dynamic, 1> x(n_points);
    for (Eigen::Index i = 0; i < n_points; ++i) x[i] = q(i);
    return x;
  }

  bool same_layout(const WignerGrid& other) const {
    return half_width == other.half_width && n_points == other.n_points;
  }
};

using WignerGridd = WignerGrid<double>;

/// Zero-initialized grid at t = 0.  Fewer than 16 points per axis or a
/// non-positive half-width are rejected; such grids are too coarse for any
/// quadrature tolerance promised elsewhere.
template <typename Scalar = double>
WignerGrid<Scalar> make_grid(Scalar half_width, Eigen::Index n_points) {
  if (!(half_width > Scalar(0)) || !std::isfinite(half_width))
    throw std::invalid_argument("make_grid: half_width must be positive and finite");
  if (n_points < 16)
    throw std::invalid_argument("make_grid: need at least 16 points per axis");
  WignerGrid<Scalar> g;
  g.half_width = half_width;
  g.n_points = n_points;
  g.values = WignerGrid<Scalar>::Array::Zero(n_points, n_points);
  return g;
}

/// Fill a grid in place from a callable f(q, p).
template <typename Scalar, typename F>
void sample_cartesian(WignerGrid<Scalar>& g, F&& f) {
  const auto x = g.axis();
  for (Eigen::Index j = 0; j < g.n_points; ++j) {
    const Scalar pj = x[j];
    for (Eigen::Index i = 0; i < g.n_points; ++i) g.values(i, j) = f(x[i], pj);
  }
}

/// Fill a grid in place from a callable f(R, Phi), where R = sqrt(q^2 + p^2)
/// and Phi = atan2(p, q).
template <typename Scalar, typename F>
void sample_polar(WignerGrid<Scalar>& g, F&& f) {
  const auto x = g.axis();
  for (Eigen::Index j = 0; j < g.n_points; ++j) {
    const Scalar pj = x[j];
    for (Eigen::Index i = 0; i < g.n_points; ++i) {
      const Scalar qi = x[i];
      g.values(i, j) = f(std::hypot(qi, pj), std::atan2(pj, qi));
    }
  }
}

/// Largest deviation of the samples from their own quarter-turn rotations.
/// Multiples of 90 degrees map the grid onto itself, so this probes
/// rotational symmetry without any interpolation error.
template <typename Scalar>
Scalar max_quarter_turn_asymmetry(const WignerGrid<Scalar>& g) {
  const Eigen::Index n = g.n_points;
  Scalar worst = Scalar(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar v = g.values(i, j);
      // images of (i, j) under 90, 180 and 270 degree turns
      const Scalar r1 = g.values(j, n - 1 - i);
      const Scalar r2 = g.values(n - 1 - i, n - 1 - j);
      const Scalar r3 = g.values(n - 1 - j, i);
      worst = std::max({worst, std::abs(v - r1), std::abs(v - r2), std::abs(v - r3)});
    }
  }
  return worst;
}

}  // namespace nhwigner
