#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "nhwigner/grid.hpp"

namespace nhwigner {

namespace detail {

// Composite 2-D trapezoidal sum over an N x N sample array: endpoint weights
// 1/2 on each axis, everything scaled by h^2.  Columns are reduced first in
// a fixed order so results are bit-reproducible.
template <typename Scalar, typename Derived>
Scalar trapezoid_plane_sum(const Eigen::ArrayBase<Derived>& v, Scalar h) {
  const Eigen::Index n = v.rows();
  const Scalar half = Scalar(0.5);
  Scalar total = Scalar(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    Scalar col = v.col(j).sum() - half * (v(0, j) + v(n - 1, j));
    if (j == 0 || j == n - 1) col *= half;
    total += col;
  }
  return total * h * h;
}

}  // namespace detail

/// Plane integral of the sampled function over [-L, L]^2 (the trace of the
/// underlying density operator in the Weyl sense).  For the dissipative
/// dynamics considered here this quantity is generally not conserved.
template <typename Scalar>
Scalar integrate(const WignerGrid<Scalar>& g) {
  return detail::trapezoid_plane_sum(g.values, g.spacing());
}

/// Quadrature of the pointwise product of two grids over the plane
/// (measure dq dp).  Both operands must share the same layout; the summation
/// order is identical for either argument order, so the result is exactly
/// symmetric.
template <typename Scalar>
Scalar inner_product(const WignerGrid<Scalar>& a, const WignerGrid<Scalar>& b) {
  if (!a.same_layout(b))
    throw std::invalid_argument("inner_product: grid layouts differ");
  return detail::trapezoid_plane_sum((a.values * b.values).eval(), a.spacing());
}

/// L2 norm of the grid under the same quadrature weights.
template <typename Scalar>
Scalar grid_norm(const WignerGrid<Scalar>& g) {
  return std::sqrt(detail::trapezoid_plane_sum(g.values.square().eval(), g.spacing()));
}

/// Phase-space average of a Weyl symbol against the sampled function:
/// quadrature of W(q,p) * symbol(q,p).  Divide by integrate(W) to obtain the
/// normalized expectation value.
template <typename Scalar, typename F>
Scalar expectation(const WignerGrid<Scalar>& g, F&& symbol) {
  const Eigen::Index n = g.n_points;
  const auto x = g.axis();
  const Scalar half = Scalar(0.5);
  Scalar total = Scalar(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Scalar pj = x[j];
    Scalar col = Scalar(0);
    for (Eigen::Index i = 0; i < n; ++i) {
      Scalar term = g.values(i, j) * symbol(x[i], pj);
      if (i == 0 || i == n - 1) term *= half;
      col += term;
    }
    if (j == 0 || j == n - 1) col *= half;
    total += col;
  }
  const Scalar h = g.spacing();
  return total * h * h;
}

}  // namespace nhwigner
