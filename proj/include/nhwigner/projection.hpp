#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "nhwigner/basis.hpp"
#include "nhwigner/grid.hpp"
#include "nhwigner/quadrature.hpp"

namespace nhwigner {

/// Key of one real basis member inside a spectral expansion.
struct ModeKey {
  int n = 0;
  int nu = 0;
  Parity parity = Parity::Plus;

  friend bool operator<(const ModeKey& a, const ModeKey& b) {
    return std::tie(a.n, a.nu, a.parity) < std::tie(b.n, b.nu, b.parity);
  }
  friend bool operator==(const ModeKey& a, const ModeKey& b) {
    return a.n == b.n && a.nu == b.nu && a.parity == b.parity;
  }
};

/// Real coefficients of an expansion over the {B+, B-} basis, together with
/// the truncation bounds used to produce them.  sin-type entries with nu = 0
/// are rejected (those members vanish identically), and a state that should
/// carry trace weight needs at least one nu = 0 entry.
template <typename Scalar = double>
struct SpectralCoeffs {
  std::map<ModeKey, Scalar> c;
  int n_max = 0;
  int nu_max = 0;

  void set(const ModeKey& k, Scalar value) {
    detail::require_real_mode({k.n, k.nu}, k.parity, "SpectralCoeffs::set");
    c[k] = value;
  }

  Scalar get(const ModeKey& k) const {
    auto it = c.find(k);
    return it == c.end() ? Scalar(0) : it->second;
  }

  /// True when some cos-type nu = 0 coefficient is significant; only those
  /// members contribute to the normalization integral.
  bool has_trace_content(Scalar tol = Scalar(0)) const {
    for (const auto& [k, v] : c)
      if (k.nu == 0 && std::abs(v) > tol) return true;
    return false;
  }
};

using SpectralCoeffsd = SpectralCoeffs<double>;

template <typename Scalar = double>
struct ProjectionResult {
  SpectralCoeffs<Scalar> coeffs;
  /// |W0 - reconstruction| / |W0| in the grid L2 norm; reports truncation
  /// quality.
  Scalar residual = Scalar(0);
  /// Largest relative gap between the closed-form basis norms and their
  /// quadrature values on this grid; a large value means the grid is too
  /// small or too coarse for the requested truncation.
  Scalar norm_check = Scalar(0);
};

using ProjectionResultd = ProjectionResult<double>;

namespace detail {

template <typename Scalar>
struct PolarTable {
  typename WignerGrid<Scalar>::Array r, phi;
};

template <typename Scalar>
PolarTable<Scalar> make_polar_table(const WignerGrid<Scalar>& g) {
  PolarTable<Scalar> t;
  const Eigen::Index n = g.n_points;
  t.r.resize(n, n);
  t.phi.resize(n, n);
  const auto x = g.axis();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      t.r(i, j) = std::hypot(x[i], x[j]);
      t.phi(i, j) = std::atan2(x[j], x[i]);
    }
  return t;
}

// Sample one basis member at time t into out, reusing precomputed polar
// coordinates.  decay carries exp(-t/tau).
template <typename Scalar>
void fill_basis(const PolarTable<Scalar>& tab, const ModeIndex& m, Parity parity, Scalar t,
                Scalar decay, typename WignerGrid<Scalar>::Array& out) {
  const Eigen::Index n = tab.r.rows();
  const Scalar nu = Scalar(m.nu);
  const bool plus = (parity == Parity::Plus);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar ang = nu * (t + tab.phi(i, j));
      out(i, j) = decay * radial_b(m, tab.r(i, j)) * (plus ? std::cos(ang) : std::sin(ang));
    }
}

}  // namespace detail

/// Expand a t = 0 Wigner function over the real eigenbasis truncated at
/// (n_max, nu_max).  Coefficients are plain quadrature projections divided
/// by the closed-form norms; the quadrature norms are compared against the
/// closed forms on the fly and the worst relative gap is reported.
template <typename Scalar>
ProjectionResult<Scalar> project(const WignerGrid<Scalar>& w0, int n_max, int nu_max) {
  if (n_max < 0 || nu_max < 0)
    throw std::invalid_argument("project: truncation bounds must be non-negative");
  const auto tab = detail::make_polar_table(w0);
  typename WignerGrid<Scalar>::Array basis(w0.n_points, w0.n_points);
  typename WignerGrid<Scalar>::Array recon =
      WignerGrid<Scalar>::Array::Zero(w0.n_points, w0.n_points);
  const Scalar h = w0.spacing();

  ProjectionResult<Scalar> out;
  out.coeffs.n_max = n_max;
  out.coeffs.nu_max = nu_max;

  for (int nu = 0; nu <= nu_max; ++nu) {
    for (Parity parity : {Parity::Plus, Parity::Minus}) {
      if (nu == 0 && parity == Parity::Minus) continue;
      for (int n = 0; n <= n_max; ++n) {
        const ModeIndex m{n, nu};
        detail::fill_basis(tab, m, parity, Scalar(0), Scalar(1), basis);
        const Scalar norm_closed = basis_norm_sq<Scalar>(m, parity);
        const Scalar ip = detail::trapezoid_plane_sum((w0.values * basis).eval(), h);
        const Scalar nn = detail::trapezoid_plane_sum(basis.square().eval(), h);
        out.norm_check = std::max(out.norm_check, std::abs(nn - norm_closed) / norm_closed);
        const Scalar coeff = ip / norm_closed;
        out.coeffs.c[{n, nu, parity}] = coeff;
        recon += coeff * basis;
      }
    }
  }

  const Scalar w0_norm = detail::trapezoid_plane_sum(w0.values.square().eval(), h);
  if (w0_norm > Scalar(0)) {
    const Scalar diff =
        detail::trapezoid_plane_sum((w0.values - recon).square().eval(), h);
    out.residual = std::sqrt(std::max(diff, Scalar(0)) / w0_norm);
  }
  return out;
}

/// Evaluate the expansion at t = 0 on a fresh grid.  No oscillator
/// parameters enter at the initial time, so this also serves as the initial
/// state of a general-model PDE evolution.
template <typename Scalar>
WignerGrid<Scalar> reconstruct_initial(const SpectralCoeffs<Scalar>& coeffs, Scalar half_width,
                                       Eigen::Index n_points) {
  auto g = make_grid(half_width, n_points);
  const auto tab = detail::make_polar_table(g);
  typename WignerGrid<Scalar>::Array basis(n_points, n_points);
  for (const auto& [key, value] : coeffs.c) {
    if (value == Scalar(0)) continue;
    detail::fill_basis(tab, ModeIndex{key.n, key.nu}, key.parity, Scalar(0), Scalar(1), basis);
    g.values += value * basis;
  }
  return g;
}

/// Evaluate the expansion at time t on a fresh grid:
///   W(t) = sum c+ B+_{n,nu}(t) + c- B-_{n,nu}(t).
/// Each term decays by exp(-t/tau_{n,nu}) while its angular pattern rotates
/// by the phase nu t.  Negative t runs the modes backwards (they grow).
template <typename Scalar>
WignerGrid<Scalar> evolve_analytic(const SpectralCoeffs<Scalar>& coeffs,
                                   const NhParams<Scalar>& p, Scalar t, Scalar half_width,
                                   Eigen::Index n_points) {
  detail::require_class(p, ModelClass::Elliptic, "evolve_analytic");
  auto g = make_grid(half_width, n_points);
  g.time = t;
  const auto tab = detail::make_polar_table(g);
  typename WignerGrid<Scalar>::Array basis(n_points, n_points);
  for (const auto& [key, value] : coeffs.c) {
    if (value == Scalar(0)) continue;
    const ModeIndex m{key.n, key.nu};
    const Scalar decay = std::exp(-eigenvalue(m, p).re * t);
    detail::fill_basis(tab, m, key.parity, t, decay, basis);
    g.values += value * basis;
  }
  return g;
}

}  // namespace nhwigner
