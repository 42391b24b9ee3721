#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nhwigner/grid.hpp"
#include "nhwigner/laguerre.hpp"
#include "nhwigner/params.hpp"
#include "nhwigner/spectrum.hpp"

namespace nhwigner {

/// Angular character of a real basis member: Plus pairs the radial profile
/// with cos[nu (t + Phi)], Minus with sin[nu (t + Phi)].
enum class Parity { Plus, Minus };

namespace detail {

template <typename Scalar>
Scalar ipow(Scalar x, int k) {
  Scalar r = Scalar(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

inline void require_real_mode(const ModeIndex& m, Parity parity, const char* who) {
  require_mode(m, who);
  if (m.nu < 0)
    throw std::invalid_argument(std::string(who) + ": real basis uses nu >= 0");
  if (parity == Parity::Minus && m.nu == 0)
    throw std::invalid_argument(std::string(who) +
                                ": sin-type member with nu = 0 is identically zero (degenerate basis)");
}

}  // namespace detail

/// Radial profile of the eigenbasis,
///   b_{n,nu}(R) = ((-1)^n / pi) R^|nu| e^{-R^2} L_n^{|nu|}(2 R^2).
/// Decays faster than any power of R, as the boundary conditions demand.
template <typename Scalar>
Scalar radial_b(const ModeIndex& m, Scalar r) {
  detail::require_mode(m, "radial_b");
  const int a = std::abs(m.nu);
  const Scalar sign = (m.n % 2 == 0) ? Scalar(1) : Scalar(-1);
  const Scalar r2 = r * r;
  return sign * std::numbers::inv_pi_v<Scalar> * detail::ipow(r, a) * std::exp(-r2) *
         laguerre(m.n, a, Scalar(2) * r2);
}

/// Closed-form derivative db/dR, using d/dx L_n^a(x) = -L_{n-1}^{a+1}(x).
template <typename Scalar>
Scalar radial_b_deriv(const ModeIndex& m, Scalar r) {
  detail::require_mode(m, "radial_b_deriv");
  const int a = std::abs(m.nu);
  const Scalar sign = (m.n % 2 == 0) ? Scalar(1) : Scalar(-1);
  const Scalar r2 = r * r;
  const Scalar e = std::exp(-r2);
  const Scalar lag = laguerre(m.n, a, Scalar(2) * r2);
  const Scalar dlag = (m.n > 0) ? -laguerre(m.n - 1, a + 1, Scalar(2) * r2) : Scalar(0);
  Scalar val = -Scalar(2) * r * detail::ipow(r, a) * lag        // Gaussian factor
             + detail::ipow(r, a) * dlag * Scalar(4) * r;       // Laguerre argument
  if (a > 0) val += Scalar(a) * detail::ipow(r, a - 1) * lag;   // power prefactor
  return sign * std::numbers::inv_pi_v<Scalar> * e * val;
}

/// Squared L2(dq dp) norm of a real basis member at t = 0.  The radial
/// integral reduces, with u = 2 R^2, to the Laguerre orthogonality integral,
/// giving N_{n,nu} = 2^-(nu+2) pi^-2 (n+nu)!/n!; the angular factor is pi
/// for nu >= 1 and 2 pi for the rotation-symmetric nu = 0 members.
template <typename Scalar = double>
Scalar basis_norm_sq(const ModeIndex& m, Parity parity) {
  detail::require_real_mode(m, parity, "basis_norm_sq");
  const int nu = m.nu;
  Scalar ratio = Scalar(1);  // (n+nu)! / n!
  for (int k = 1; k <= nu; ++k) ratio *= Scalar(m.n + k);
  const Scalar inv_pi = std::numbers::inv_pi_v<Scalar>;
  const Scalar radial = std::ldexp(ratio, -(nu + 2)) * inv_pi * inv_pi;
  const Scalar angular = (nu == 0) ? Scalar(2) * std::numbers::pi_v<Scalar>
                                   : std::numbers::pi_v<Scalar>;
  return angular * radial;
}

/// Real basis member B^{+/-}_{n,nu} at time t as a sampler over polar
/// coordinates (R, Phi).  The amplitude decays as exp(-t / tau_{n,nu}) and
/// the angular pattern rotates clockwise with unit angular speed; t < 0 is
/// accepted but runs the decay backwards (modes grow).
template <typename Scalar>
auto basis_real(const ModeIndex& m, Parity parity, const NhParams<Scalar>& p, Scalar t) {
  detail::require_real_mode(m, parity, "basis_real");
  const Scalar decay = std::exp(-eigenvalue(m, p).re * t);
  const Scalar nu = Scalar(m.nu);
  const bool plus = (parity == Parity::Plus);
  const ModeIndex mode = m;
  return [mode, decay, nu, plus, t](Scalar r, Scalar phi) {
    const Scalar ang = nu * (t + phi);
    return decay * radial_b(mode, r) * (plus ? std::cos(ang) : std::sin(ang));
  };
}

/// t = 0 sampler; no oscillator parameters are needed at the initial time.
template <typename Scalar = double>
auto basis_real(const ModeIndex& m, Parity parity) {
  detail::require_real_mode(m, parity, "basis_real");
  const Scalar nu = Scalar(m.nu);
  const bool plus = (parity == Parity::Plus);
  const ModeIndex mode = m;
  return [mode, nu, plus](Scalar r, Scalar phi) {
    return radial_b(mode, r) * (plus ? std::cos(nu * phi) : std::sin(nu * phi));
  };
}

/// Sample a real basis member onto a fresh grid.
template <typename Scalar>
WignerGrid<Scalar> sample_basis(Scalar half_width, Eigen::Index n_points, const ModeIndex& m,
                                Parity parity, const NhParams<Scalar>& p, Scalar t) {
  auto g = make_grid(half_width, n_points);
  sample_polar(g, basis_real(m, parity, p, t));
  g.time = t;
  return g;
}

template <typename Scalar>
WignerGrid<Scalar> sample_basis(Scalar half_width, Eigen::Index n_points, const ModeIndex& m,
                                Parity parity) {
  auto g = make_grid(half_width, n_points);
  sample_polar(g, basis_real<Scalar>(m, parity));
  return g;
}

/// Number of strict local extrema over the 8-neighborhood, ignoring boundary
/// cells and anything below a floor of 1e-6 max|W|.  The grid must resolve
/// each analytic extremum over at least a few cells (the default L = 6,
/// N = 257 is fine for n, nu <= 3).
template <typename Scalar>
int count_extrema(const WignerGrid<Scalar>& g) {
  const Eigen::Index n = g.n_points;
  const Scalar floor = Scalar(1e-6) * g.values.abs().maxCoeff();
  int count = 0;
  for (Eigen::Index j = 1; j + 1 < n; ++j) {
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      const Scalar v = g.values(i, j);
      if (std::abs(v) <= floor) continue;
      bool is_max = true, is_min = true;
      for (Eigen::Index dj = -1; dj <= 1 && (is_max || is_min); ++dj) {
        for (Eigen::Index di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const Scalar w = g.values(i + di, j + dj);
          if (v <= w) is_max = false;
          if (v >= w) is_min = false;
        }
      }
      if (is_max || is_min) ++count;
    }
  }
  return count;
}

/// Strict local extrema of a radial profile sampled on [0, r_max].  The
/// origin counts through its even mirror image, which is how a revolution
/// surface exposes its central extremum.
template <typename Scalar, typename F>
int count_radial_extrema(F&& radial, Scalar r_max, int samples) {
  if (samples < 3) throw std::invalid_argument("count_radial_extrema: need at least 3 samples");
  const Scalar h = r_max / Scalar(samples - 1);
  std::vector<Scalar> v(samples);
  Scalar peak = Scalar(0);
  for (int k = 0; k < samples; ++k) {
    v[k] = radial(Scalar(k) * h);
    peak = std::max(peak, std::abs(v[k]));
  }
  const Scalar floor = Scalar(1e-6) * peak;
  int count = 0;
  if (std::abs(v[0]) > floor && ((v[1] < v[0]) || (v[1] > v[0])))
    ++count;  // mirrored neighbor equals v[1] on both sides
  for (int k = 1; k + 1 < samples; ++k) {
    if (std::abs(v[k]) <= floor) continue;
    if ((v[k] > v[k - 1] && v[k] > v[k + 1]) || (v[k] < v[k - 1] && v[k] < v[k + 1])) ++count;
  }
  return count;
}

}  // namespace nhwigner
