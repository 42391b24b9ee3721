#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nhwigner/params.hpp"

namespace nhwigner {

/// Quantum-number pair labelling a phase-space eigenmode: n is the radial
/// number (n >= 0), nu the angular number (any integer; formulas depend on
/// |nu| except for the rotation phase).
struct ModeIndex {
  int n = 0;
  int nu = 0;
};

namespace detail {

inline void require_mode(const ModeIndex& m, const char* who) {
  if (m.n < 0) throw std::invalid_argument(std::string(who) + ": radial index n must be >= 0");
}

}  // namespace detail

/// Complex evolution eigenvalue.  The real part is the decay constant
/// (inverse mean lifetime) of the mode, the imaginary part contributes to
/// the rotation phase.
template <typename Scalar = double>
struct ComplexEigenvalue {
  Scalar re = Scalar(0);
  Scalar im = Scalar(0);
};

using ComplexEigenvalued = ComplexEigenvalue<double>;

/// Discrete spectrum of the elliptic model:
///   lambda_{n,nu} = alpha (2n + 1 + |nu|) + gamma - i nu.
template <typename Scalar>
ComplexEigenvalue<Scalar> eigenvalue(const ModeIndex& m, const NhParams<Scalar>& p) {
  detail::require_mode(m, "eigenvalue");
  detail::require_class(p, ModelClass::Elliptic, "eigenvalue");
  const Scalar re = p.alpha * Scalar(2 * m.n + 1 + std::abs(m.nu)) + p.gamma;
  return {re, Scalar(-m.nu)};
}

/// Spectrum of the hyperbolic model: lambda_nu = gamma + i nu sqrt(1 + alpha^2).
/// The decay constant gamma is the only one allowed; it depends neither on a
/// quantum number nor on alpha.
template <typename Scalar>
ComplexEigenvalue<Scalar> hyperbolic_eigenvalue(int nu, const NhParams<Scalar>& p) {
  detail::require_class(p, ModelClass::Hyperbolic, "hyperbolic_eigenvalue");
  return {p.gamma, Scalar(nu) * std::sqrt(Scalar(1) + p.alpha * p.alpha)};
}

/// Mean lifetime tau implied by the constraint alpha (2 E0 + |nu|) tau +
/// gamma tau = 1 between unperturbed energy and lifetime.  A vanishing
/// denominator signals an infinite lifetime and is reported as +infinity
/// rather than an error.
template <typename Scalar>
Scalar lifetime_energy_constraint(Scalar e0, int nu, const NhParams<Scalar>& p) {
  detail::require_class(p, ModelClass::Elliptic, "lifetime_energy_constraint");
  const Scalar denom = p.alpha * (Scalar(2) * e0 + Scalar(std::abs(nu))) + p.gamma;
  if (denom == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
  return Scalar(1) / denom;
}

/// Unperturbed energy at which the mean lifetime peaks:
///   E_c = -(|nu| + gamma/alpha) / 2.
template <typename Scalar>
Scalar resonance_energy(int nu, const NhParams<Scalar>& p) {
  detail::require_class(p, ModelClass::Elliptic, "resonance_energy");
  return Scalar(-0.5) * (Scalar(std::abs(nu)) + p.gamma / p.alpha);
}

/// Candidate zero-decay state.  n_c = -(1 + |nu| + gamma/alpha)/2 is the
/// radial number whose decay constant vanishes; the state exists only when
/// that value lands on a non-negative integer.
template <typename Scalar = double>
struct CriticalState {
  Scalar n_c = Scalar(0);
  Scalar gamma_over_alpha = Scalar(0);
  int nu = 0;
  bool realizable = false;
};

using CriticalStated = CriticalState<double>;

template <typename Scalar>
CriticalState<Scalar> critical_state(int nu, const NhParams<Scalar>& p) {
  detail::require_class(p, ModelClass::Elliptic, "critical_state");
  const Scalar g = p.gamma / p.alpha;
  const Scalar nc = Scalar(-0.5) * (Scalar(1) + Scalar(std::abs(nu)) + g);
  const bool ok = nc >= Scalar(0) && nc == std::round(nc);
  return {nc, g, nu, ok};
}

/// Effective potential of the radial problem rewritten as a stationary
/// Schroedinger equation for a fictitious particle of mass 1/2:
///   U(R) = 4 R^2 + (nu^2 - 1/4) / R^2,  R > 0.
/// With psi = sqrt(R) b_{n,nu}, the eigenvalue -psi'' + U psi = eps psi comes
/// out as eps = 4 (lambda_re - gamma) / alpha = 4 (2n + 1 + |nu|).
template <typename Scalar = double>
auto schrodinger_potential(int nu) {
  const Scalar c = Scalar(nu) * Scalar(nu) - Scalar(0.25);
  return [c](Scalar r) {
    if (!(r > Scalar(0)))
      throw std::invalid_argument("schrodinger_potential: R must be positive");
    return Scalar(4) * r * r + c / (r * r);
  };
}

}  // namespace nhwigner
