#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "nhwigner/params.hpp"
#include "nhwigner/spectrum.hpp"

namespace nhwigner {

/// Normalized Cauchy-Lorentz (Breit-Wigner) energy density with half width
/// at half maximum hwhm and peak at location:
///   f(E) = (1/pi) hwhm / ((E - location)^2 + hwhm^2).
template <typename Scalar = double>
struct Lorentzian {
  Scalar hwhm;
  Scalar location;

  Lorentzian(Scalar hwhm_, Scalar location_) : hwhm(hwhm_), location(location_) {
    if (!(hwhm > Scalar(0)) || !std::isfinite(hwhm) || !std::isfinite(location))
      throw std::invalid_argument("Lorentzian: hwhm must be positive and finite");
  }

  Scalar operator()(Scalar e) const {
    const Scalar d = e - location;
    return std::numbers::inv_pi_v<Scalar> * hwhm / (d * d + hwhm * hwhm);
  }

  Scalar peak_value() const { return std::numbers::inv_pi_v<Scalar> / hwhm; }

  /// Probability mass on [a, b] from the closed-form antiderivative.
  Scalar mass(Scalar a, Scalar b) const {
    return (std::atan((b - location) / hwhm) - std::atan((a - location) / hwhm)) *
           std::numbers::inv_pi_v<Scalar>;
  }
};

using Lorentziand = Lorentzian<double>;

// Sign convention used throughout this header: the separable time factor of
// an elliptic mode is T(t) = exp(-t/tau) exp(+i nu t), the half-line
// transform uses the kernel exp(-i E t), and therefore |F|^2 peaks at
// E = +nu (the mode's phase frequency).  The hyperbolic distribution with
// its location nu sqrt(1 + alpha^2) reduces to the same convention as
// alpha -> 0.

/// Separable time factor T_{n,nu}(t) = exp(-t/tau) exp(i nu t) of an
/// elliptic mode.  Modes with a negative decay constant are rejected, since
/// their half-line spectral integrals diverge.
template <typename Scalar>
auto time_signal(const ModeIndex& m, const NhParams<Scalar>& p) {
  const auto lambda = eigenvalue(m, p);  // validates mode and parameters
  if (lambda.re < Scalar(0))
    throw std::invalid_argument("time_signal: negative decay constant (growing mode)");
  const Scalar rate = lambda.re;
  const Scalar freq = Scalar(m.nu);
  return [rate, freq](Scalar t) {
    return std::exp(std::complex<Scalar>(-rate * t, freq * t));
  };
}

/// Closed-form half-line transform F(E) = int_0^inf e^{-iEt} T(t) dt
///   = [tau^{-1} + i (E - nu)]^{-1},
/// defined for strictly decaying modes.
template <typename Scalar>
std::complex<Scalar> half_line_fourier(const ModeIndex& m, const NhParams<Scalar>& p, Scalar e) {
  const auto lambda = eigenvalue(m, p);
  if (!(lambda.re > Scalar(0)))
    throw std::invalid_argument(
        "half_line_fourier: needs a positive decay constant; at zero decay the line exists "
        "only as a delta distribution");
  return Scalar(1) / std::complex<Scalar>(lambda.re, e - Scalar(m.nu));
}

/// Quadrature version of the same transform, truncated at t_max (default
/// 20 tau, whose remainder is ~ e^{-20} of the integral) and integrated with
/// composite Simpson panels.  Used to cross-validate the closed form.
template <typename Scalar>
std::complex<Scalar> half_line_fourier_numeric(const ModeIndex& m, const NhParams<Scalar>& p,
                                               Scalar e, Scalar t_max = Scalar(0),
                                               int panels = 8192) {
  const auto lambda = eigenvalue(m, p);
  if (!(lambda.re > Scalar(0)))
    throw std::invalid_argument("half_line_fourier_numeric: needs a positive decay constant");
  if (t_max <= Scalar(0)) t_max = Scalar(20) / lambda.re;
  if (panels < 2) throw std::invalid_argument("half_line_fourier_numeric: too few panels");
  if (panels % 2 != 0) ++panels;
  const Scalar freq = Scalar(m.nu);
  auto f = [&](Scalar t) {
    return std::exp(std::complex<Scalar>(-lambda.re * t, (freq - e) * t));
  };
  const Scalar h = t_max / Scalar(panels);
  std::complex<Scalar> acc = f(Scalar(0)) + f(t_max);
  for (int k = 1; k < panels; ++k)
    acc += Scalar(k % 2 == 0 ? 2 : 4) * f(Scalar(k) * h);
  return acc * (h / Scalar(3));
}

/// Breit-Wigner energy density of a decaying elliptic mode: hwhm equals the
/// decay constant, the peak sits at the mode's phase frequency.
template <typename Scalar>
Lorentzian<Scalar> energy_distribution(const ModeIndex& m, const NhParams<Scalar>& p) {
  const auto lambda = eigenvalue(m, p);
  if (!(lambda.re > Scalar(0)))
    throw std::invalid_argument(
        "energy_distribution: needs a positive decay constant; the zero-decay limit is a "
        "delta distribution");
  return Lorentzian<Scalar>(lambda.re, Scalar(m.nu));
}

/// Breit-Wigner density of the hyperbolic model: hwhm = gamma independent of
/// the state, location nu sqrt(1 + alpha^2).  Changing nu translates the
/// line along the energy axis without changing its shape.
template <typename Scalar>
Lorentzian<Scalar> hyperbolic_energy_distribution(int nu, const NhParams<Scalar>& p) {
  detail::require_class(p, ModelClass::Hyperbolic, "hyperbolic_energy_distribution");
  if (!(p.gamma > Scalar(0)))
    throw std::invalid_argument("hyperbolic_energy_distribution: needs gamma > 0");
  return Lorentzian<Scalar>(p.gamma, Scalar(nu) * std::sqrt(Scalar(1) + p.alpha * p.alpha));
}

}  // namespace nhwigner
