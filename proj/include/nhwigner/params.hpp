#pragma once

#include <cmath>
#include <stdexcept>

namespace nhwigner {

/// Symmetry class of the quadratic decay operator, decided by the sign
/// relation between its two quadrature coefficients.
enum class ModelClass { Elliptic, Hyperbolic, General };

/// Dimensionless parameters of the dissipative (non-Hermitian) oscillator.
///
/// The conservative part is the unit harmonic Hamiltonian
/// H = (p^2 + q^2)/2 and the decay operator reads
/// Gamma = (alpha/2) p^2 + (beta/2) q^2 + gamma/2.  Everything is measured
/// in oscillator units, so no dimensionful scales appear at runtime.
/// alpha must be positive; beta may take either sign (beta = -alpha selects
/// the hyperbolic model); gamma is any finite real offset.
template <typename Scalar = double>
struct NhParams {
  Scalar alpha;
  Scalar beta;
  Scalar gamma;

  NhParams(Scalar alpha_, Scalar beta_, Scalar gamma_)
      : alpha(alpha_), beta(beta_), gamma(gamma_) {
    if (!(std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(gamma)))
      throw std::invalid_argument("NhParams: parameters must be finite");
    if (!(alpha > Scalar(0)))
      throw std::invalid_argument("NhParams: alpha must be positive");
  }

  static NhParams elliptic(Scalar alpha, Scalar gamma) {
    return NhParams(alpha, alpha, gamma);
  }
  static NhParams hyperbolic(Scalar alpha, Scalar gamma) {
    return NhParams(alpha, -alpha, gamma);
  }

  /// Classification compares the stored values exactly: callers who want the
  /// elliptic model are expected to set beta = alpha literally, and the
  /// factory functions above do exactly that.  No epsilon window is applied.
  ModelClass classification() const {
    if (beta == alpha) return ModelClass::Elliptic;
    if (beta == -alpha) return ModelClass::Hyperbolic;
    return ModelClass::General;
  }

  Scalar gamma_over_alpha() const { return gamma / alpha; }
};

using NhParamsd = NhParams<double>;

namespace detail {

template <typename Scalar>
void require_class(const NhParams<Scalar>& p, ModelClass want, const char* who) {
  if (p.classification() != want) {
    throw std::invalid_argument(std::string(who) +
        (want == ModelClass::Elliptic ? ": requires elliptic parameters (beta == alpha)"
                                      : ": requires hyperbolic parameters (beta == -alpha)"));
  }
}

}  // namespace detail

}  // namespace nhwigner
