#pragma once

#include <stdexcept>
#include <type_traits>

namespace nhwigner {

/// Generalized Laguerre polynomial L_n^a(x) for integer n >= 0, a >= 0.
///
/// Evaluated with the standard three-term recurrence
///   (k+1) L_{k+1}^a = (2k + 1 + a - x) L_k^a - (k + a) L_{k-1}^a,
/// which is forward-stable for the degrees and arguments used by the
/// phase-space basis (n up to a few tens, x up to ~2 L^2).
template <typename Scalar>
Scalar laguerre(int n, int a, Scalar x) {
  static_assert(std::is_floating_point_v<Scalar>);
  if (n < 0 || a < 0)
    throw std::invalid_argument("laguerre: degree and order must be non-negative");
  Scalar prev = Scalar(1);          // L_0
  if (n == 0) return prev;
  Scalar curr = Scalar(1 + a) - x;  // L_1
  for (int k = 1; k < n; ++k) {
    const Scalar next =
        ((Scalar(2 * k + 1 + a) - x) * curr - Scalar(k + a) * prev) / Scalar(k + 1);
    prev = curr;
    curr = next;
  }
  return curr;
}

}  // namespace nhwigner
