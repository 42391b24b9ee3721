#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nhwigner/projection.hpp"
#include "nhwigner/quadrature.hpp"
#include "test_util.hpp"

using namespace nhwigner;

TEST_CASE("single basis member projects onto itself") {
  auto w = sample_basis<double>(6.0, 257L, ModeIndex{2, 1}, Parity::Plus);
  auto res = project(w, 4, 4);
  for (const auto& [k, v] : res.coeffs.c) {
    const double expect = (k.n == 2 && k.nu == 1 && k.parity == Parity::Plus) ? 1.0 : 0.0;
    CHECK(std::abs(v - expect) < 1e-6);
  }
  CHECK(res.residual < 1e-8);
  CHECK(res.norm_check < 1e-8);
}

TEST_CASE("projection is linear") {
  auto a = sample_basis<double>(6.0, 257L, ModeIndex{0, 0}, Parity::Plus);
  auto b = sample_basis<double>(6.0, 257L, ModeIndex{1, 2}, Parity::Minus);
  auto w = make_grid(6.0, 257L);
  w.values = 0.3 * a.values + 0.7 * b.values;
  auto res = project(w, 3, 3);
  CHECK(res.coeffs.get({0, 0, Parity::Plus}) == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(res.coeffs.get({1, 2, Parity::Minus}) == doctest::Approx(0.7).epsilon(1e-6));
  CHECK(std::abs(res.coeffs.get({1, 1, Parity::Plus})) < 1e-6);
  CHECK(res.coeffs.has_trace_content(1e-6));
}

TEST_CASE("no sin-type nu = 0 entries are ever produced or accepted") {
  auto w = sample_basis<double>(6.0, 129L, ModeIndex{0, 0}, Parity::Plus);
  auto res = project(w, 2, 2);
  for (const auto& [k, v] : res.coeffs.c)
    CHECK((k.nu > 0 || k.parity == Parity::Plus));
  SpectralCoeffsd c;
  CHECK_THROWS_AS(c.set({1, 0, Parity::Minus}, 1.0), std::invalid_argument);
}

TEST_CASE("shifted Gaussian reconstructs below 1e-3 at truncation 12") {
  auto w = make_grid(6.0, 257L);
  sample_cartesian(w, [](double q, double p) {
    return std::exp(-((q - 1.0) * (q - 1.0) + p * p)) / std::numbers::pi;
  });
  auto res = project(w, 12, 12);
  CHECK(res.residual < 1e-3);
  CHECK(res.coeffs.has_trace_content(1e-6));
}

TEST_CASE("round-trip: project after reconstructing random coefficients") {
  auto p = NhParamsd::elliptic(1.0, 0.0);
  SpectralCoeffsd c;
  c.n_max = 4;
  c.nu_max = 4;
  for (int n = 0; n <= 4; ++n)
    for (int nu = 0; nu <= 4; ++nu)
      for (Parity parity : {Parity::Plus, Parity::Minus}) {
        if (nu == 0 && parity == Parity::Minus) continue;
        c.set({n, nu, parity}, testutil::uniform(-1.0, 1.0));
      }
  auto w = evolve_analytic(c, p, 0.0, 6.0, 257L);
  auto res = project(w, 4, 4);
  double worst = 0.0;
  for (const auto& [k, v] : c.c) worst = std::max(worst, std::abs(res.coeffs.get(k) - v));
  CHECK(worst < 1e-8);
}

TEST_CASE("analytic evolution: decay, rotation and identity") {
  auto p = NhParamsd::elliptic(1.0, 0.0);

  SpectralCoeffsd ground;
  ground.set({0, 0, Parity::Plus}, 1.0);
  auto g0 = evolve_analytic(ground, p, 0.0, 6.0, 129L);
  auto g1 = evolve_analytic(ground, p, std::log(2.0), 6.0, 129L);
  CHECK((g1.values - 0.5 * g0.values).abs().maxCoeff() < 1e-12);
  CHECK(g1.time == doctest::Approx(std::log(2.0)));

  // gamma = -2 alpha puts (0,1) exactly at zero decay; a half turn flips the
  // cosine pattern
  auto pc = NhParamsd::elliptic(1.0, -2.0);
  SpectralCoeffsd c01;
  c01.set({0, 1, Parity::Plus}, 1.0);
  auto h0 = evolve_analytic(c01, pc, 0.0, 6.0, 129L);
  auto hpi = evolve_analytic(c01, pc, std::numbers::pi, 6.0, 129L);
  CHECK((hpi.values + h0.values).abs().maxCoeff() < 1e-12);

  // t = 0 reproduces the reconstruction exactly
  SpectralCoeffsd mix;
  mix.set({0, 0, Parity::Plus}, 0.4);
  mix.set({2, 3, Parity::Minus}, -1.1);
  auto a = evolve_analytic(mix, p, 0.0, 6.0, 65L);
  auto b = reconstruct_initial(mix, 6.0, 65L);
  CHECK((a.values - b.values).abs().maxCoeff() == 0.0);
}

TEST_CASE("projection rejects bad truncation bounds") {
  auto w = make_grid(6.0, 64L);
  CHECK_THROWS_AS(project(w, -1, 2), std::invalid_argument);
  CHECK_THROWS_AS(project(w, 2, -1), std::invalid_argument);
}
