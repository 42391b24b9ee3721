#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "nhwigner/lineshape.hpp"
#include "test_util.hpp"

using namespace nhwigner;

TEST_CASE("time signal of decaying modes") {
  auto p = NhParamsd::elliptic(1.0, 0.0);
  auto t00 = time_signal(ModeIndex{0, 0}, p);
  CHECK(std::abs(t00(1.0) - std::complex<double>(std::exp(-1.0), 0.0)) < 1e-15);

  // zero-decay mode: pure phase
  auto pc = NhParamsd::elliptic(1.0, -2.0);
  auto tc = time_signal(ModeIndex{0, 1}, pc);
  for (double t : {0.3, 1.7, 4.0}) CHECK(std::abs(tc(t)) == doctest::Approx(1.0).epsilon(1e-14));

  // (n=0, nu=2) at alpha = 1/2 decays at rate 3/2 while turning twice per
  // unit time
  auto ph = NhParamsd::elliptic(0.5, 0.0);
  auto th = time_signal(ModeIndex{0, 2}, ph);
  CHECK(std::abs(th(std::numbers::pi)) ==
        doctest::Approx(std::exp(-1.5 * std::numbers::pi)).epsilon(1e-12));
  CHECK(std::arg(th(0.25)) == doctest::Approx(0.5).epsilon(1e-12));

  // alpha = 1/3 puts the same mode at unit decay rate
  auto pu = NhParamsd::elliptic(1.0 / 3.0, 0.0);
  auto tu = time_signal(ModeIndex{0, 2}, pu);
  CHECK(std::abs(tu(std::numbers::pi)) ==
        doctest::Approx(std::exp(-std::numbers::pi)).epsilon(1e-12));

  // growing modes are rejected
  auto pg = NhParamsd::elliptic(1.0, -5.0);
  CHECK_THROWS_AS(time_signal(ModeIndex{0, 0}, pg), std::invalid_argument);
}

TEST_CASE("half-line transform closed form") {
  auto p = NhParamsd::elliptic(1.0, 0.0);
  const ModeIndex m{0, 2};
  const auto lam = eigenvalue(m, p);  // rate 3, frequency 2

  // at the line center the transform is purely real and equals tau
  const auto at_peak = half_line_fourier(m, p, 2.0);
  CHECK(at_peak.real() == doctest::Approx(1.0 / lam.re));
  CHECK(at_peak.imag() == doctest::Approx(0.0));

  // |F|^2 halves at one hwhm off center
  const double peak2 = std::norm(at_peak);
  CHECK(std::norm(half_line_fourier(m, p, 2.0 + lam.re)) == doctest::Approx(0.5 * peak2));
  CHECK(std::norm(half_line_fourier(m, p, 2.0 - lam.re)) == doctest::Approx(0.5 * peak2));

  // zero decay has no half-line transform
  auto pc = NhParamsd::elliptic(1.0, -2.0);
  CHECK_THROWS_AS(half_line_fourier(ModeIndex{0, 1}, pc, 0.0), std::invalid_argument);
}

TEST_CASE("quadrature transform matches the closed form to 1e-6") {
  struct Case {
    ModeIndex m;
    NhParamsd p;
  };
  // decay constants 1/2, 1 and 3
  const Case cases[] = {{{0, 0}, NhParamsd::elliptic(0.5, 0.0)},
                        {{0, 0}, NhParamsd::elliptic(1.0, 0.0)},
                        {{1, 0}, NhParamsd::elliptic(1.0, 0.0)}};
  for (const auto& c : cases) {
    const auto lam = eigenvalue(c.m, c.p);
    const double loc = c.m.nu;
    double worst = 0.0;
    for (int s = 0; s <= 200; ++s) {
      const double e = loc - 5.0 * lam.re + 10.0 * lam.re * s / 200.0;
      const auto closed = half_line_fourier(c.m, c.p, e);
      const auto numeric = half_line_fourier_numeric(c.m, c.p, e);
      worst = std::max(worst, std::abs(numeric - closed) / std::abs(closed));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("Lorentzian shape and normalization") {
  auto p = NhParamsd::elliptic(1.0, 0.0);
  auto f = energy_distribution(ModeIndex{0, 0}, p);
  CHECK(f.hwhm == doctest::Approx(1.0));
  CHECK(f.location == doctest::Approx(0.0));
  CHECK(f.peak_value() == doctest::Approx(1.0 / std::numbers::pi));
  CHECK(f(f.location) == doctest::Approx(f.peak_value()));

  // hwhm property, exact in closed form
  CHECK(f(f.location + f.hwhm) == doctest::Approx(0.5 * f.peak_value()).epsilon(1e-12));
  CHECK(f(f.location - f.hwhm) == doctest::Approx(0.5 * f.peak_value()).epsilon(1e-12));

  // adaptive quadrature over +-1000 hwhm captures essentially all mass
  const double mass = testutil::adaptive_simpson(
      [&](double e) { return f(e); }, f.location - 1000.0, f.location + 1000.0, 1e-9);
  CHECK(mass > 0.999);
  CHECK(mass <= 1.0);

  auto f2 = energy_distribution(ModeIndex{1, 0}, NhParamsd::elliptic(0.5, 0.0));
  CHECK(f2.hwhm == doctest::Approx(1.5));
  CHECK(f2.location == doctest::Approx(0.0));

  CHECK_THROWS_AS(energy_distribution(ModeIndex{0, 1}, NhParamsd::elliptic(1.0, -2.0)),
                  std::invalid_argument);
}

TEST_CASE("narrow lines concentrate their mass") {
  const double eps = 0.1;
  double previous = 0.0;
  for (double ups : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    Lorentziand f(ups, 2.0);
    const double mass = f.mass(2.0 - eps, 2.0 + eps);
    CHECK(mass >= previous);
    previous = mass;
  }
  CHECK(previous > 0.99999);
}

TEST_CASE("hyperbolic distributions translate with nu") {
  auto p = NhParamsd::hyperbolic(1.0, 1.0);
  auto f1 = hyperbolic_energy_distribution(1, p);
  auto f2 = hyperbolic_energy_distribution(2, p);
  CHECK(f1.hwhm == doctest::Approx(f2.hwhm));
  const double shift = std::sqrt(2.0);
  CHECK(f2.location - f1.location == doctest::Approx(shift).epsilon(1e-14));
  double worst = 0.0;
  for (int s = 0; s <= 1000; ++s) {
    const double e = f1.location - 5.0 + 10.0 * s / 1000.0;
    worst = std::max(worst, std::abs(f1(e) - f2(e + shift)));
  }
  CHECK(worst < 1e-12);

  auto p0 = NhParamsd::hyperbolic(0.5, 0.5);
  auto f0 = hyperbolic_energy_distribution(0, p0);
  CHECK(f0.hwhm == doctest::Approx(0.5));
  CHECK(f0.location == doctest::Approx(0.0));

  // alpha -> 0 recovers the bare oscillator spacing
  auto fl = hyperbolic_energy_distribution(3, NhParamsd::hyperbolic(1e-8, 1.0));
  CHECK(fl.location == doctest::Approx(3.0).epsilon(1e-12));

  CHECK_THROWS_AS(hyperbolic_energy_distribution(1, NhParamsd::hyperbolic(1.0, 0.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(hyperbolic_energy_distribution(1, NhParamsd::hyperbolic(1.0, -0.5)),
                  std::invalid_argument);
}

TEST_CASE("elliptic widths walk in steps of 2 alpha, hyperbolic widths do not move") {
  const double alpha = 0.4;
  auto pe = NhParamsd::elliptic(alpha, 0.1);
  for (int n = 1; n <= 4; ++n) {
    const double step = energy_distribution(ModeIndex{n, 1}, pe).hwhm -
                        energy_distribution(ModeIndex{n - 1, 1}, pe).hwhm;
    CHECK(step == doctest::Approx(2 * alpha).epsilon(1e-14));
  }
  auto ph = NhParamsd::hyperbolic(alpha, 0.8);
  for (int nu = 0; nu <= 5; ++nu)
    CHECK(hyperbolic_energy_distribution(nu, ph).hwhm == doctest::Approx(0.8));
}

TEST_CASE("Lorentzian validation") {
  CHECK_THROWS_AS(Lorentziand(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Lorentziand(-1.0, 0.0), std::invalid_argument);
}
