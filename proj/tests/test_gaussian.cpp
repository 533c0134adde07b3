#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "support/quadrature.hpp"
#include "wigsim/gaussian.hpp"

using namespace wigsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using testsupport::trapezoid2d;
using testsupport::trapezoid4d;

namespace {

double wigner_moment2(const SingleModeGaussian& g, bool imag_part) {
  return trapezoid2d(
      [&](double re, double im) {
        const double q = imag_part ? im : re;
        return q * q * g.evaluate({re, im});
      },
      -7.0, 7.0, 350);
}

double wigner_norm(const SingleModeGaussian& g) {
  return trapezoid2d([&](double re, double im) { return g.evaluate({re, im}); },
                     -5.0, 5.0, 250);
}

}  // namespace

TEST_CASE("vacuum Wigner function", "[gaussian]") {
  const auto vac = vacuum_state();
  CHECK(vac.var_re == 0.25);
  CHECK(vac.var_im == 0.25);
  CHECK(vac.kind() == StateKind::Pure);
  // peak 2/pi, gaussian falloff exp(-2|alpha|^2)
  CHECK_THAT(vac.evaluate({0, 0}), WithinAbs(0.6366197723675813, 1e-15));
  CHECK_THAT(vac.evaluate({0.3, 0.0}), WithinAbs(0.5317495318540655, 1e-15));
  CHECK_THAT(wigner_norm(vac), WithinAbs(1.0, 1e-10));
}

TEST_CASE("coherent state is a displaced vacuum", "[gaussian]") {
  const ComplexAmp a{1.2, -0.7};
  const auto coh = coherent_state(a);
  CHECK(coh.kind() == StateKind::Pure);
  CHECK_THAT(coh.evaluate(a), WithinAbs(2.0 / std::numbers::pi, 1e-15));
  // same shape as the vacuum, shifted
  const auto vac = vacuum_state();
  for (double re : {-0.5, 0.0, 0.8})
    for (double im : {-0.3, 0.4}) {
      const ComplexAmp d{re, im};
      CHECK_THAT(coh.evaluate(a + d), WithinRel(vac.evaluate(d), 1e-12));
    }
}

TEST_CASE("squeezed state quadrature variances", "[gaussian]") {
  const double s = 0.3;
  const auto sq = squeezed_state({0.4, 0.1}, s);
  CHECK(sq.kind() == StateKind::Pure);
  CHECK_THAT(sq.var_re, WithinAbs(std::exp(-2.0 * s) / 4.0, 1e-16));
  CHECK_THAT(sq.var_im, WithinAbs(std::exp(2.0 * s) / 4.0, 1e-16));

  // independent quadrature oracle: second central moments of W
  const auto centered = squeezed_state({0.0, 0.0}, s);
  CHECK_THAT(wigner_norm(centered), WithinAbs(1.0, 1e-10));
  CHECK_THAT(wigner_moment2(centered, false),
             WithinAbs(0.13720290902350661, 1e-10));
  CHECK_THAT(wigner_moment2(centered, true),
             WithinAbs(0.45552970009762724, 1e-10));
}

TEST_CASE("chaotic state broadens with photon number", "[gaussian]") {
  const auto th = chaotic_state(1.0);
  CHECK(th.kind() == StateKind::Mixed);
  CHECK(th.var_re == 0.75);
  CHECK_THAT(th.evaluate({0, 0}), WithinAbs(0.21220659078919378, 1e-15));
  CHECK_THAT(wigner_moment2(th, false), WithinAbs(0.75, 1e-9));
  // n = 0 degenerates to the vacuum
  const auto zero = chaotic_state(0.0);
  CHECK(zero.var_re == 0.25);
  CHECK(zero.kind() == StateKind::Pure);
  CHECK_THROWS_AS(chaotic_state(-0.1), std::invalid_argument);
}

TEST_CASE("single-mode kind classification", "[gaussian]") {
  CHECK(single_mode_kind(2.0, 2.0) == StateKind::Pure);
  CHECK(single_mode_kind(4.0, 1.0) == StateKind::Pure);
  CHECK(single_mode_kind(1.0, 1.0) == StateKind::Mixed);
  CHECK(single_mode_kind(3.0, 2.0) == StateKind::Invalid);
  // tolerance band on the product
  CHECK(single_mode_kind(2.0, 2.0 + 4e-10) == StateKind::Pure);
  CHECK(single_mode_kind(2.0, 2.0 + 1e-9) == StateKind::Invalid);
  CHECK_THROWS_AS(single_mode_kind(0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(single_mode_kind(2.0, -1.0), std::invalid_argument);
}

TEST_CASE("signal moments from the P-exponent", "[gaussian]") {
  const auto m = two_mode_signal(2.0, 1.0);
  CHECK_THAT(m.mean_photons, WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(m.correlation, WithinAbs(2.0 / 7.0, 1e-15));
  CHECK_THROWS_AS(two_mode_signal(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(two_mode_signal(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("two-mode classification bands", "[gaussian]") {
  CHECK(classify_two_mode(1.0, 0.5) == TwoModeClass::Classical);
  CHECK(classify_two_mode(1.0, -0.5) == TwoModeClass::Classical);
  CHECK(classify_two_mode(1.0, 2.0 / 3.0) == TwoModeClass::ClassicalBoundary);
  CHECK(classify_two_mode(1.0, -2.0 / 3.0) == TwoModeClass::ClassicalBoundary);
  CHECK(classify_two_mode(1.0, 0.8) == TwoModeClass::Entangled);
  CHECK(classify_two_mode(1.0, 1.0) == TwoModeClass::NotReal);
  CHECK(classify_two_mode(1.0, 1.5) == TwoModeClass::NotReal);
  CHECK(classify_two_mode(0.0, 0.0) == TwoModeClass::ClassicalBoundary);
  CHECK(classify_two_mode(0.0, 0.5) == TwoModeClass::Entangled);
  CHECK_THROWS_AS(classify_two_mode(-1.0, 0.0), std::invalid_argument);

  // band edges measured from the exact bound 2n/(2n+1)
  const double bound = classical_bound(1.0);
  CHECK(classify_two_mode(1.0, bound - 5e-13) == TwoModeClass::ClassicalBoundary);
  CHECK(classify_two_mode(1.0, bound - 1e-11) == TwoModeClass::Classical);
  CHECK(classify_two_mode(1.0, bound + 1e-11) == TwoModeClass::Entangled);
}

TEST_CASE("two-mode Wigner normalization and factorization", "[gaussian]") {
  const TwoModeWigner st(0.3, 0.5);
  CHECK_THAT(trapezoid4d(
                 [&](double ar, double ai, double br, double bi) {
                   return st.evaluate({ar, ai}, {br, bi});
                 },
                 -4.0, 4.0, 40),
             WithinAbs(1.0, 1e-4));

  // polarized density is the product of per-component scalar densities
  const TwoModeWigner pol(0.3, 0.5, true);
  const ComplexAmp ax{0.2, -0.1}, ay{-0.4, 0.3}, bx{0.1, 0.5}, by{0.0, -0.2};
  CHECK_THAT(pol.evaluate(ax, ay, bx, by),
             WithinRel(st.evaluate(ax, bx) * st.evaluate(ay, by), 1e-12));
  CHECK_THROWS_AS(pol.evaluate(ax, bx), std::logic_error);
  CHECK_THROWS_AS(st.evaluate(ax, ay, bx, by), std::logic_error);

  CHECK_THROWS_AS(TwoModeWigner(0.3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TwoModeWigner(-0.3, 0.0), std::invalid_argument);
}

TEST_CASE("exponent coefficient and covariances", "[gaussian]") {
  const TwoModeWigner st(2.0 / 3.0, 2.0 / 7.0);
  CHECK_THAT(st.exponent_coeff(), WithinAbs(14.0 / 15.0, 1e-15));
  CHECK_THAT(st.quad_variance(), WithinAbs(7.0 / 12.0, 1e-15));
  CHECK_THAT(st.cross_covariance(), WithinAbs((2.0 / 7.0) * (7.0 / 12.0), 1e-15));
}

TEST_CASE("marginal of the pair state is chaotic light", "[gaussian]") {
  const TwoModeWigner st(0.7, 0.4);
  const auto marg = marginal_mode(st);
  CHECK(marg.var_re == chaotic_state(0.7).var_re);

  // quadrature oracle: integrate beta out of the joint density
  for (double ar : {0.0, 0.6})
    for (double ai : {-0.4, 0.2}) {
      const double got = trapezoid2d(
          [&](double br, double bi) {
            return st.evaluate({ar, ai}, {br, bi});
          },
          -6.0, 6.0, 240);
      CHECK_THAT(got, WithinRel(marg.evaluate({ar, ai}), 1e-6));
    }
}

TEST_CASE("vacuum convolution of single-mode P-functions", "[gaussian]") {
  const auto c = convolve_vacuum(PGaussianSingle{DeltaP{{0.5, -0.25}}});
  CHECK(c.center == ComplexAmp{0.5, -0.25});
  CHECK(c.var_re == 0.25);

  const double n = 1.7;
  const auto th = convolve_vacuum(PGaussianSingle{ChaoticP{n}});
  // variance addition: n/2 per quadrature from the signal plus 1/4 zeropoint
  CHECK_THAT(th.var_re, WithinAbs(n / 2.0 + 0.25, 1e-15));
  CHECK_THAT(th.var_im, WithinAbs(n / 2.0 + 0.25, 1e-15));
}

TEST_CASE("vacuum convolution of the two-mode signal", "[gaussian]") {
  const TwoModeSignalP p(2.0, 2.0, 1.0);
  const auto st = convolve_vacuum(p);
  CHECK_THAT(st.mean_photons, WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(st.correlation, WithinAbs(2.0 / 7.0, 1e-15));
  CHECK_FALSE(st.polarized);
  CHECK(convolve_vacuum(p, true).polarized);

  CHECK_THROWS_AS(convolve_vacuum(TwoModeSignalP(2.0, 1.0, 0.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(TwoModeSignalP(1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TwoModeSignalP(-1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("signal chart round trip", "[gaussian]") {
  const auto p = signal_from_nx(2.0 / 3.0, 2.0 / 7.0);
  CHECK_THAT(p.a, WithinAbs(2.0, 1e-12));
  CHECK_THAT(p.c, WithinAbs(1.0, 1e-12));

  for (double n : {0.2, 1.0, 3.5})
    for (double frac : {-0.9, -0.3, 0.0, 0.6}) {
      const double x = frac * classical_bound(n);
      const auto sig = signal_from_nx(n, x);
      const auto m = two_mode_signal(sig.a, sig.c);
      CHECK_THAT(m.mean_photons, WithinAbs(n, 1e-10));
      CHECK_THAT(m.correlation, WithinAbs(x, 1e-10));
    }

  // only strictly classical states have a signal P-function
  CHECK_THROWS_AS(signal_from_nx(1.0, 0.8), std::invalid_argument);
  CHECK_THROWS_AS(signal_from_nx(1.0, 2.0 / 3.0), std::invalid_argument);
  CHECK_THROWS_AS(signal_from_nx(0.0, 0.0), std::invalid_argument);
}
