#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "wigsim/field.hpp"

using namespace wigsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Analytic subtracted rate of independent single-mode states: propagate each
// mode's quadrature moments through Re[alpha e^{i theta}] by hand.
double expected_rate(std::span<const ModeSpec> modes,
                     std::span<const SingleModeGaussian> states, Vec3 r,
                     double t, const Units& units, double cross_cov = 0.0,
                     double cross_x = 0.0) {
  Vec3 mean_field{};
  double var_term = 0.0;
  std::vector<double> theta(modes.size()), coup(modes.size());
  for (std::size_t m = 0; m < modes.size(); ++m) {
    theta[m] = dot(modes[m].wavevector, r) - modes[m].omega * t;
    coup[m] = mode_coupling(modes[m], units);
    const SingleModeGaussian g = m < states.size() ? states[m] : vacuum_state();
    const double cth = std::cos(theta[m]), sth = std::sin(theta[m]);
    mean_field = mean_field + (coup[m] * (cth * g.center.real() -
                                          sth * g.center.imag())) *
                                  modes[m].polarization;
    var_term += coup[m] * coup[m] *
                (cth * cth * g.var_re + sth * sth * g.var_im - 0.25);
  }
  // optional correlated pair term between modes 0 and 1
  if (cross_cov != 0.0 && modes.size() >= 2) {
    const double c01 = std::cos(theta[0]) * std::cos(theta[1]) +
                       std::sin(theta[0]) * std::sin(theta[1]);
    var_term += 2.0 * coup[0] * coup[1] *
                dot(modes[0].polarization, modes[1].polarization) * cross_cov *
                cross_x * c01;
  }
  return units.c * units.eps0 * (dot(mean_field, mean_field) + var_term);
}

}  // namespace

TEST_CASE("mode construction", "[field]") {
  Units u;
  u.c = 2.0;
  const auto m = make_mode({0, 0, 3}, {2, 0, 0}, u);
  CHECK(m.omega == 6.0);
  CHECK(m.polarization.x == 1.0);  // normalized
  CHECK_THROWS_AS(make_mode({0, 0, 0}, {1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_mode({0, 0, 1}, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_mode({0, 0, 1}, {0, 0.1, 1}), std::invalid_argument);
}

TEST_CASE("plane-wave synthesis and intensity", "[field]") {
  const Units u;
  const ModeSpec m1 = make_mode({0, 0, 1}, {1, 0, 0}, u);
  const ModeSpec m2 = make_mode({0, 1, 0}, {0, 0, 1}, u);
  const std::vector<ModeSpec> modes{m1, m2};
  const std::vector<ComplexAmp> amps{{0.8, -0.2}, {0.3, 0.5}};
  const Vec3 r{0.2, -0.1, 0.4};
  const double t = 1.3;

  const auto both = field_at(modes, amps, r, t, u);
  const auto only1 = field_at({&m1, 1}, {&amps[0], 1}, r, t, u);
  const auto only2 = field_at({&m2, 1}, {&amps[1], 1}, r, t, u);
  // orthogonal polarizations: intensities add
  CHECK_THAT(both.intensity, WithinRel(only1.intensity + only2.intensity, 1e-12));

  // hand evaluation of one mode
  const double phase = dot(m1.wavevector, r) - m1.omega * t;
  const double want = mode_coupling(m1, u) *
                      (amps[0].real() * std::cos(phase) -
                       amps[0].imag() * std::sin(phase));
  CHECK_THAT(only1.e_field.x, WithinRel(want, 1e-13));
  CHECK(only1.e_field.y == 0.0);

  CHECK_THROWS_AS(field_at(modes, {&amps[0], 1}, r, t, u),
                  std::invalid_argument);
}

TEST_CASE("vacuum intensity of a mode set", "[field]") {
  const Units u;
  const std::vector<ModeSpec> modes{make_mode({0, 0, 1}, {1, 0, 0}, u),
                                    make_mode({0, 2, 0}, {1, 0, 0}, u)};
  // couplings^2 are 2 w: (2*1 + 2*2)/4 = 1.5
  CHECK_THAT(vacuum_intensity(modes, u), WithinAbs(1.5, 1e-15));

  Units big = u;
  big.box_side = 2.0;  // volume 8
  CHECK_THAT(vacuum_intensity(modes, big), WithinAbs(1.5 / 8.0, 1e-15));
}

TEST_CASE("point detector sees zero rate in the vacuum", "[field]") {
  const Units u;
  const std::vector<ModeSpec> modes{make_mode({0, 0, 1}, {1, 0, 0}, u),
                                    make_mode({0, 1, 0}, {0, 0, 1}, u),
                                    make_mode({1, 0, 0}, {0, 1, 0}, u)};
  const auto est = point_detector_rate(modes, std::span<const SingleModeGaussian>{},
                                       {0.3, 0.1, -0.2}, 0.7, 50000, 21, u);
  CHECK(est.std_error > 0.0);
  CHECK_THAT(est.mean, WithinAbs(0.0, 4.0 * est.std_error));
}

TEST_CASE("detector rate of occupied modes matches moment propagation",
          "[field]") {
  const Units u;
  const std::vector<ModeSpec> modes{make_mode({0, 0, 1}, {1, 0, 0}, u),
                                    make_mode({0, 0.5, 0}, {1, 0, 0}, u)};
  const Vec3 r{0.4, 0.2, 1.1};
  const double t = 0.3;

  SECTION("chaotic mode, coupling^2 = 2") {
    const double n = 0.8;
    const std::vector<SingleModeGaussian> st{chaotic_state(n)};
    const auto est = point_detector_rate(modes, st, r, t, 200000, 3, u, 2);
    CHECK_THAT(est.mean, WithinAbs(n, 4.0 * est.std_error));  // c^2 n / 2 = n
    CHECK_THAT(expected_rate(modes, st, r, t, u), WithinRel(n, 1e-12));
  }

  SECTION("coherent plus squeezed") {
    const std::vector<SingleModeGaussian> st{coherent_state({0.9, -0.4}),
                                             squeezed_state({0, 0}, 0.35)};
    const auto est = point_detector_rate(modes, st, r, t, 400000, 9, u, 4);
    CHECK_THAT(est.mean,
               WithinAbs(expected_rate(modes, st, r, t, u), 4.0 * est.std_error));
  }
}

TEST_CASE("pair state produces spatial fringes", "[field]") {
  const Units u;
  const std::vector<ModeSpec> modes{make_mode({0, 0, 1.0}, {1, 0, 0}, u),
                                    make_mode({0, 0, 1.2}, {1, 0, 0}, u)};
  const TwoModeWigner pair(0.6, 0.7);
  const std::vector<SingleModeGaussian> marginals{chaotic_state(0.6),
                                                  chaotic_state(0.6)};
  const double t = 0.0;
  // fringe maximum at z = 0, minimum half a beat period later
  for (double z : {0.0, std::numbers::pi / 0.2}) {
    const Vec3 r{0, 0, z};
    const auto est = point_detector_rate(modes, pair, r, t, 300000, 12, u, 2);
    const double want = expected_rate(modes, marginals, r, t, u,
                                      pair.quad_variance(), pair.correlation);
    CHECK_THAT(est.mean, WithinAbs(want, 4.0 * est.std_error));
  }
  const double peak = expected_rate(modes, marginals, {0, 0, 0}, t, u,
                                    pair.quad_variance(), pair.correlation);
  const double dip =
      expected_rate(modes, marginals, {0, 0, std::numbers::pi / 0.2}, t, u,
                    pair.quad_variance(), pair.correlation);
  CHECK(peak > dip);

  // byte-stable across thread counts
  const auto a = point_detector_rate(modes, pair, {0, 0, 1}, t, 100000, 8, u, 1);
  const auto b = point_detector_rate(modes, pair, {0, 0, 1}, t, 100000, 8, u, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);

  CHECK_THROWS_AS(point_detector_rate(modes, TwoModeWigner(0.6, 0.7, true),
                                      {0, 0, 0}, 0.0, 100, 1, u),
                  std::invalid_argument);
  CHECK_THROWS_AS(point_detector_rate({&modes[0], 1}, pair, {0, 0, 0}, 0.0,
                                      100, 1, u),
                  std::invalid_argument);
}
