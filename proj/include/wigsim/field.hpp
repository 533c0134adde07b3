#pragma once

// Real-space field assembled from plane-wave modes with Gaussian Wigner
// amplitudes, and a point photodetector that subtracts the vacuum intensity.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "wigsim/detection.hpp"
#include "wigsim/gaussian.hpp"
#include "wigsim/rng.hpp"
#include "wigsim/sampling.hpp"

namespace wigsim {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
  friend double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
  friend double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
};

// Everything defaults to natural units and a unit quantization box.
struct Units {
  double hbar = 1.0;
  double c = 1.0;
  double eps0 = 1.0;
  double box_side = 1.0;
};

struct ModeSpec {
  Vec3 wavevector;
  Vec3 polarization;  // unit vector orthogonal to wavevector
  double omega = 0.0;
};

inline ModeSpec make_mode(Vec3 wavevector, Vec3 polarization,
                          const Units& units = {}) {
  const double k = norm(wavevector);
  if (!(k > 0.0))
    throw std::invalid_argument("make_mode: wavevector must be non-zero");
  const double p = norm(polarization);
  if (!(p > 0.0))
    throw std::invalid_argument("make_mode: polarization must be non-zero");
  if (std::abs(dot(wavevector, polarization)) > 1e-9 * k * p)
    throw std::invalid_argument("make_mode: polarization must be transverse");
  return ModeSpec{wavevector, (1.0 / p) * polarization, units.c * k};
}

// Single-photon field scale sqrt(2 hbar omega / L^3) of one mode.
inline double mode_coupling(const ModeSpec& mode, const Units& units) {
  const double volume = units.box_side * units.box_side * units.box_side;
  return std::sqrt(2.0 * units.hbar * mode.omega / volume);
}

struct FieldSample {
  Vec3 e_field;
  double intensity = 0.0;
};

// E(r, t) = sum_k sqrt(2 hbar w_k / L^3) Re[alpha_k exp(i(k.r - w_k t))] e_k,
// I = c eps0 |E|^2.
inline FieldSample field_at(std::span<const ModeSpec> modes,
                            std::span<const ComplexAmp> amplitudes, Vec3 r,
                            double t, const Units& units = {}) {
  if (modes.size() != amplitudes.size())
    throw std::invalid_argument("field_at: one amplitude per mode required");
  Vec3 e{};
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const double phase = dot(modes[m].wavevector, r) - modes[m].omega * t;
    const double re_part = amplitudes[m].real() * std::cos(phase) -
                           amplitudes[m].imag() * std::sin(phase);
    e = e + (mode_coupling(modes[m], units) * re_part) * modes[m].polarization;
  }
  return FieldSample{e, units.c * units.eps0 * dot(e, e)};
}

// Mean vacuum intensity of the mode set: each quadrature contributes 1/4 and
// distinct modes are uncorrelated, so I0 = c eps0 sum_k coupling_k^2 / 4.
inline double vacuum_intensity(std::span<const ModeSpec> modes,
                               const Units& units = {}) {
  double sum = 0.0;
  for (const auto& m : modes) {
    const double ck = mode_coupling(m, units);
    sum += 0.25 * ck * ck;
  }
  return units.c * units.eps0 * sum;
}

namespace detail {

// Amplitude draws for the detector estimators: two normals per mode, in mode
// order, from the field substream.
inline void draw_mode_amplitudes(std::span<const SingleModeGaussian> states,
                                 std::size_t total_modes, std::uint64_t seed,
                                 std::uint64_t index, ComplexAmp* out) {
  std::vector<double> z(2 * total_modes);
  rng::fill_normals(seed, substream::kFieldModes, index, z);
  for (std::size_t m = 0; m < total_modes; ++m) {
    const SingleModeGaussian g =
        m < states.size() ? states[m] : vacuum_state();
    out[m] = g.center + ComplexAmp{std::sqrt(g.var_re) * z[2 * m],
                                   std::sqrt(g.var_im) * z[2 * m + 1]};
  }
}

}  // namespace detail

// Subtracted MC rate of a point detector: averages I(r, t) - I0 over draws
// of the mode amplitudes.  Modes beyond the supplied states sit in vacuum.
inline RateEstimate point_detector_rate(std::span<const ModeSpec> modes,
                                        std::span<const SingleModeGaussian> states,
                                        Vec3 r, double t, std::size_t count,
                                        std::uint64_t seed,
                                        const Units& units = {},
                                        unsigned threads = 1) {
  if (states.size() > modes.size())
    throw std::invalid_argument("point_detector_rate: more states than modes");
  const double i0 = vacuum_intensity(modes, units);
  return detail::estimate_mean(count, threads, [&, i0](std::size_t i) {
    std::vector<ComplexAmp> amps(modes.size());
    detail::draw_mode_amplitudes(states, modes.size(), seed, i, amps.data());
    return field_at(modes, amps, r, t, units).intensity - i0;
  });
}

// Same detector with the first two modes occupied by the scalar pair state.
inline RateEstimate point_detector_rate(std::span<const ModeSpec> modes,
                                        const TwoModeWigner& pair, Vec3 r,
                                        double t, std::size_t count,
                                        std::uint64_t seed,
                                        const Units& units = {},
                                        unsigned threads = 1) {
  if (pair.polarized)
    throw std::invalid_argument(
        "point_detector_rate: plane-wave modes carry their own polarization; "
        "use the scalar pair state");
  if (modes.size() < 2)
    throw std::invalid_argument("point_detector_rate: pair state needs two modes");
  const double i0 = vacuum_intensity(modes, units);
  const double sigma = std::sqrt(pair.quad_variance());
  const double x = pair.correlation;
  const double s = std::sqrt(1.0 - x * x);
  return detail::estimate_mean(count, threads, [&, i0](std::size_t i) {
    std::vector<double> z(2 * modes.size());
    rng::fill_normals(seed, substream::kFieldModes, i, z);
    std::vector<ComplexAmp> amps(modes.size());
    // same Cholesky map as the pair sampler: re from z0, z1, im from z2, z3
    amps[0] = ComplexAmp{sigma * z[0], sigma * z[2]};
    amps[1] = ComplexAmp{sigma * (x * z[0] + s * z[1]),
                         sigma * (x * z[2] + s * z[3])};
    for (std::size_t m = 2; m < modes.size(); ++m)
      amps[m] = 0.5 * ComplexAmp{z[2 * m], z[2 * m + 1]};
    return field_at(modes, amps, r, t, units).intensity - i0;
  });
}

}  // namespace wigsim
