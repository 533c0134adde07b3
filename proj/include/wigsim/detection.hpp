#pragma once

// Photodetection built on the zeropoint-subtraction rule: a detector reading
// is |amplitude|^2 minus the vacuum expectation 1/2 (1/4 per quadrature).
// Individual subtracted readings may be negative; only averages are rates.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wigsim/gaussian.hpp"
#include "wigsim/sampling.hpp"

namespace wigsim {

inline constexpr double kZeropointRate = 0.5;  // <|alpha|^2> of the vacuum

struct RateEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

struct PolarizerSetting {
  double angle = 0.0;  // radians from the x axis
};

// Field amplitude passed by an ideal polarizer (Malus projection).
inline ComplexAmp malus_project(ComplexAmp amp_x, ComplexAmp amp_y,
                                PolarizerSetting pol) {
  return amp_x * std::cos(pol.angle) + amp_y * std::sin(pol.angle);
}

// Mean subtracted rate of a Gaussian mode:
// <|alpha|^2> - 1/2 = |center|^2 + var_re + var_im - 1/2.
inline double mean_rate(const SingleModeGaussian& g) {
  return std::norm(g.center) + (g.var_re + g.var_im - kZeropointRate);
}

namespace detail {

// Combines per-chunk (sum, sum of squares) partials in chunk order so the
// result does not depend on thread scheduling.
struct ChunkedMoments {
  double sum = 0.0;
  double sumsq = 0.0;
};

template <typename PerDraw>
RateEstimate estimate_mean(std::size_t count, unsigned threads,
                           PerDraw&& value_of) {
  if (count < 2)
    throw std::invalid_argument("need at least two draws for a standard error");
  const std::size_t nchunks = (count + kChunkDraws - 1) / kChunkDraws;
  std::vector<ChunkedMoments> partials(nchunks);
  for_each_chunk(count, threads,
                 [&](std::size_t c, std::size_t lo, std::size_t hi) {
                   ChunkedMoments m;
                   for (std::size_t i = lo; i < hi; ++i) {
                     const double v = value_of(i);
                     m.sum += v;
                     m.sumsq += v * v;
                   }
                   partials[c] = m;
                 });
  ChunkedMoments total;
  for (const auto& m : partials) {
    total.sum += m.sum;
    total.sumsq += m.sumsq;
  }
  const double n = static_cast<double>(count);
  const double mean = total.sum / n;
  const double var = std::max(0.0, (total.sumsq - n * mean * mean) / (n - 1.0));
  return RateEstimate{mean, std::sqrt(var / n), count};
}

}  // namespace detail

// Monte Carlo rate of one mode of an existing batch.
inline RateEstimate mc_rate(const SampleBatch& batch, int mode) {
  return detail::estimate_mean(batch.count, 1, [&](std::size_t i) {
    return std::norm(batch.amplitude(i, mode)) - kZeropointRate;
  });
}

struct CoincidenceResult {
  double r12 = 0.0;
  // max/min contrast over the analyzer difference angle; empty for the
  // vacuum pair (n = 0, x = 0) where the rate vanishes identically
  std::optional<double> visibility;
};

// Closed-form coincidence rate of the polarized pair state at analyzer
// difference dphi:
//   r12 = n^2 + (1/2) (n + 1/2)^2 x^2 (1 + cos 2 dphi)
// Visibility (r_max - r_min)/(r_max + r_min) depends only on (n, x).
inline CoincidenceResult coincidence_closed(double mean_photons,
                                            double correlation, double dphi) {
  if (!(mean_photons >= 0.0))
    throw std::invalid_argument("coincidence_closed: mean photon number must be >= 0");
  if (!(std::abs(correlation) < 1.0))
    throw std::invalid_argument("coincidence_closed: requires |x| < 1");
  if (!std::isfinite(dphi))
    throw std::invalid_argument("coincidence_closed: analyzer angle must be finite");
  const double n = mean_photons;
  const double half = n + 0.5;
  const double amp = 0.5 * half * half * correlation * correlation;
  CoincidenceResult res;
  res.r12 = n * n + amp * (1.0 + std::cos(2.0 * dphi));
  const double denom = n * n + amp;
  if (denom > 0.0) res.visibility = amp / denom;
  return res;
}

// Largest visibility reachable at fixed n (the |x| -> 1 limit).  Strictly
// decreasing from 1 at n = 0 toward 1/3.
inline double max_visibility(double mean_photons) {
  if (!(mean_photons >= 0.0))
    throw std::invalid_argument("max_visibility: mean photon number must be >= 0");
  const double n = mean_photons;
  const double half = n + 0.5;
  return 0.5 * half * half / (n * n + 0.5 * half * half);
}

// Mean photon number below which a visibility target is reachable, found by
// bisection on max_visibility to an absolute 1e-6 bracket.
inline double critical_n(double target_visibility) {
  if (!(target_visibility > 1.0 / 3.0))
    throw std::domain_error(
        "critical_n: visibilities <= 1/3 are reachable at every photon number");
  if (!(target_visibility < 1.0))
    throw std::domain_error("critical_n: visibility must be < 1");
  double lo = 0.0, hi = 1.0;
  while (max_visibility(hi) > target_visibility) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (max_visibility(mid) > target_visibility ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Streaming MC coincidence estimate: draws the polarized pair state, applies
// the two analyzers, and averages the product of subtracted readings.
inline RateEstimate coincidence_mc(const TwoModeWigner& state,
                                   PolarizerSetting pol1, PolarizerSetting pol2,
                                   std::size_t count, std::uint64_t seed,
                                   unsigned threads = 1) {
  if (!state.polarized)
    throw std::invalid_argument("coincidence_mc: needs the polarized pair state");
  const double c1 = std::cos(pol1.angle), s1 = std::sin(pol1.angle);
  const double c2 = std::cos(pol2.angle), s2 = std::sin(pol2.angle);
  return detail::estimate_mean(count, threads, [&](std::size_t i) {
    double row[8];
    detail::draw_two_mode(state, seed, i, row);
    const ComplexAmp lam{c1 * row[0] + s1 * row[2], c1 * row[1] + s1 * row[3]};
    const ComplexAmp mu{c2 * row[4] + s2 * row[6], c2 * row[5] + s2 * row[7]};
    return (std::norm(lam) - kZeropointRate) * (std::norm(mu) - kZeropointRate);
  });
}

}  // namespace wigsim
