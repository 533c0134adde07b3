#pragma once

// Gaussian Wigner representations for single- and two-mode optical states.
// Amplitudes use the convention |alpha|^2 ~ photon number, so the vacuum
// has variance 1/4 in each quadrature (Re alpha, Im alpha).

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <variant>

namespace wigsim {

using ComplexAmp = std::complex<double>;

inline constexpr double kVacuumQuadVariance = 0.25;

// ---------------------------------------------------------------------------
// classification

enum class StateKind { Pure, Mixed, Invalid };

enum class TwoModeClass { Classical, ClassicalBoundary, Entangled, NotReal };

inline const char* to_string(StateKind k) {
  switch (k) {
    case StateKind::Pure: return "pure";
    case StateKind::Mixed: return "mixed";
    default: return "invalid";
  }
}

inline const char* to_string(TwoModeClass c) {
  switch (c) {
    case TwoModeClass::Classical: return "classical";
    case TwoModeClass::ClassicalBoundary: return "classical_boundary";
    case TwoModeClass::Entangled: return "entangled";
    default: return "not_real";
  }
}

namespace tol {
// |A*B - 4| below this counts as a pure (minimum-uncertainty) state.
inline constexpr double kPurityProduct = 1e-9;
// |x| within this of 2n/(2n+1) counts as sitting on the classical boundary.
inline constexpr double kClassBoundary = 1e-12;
}  // namespace tol

// Classify a single-mode Gaussian by its exponent coefficients
// W ~ exp(-A dr^2 - B di^2).  A*B = 4 is minimum uncertainty; larger
// products would violate it.
inline StateKind single_mode_kind(double re_coeff, double im_coeff) {
  if (!(re_coeff > 0.0) || !(im_coeff > 0.0))
    throw std::invalid_argument("gaussian coefficients must be positive");
  const double prod = re_coeff * im_coeff;
  if (std::abs(prod - 4.0) <= tol::kPurityProduct) return StateKind::Pure;
  return prod < 4.0 ? StateKind::Mixed : StateKind::Invalid;
}

// ---------------------------------------------------------------------------
// single mode

// Gaussian Wigner density of one mode, stored as quadrature variances plus a
// complex center.  W(alpha) = sqrt(A*B)/pi * exp(-A (Re d)^2 - B (Im d)^2)
// with d = alpha - center, A = 1/(2 var_re), B = 1/(2 var_im).
struct SingleModeGaussian {
  double var_re = kVacuumQuadVariance;
  double var_im = kVacuumQuadVariance;
  ComplexAmp center{0.0, 0.0};

  static SingleModeGaussian from_variances(double var_re, double var_im,
                                           ComplexAmp center = {}) {
    if (!(var_re > 0.0) || !(var_im > 0.0))
      throw std::invalid_argument("quadrature variances must be positive");
    return SingleModeGaussian{var_re, var_im, center};
  }

  static SingleModeGaussian from_coeffs(double re_coeff, double im_coeff,
                                        ComplexAmp center = {}) {
    if (!(re_coeff > 0.0) || !(im_coeff > 0.0))
      throw std::invalid_argument("gaussian coefficients must be positive");
    return SingleModeGaussian{0.5 / re_coeff, 0.5 / im_coeff, center};
  }

  double re_coeff() const { return 0.5 / var_re; }
  double im_coeff() const { return 0.5 / var_im; }

  StateKind kind() const { return single_mode_kind(re_coeff(), im_coeff()); }

  double evaluate(ComplexAmp alpha) const {
    const double a = re_coeff(), b = im_coeff();
    const double dr = alpha.real() - center.real();
    const double di = alpha.imag() - center.imag();
    return std::sqrt(a * b) / std::numbers::pi *
           std::exp(-a * dr * dr - b * di * di);
  }
};

inline SingleModeGaussian vacuum_state() { return SingleModeGaussian{}; }

inline SingleModeGaussian coherent_state(ComplexAmp amplitude) {
  return SingleModeGaussian{kVacuumQuadVariance, kVacuumQuadVariance,
                            amplitude};
}

// Squeeze parameter s > 0 narrows Re alpha: var_re = e^{-2s}/4, var_im = e^{2s}/4.
inline SingleModeGaussian squeezed_state(ComplexAmp amplitude, double squeeze) {
  if (!std::isfinite(squeeze))
    throw std::invalid_argument("squeeze parameter must be finite");
  return SingleModeGaussian{kVacuumQuadVariance * std::exp(-2.0 * squeeze),
                            kVacuumQuadVariance * std::exp(2.0 * squeeze),
                            amplitude};
}

// Thermal/chaotic mode with mean photon number n: var = (2n+1)/4 per quadrature.
inline SingleModeGaussian chaotic_state(double mean_photons) {
  if (!(mean_photons >= 0.0))
    throw std::invalid_argument("mean photon number must be >= 0");
  const double v = (2.0 * mean_photons + 1.0) * 0.25;
  return SingleModeGaussian{v, v, ComplexAmp{0.0, 0.0}};
}

// ---------------------------------------------------------------------------
// P-function descriptions of signals (before the vacuum convolution)

// P(alpha) = delta^2(alpha - center): an ideal coherent signal.
struct DeltaP {
  ComplexAmp center{0.0, 0.0};
};

// P(alpha) = exp(-|alpha|^2/n) / (pi n): chaotic light of mean photon number n.
struct ChaoticP {
  double mean_photons = 0.0;
};

using PGaussianSingle = std::variant<DeltaP, ChaoticP>;

// Symmetric bilinear exponent of a two-mode Gaussian P-distribution,
// P ~ exp(-a|alpha|^2 - b|beta|^2 + c(alpha beta* + alpha* beta)).
// Normalizable iff a,b > 0 and c^2 < a b.
struct TwoModeSignalP {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;

  TwoModeSignalP(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
    if (!(a > 0.0) || !(b > 0.0))
      throw std::invalid_argument("P-function quadratic coefficients must be positive");
    if (!(c * c < a * b))
      throw std::invalid_argument("P-function cross term violates c^2 < a*b");
  }
};

// ---------------------------------------------------------------------------
// two-mode Wigner states

struct SignalMoments {
  double mean_photons = 0.0;
  double correlation = 0.0;  // x in (-1, 1)
};

// Mean photon number per mode and cross-mode correlation for the symmetric
// signal P-exponent (a, a, c).
inline SignalMoments two_mode_signal(double a, double c) {
  if (!(a > 0.0)) throw std::invalid_argument("two_mode_signal: a must be positive");
  if (!(c * c < a * a))
    throw std::invalid_argument("two_mode_signal: requires c^2 < a^2");
  SignalMoments m;
  m.mean_photons = a / (a * a - c * c);
  m.correlation = 2.0 * c / (2.0 * a + a * a - c * c);
  return m;
}

inline double classical_bound(double mean_photons) {
  return 2.0 * mean_photons / (2.0 * mean_photons + 1.0);
}

// Literal classification of the (n, x) parameter pair.  The boundary band
// |x| = 2n/(2n+1) is resolved with an absolute tolerance, so (0, 0) lands on
// the boundary.
inline TwoModeClass classify_two_mode(double mean_photons, double correlation) {
  if (!(mean_photons >= 0.0))
    throw std::invalid_argument("classify_two_mode: mean photon number must be >= 0");
  if (!std::isfinite(correlation))
    throw std::invalid_argument("classify_two_mode: correlation must be finite");
  const double ax = std::abs(correlation);
  if (ax >= 1.0) return TwoModeClass::NotReal;
  const double bound = classical_bound(mean_photons);
  if (std::abs(ax - bound) <= tol::kClassBoundary)
    return TwoModeClass::ClassicalBoundary;
  return ax < bound ? TwoModeClass::Classical : TwoModeClass::Entangled;
}

// Zeropoint-convolved two-mode Gaussian Wigner state, parametrized by the
// per-mode mean photon number n >= 0 and the correlation x, |x| < 1.
//
// Scalar form (polarized == false):
//   W(alpha, beta) = A^2 (1-x^2)/pi^2 *
//       exp(-A [|alpha|^2 + |beta|^2 - x (alpha beta* + alpha* beta)])
// with A = 2 / ((2n+1)(1-x^2)).  The polarized form is the product of one
// such factor per polarization component (x and y), sharing n and x.
struct TwoModeWigner {
  double mean_photons = 0.0;
  double correlation = 0.0;
  bool polarized = false;

  TwoModeWigner(double n, double x, bool pol = false)
      : mean_photons(n), correlation(x), polarized(pol) {
    if (!(n >= 0.0))
      throw std::invalid_argument("TwoModeWigner: mean photon number must be >= 0");
    if (!(std::abs(x) < 1.0))
      throw std::invalid_argument("TwoModeWigner: correlation must satisfy |x| < 1");
  }

  double exponent_coeff() const {
    return 2.0 / ((2.0 * mean_photons + 1.0) * (1.0 - correlation * correlation));
  }

  // Covariance of each correlated quadrature pair (Re alpha, Re beta) etc.
  double quad_variance() const { return (2.0 * mean_photons + 1.0) * 0.25; }
  double cross_covariance() const { return correlation * quad_variance(); }

  TwoModeClass classification() const {
    return classify_two_mode(mean_photons, correlation);
  }

  double evaluate(ComplexAmp alpha, ComplexAmp beta) const {
    if (polarized)
      throw std::logic_error("polarized state needs per-component amplitudes");
    return pair_factor(alpha, beta);
  }

  double evaluate(ComplexAmp alpha_x, ComplexAmp alpha_y, ComplexAmp beta_x,
                  ComplexAmp beta_y) const {
    if (!polarized)
      throw std::logic_error("scalar state takes one amplitude per mode");
    const double coeff = exponent_coeff();
    const double x = correlation;
    const double quad =
        std::norm(alpha_x) + std::norm(alpha_y) + std::norm(beta_x) +
        std::norm(beta_y) -
        2.0 * x * ((alpha_x * std::conj(beta_x)).real() +
                   (alpha_y * std::conj(beta_y)).real());
    const double norm =
        std::pow(coeff * coeff * (1.0 - x * x) / (std::numbers::pi * std::numbers::pi), 2);
    return norm * std::exp(-coeff * quad);
  }

 private:
  double pair_factor(ComplexAmp alpha, ComplexAmp beta) const {
    const double coeff = exponent_coeff();
    const double x = correlation;
    const double quad = std::norm(alpha) + std::norm(beta) -
                        2.0 * x * (alpha * std::conj(beta)).real();
    const double norm = coeff * coeff * (1.0 - x * x) /
                        (std::numbers::pi * std::numbers::pi);
    return norm * std::exp(-coeff * quad);
  }
};

inline TwoModeWigner two_mode_wigner(double mean_photons, double correlation,
                                     bool polarized = false) {
  return TwoModeWigner(mean_photons, correlation, polarized);
}

// ---------------------------------------------------------------------------
// vacuum convolution (P -> W) and its inverse on the (n, x) chart

inline SingleModeGaussian convolve_vacuum(const PGaussianSingle& p) {
  return std::visit(
      [](const auto& s) -> SingleModeGaussian {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DeltaP>) {
          return coherent_state(s.center);
        } else {
          return chaotic_state(s.mean_photons);
        }
      },
      p);
}

// Convolving a symmetric two-mode signal with the vacuum adds 1/4 to each
// quadrature variance; the result is exactly the (n, x) Wigner state.
inline TwoModeWigner convolve_vacuum(const TwoModeSignalP& p,
                                     bool polarized = false) {
  const double scale = 0.5 * (p.a + p.b);
  if (!(std::abs(p.a - p.b) <= 1e-12 * scale))
    throw std::invalid_argument("convolve_vacuum: two-mode signal must be symmetric (a == b)");
  const SignalMoments m = two_mode_signal(p.a, p.c);
  return TwoModeWigner(m.mean_photons, m.correlation, polarized);
}

// Inverse chart: recover the P-exponent (a, a, c) of a classical (n, x) state.
// Only strictly classical states have a normalizable P-function here, so
// boundary and entangled inputs are rejected.
inline TwoModeSignalP signal_from_nx(double mean_photons, double correlation) {
  const TwoModeClass cls = classify_two_mode(mean_photons, correlation);
  if (cls != TwoModeClass::Classical || !(mean_photons > 0.0))
    throw std::invalid_argument(
        "signal_from_nx: only strictly classical states with n > 0 admit a signal P-function");
  const double n = mean_photons, x = correlation;
  const double twon1 = 2.0 * n + 1.0;
  const double denom = 4.0 * n * n - x * x * twon1 * twon1;
  const double a = 4.0 * n / denom;
  const double c2 = a * a - a / n;
  const double c = std::copysign(std::sqrt(std::max(0.0, c2)), x);
  return TwoModeSignalP(a, a, c);
}

// Tracing out one mode of the (n, x) state leaves chaotic light of the same n.
inline SingleModeGaussian marginal_mode(const TwoModeWigner& state) {
  return chaotic_state(state.mean_photons);
}

}  // namespace wigsim
