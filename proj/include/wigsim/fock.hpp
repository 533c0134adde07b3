#pragma once

// Truncated Fock-space engine: ladder operators, state construction,
// characteristic functions and the numeric Wigner transform.  Serves as the
// independent ground truth against which the gaussian closed forms are
// validated, so it deliberately shares no formulas with gaussian.hpp.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "wigsim/gaussian.hpp"

namespace wigsim::fock {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct LadderOps {
  int dim = 0;
  Matrix annihilate;  // sqrt(m) on the first superdiagonal
  Matrix create;      // conjugate transpose
};

inline LadderOps ladder_ops(int dim) {
  if (dim < 2) throw std::invalid_argument("ladder_ops: dim must be >= 2");
  Matrix a = Matrix::Zero(dim, dim);
  for (int m = 0; m + 1 < dim; ++m) a(m, m + 1) = std::sqrt(double(m + 1));
  return LadderOps{dim, a, a.adjoint()};
}

// Matrix exponential by scaled squaring with the degree-13 Pade approximant;
// the scaling threshold keeps the backward error at roundoff level, well
// inside a 1e-12 budget.
inline Matrix expm(const Matrix& m) {
  static constexpr double kTheta13 = 5.371920351148152;
  static constexpr double kB[14] = {64764752532480000.0,
                                    32382376266240000.0,
                                    7771770303897600.0,
                                    1187353796428800.0,
                                    129060195264000.0,
                                    10559470521600.0,
                                    670442572800.0,
                                    33522128640.0,
                                    1323241920.0,
                                    40840800.0,
                                    960960.0,
                                    16380.0,
                                    182.0,
                                    1.0};
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  Matrix a = m;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    a *= std::ldexp(1.0, -squarings);
  }
  const Matrix ident = Matrix::Identity(m.rows(), m.cols());
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a2 * a4;
  const Matrix u = a * (a6 * (kB[13] * a6 + kB[11] * a4 + kB[9] * a2) +
                        kB[7] * a6 + kB[5] * a4 + kB[3] * a2 + kB[1] * ident);
  const Matrix v = a6 * (kB[12] * a6 + kB[10] * a4 + kB[8] * a2) +
                   kB[6] * a6 + kB[4] * a4 + kB[2] * a2 + kB[0] * ident;
  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

// ---------------------------------------------------------------------------
// pure states

struct PureStateVec {
  int dim = 0;
  Vector coeffs;
  double truncation_loss = 0.0;  // probability dropped by the cutoff
};

struct FockSpec {
  int level = 0;
};
struct CoherentSpec {
  ComplexAmp amplitude;
};
struct SqueezedSpec {
  ComplexAmp amplitude;
  double squeeze = 0.0;
};
struct CoeffsSpec {
  std::vector<ComplexAmp> coeffs;
};
using StateSpec = std::variant<FockSpec, CoherentSpec, SqueezedSpec, CoeffsSpec>;

namespace detail {

inline constexpr double kLossBudget = 1e-8;

inline Vector coherent_series(ComplexAmp a, int dim) {
  Vector c(dim);
  c(0) = std::exp(-0.5 * std::norm(a));
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * a / std::sqrt(double(n));
  return c;
}

inline PureStateVec finalize(Vector coeffs, int dim, double loss) {
  if (loss > kLossBudget)
    throw std::invalid_argument(
        "build_state: truncation loss exceeds 1e-8; raise the dimension");
  coeffs.normalize();
  return PureStateVec{dim, std::move(coeffs), loss};
}

}  // namespace detail

inline PureStateVec build_state(const StateSpec& spec, int dim) {
  if (dim < 2) throw std::invalid_argument("build_state: dim must be >= 2");
  return std::visit(
      [dim](const auto& s) -> PureStateVec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FockSpec>) {
          if (s.level < 0 || s.level >= dim)
            throw std::invalid_argument("build_state: Fock level must satisfy 0 <= m < dim");
          Vector c = Vector::Zero(dim);
          c(s.level) = 1.0;
          return PureStateVec{dim, std::move(c), 0.0};
        } else if constexpr (std::is_same_v<T, CoherentSpec>) {
          Vector c = detail::coherent_series(s.amplitude, dim);
          const double loss = 1.0 - c.squaredNorm();
          return detail::finalize(std::move(c), dim, loss);
        } else if constexpr (std::is_same_v<T, SqueezedSpec>) {
          // Work in a larger space, then cut back: the squeeze spreads the
          // coherent support over roughly twice as many levels.
          const int work = 2 * dim + 16;
          const auto ops = ladder_ops(work);
          const Matrix gen = 0.5 * s.squeeze *
                             (ops.annihilate * ops.annihilate -
                              ops.create * ops.create);
          const Vector big = expm(gen) * detail::coherent_series(s.amplitude, work);
          Vector cut = big.head(dim);
          const double loss = 1.0 - cut.squaredNorm();
          return detail::finalize(std::move(cut), dim, loss);
        } else {
          const auto& list = s.coeffs;
          if (list.empty())
            throw std::invalid_argument("build_state: empty coefficient list");
          const int keep = std::min<int>(dim, static_cast<int>(list.size()));
          Vector c = Vector::Zero(dim);
          double total = 0.0, kept = 0.0;
          for (std::size_t n = 0; n < list.size(); ++n) {
            total += std::norm(list[n]);
            if (static_cast<int>(n) < keep) {
              c(n) = list[n];
              kept += std::norm(list[n]);
            }
          }
          if (!(total > 0.0))
            throw std::invalid_argument("build_state: coefficients are all zero");
          return detail::finalize(std::move(c), dim, 1.0 - kept / total);
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// density matrices

struct DensityMatrix {
  int dim = 0;
  Matrix mat;
};

namespace detail {

inline void check_density(const Matrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 1)
    throw std::invalid_argument("density matrix must be square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("density matrix must be hermitian within 1e-10");
  if (std::abs(rho.trace() - 1.0) > 1e-8)
    throw std::invalid_argument("density matrix must have unit trace within 1e-8");
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(rho, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("density matrix must be positive semidefinite");
}

}  // namespace detail

inline DensityMatrix density_from_pure(const PureStateVec& psi) {
  Matrix rho = psi.coeffs * psi.coeffs.adjoint();
  detail::check_density(rho);
  return DensityMatrix{psi.dim, std::move(rho)};
}

inline DensityMatrix density_from_mixture(
    const std::vector<std::pair<PureStateVec, double>>& terms) {
  if (terms.empty())
    throw std::invalid_argument("density_from_mixture: empty mixture");
  const int dim = terms.front().first.dim;
  double wsum = 0.0;
  for (const auto& [psi, w] : terms) {
    if (psi.dim != dim)
      throw std::invalid_argument("density_from_mixture: mixed dimensions");
    if (!(w >= 0.0))
      throw std::invalid_argument("density_from_mixture: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-10)
    throw std::invalid_argument("density_from_mixture: weights must sum to 1");
  Matrix rho = Matrix::Zero(dim, dim);
  for (const auto& [psi, w] : terms) rho += w * (psi.coeffs * psi.coeffs.adjoint());
  detail::check_density(rho);
  return DensityMatrix{dim, std::move(rho)};
}

// ---------------------------------------------------------------------------
// characteristic function and Wigner transform

// Embedding dimension for displacement exponentials: matrix elements between
// the first D levels are converged once the space covers the displaced
// support (sqrt(D) + |xi|)^2 with a safety margin; without the margin the
// truncated exponential wraps around at large |xi|.
inline int displacement_work_dim(int dim, double radius) {
  const double base = radius + std::sqrt(static_cast<double>(dim));
  const double grown = base * base + 12.0 * base + 16.0;
  return std::max(2 * dim, static_cast<int>(std::ceil(grown)));
}

// Tr[rho exp(xi create - conj(xi) annihilate)], evaluated in an enlarged
// space so the truncation never touches the displaced support.
inline std::complex<double> char_function(const DensityMatrix& rho,
                                          ComplexAmp xi, int work_dim = 0) {
  const int dim = rho.dim;
  const int work = work_dim > 0 ? std::max(work_dim, dim)
                                : displacement_work_dim(dim, std::abs(xi));
  const auto ops = ladder_ops(work);
  const Matrix arg = xi * ops.create - std::conj(xi) * ops.annihilate;
  const Matrix disp = expm(arg);
  return (rho.mat * disp.topLeftCorner(dim, dim)).trace();
}

struct QuadratureGrid {
  double extent = 6.0;  // half-width of the xi-plane square
  int steps = 200;      // even number of intervals per axis
};

namespace detail {

inline void check_grid(const QuadratureGrid& grid) {
  if (!(grid.extent >= 5.0))
    throw std::invalid_argument("QuadratureGrid: extent must be >= 5");
  if (grid.steps < 2 || grid.steps % 2 != 0)
    throw std::invalid_argument("QuadratureGrid: steps must be even and >= 2");
}

}  // namespace detail

// Wigner transform W(alpha) = (1/pi^2) Int chi(xi) exp(alpha conj(xi) -
// conj(alpha) xi) d^2 xi by trapezoidal quadrature.  The characteristic
// function is tabulated once per (rho, grid): writing xi = r e^{i theta},
// the displacement splits as R(theta) exp(r(create - annihilate)) R(theta)+
// with R diagonal, so a single eigendecomposition H = -i(create - annihilate)
// = U L U+ turns every grid point into a short sum over eigenphases.
class WignerTransform {
 public:
  explicit WignerTransform(const DensityMatrix& rho, QuadratureGrid grid = {},
                           int work_dim = 0)
      : grid_(grid) {
    detail::check_grid(grid_);
    const int dim = rho.dim;
    if (rho.mat.rows() != dim || rho.mat.cols() != dim || dim < 1)
      throw std::invalid_argument("WignerTransform: malformed density matrix");
    const double r_max = grid_.extent * std::numbers::sqrt2;
    const int work = work_dim > 0 ? std::max(work_dim, dim)
                                  : displacement_work_dim(dim, r_max);
    const auto ops = ladder_ops(work);
    const Matrix h = std::complex<double>(0, -1) * (ops.create - ops.annihilate);
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    const Eigen::VectorXd lambda = eig.eigenvalues();
    const Matrix& u = eig.eigenvectors();

    // c(d, j) = sum_{m - n = d} rho(n, m) U(m, j) conj(U(n, j))
    Matrix ctab = Matrix::Zero(2 * dim - 1, work);
    for (int n = 0; n < dim; ++n)
      for (int m = 0; m < dim; ++m) {
        if (rho.mat(n, m) == 0.0) continue;
        ctab.row(m - n + dim - 1) +=
            rho.mat(n, m) * (u.row(m).array() * u.row(n).array().conjugate()).matrix();
      }

    const int nodes = grid_.steps + 1;
    const double h_step = 2.0 * grid_.extent / grid_.steps;
    chi_.resize(nodes, nodes);
    Vector phases(work);
    for (int iu = 0; iu < nodes; ++iu) {
      const double uu = -grid_.extent + iu * h_step;
      for (int iv = 0; iv < nodes; ++iv) {
        const double vv = -grid_.extent + iv * h_step;
        const double r = std::hypot(uu, vv);
        const double theta = std::atan2(vv, uu);
        for (int j = 0; j < work; ++j) {
          const double ph = r * lambda(j);
          phases(j) = std::complex<double>(std::cos(ph), std::sin(ph));
        }
        const Vector by_offset = ctab * phases;
        // resum the offset series d = -(dim-1) .. dim-1 with e^{i d theta}
        const std::complex<double> rot(std::cos(theta), std::sin(theta));
        std::complex<double> fwd = 1.0, acc = by_offset(dim - 1);
        for (int d = 1; d < dim; ++d) {
          fwd *= rot;
          acc += fwd * by_offset(dim - 1 + d) +
                 std::conj(fwd) * by_offset(dim - 1 - d);
        }
        chi_(iu, iv) = acc;
      }
    }
  }

  const QuadratureGrid& grid() const { return grid_; }
  const Matrix& char_table() const { return chi_; }

  // One evaluation of the double integral; throws if the imaginary residue
  // exceeds 1e-8 (grid too small for this state).
  double evaluate(ComplexAmp alpha) const {
    const int nodes = grid_.steps + 1;
    const double h_step = 2.0 * grid_.extent / grid_.steps;
    const double p = alpha.real(), q = alpha.imag();
    Vector pu(nodes), pv(nodes);
    for (int i = 0; i < nodes; ++i) {
      const double coord = -grid_.extent + i * h_step;
      const double w = (i == 0 || i == nodes - 1) ? 0.5 : 1.0;
      pu(i) = w * std::complex<double>(std::cos(2.0 * q * coord),
                                       std::sin(2.0 * q * coord));
      pv(i) = w * std::complex<double>(std::cos(2.0 * p * coord),
                                       -std::sin(2.0 * p * coord));
    }
    const std::complex<double> raw = (pu.array() * (chi_ * pv).array()).sum();
    const double scale = h_step * h_step / (std::numbers::pi * std::numbers::pi);
    if (std::abs(raw.imag()) * scale > 1e-8)
      throw std::runtime_error(
          "WignerTransform: imaginary residue exceeds 1e-8; enlarge the grid");
    return raw.real() * scale;
  }

 private:
  QuadratureGrid grid_;
  Matrix chi_;
};

inline double wigner_from_density(const DensityMatrix& rho, ComplexAmp alpha,
                                  QuadratureGrid grid = {}) {
  return WignerTransform(rho, grid).evaluate(alpha);
}

// ---------------------------------------------------------------------------
// moments and P-function reconstruction

struct OperatorMoments {
  double sym_number = 0.0;  // Tr[rho (a+ a + a a+ - 1)] / 2
  double purity = 0.0;      // Tr[rho^2]
};

inline OperatorMoments operator_moments(const DensityMatrix& rho) {
  const int dim = rho.dim;
  // (create annihilate + annihilate create - 1)/2 is diagonal in the number
  // basis: m for m < dim-1, with the expected truncation dent at the top.
  double sym = 0.0;
  for (int m = 0; m < dim; ++m) {
    const double ca = m;
    const double ac = m + 1 < dim ? m + 1 : 0;
    sym += 0.5 * (ca + ac - 1.0) * rho.mat(m, m).real();
  }
  const double purity = (rho.mat * rho.mat).trace().real();
  return OperatorMoments{sym, purity};
}

struct RadialGrid {
  double extent = 0.0;  // 0: choose from (dim, n)
  int steps = 4000;
};

// rho = Int P(a) |a><a| d^2 a.  Delta gives the truncated coherent
// projector; Chaotic(n) integrates out analytically in angle, leaving a
// radial quadrature over diagonal entries e^{-r^2} r^{2m} / m!.
inline DensityMatrix density_from_p(const PGaussianSingle& p, int dim,
                                    RadialGrid radial = {}) {
  if (dim < 2) throw std::invalid_argument("density_from_p: dim must be >= 2");
  if (std::holds_alternative<DeltaP>(p))
    return density_from_pure(
        build_state(CoherentSpec{std::get<DeltaP>(p).center}, dim));

  const double n = std::get<ChaoticP>(p).mean_photons;
  if (!(n >= 0.0))
    throw std::invalid_argument("density_from_p: mean photon number must be >= 0");
  if (n == 0.0) return density_from_pure(build_state(FockSpec{0}, dim));

  if (radial.steps < 2 || radial.steps % 2 != 0)
    throw std::invalid_argument("density_from_p: radial steps must be even and >= 2");
  const double extent =
      radial.extent > 0.0
          ? radial.extent
          : std::sqrt(n / (n + 1.0)) * (std::sqrt(static_cast<double>(dim)) + 8.0);
  const double h = extent / radial.steps;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i <= radial.steps; ++i) {
    const double r = i * h;
    // composite Simpson weights 1, 4, 2, ..., 4, 1 (times h/3)
    const double w =
        (i == 0 || i == radial.steps) ? 1.0 / 3.0 : (i % 2 ? 4.0 / 3.0 : 2.0 / 3.0);
    // (2r/n) exp(-r^2/n) dr against |<m|a>|^2 = exp(-r^2) r^{2m} / m!
    const double envelope = w * h * (2.0 * r / n) * std::exp(-r * r / n - r * r);
    double pow_term = 1.0;  // r^{2m} / m!
    for (int m = 0; m < dim; ++m) {
      diag(m) += envelope * pow_term;
      pow_term *= r * r / (m + 1);
    }
  }
  const double trace = diag.sum();
  if (std::abs(trace - 1.0) > 1e-6)
    throw std::invalid_argument(
        "density_from_p: trace deficit exceeds 1e-6; raise dim or the radial grid");
  Matrix rho = (diag / trace).cast<std::complex<double>>().asDiagonal();
  detail::check_density(rho);
  return DensityMatrix{dim, std::move(rho)};
}

}  // namespace wigsim::fock
