#pragma once

// Independent oracle for coincidence moments: fourth-order gaussian
// expectations via Isserlis' theorem, with the analyzer projection applied
// as plain linear algebra on the quadrature covariance.

#include <Eigen/Dense>
#include <cmath>

namespace testsupport {

// E[(x1^2 + x2^2 - c)(x3^2 + x4^2 - c)] for zero-mean jointly gaussian
// variables with covariance C.
inline double quartic_product_moment(const Eigen::Matrix4d& C, double c) {
  double e_xy = 0.0;
  for (int p : {0, 1})
    for (int q : {2, 3}) e_xy += C(p, p) * C(q, q) + 2.0 * C(p, q) * C(p, q);
  const double e1 = C(0, 0) + C(1, 1);
  const double e2 = C(2, 2) + C(3, 3);
  return e_xy - c * (e1 + e2) + c * c;
}

// Covariance of (lam_re, lam_im, mu_re, mu_im) after projecting the
// polarized pair state through analyzers at phi1, phi2.
inline Eigen::Matrix4d malus_covariance(double n, double x, double phi1,
                                        double phi2) {
  // quadrature order: re_ax, re_ay, re_bx, re_by, im_ax, im_ay, im_bx, im_by
  Eigen::Matrix<double, 8, 8> cov8 = Eigen::Matrix<double, 8, 8>::Zero();
  const double v = (2.0 * n + 1.0) / 4.0;
  const double cv = x * v;
  for (int blk : {0, 4})
    for (int comp : {0, 1}) {
      const int a = blk + comp, b = blk + 2 + comp;
      cov8(a, a) = v;
      cov8(b, b) = v;
      cov8(a, b) = cov8(b, a) = cv;
    }
  Eigen::Matrix<double, 4, 8> proj = Eigen::Matrix<double, 4, 8>::Zero();
  proj(0, 0) = std::cos(phi1);
  proj(0, 1) = std::sin(phi1);
  proj(1, 4) = std::cos(phi1);
  proj(1, 5) = std::sin(phi1);
  proj(2, 2) = std::cos(phi2);
  proj(2, 3) = std::sin(phi2);
  proj(3, 6) = std::cos(phi2);
  proj(3, 7) = std::sin(phi2);
  return proj * cov8 * proj.transpose();
}

}  // namespace testsupport
