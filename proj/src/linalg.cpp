#include "czlab/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace czlab {

Mat hermitian_part(const Mat& a) { return 0.5 * (a + a.adjoint()); }

Mat antihermitian_part(const Mat& a) { return cplx(0.0, -0.5) * (a - a.adjoint()); }

HermitianEigen hermitian_eigen(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

void positive_negative_parts(const Mat& h, Mat& pos, Mat& neg) {
  const auto eg = hermitian_eigen(hermitian_part(h));
  const Eigen::Index n = h.rows();
  Eigen::VectorXd lp(n), ln(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    lp(k) = std::max(eg.values(k), 0.0);
    ln(k) = std::max(-eg.values(k), 0.0);
  }
  pos = eg.vectors * lp.cast<cplx>().asDiagonal() * eg.vectors.adjoint();
  neg = eg.vectors * ln.cast<cplx>().asDiagonal() * eg.vectors.adjoint();
}

Mat projection_above(const Mat& h, double s) {
  const auto eg = hermitian_eigen(hermitian_part(h));
  const Eigen::Index n = h.rows();
  Mat p = Mat::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    if (eg.values(k) > s) p.noalias() += eg.vectors.col(k) * eg.vectors.col(k).adjoint();
  return p;
}

Mat range_projection(const Mat& psd, double tol) {
  return projection_above(psd, tol);
}

Mat projection_meet(const std::vector<Mat>& ps, double tol) {
  if (ps.empty()) return Mat();
  const Eigen::Index n = ps.front().rows();
  if (ps.size() == 1) return ps.front();
  // p1 p2 ... pk ... p2 p1 = A A* with A = p1 ... pk.
  Mat a = Mat::Identity(n, n);
  for (const Mat& p : ps) a = a * p;
  return projection_above(a * a.adjoint(), 1.0 - tol);
}

Eigen::VectorXd singular_values(const Mat& a) {
  const Eigen::Index n = a.cols();
  Eigen::VectorXd sv(n);
  if (n == 1 && a.rows() == 1) {
    sv(0) = std::abs(a(0, 0));
    return sv;
  }
  // Jacobi rather than sqrt(eig(a*a)): the latter blurs zero singular values to ~1e-8 |a|.
  Eigen::JacobiSVD<Mat> svd(a);
  sv = svd.singularValues();
  const double top = n > 0 ? sv(0) : 0.0;
  for (Eigen::Index k = 0; k < n; ++k)
    if (sv(k) <= 1e-12 * top) sv(k) = 0.0;
  return sv;
}

double operator_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

double projection_defect(const Mat& p) {
  return std::max((p * p - p).norm(), (p - p.adjoint()).norm());
}

}  // namespace czlab
