#pragma once

#include <vector>

#include "czlab/matrix_field.hpp"

namespace czlab {

// Small dense helpers used cell by cell.

Mat hermitian_part(const Mat& a);        // (a + a*)/2
Mat antihermitian_part(const Mat& a);    // (a - a*)/(2i), Hermitian

// Eigenvalues ascending, eigenvectors as columns.
struct HermitianEigen {
  Eigen::VectorXd values;
  Mat vectors;
};
HermitianEigen hermitian_eigen(const Mat& h);

// Positive and negative parts of a Hermitian matrix: h = pos - neg.
void positive_negative_parts(const Mat& h, Mat& pos, Mat& neg);

// Spectral projection 1_{(s, inf)}(h) of a Hermitian matrix.
Mat projection_above(const Mat& h, double s);

// Projection onto the range of a PSD matrix, eigenvalues above tol counted.
Mat range_projection(const Mat& psd, double tol = 1e-10);

// Lattice meet of orthogonal projections: eigenspace of p1...pk...p1 at 1.
Mat projection_meet(const std::vector<Mat>& ps, double tol = 1e-9);

// Singular values descending, via the eigenvalues of a*a with clamping.
Eigen::VectorXd singular_values(const Mat& a);

double operator_norm(const Mat& a);

// max(||p^2 - p||, ||p - p*||) in Frobenius norm.
double projection_defect(const Mat& p);

}  // namespace czlab
