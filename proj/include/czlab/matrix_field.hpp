#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "czlab/grid.hpp"

namespace czlab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using MatMap = Eigen::Map<Mat>;
using ConstMatMap = Eigen::Map<const Mat>;

// Matrix-valued step function: one m x m complex matrix per dyadic cell.
// Storage is flat, cell-major, each cell column-major.
class MatrixField {
 public:
  MatrixField() = default;
  explicit MatrixField(const GridSpec& spec);

  static MatrixField zeros(const GridSpec& spec) { return MatrixField(spec); }
  static MatrixField identity(const GridSpec& spec);
  static MatrixField constant(const GridSpec& spec, const Mat& value);

  const GridSpec& spec() const { return spec_; }
  std::size_t cell_count() const { return spec_.cells(); }
  int m() const { return spec_.m; }

  MatMap cell(std::size_t i) { return MatMap(data_.data() + i * stride(), spec_.m, spec_.m); }
  ConstMatMap cell(std::size_t i) const {
    return ConstMatMap(data_.data() + i * stride(), spec_.m, spec_.m);
  }

  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  MatrixField adjoint() const;
  bool all_finite() const;
  bool is_zero() const;

  MatrixField& operator+=(const MatrixField& o);
  MatrixField& operator-=(const MatrixField& o);
  MatrixField& operator*=(cplx c);

 private:
  std::size_t stride() const { return spec_.matrix_entries(); }

  GridSpec spec_{};
  std::vector<cplx> data_;
};

MatrixField operator+(MatrixField a, const MatrixField& b);
MatrixField operator-(MatrixField a, const MatrixField& b);
MatrixField operator*(cplx c, MatrixField a);
MatrixField operator*(MatrixField a, cplx c);
// Cellwise matrix product.
MatrixField operator*(const MatrixField& a, const MatrixField& b);

void require_same_grid(const MatrixField& a, const MatrixField& b);

// Hilbert-Schmidt distance, i.e. the L2 norm of a - b.
double l2_distance(const MatrixField& a, const MatrixField& b);

using FieldTuple = std::vector<MatrixField>;

}  // namespace czlab
