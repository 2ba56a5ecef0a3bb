#include "czlab/matrix_field.hpp"

#include <cmath>

#include "czlab/error.hpp"

namespace czlab {

MatrixField::MatrixField(const GridSpec& spec) : spec_(spec) {
  spec_.validate();
  data_.assign(spec_.cells() * spec_.matrix_entries(), cplx{0.0, 0.0});
}

MatrixField MatrixField::identity(const GridSpec& spec) {
  return constant(spec, Mat::Identity(spec.m, spec.m));
}

MatrixField MatrixField::constant(const GridSpec& spec, const Mat& value) {
  if (value.rows() != spec.m || value.cols() != spec.m) throw InvalidArgument("constant: matrix size mismatch");
  MatrixField f(spec);
  for (std::size_t i = 0; i < f.cell_count(); ++i) f.cell(i) = value;
  return f;
}

MatrixField MatrixField::adjoint() const {
  MatrixField out(spec_);
  for (std::size_t i = 0; i < cell_count(); ++i) out.cell(i) = cell(i).adjoint();
  return out;
}

bool MatrixField::all_finite() const {
  for (const cplx& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

bool MatrixField::is_zero() const {
  for (const cplx& v : data_)
    if (v != cplx{}) return false;
  return true;
}

void require_same_grid(const MatrixField& a, const MatrixField& b) {
  if (!(a.spec() == b.spec())) throw InvalidArgument("fields live on different grids");
}

MatrixField& MatrixField::operator+=(const MatrixField& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

MatrixField& MatrixField::operator-=(const MatrixField& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

MatrixField& MatrixField::operator*=(cplx c) {
  for (cplx& v : data_) v *= c;
  return *this;
}

MatrixField operator+(MatrixField a, const MatrixField& b) { return a += b; }
MatrixField operator-(MatrixField a, const MatrixField& b) { return a -= b; }
MatrixField operator*(cplx c, MatrixField a) { return a *= c; }
MatrixField operator*(MatrixField a, cplx c) { return a *= c; }

MatrixField operator*(const MatrixField& a, const MatrixField& b) {
  require_same_grid(a, b);
  MatrixField out(a.spec());
  for (std::size_t i = 0; i < a.cell_count(); ++i) out.cell(i).noalias() = a.cell(i) * b.cell(i);
  return out;
}

double l2_distance(const MatrixField& a, const MatrixField& b) {
  require_same_grid(a, b);
  double acc = 0.0;
  const auto& x = a.data();
  const auto& y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::norm(x[i] - y[i]);
  return std::sqrt(acc * a.spec().cell_volume());
}

}  // namespace czlab
