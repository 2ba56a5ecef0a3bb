#pragma once

#include <functional>
#include <string>
#include <vector>

#include "czlab/fourier.hpp"
#include "czlab/matrix_field.hpp"

namespace czlab {

// Scalar Fourier multiplier on the frequency box of a grid (d, L).
class Symbol {
 public:
  Symbol() = default;
  Symbol(int d, int L, std::string name);

  static Symbol from_function(int d, int L, std::string name, const std::function<cplx(const Index&)>& fn);
  static Symbol constant(int d, int L, cplx c);

  int d() const { return d_; }
  int L() const { return L_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return values_.size(); }

  cplx operator[](std::size_t slot) const { return values_[slot]; }
  cplx& operator[](std::size_t slot) { return values_[slot]; }
  cplx at(const Index& n) const;

  double sup_modulus() const;
  bool is_projection() const;  // values exactly 0 or 1

  Symbol operator*(const Symbol& o) const;
  Symbol operator+(const Symbol& o) const;
  Symbol complement() const;  // 1 - sym

 private:
  int d_ = 1;
  int L_ = 0;
  std::string name_;
  std::vector<cplx> values_;  // FFT slot order
};

MatrixField apply_multiplier(const Symbol& sym, const MatrixField& f);
FourierCoefficients apply_multiplier(const Symbol& sym, const FourierCoefficients& fc);

// Riesz projection (d = 1): keeps n >= 0; the Nyquist frequency -N/2 is negative.
Symbol riesz_symbol(int L);
MatrixField riesz_projection(const MatrixField& f);
MatrixField riesz_complement(const MatrixField& f);

// Product Fejer weights prod_j (1 - |n_j|/lambda)_+.
Symbol fejer_symbol(int d, int L, double lambda);
MatrixField fejer(const MatrixField& f, double lambda);

// rho_ij(n) = delta_ij - n_i n_j / |n|^2, rho_ij(0) = delta_ij.
Symbol leray_symbol(int d, int L, int i, int j);
FieldTuple leray_projection(const FieldTuple& f);
FieldTuple leray_complement(const FieldTuple& f);

// eta_j(n) = i n_j
Symbol derivative_symbol(int d, int L, int j);
MatrixField partial_derivative(const MatrixField& f, int j);
double sobolev_norm(const MatrixField& f, double p);

enum class Membership { RangeP, RangePPerp };
// L2 residual of the defining relations of H(P) or H(P^perp) for the Leray projection.
double membership_check(const FieldTuple& f, Membership which);

// Generic projection tags used by the experiments: riesz, riesz_perp, leray, leray_perp.
FieldTuple apply_projection(const std::string& tag, const FieldTuple& f);
bool is_known_projection(const std::string& tag);
// ||Pf - f||_2 over the tuple
double projection_residual(const std::string& tag, const FieldTuple& f);

}  // namespace czlab
