#pragma once

#include <array>
#include <span>
#include <vector>

#include "czlab/matrix_field.hpp"

namespace czlab {

// Cuculescu projections for a positive field f at threshold s.
// q_cubes[n] holds q_n per order-n cube (n = 0..L, q_0 = Id);
// e_cubes[n] holds e_n = q_{n-1} - q_n (n = 1..L, e_cubes[0] unused).
struct CuculescuState {
  double s = 0.0;
  GridSpec spec;
  std::vector<std::vector<cplx>> q_cubes;
  std::vector<std::vector<cplx>> e_cubes;

  Mat q_cube(int n, std::size_t id) const;
  Mat e_cube(int n, std::size_t id) const;
  MatrixField q_field(int n) const;
  MatrixField e_field(int n) const;
  MatrixField q() const { return q_field(spec.L); }
  MatrixField e() const;  // 1 - q
};

CuculescuState cuculescu(const MatrixField& f, double s);

// max over n, Q of ||q_n E_n(f) q_n||_inf - s (nonpositive up to rounding)
double cutoff_excess(const CuculescuState& st, const MatrixField& f);
// max over n, Q of the projection defect of q_n
double projection_defect(const CuculescuState& st);
// -min eigenvalue of q_{n-1} - q_n over n, Q (nonpositive up to rounding)
double monotonicity_defect(const CuculescuState& st);

struct CZConstants {
  double f_l1 = 0.0;
  double a_l2_sq = 0.0;
  double a_l1 = 0.0;
  double trace_p_perp = 0.0;  // sigma(1 - p)
  double trace_1mq = 0.0;     // sigma(1 - q); for general f the sum over parts
  double parts_l1 = 0.0;      // sum of ||f_j||_1 over the positive parts used
  double a_bound = 0.0;       // C with ||a||_2^2 = C^2 s ||f||_1
  double p_bound = 0.0;       // C with sigma(p^perp) = C^2 s^-1 ||f||_1
};

struct CZParts {
  double s = 0.0;
  MatrixField a;
  MatrixField b_d;
  MatrixField b_o;
  MatrixField p;
  std::vector<CuculescuState> states;  // one for a positive input; up to four otherwise
  std::vector<MatrixField> parts;      // the positive fields the states were built from
  CZConstants constants;

  MatrixField b() const { return b_d + b_o; }
};

CZParts cz_decompose_positive(const MatrixField& f, double s);
MatrixField cz_projection(const CuculescuState& state);
CZParts cz_decompose(const MatrixField& f, double s);

// Four positive parts with f = f1 - f2 + i (f3 - f4).
std::array<MatrixField, 4> positive_parts(const MatrixField& f);

// Cellwise lattice meet of projection fields.
MatrixField projection_meet(const std::vector<MatrixField>& ps);

struct VectorCZParts {
  double s = 0.0;
  FieldTuple a;
  FieldTuple b_d;
  FieldTuple b_o;
  MatrixField p;               // shared projection, meet of the component projections
  FieldTuple component_p;
  CZConstants constants;       // for the direct sum (sigma summed over the d copies of p)

  FieldTuple b() const;
};

VectorCZParts cz_decompose_vector(std::span<const MatrixField> fs, double s);

}  // namespace czlab
