#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "czlab/grid.hpp"
#include "czlab/matrix_field.hpp"

namespace czlab {

// Kernel k(x, y) on the torus [0,1)^d, defined off the diagonal.
class Kernel {
 public:
  using Eval = std::function<cplx(const Point& x, const Point& y)>;

  Kernel(std::string name, int d, Eval eval, bool translation_invariant = false);

  cplx operator()(const Point& x, const Point& y) const { return eval_(x, y); }
  const std::string& name() const { return name_; }
  int dim() const { return d_; }
  bool translation_invariant() const { return translation_invariant_; }

 private:
  std::string name_;
  int d_;
  Eval eval_;
  bool translation_invariant_;
};

using Vec = std::array<double, kMaxDim>;

// Kernel on R^d \ {0}, angle coordinates.
struct EuclideanKernel {
  std::string name;
  int d = 1;
  std::function<double(const Vec&)> eval;
};

EuclideanKernel riesz_euclidean_kernel();                  // 1/(2 pi x), d = 1
EuclideanKernel leray_euclidean_kernel(int i, int j, int d);  // -(1/omega) d_i[x_j/|x|^d]
double unit_sphere_measure(int d);                         // omega_{d-1}

// Integral over the sup-norm unit sphere {|y|_inf = 1} (counting measure for d = 1).
double sphere_integral(const EuclideanKernel& K);

// Shell-ordered periodization K~(x) = K(x) + sum_{R=1}^{R_max} sum_{|m|_inf = R} K(x + 2 pi m).
class PeriodizedKernel {
 public:
  PeriodizedKernel(EuclideanKernel K, int R_max);

  double shell(const Vec& x, int R) const;
  double partial_sum(const Vec& x, int R) const;
  double value(const Vec& x) const { return partial_sum(x, R_max_); }

  int R_max() const { return R_max_; }
  const EuclideanKernel& base() const { return K_; }
  // c with |shell(x, R)| <= c (|x| + 1) / R^2 over the construction samples
  double tail_constant() const { return tail_constant_; }
  // c (|x|+1)/R_max, the sum of the per-shell envelope over R > R_max
  double tail_bound(const Vec& x) const;
  // max over R in [R_lo, R_max] of R^2 |shell(x,R)| / (|x|+1)
  double envelope_ratio(const Vec& x, int R_lo = 1) const;

  // k(u, v) = c0 + c1 (2 pi)^d K~(2 pi w), w = u - v reduced to [-1/2, 1/2)^d.
  Kernel to_torus_kernel(std::string name, cplx c0, cplx c1) const;

 private:
  EuclideanKernel K_;
  int R_max_;
  double tail_constant_ = 0.0;
};

PeriodizedKernel periodize(const EuclideanKernel& K, int R_max);

// k(u, v) = 1/2 + (i/2) cot(pi (u - v))
Kernel riesz_kernel();
// Same kernel in the w/(w - z) form, z = e^{2 pi i u}, w = e^{2 pi i v}
Kernel riesz_kernel_exponential();

PeriodizedKernel leray_kernel(int i, int j, int d, int R_max = 64);
// Torus kernel of the Leray entry R_ij: delta_ij/d + (2 pi)^d K~_ij.
Kernel leray_torus_kernel(int i, int j, int d, int R_max = 64);

Kernel constant_kernel(int d, cplx c = 1.0);
// 1 / d(x,y)^{d+1}; violates the size condition.
Kernel oversingular_kernel(int d);

// Midpoint quadrature over cells with centre distance > exclusion_radius.
MatrixField apply_kernel_operator(const Kernel& k, const MatrixField& f, double exclusion_radius);

// Deterministic low-discrepancy points (Halton, bases 2, 3, 5, ...).
std::vector<double> halton(std::size_t index, int dims);

struct SamplingOptions {
  double separation_floor = 1.0 / 1024;  // smallest sampled d(x, y')
};

double size_condition_check(const Kernel& k, int samples, const SamplingOptions& opt = {});
double lipschitz_condition_check(const Kernel& k, double alpha, int samples, const SamplingOptions& opt = {});

struct QuadratureOptions {
  int level = -1;       // 2^level points per axis; -1 picks by dimension
  int y_samples = 16;   // points for the inner sup over B_{r/3}(y')
};

struct HormanderSum {
  double value = 0.0;
  int annuli = 0;  // annuli that intersect the torus
};

HormanderSum hormander_l2_sum(const Kernel& k, const Point& y_prime, double r, int m_max,
                              const QuadratureOptions& opt = {});
double hormander_l1_check(const Kernel& k, const Point& y_prime, double r, const QuadratureOptions& opt = {});
// The bound on hormander_l2_sum implied by a Lipschitz constant (alpha) via
// |k(x,y)-k(x,y')| <= C V(x,y')^{-1} (d(y,y')/d(x,y'))^alpha.
double lipschitz_implied_l2_bound(int d, double lipschitz_constant, double alpha, const Point& y_prime, double r,
                                  int m_max, const QuadratureOptions& opt = {});

struct KernelConditionRow {
  std::string kernel;
  std::string condition;
  double parameter = 0.0;
  double value = 0.0;
  int samples = 0;
  std::string grid;
};

void write_kernel_condition_csv(std::ostream& os, const std::vector<KernelConditionRow>& rows);

}  // namespace czlab
