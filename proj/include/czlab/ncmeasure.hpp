#pragma once

#include <span>
#include <string>
#include <vector>

#include "czlab/matrix_field.hpp"

namespace czlab {

struct SingularPair {
  double value = 0.0;
  double weight = 0.0;
};

// Weighted decreasing rearrangement mu_f as a step function on (0, total_weight).
class SingularFunction {
 public:
  SingularFunction() = default;
  // Pairs in any order; equal values are merged, nonpositive weights dropped.
  explicit SingularFunction(std::vector<SingularPair> pairs);

  const std::vector<SingularPair>& pairs() const { return pairs_; }
  double total_weight() const;

  double mu(double t) const;          // right-continuous rearrangement
  double lambda(double s) const;      // weight of values strictly above s
  double integral(double t) const;    // int_0^t mu
  double lp(double p) const;          // p = +inf allowed
  double weak_l1() const;             // sup_s s * lambda(s)

 private:
  std::vector<SingularPair> pairs_;
};

cplx trace(const MatrixField& f);
SingularFunction singular_function(const MatrixField& f);
// Direct sum of several fields (weights add up to m * count).
SingularFunction singular_function(std::span<const MatrixField> fs);

double distribution_function(const MatrixField& f, double s);
double lp_norm(const MatrixField& f, double p);
double lp_norm(std::span<const MatrixField> fs, double p);

double k_functional_L1_Linf(const MatrixField& f, double t);
double k_functional_L1_Linf(const SingularFunction& mu, double t);

enum class Couple { L1_Linf, L1_L2 };

struct CutoffOptimum {
  double value = 0.0;   // ||(|f|-c)_+||_1 + t ||min(|f|,c)||_{p1}
  double cutoff = 0.0;
};

// Best spectral-cutoff splitting; an upper estimate of the K-functional.
CutoffOptimum k_functional_cutoff(const SingularFunction& mu, double t, Couple couple);
double k_functional_cutoff(const MatrixField& f, double t, Couple couple);

// f = y + z with y = u (|f| - c)_+, z = u min(|f|, c) from the polar decomposition.
struct CutoffSplit {
  MatrixField y;
  MatrixField z;
};
CutoffSplit cutoff_split(const MatrixField& f, double c);

struct KProfile {
  std::vector<double> t_grid;
  std::vector<double> values;
  std::string couple_tag;

  // Nondecreasing, concave and K_t/t nonincreasing, up to tol (relative to max value).
  bool is_k_shaped(double tol = 1e-12) const;
};

KProfile k_profile(const MatrixField& f, const std::vector<double>& t_grid, Couple couple);

}  // namespace czlab
