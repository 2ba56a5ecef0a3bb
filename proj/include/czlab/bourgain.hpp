#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "czlab/instances.hpp"
#include "czlab/matrix_field.hpp"
#include "czlab/multipliers.hpp"
#include "czlab/report.hpp"

namespace czlab {

// Scalar multiplier T acting entrywise (T (x) I); tags riesz, riesz_perp, leray_ij.
struct ScalarOperator {
  std::string tag;
  Symbol symbol;
  double norm = 0.0;  // L2 operator norm = sup |symbol|

  MatrixField operator()(const MatrixField& f) const { return apply_multiplier(symbol, f); }
};

ScalarOperator make_operator(const std::string& tag, const GridSpec& g);
bool is_known_operator(const std::string& tag, int d);

struct RunOptions {
  int workers = 1;
};

struct ExperimentResult {
  std::string experiment;
  GridSpec grid;
  Table table;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> violations;  // failed hard inequalities
};

// Inequality bookkeeping shared by the experiments.
inline constexpr double kNormSlack = 1e-9;

// ---- CZ decomposition constants ----
ExperimentResult czd_experiment(const InstanceGen& gen, const GridSpec& g, const std::vector<double>& s_grid,
                                std::size_t instances, const std::string& op_tag = "", const RunOptions& opt = {});

// ---- weak type (1,1) ----
std::vector<std::string> weak_type_columns();
// Rows for one field (normalization is the caller's business). Appends violations.
std::vector<std::vector<Value>> weak_type_rows(const ScalarOperator& T, const MatrixField& f,
                                               const std::vector<double>& s_grid, std::uint64_t seed,
                                               std::int64_t instance, std::vector<std::string>& violations);
ExperimentResult weak_type_experiment(const std::string& op_tag, const InstanceGen& gen, const GridSpec& g,
                                      const std::vector<double>& s_grid, std::size_t instances,
                                      const RunOptions& opt = {});

// ---- K-closedness ----
struct KClosedResult {
  FieldTuple y_prime;
  FieldTuple z_prime;
  double s = 0.0;
  double y_l1 = 0.0, z_l2 = 0.0;
  double yp_l1 = 0.0, zp_l2 = 0.0;
  double lower = 0.0;  // ||y||_1 + t ||z||_2
  double upper = 0.0;  // ||y'||_1 + t ||z'||_2
  double ratio = 0.0;
  double recon_residual = 0.0;  // ||x - y' - z'||_2 / ||x||_2
  double member_y = 0.0;        // ||P y' - y'||_2 / ||x||_2
  double member_z = 0.0;
};

KClosedResult kclosed_decompose(const std::string& P, const FieldTuple& x, const FieldTuple& y, const FieldTuple& z,
                                double t);
// (L1, L2) cutoff splitting of a tuple with one common cutoff.
std::pair<FieldTuple, FieldTuple> l1_l2_cutoff_split(const FieldTuple& x, double t);
int projection_components(const std::string& P, int d);
ExperimentResult kclosed_sweep(const std::string& P, const InstanceGen& gen, const GridSpec& g,
                               const std::vector<double>& t_grid, std::size_t instances, const RunOptions& opt = {});

// ---- Sobolev K-functional ----
struct SobolevPoint {
  double lower = 0.0;      // sum_j K_t(d_j f; L1, Linf)
  double g_w11 = 0.0;      // sum_j ||d_j g||_1
  double h_sum = 0.0;      // sum_j ||d_j h||_inf
  double h_sup = 0.0;      // max_j ||d_j h||_inf
  double upper_sum = 0.0;  // g_w11 + t h_sum
  double upper_sup = 0.0;  // g_w11 + t h_sup
  double ratio_sum = 1.0;
  double ratio_sup = 1.0;
  double residual = 0.0;   // ||grad g - U||_2 relative to ||grad f||_2
};

// g with d_j g = U_j; U must be curl-free with zero mean.
MatrixField antiderivative(const FieldTuple& U);
SobolevPoint sobolev_witness(const MatrixField& f, double t);
ExperimentResult sobolev_k_experiment(const InstanceGen& gen, const GridSpec& g, const std::vector<double>& t_grid,
                                      std::size_t instances, const RunOptions& opt = {});

// ---- kernel condition report ----
ExperimentResult kernelcheck_experiment(const std::string& op_tag, const GridSpec& g, int samples);

// Run fn(i) for i in [0, n) on up to `workers` threads; exceptions are rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace czlab
