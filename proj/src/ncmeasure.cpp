#include "czlab/ncmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "czlab/error.hpp"
#include "czlab/linalg.hpp"

namespace czlab {

SingularFunction::SingularFunction(std::vector<SingularPair> pairs) {
  std::erase_if(pairs, [](const SingularPair& p) { return !(p.weight > 0.0); });
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const SingularPair& a, const SingularPair& b) { return a.value > b.value; });
  for (const auto& p : pairs) {
    if (!pairs_.empty() && pairs_.back().value == p.value)
      pairs_.back().weight += p.weight;
    else
      pairs_.push_back(p);
  }
}

double SingularFunction::total_weight() const {
  double w = 0.0;
  for (const auto& p : pairs_) w += p.weight;
  return w;
}

double SingularFunction::mu(double t) const {
  double acc = 0.0;
  for (const auto& p : pairs_) {
    acc += p.weight;
    if (t < acc) return p.value;
  }
  return 0.0;
}

double SingularFunction::lambda(double s) const {
  double w = 0.0;
  for (const auto& p : pairs_) {
    if (p.value > s)
      w += p.weight;
    else
      break;
  }
  return w;
}

double SingularFunction::integral(double t) const {
  double acc = 0.0, used = 0.0;
  for (const auto& p : pairs_) {
    if (used >= t) break;
    const double take = std::min(p.weight, t - used);
    acc += take * p.value;
    used += take;
  }
  return acc;
}

double SingularFunction::lp(double p) const {
  if (pairs_.empty()) return 0.0;
  if (std::isinf(p)) return pairs_.front().value;
  double acc = 0.0;
  for (const auto& q : pairs_) acc += q.weight * std::pow(q.value, p);
  return std::pow(acc, 1.0 / p);
}

double SingularFunction::weak_l1() const {
  double best = 0.0, w = 0.0;
  for (const auto& p : pairs_) {
    w += p.weight;
    best = std::max(best, p.value * w);
  }
  return best;
}

cplx trace(const MatrixField& f) {
  cplx acc{};
  for (std::size_t i = 0; i < f.cell_count(); ++i) acc += f.cell(i).trace();
  return acc * f.spec().cell_volume();
}

namespace {

void append_pairs(const MatrixField& f, std::vector<SingularPair>& out) {
  const double vol = f.spec().cell_volume();
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    const Eigen::VectorXd sv = singular_values(f.cell(i));
    for (Eigen::Index k = 0; k < sv.size(); ++k) out.push_back({sv(k), vol});
  }
}

}  // namespace

SingularFunction singular_function(const MatrixField& f) {
  std::vector<SingularPair> pairs;
  pairs.reserve(f.cell_count() * static_cast<std::size_t>(f.m()));
  append_pairs(f, pairs);
  return SingularFunction(std::move(pairs));
}

SingularFunction singular_function(std::span<const MatrixField> fs) {
  std::vector<SingularPair> pairs;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (j > 0) require_same_grid(fs[0], fs[j]);
    append_pairs(fs[j], pairs);
  }
  return SingularFunction(std::move(pairs));
}

double distribution_function(const MatrixField& f, double s) {
  if (s < 0.0) throw InvalidArgument("distribution_function: s must be >= 0");
  return singular_function(f).lambda(s);
}

double lp_norm(const MatrixField& f, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm: p must be >= 1");
  return singular_function(f).lp(p);
}

double lp_norm(std::span<const MatrixField> fs, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm: p must be >= 1");
  return singular_function(fs).lp(p);
}

double k_functional_L1_Linf(const SingularFunction& mu, double t) {
  if (!(t > 0.0)) throw InvalidArgument("k_functional: t must be > 0");
  return mu.integral(t);
}

double k_functional_L1_Linf(const MatrixField& f, double t) {
  return k_functional_L1_Linf(singular_function(f), t);
}

CutoffOptimum k_functional_cutoff(const SingularFunction& mu, double t, Couple couple) {
  if (!(t > 0.0)) throw InvalidArgument("k_functional_cutoff: t must be > 0");
  const auto& ps = mu.pairs();
  if (ps.empty() || ps.front().value == 0.0) return {0.0, 0.0};

  // Distinct values v_0 > v_1 > ... ; on the segment c in [v_{k+1}, v_k] the
  // values above c are exactly v_0..v_k.
  const std::size_t n = ps.size();
  // below[k] = sum_{j > k} w_j v_j^2, summed from the bottom so the last one is exactly 0
  std::vector<double> below(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;) below[k] = below[k + 1] + ps[k].weight * ps[k].value * ps[k].value;
  const double total_sq = below[0];

  auto objective = [&](double S1, double W, double B, double c) {
    const double l1 = S1 - c * W;
    if (couple == Couple::L1_Linf) return l1 + t * std::min(c, ps.front().value);
    return l1 + t * std::sqrt(std::max(B + W * c * c, 0.0));
  };

  // c = v_0: y = 0.
  CutoffOptimum best{objective(0.0, 0.0, total_sq, ps.front().value), ps.front().value};
  double S1 = 0.0, W = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    S1 += ps[k].weight * ps[k].value;
    W += ps[k].weight;
    const double B = below[k + 1];
    const double hi = ps[k].value;
    const double lo = (k + 1 < n) ? ps[k + 1].value : 0.0;
    auto consider = [&](double c) {
      const double v = objective(S1, W, B, c);
      if (v < best.value) best = {v, c};
    };
    consider(lo);
    if (couple == Couple::L1_L2 && B > 0.0 && t * t > W) {
      const double c = std::sqrt(B / (t * t - W));
      if (c > lo && c < hi) consider(c);
    }
  }
  return best;
}

double k_functional_cutoff(const MatrixField& f, double t, Couple couple) {
  return k_functional_cutoff(singular_function(f), t, couple).value;
}

CutoffSplit cutoff_split(const MatrixField& f, double c) {
  CutoffSplit out{MatrixField(f.spec()), MatrixField(f.spec())};
  const int m = f.m();
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    Eigen::JacobiSVD<Mat> svd(f.cell(i), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    Eigen::VectorXd hi(m), lo(m);
    for (int k = 0; k < m; ++k) {
      lo(k) = std::min(sv(k), c);
      hi(k) = sv(k) - lo(k);
    }
    out.z.cell(i) = svd.matrixU() * lo.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();
    out.y.cell(i) = f.cell(i) - out.z.cell(i);
  }
  return out;
}

bool KProfile::is_k_shaped(double tol) const {
  const std::size_t n = values.size();
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  const double eps = tol * std::max(scale, 1.0);
  for (std::size_t i = 1; i < n; ++i) {
    if (values[i] < values[i - 1] - eps) return false;
    if (values[i] / t_grid[i] > values[i - 1] / t_grid[i - 1] + eps / t_grid[i - 1]) return false;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    // slope decreasing on a nonuniform grid
    const double s0 = (values[i] - values[i - 1]) / (t_grid[i] - t_grid[i - 1]);
    const double s1 = (values[i + 1] - values[i]) / (t_grid[i + 1] - t_grid[i]);
    if (s1 > s0 + eps / std::min(t_grid[i] - t_grid[i - 1], t_grid[i + 1] - t_grid[i])) return false;
  }
  return true;
}

KProfile k_profile(const MatrixField& f, const std::vector<double>& t_grid, Couple couple) {
  KProfile prof;
  prof.t_grid = t_grid;
  prof.couple_tag = couple == Couple::L1_Linf ? "(1,inf)" : "(1,2)";
  const SingularFunction mu = singular_function(f);
  for (double t : t_grid)
    prof.values.push_back(couple == Couple::L1_Linf ? mu.integral(t) : k_functional_cutoff(mu, t, couple).value);
  return prof;
}

}  // namespace czlab
