// Acceptance harness: `czlab_acceptance [N]` runs criterion N (or all of them) and
// prints one PASS/FAIL line per criterion, preceded by indented sub-check lines.
// Exit status is nonzero iff some requested criterion failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/SVD>

#include "czlab/bourgain.hpp"
#include "czlab/config.hpp"
#include "czlab/czd.hpp"
#include "czlab/dyadic.hpp"
#include "czlab/fourier.hpp"
#include "czlab/instances.hpp"
#include "czlab/kernels.hpp"
#include "czlab/multipliers.hpp"
#include "czlab/ncmeasure.hpp"
#include "oracles.hpp"

using namespace czlab;

namespace {

// ---- pinned tolerances ----
constexpr double kReconTol = 1e-10;       // CZ reconstruction, relative L2
constexpr double kSlack = 1e-9;           // hard inequalities: relative and additive
constexpr double kProjTol = 1e-10;        // projection algebra, relative
constexpr double kSymbolTol = 1e-12;      // rho = rho rho on symbols
constexpr double kHolmstedtTol = 1e-9;    // relative
constexpr double kResidualTol = 1e-9;     // K-closed reconstruction and membership
constexpr double kClosedFormTol = 1e-9;   // single-frequency Sobolev
constexpr double kStability = 2.0;        // refinement factor
constexpr double kOrderLo = 1.5, kOrderHi = 2.5;  // first-order error ratio window
constexpr double kBudget1 = 60.0, kBudget2 = 600.0;  // seconds

const double pi = std::acos(-1.0);

class Report {
 public:
  void check(const std::string& what, bool ok, const std::string& detail = "") {
    all_ = all_ && ok;
    std::printf("  %-6s %s%s%s\n", ok ? "ok" : "FAILED", what.c_str(), detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
  }
  bool ok() const { return all_; }

 private:
  bool all_ = true;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}
std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}
std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool stable(double a, double b) {
  if (a == 0.0 && b == 0.0) return true;
  if (!(a > 0.0) || !(b > 0.0)) return false;
  return b / a <= kStability && a / b <= kStability;
}

int workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<double> logspace(double a, double b, int n) {
  return ParamGrid{std::pow(10.0, a), std::pow(10.0, b), n, true}.values();
}

InstanceGen make_gen(std::uint64_t seed, InstanceKind kind = InstanceKind::RandomTrigPoly) {
  InstanceGen g;
  g.seed = seed;
  g.kind = kind;
  g.freq_cutoff = 4;
  return g;
}

double column_max(const Table& t, const std::string& col) {
  double m = 0.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) m = std::max(m, t.number(r, col));
  return m;
}

bool table_finite(const Table& t) {
  for (const auto& row : t.rows)
    for (const auto& v : row)
      if (const double* x = std::get_if<double>(&v); x && !std::isfinite(*x)) return false;
  return true;
}

double l2(const FieldTuple& fs) { return lp_norm(std::span<const MatrixField>(fs), 2.0); }

FieldTuple minus(const FieldTuple& a, const FieldTuple& b) {
  FieldTuple r;
  for (std::size_t k = 0; k < a.size(); ++k) r.push_back(a[k] - b[k]);
  return r;
}

cplx inner(const FieldTuple& a, const FieldTuple& b) {
  cplx acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double vol = a[k].spec().cell_volume();
    for (std::size_t c = 0; c < a[k].cell_count(); ++c) acc += (a[k].cell(c).adjoint() * b[k].cell(c)).trace() * vol;
  }
  return acc;
}

// ---------------------------------------------------------------- criterion 1

// Exact infimum over cutoffs for (L1, Linf): the objective is piecewise linear in c
// with kinks at the singular values, so scanning those is exhaustive.
double exact_cutoff_infimum(const MatrixField& f, double t) {
  const auto r = oracle::rearrangement(f);
  double best = INFINITY;
  std::vector<double> cands{0.0};
  for (auto [v, w] : r) cands.push_back(v);
  for (double c : cands) {
    double y = 0.0, zmax = 0.0;
    for (auto [v, w] : r) {
      y += w * std::max(v - c, 0.0);
      if (w > 0) zmax = std::max(zmax, std::min(v, c));
    }
    best = std::min(best, y + t * zmax);
  }
  return best;
}

bool criterion1() {
  Report rep;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240101);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int instances = 520;
  double recon = 0.0, trace_margin = -INFINITY, excess = -INFINITY, holm = 0.0;
  double p_idem = 0.0, p_comp = 0.0, p_orth = 0.0, p_adj = 0.0;
  int general = 0;
  for (int i = 0; i < instances; ++i) {
    const int d = 1 + i % 2;
    const int m = 1 + (i / 2) % 4;
    const GridSpec g{d, (d == 1 ? 3 : 2) + (i / 8) % 4, m};  // L in 3..6 (d = 1), 2..5 (d = 2)
    const double scale = std::pow(10.0, 4.0 * U(rng) - 2.0);
    // every fourth field positive, so both Cuculescu paths run
    MatrixField f = i % 4 == 3 ? oracle::random_positive_field(g, rng, scale) : oracle::random_field(g, rng, scale);
    const double finf = lp_norm(f, INFINITY);
    const double s = finf * std::pow(10.0, 2.0 * U(rng) - 1.5);

    const CZParts cz = cz_decompose(f, s);
    general += cz.states.size() > 1;
    recon = std::max(recon, l2_distance(cz.a + cz.b_d + cz.b_o, f) / lp_norm(f, 2.0));
    for (std::size_t j = 0; j < cz.states.size(); ++j) {
      const CuculescuState& st = cz.states[j];
      const double lhs = trace(st.e()).real();
      const double rhs = lp_norm(cz.parts[j], 1.0) / s;
      trace_margin = std::max(trace_margin, lhs - (rhs * (1 + kSlack) + kSlack));
      excess = std::max(excess, cutoff_excess(st, cz.parts[j]) - kSlack * (1.0 + s));
    }

    // projection algebra on a second independent field
    const std::string P = d == 1 ? "riesz" : "leray";
    const std::string Pp = P + "_perp";
    FieldTuple x, y;
    for (int k = 0; k < (d == 1 ? 1 : d); ++k) {
      x.push_back(k == 0 ? f : oracle::random_field(g, rng, scale));
      y.push_back(oracle::random_field(g, rng, 1.0));
    }
    const double nx = l2(x), ny = l2(y);
    const FieldTuple Px = apply_projection(P, x), Ppx = apply_projection(Pp, x);
    p_idem = std::max(p_idem, l2(minus(apply_projection(P, Px), Px)) / nx);
    p_idem = std::max(p_idem, l2(minus(apply_projection(Pp, Ppx), Ppx)) / nx);
    FieldTuple sum;
    for (std::size_t k = 0; k < x.size(); ++k) sum.push_back(Px[k] + Ppx[k]);
    p_comp = std::max(p_comp, l2(minus(sum, x)) / nx);
    p_orth = std::max(p_orth, l2(apply_projection(P, Ppx)) / nx);
    p_adj = std::max(p_adj, std::abs(inner(Px, y) - inner(x, apply_projection(P, y))) / (nx * ny));

    // Holmstedt
    const double t = m * std::pow(10.0, 2.5 * U(rng) - 2.0);
    const double k = k_functional_L1_Linf(f, t);
    const double scan = exact_cutoff_infimum(f, t);
    holm = std::max(holm, std::abs(k - scan) / std::max(scan, 1e-300));
  }
  rep.check("instances", instances >= 500,
            fmt("%.0f random fields, %.0f general, %.0f positive", instances, general, instances - general));
  rep.check("CZ reconstruction", recon <= kReconTol, fmt("max relative L2 error %.3g", recon));
  rep.check("trace(1-q) <= ||f||_1 / s", trace_margin <= 0.0, fmt("max lhs - rhs - slack %.3g", trace_margin));
  rep.check("||q_n E_n(f) q_n|| <= s", excess <= 0.0, fmt("max excess - slack %.3g", excess));
  rep.check("projection idempotency", p_idem <= kProjTol, fmt("%.3g", p_idem));
  rep.check("projection complementarity", p_comp <= kProjTol && p_orth <= kProjTol,
            fmt("sum %.3g, P P_perp %.3g", p_comp, p_orth));
  rep.check("projection self-adjointness", p_adj <= kProjTol, fmt("%.3g", p_adj));

  double rho = 0.0;
  for (int d = 1; d <= 3; ++d) {
    for (int L = 2; L <= (d == 3 ? 4 : 6); ++L) {
      for (int i = 0; i < d && d > 1; ++i)
        for (int j = 0; j < d; ++j) {
          Symbol acc = Symbol::constant(d, L, 0.0);
          for (int k = 0; k < d; ++k) acc = acc + leray_symbol(d, L, i, k) * leray_symbol(d, L, k, j);
          const Symbol r = leray_symbol(d, L, i, j);
          for (std::size_t sl = 0; sl < r.size(); ++sl) rho = std::max(rho, std::abs(acc[sl] - r[sl]));
        }
      if (d == 1) {
        const Symbol r = riesz_symbol(L);
        const Symbol rr = r * r;
        for (std::size_t sl = 0; sl < r.size(); ++sl) rho = std::max(rho, std::abs(rr[sl] - r[sl]));
      }
    }
  }
  rep.check("symbol identity rho = rho rho", rho <= kSymbolTol, fmt("max entry error %.3g", rho));
  rep.check("Holmstedt = exact cutoff infimum", holm <= kHolmstedtTol, fmt("max relative gap %.3g", holm));
  const double el = seconds_since(t0);
  rep.check("runtime", el < kBudget1, fmt("%.1f s", el));
  return rep.ok();
}

// ---------------------------------------------------------------- criterion 2

// s = 2^k, k = -14, -11, ..., 13: 2^27 > 10^8
std::vector<double> s_grid_c2() {
  std::vector<double> s;
  for (int k = -14; k <= 13; k += 3) s.push_back(std::ldexp(1.0, k));
  return s;
}

bool criterion2() {
  Report rep;
  const auto t0 = std::chrono::steady_clock::now();
  RunOptions opt;
  opt.workers = workers();
  const auto s = s_grid_c2();
  rep.check("s grid", s.back() / s.front() >= 1e8, fmt("%.3g .. %.3g", s.front(), s.back()));
  struct Family {
    std::string op;
    int d;
    std::size_t instances;
  };
  const std::vector<Family> fams{{"riesz", 1, 20}, {"leray_11", 2, 20}, {"leray_12", 2, 20}};
  const std::vector<std::string> consts{"C_a", "C_p", "C_d", "C_o"};
  for (const auto& fam : fams) {
    std::vector<std::vector<double>> maxima;  // per L in {5, 6, 7}
    for (int L = 5; L <= 7; ++L) {
      const auto res = czd_experiment(make_gen(11), GridSpec{fam.d, L, 2}, s, fam.instances, fam.op, opt);
      rep.check(fam.op + " L=" + std::to_string(L) + " hard inequalities", res.violations.empty(),
                res.violations.empty() ? fmt("%.0f rows", static_cast<double>(res.table.rows.size()))
                                       : res.violations.front());
      rep.check(fam.op + " L=" + std::to_string(L) + " constants finite", table_finite(res.table));
      std::vector<double> mx;
      for (const auto& c : consts) mx.push_back(column_max(res.table, c));
      maxima.push_back(mx);
    }
    for (int k = 0; k < 2; ++k) {
      for (std::size_t c = 0; c < consts.size(); ++c) {
        const double a = maxima[k][c], b = maxima[k + 1][c];
        rep.check(fam.op + " " + consts[c] + " L=" + std::to_string(5 + k) + "->" + std::to_string(6 + k),
                  stable(a, b), fmt("%.6g -> %.6g", a, b));
      }
    }
  }
  const double el = seconds_since(t0);
  rep.check("runtime", el < kBudget2, fmt("%.1f s", el));
  return rep.ok();
}

// ---------------------------------------------------------------- criterion 3

bool criterion3() {
  Report rep;
  RunOptions opt;
  opt.workers = workers();
  const auto s = logspace(-3, 3, 25);
  std::vector<double> c_emp;
  for (int L = 6; L <= 7; ++L) {
    const auto res = weak_type_experiment("riesz", make_gen(31), GridSpec{1, L, 2}, s, 100, opt);
    const std::string tag = "L=" + std::to_string(L);
    rep.check(tag + " four-term accounting and bound", res.violations.empty(),
              res.violations.empty() ? fmt("%.0f rows checked", static_cast<double>(res.table.rows.size()))
                                     : res.violations.front());
    // the split is re-derived from the table as an independent reading of the rows
    double worst = -INFINITY;
    for (std::size_t r = 0; r < res.table.rows.size(); ++r) {
      const auto n = [&](const char* c) { return res.table.number(r, c); };
      worst = std::max({worst, n("lambda_Tf_4s") - n("split_sum") - kSlack,
                        n("lambda_Ta") - n("markov_Ta") * (1 + kSlack) - kSlack,
                        n("lambda_1mp_Tb") - n("trace_p_perp") * (1 + kSlack) - kSlack,
                        n("lambda_pTb_1mp") - n("trace_p_perp") * (1 + kSlack) - kSlack,
                        n("lambda_pTbp") - n("markov_pTbp") * (1 + kSlack) - kSlack,
                        n("lambda_Tf_4s") - n("bound") * (1 + kSlack) - kSlack,
                        std::abs(n("f_l1") - 1.0) - 1e-12});
    }
    rep.check(tag + " term-by-term rows", worst <= 0.0, fmt("max violation margin %.3g", worst));
    std::vector<double> w = res.summary["weak_constants"].get<std::vector<double>>();
    const double mx = *std::max_element(w.begin(), w.end());
    const double mn = *std::min_element(w.begin(), w.end());
    rep.check(tag + " sup_s s lambda(s) / ||f||_1 bounded", std::isfinite(mx) && w.size() == 100,
              fmt("100 instances, range [%.4g, %.4g]", mn, mx));
    c_emp.push_back(mx);
  }
  rep.check("refinement L=6->7", stable(c_emp[0], c_emp[1]), fmt("%.6g -> %.6g", c_emp[0], c_emp[1]));
  return rep.ok();
}

// ---------------------------------------------------------------- criterion 4

bool criterion4() {
  Report rep;
  RunOptions opt;
  opt.workers = workers();
  const auto t = logspace(-3, 3, 25);
  struct Case {
    std::string P;
    int d, L;
    InstanceKind kind;
  };
  const std::vector<Case> cases{{"riesz", 1, 6, InstanceKind::Analytic},
                                {"leray", 2, 4, InstanceKind::RandomTrigPoly},
                                {"leray_perp", 2, 4, InstanceKind::RandomTrigPoly}};
  for (const auto& c : cases) {
    std::vector<double> cs;
    for (int L = c.L; L <= c.L + 1; ++L) {
      const auto res = kclosed_sweep(c.P, make_gen(41, c.kind), GridSpec{c.d, L, 2}, t, 50, opt);
      const std::string tag = c.P + " d=" + std::to_string(c.d) + " L=" + std::to_string(L);
      const double rr = column_max(res.table, "recon_residual");
      const double my = column_max(res.table, "member_y"), mz = column_max(res.table, "member_z");
      const double C = res.summary["C_emp"].get<double>();
      rep.check(tag + " rows", res.table.rows.size() == 50 * t.size() && res.violations.empty(),
                fmt("%.0f rows", static_cast<double>(res.table.rows.size())));
      rep.check(tag + " x = y' + z', y' and z' in range", rr <= kResidualTol && my <= kResidualTol && mz <= kResidualTol,
                fmt("residuals %.3g, %.3g, %.3g", rr, my, mz));
      rep.check(tag + " C_emp finite", std::isfinite(C) && table_finite(res.table), fmt("C_emp %.6g", C));
      cs.push_back(C);
    }
    rep.check(c.P + " refinement", stable(cs[0], cs[1]), fmt("%.6g -> %.6g", cs[0], cs[1]));
  }
  return rep.ok();
}

// ---------------------------------------------------------------- criterion 5

bool criterion5() {
  Report rep;
  RunOptions opt;
  opt.workers = workers();
  const auto t = logspace(-3, 3, 25);
  std::vector<double> cd;
  for (int L = 5; L <= 6; ++L) {
    const auto res = sobolev_k_experiment(make_gen(51), GridSpec{2, L, 2}, t, 100, opt);
    const std::string tag = "L=" + std::to_string(L);
    const double lo = res.summary["ratio_sum_min"].get<double>();
    const double hi = res.summary["C_emp"].get<double>();
    const double resid = column_max(res.table, "residual");
    rep.check(tag + " rows", res.table.rows.size() == 100 * t.size() && res.violations.empty(),
              fmt("%.0f rows", static_cast<double>(res.table.rows.size())));
    rep.check(tag + " ratio in [1, C_d]", lo >= 1.0 - kSlack && std::isfinite(hi),
              fmt("min %.12g, C_d = max %.6g", lo, hi));
    rep.check(tag + " witness residual", resid <= kResidualTol, fmt("%.3g", resid));
    cd.push_back(hi);
  }
  rep.check("C_d refinement L=5->6", stable(cd[0], cd[1]), fmt("%.6g -> %.6g", cd[0], cd[1]));

  // chi_n (x) A: sum_j K_t(d_j f) = |n|_1 (sum_k (s_k - s_t)_+ + t s_t), s_t the t-th singular value
  std::mt19937_64 rng(55);
  std::normal_distribution<double> N;
  double worst = 0.0;
  int cases = 0;
  for (int L = 4; L <= 5; ++L) {
    const GridSpec g{2, L, 3};
    Mat A(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) A(i, j) = cplx(N(rng), N(rng));
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Mat>(A).singularValues();
    for (const Index& n : {Index{1, 0, 0}, Index{0, -2, 0}, Index{2, -3, 0}, Index{-1, 1, 0}, Index{3, 3, 0}}) {
      const auto f = character_field(g, n, A);
      const double n1 = std::abs(n[0]) + std::abs(n[1]);
      for (double tt : {1e-3, 0.3, 1.0, 1.7, 2.5, 4.0, 1e3}) {
        const double st = tt < 3.0 ? sv(static_cast<int>(tt)) : 0.0;
        double ex = 0.0;
        for (int k = 0; k < 3; ++k) ex += std::max(sv(k) - st, 0.0);
        const double closed = n1 * (ex + tt * st);
        const auto pt = sobolev_witness(f, tt);
        worst = std::max({worst, std::abs(pt.lower - closed) / closed, std::abs(pt.upper_sum - closed) / closed});
        ++cases;
      }
    }
  }
  rep.check("single-frequency closed forms", worst <= kClosedFormTol,
            fmt("%.0f cases, max relative error %.3g", cases, worst));
  return rep.ok();
}

// ---------------------------------------------------------------- criterion 6

double max_error_in(const MatrixField& a, const MatrixField& b, const std::function<bool(const Point&)>& target) {
  double e = 0.0;
  const GridSpec& g = a.spec();
  for (std::size_t c = 0; c < g.cells(); ++c)
    if (target(cell_center(g, c))) e = std::max(e, (Mat(a.cell(c)) - Mat(b.cell(c))).norm());
  return e;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + fmt("%.3f", x);
  return s;
}

bool in_window(const std::vector<double>& ratios) {
  return std::all_of(ratios.begin(), ratios.end(), [](double r) { return r >= kOrderLo && r <= kOrderHi; });
}

bool criterion6() {
  Report rep;
  // Riesz: g 1_[0,1/4), errors on (1/2, 3/4)
  {
    std::vector<double> err, ratios;
    for (int L = 6; L <= 10; ++L) {
      const GridSpec g{1, L, 1};
      MatrixField f(g);
      for (std::size_t c = 0; c < g.cells(); ++c) {
        const double u = cell_center(g, c)[0];
        if (u < 0.25) f.cell(c)(0, 0) = std::cos(6 * pi * u) + 0.5 * std::sin(14 * pi * u) + 0.3;
      }
      const auto quad = apply_kernel_operator(riesz_kernel(), f, 0.125);
      err.push_back(max_error_in(quad, riesz_projection(f), [](const Point& p) { return p[0] > 0.5 && p[0] < 0.75; }));
      if (err.size() > 1) ratios.push_back(err[err.size() - 2] / err.back());
    }
    rep.check("riesz kernel vs multiplier, error ratio per level in [1.5, 2.5]", in_window(ratios),
              "L=6..10 ratios " + join(ratios) + fmt(", final error %.3g", err.back()));
  }
  // Leray d = 2: g 1_[0,1/4)^2, errors on |X-0.6|, |Y-0.6| < 0.1
  for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 0}}) {
    const Kernel k = leray_torus_kernel(i, j, 2, 64);
    std::vector<double> err, ratios;
    for (int L = 4; L <= 7; ++L) {
      const GridSpec g{2, L, 1};
      MatrixField f(g);
      for (std::size_t c = 0; c < g.cells(); ++c) {
        const Point p = cell_center(g, c);
        if (p[0] < 0.25 && p[1] < 0.25)
          f.cell(c)(0, 0) = std::cos(2 * pi * (2 * p[0] + p[1])) + 0.5 * std::sin(6 * pi * p[1]) + 0.3;
      }
      const auto quad = apply_kernel_operator(k, f, 0.125);
      const auto mult = apply_multiplier(leray_symbol(2, L, i, j), f);
      err.push_back(max_error_in(quad, mult, [](const Point& p) {
        return std::abs(p[0] - 0.6) < 0.1 && std::abs(p[1] - 0.6) < 0.1;
      }));
      if (err.size() > 1) ratios.push_back(err[err.size() - 2] / err.back());
    }
    rep.check("leray_" + std::to_string(i + 1) + std::to_string(j + 1) +
                  " kernel vs multiplier, error ratio per level in [1.5, 2.5]",
              in_window(ratios), "L=4..7 ratios " + join(ratios) + fmt(", final error %.3g", err.back()));
  }
  // periodized 1/(2 pi x) against cot
  {
    double worst = 0.0, scaled = 0.0;
    for (int R : {8, 32, 128, 512}) {
      const auto pk = periodize(riesz_euclidean_kernel(), R);
      for (int s = 1; s < 400; ++s) {
        if (s == 200) continue;
        Vec x{};
        x[0] = -pi + 2 * pi * s / 400.0;
        const double err = std::abs(pk.value(x) - 1.0 / (4 * pi * std::tan(x[0] / 2)));
        worst = std::max(worst, err / pk.tail_bound(x));
        scaled = std::max(scaled, err * R);
      }
    }
    rep.check("cot periodization error <= c (|x|+1) / R_max", worst <= 1.0 + kSlack,
              fmt("max error / bound %.4f, max R_max * error %.4g", worst, scaled));
  }
  // per-shell envelope at construction lattice and fresh low-discrepancy points
  {
    struct K {
      std::string name;
      PeriodizedKernel pk;
    };
    std::vector<K> ks{{"riesz", periodize(riesz_euclidean_kernel(), 64)},
                      {"leray_11", leray_kernel(0, 0, 2, 32)},
                      {"leray_12", leray_kernel(0, 1, 2, 32)}};
    for (const auto& k : ks) {
      const int d = k.pk.base().d;
      std::vector<Vec> pts;
      for (std::size_t h = 100; h < 200; ++h) {
        const auto u = halton(h, d);
        Vec x{};
        for (int a = 0; a < d; ++a) x[a] = -pi + 2 * pi * u[a];
        pts.push_back(x);
      }
      const double lat[] = {-pi, -pi / 2, pi / 2, pi};
      for (double a : lat) {
        Vec x{};
        x[0] = a;
        if (d == 2)
          for (double b : lat) {
            x[1] = b;
            pts.push_back(x);
          }
        else
          pts.push_back(x);
      }
      double worst = 0.0;
      for (const auto& x : pts) worst = std::max(worst, k.pk.envelope_ratio(x));
      rep.check(k.name + " shell envelope (|x|+1)/R^2", worst <= k.pk.tail_constant() * (1 + kSlack),
                fmt("%.0f points, max %.4g vs c = %.4g", static_cast<double>(pts.size()), worst, k.pk.tail_constant()));
    }
  }
  return rep.ok();
}

// ---------------------------------------------------------------- criterion 7

bool criterion7() {
  Report rep;
  std::mt19937_64 rng(70);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int mismatched = 0, cells = 0, bad = 0, nontrivial = 0;
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + i % 2;
    const int L = d == 1 ? 3 + (i / 2) % 5 : 2 + (i / 2) % 4;
    const GridSpec g{d, L, 1};
    MatrixField f = oracle::random_positive_field(g, rng, std::pow(10.0, 4.0 * U(rng) - 2.0));
    // a few spikes so that stopping happens at several orders
    for (int k = 0; k < 3; ++k) f.cell(rng() % g.cells())(0, 0) *= 1.0 + 30.0 * U(rng);
    const double mean = trace(f).real();
    const double s = mean * std::pow(10.0, 1.3 * U(rng) - 0.2);
    const auto st = cuculescu(f, s);
    const MatrixField q = st.q();
    const auto oracle_bad = oracle::maximal_bad_set(f, s);
    int here = 0;
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const bool qzero = std::abs(q.cell(c)(0, 0)) < 0.5;
      mismatched += qzero != oracle_bad[c];
      here += qzero;
      ++cells;
    }
    bad += here;
    nontrivial += here > 0 && here < static_cast<int>(g.cells());
  }
  rep.check("{q = 0} equals {max_n E_n f > s} cell by cell", mismatched == 0,
            fmt("%.0f mismatches over %.0f cells, %.0f bad cells", mismatched, cells, bad));
  rep.check("instances with a proper nonempty bad set", nontrivial >= 100, fmt("%.0f of 200", nontrivial));
  return rep.ok();
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<bool()>>> criteria{
      {"exact identities", criterion1},
      {"CZ constants with refinement stability", criterion2},
      {"weak type (1,1) of the Riesz projection", criterion3},
      {"K-closedness by the CZ construction", criterion4},
      {"Sobolev K-functional equivalence", criterion5},
      {"kernel and multiplier consistency", criterion6},
      {"commutative bad set equals the maximal set", criterion7},
  };
  std::vector<int> which;
  if (argc > 1) {
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [1-%zu]\n", argv[0], criteria.size());
      return 2;
    }
    which.push_back(n);
  } else {
    for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) which.push_back(n);
  }
  bool all = true;
  for (int n : which) {
    const auto t0 = std::chrono::steady_clock::now();
    std::printf("criterion %d: %s\n", n, criteria[n - 1].first.c_str());
    std::fflush(stdout);
    bool ok = false;
    try {
      ok = criteria[n - 1].second();
    } catch (const std::exception& e) {
      std::printf("  FAILED exception: %s\n", e.what());
    }
    std::printf("%s criterion %d (%.1f s)\n", ok ? "PASS" : "FAIL", n, seconds_since(t0));
    std::fflush(stdout);
    all = all && ok;
  }
  return all ? 0 : 1;
}
