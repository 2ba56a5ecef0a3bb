#include "czlab/bourgain.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "czlab/czd.hpp"
#include "czlab/dyadic.hpp"
#include "czlab/error.hpp"
#include "czlab/kernels.hpp"
#include "czlab/ncmeasure.hpp"

namespace czlab {

namespace {

std::string describe(const std::string& what, double lhs, double rhs, std::uint64_t seed, double param) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": lhs=" << lhs << " rhs=" << rhs << " seed=" << seed << " param=" << param;
  return os.str();
}

void check_le(std::vector<std::string>& v, const std::string& what, double lhs, double rhs, std::uint64_t seed,
              double param) {
  if (!(lhs <= rhs)) v.push_back(describe(what, lhs, rhs, seed, param));
}

double l2_sq(const MatrixField& f) {
  const double n = lp_norm(f, 2.0);
  return n * n;
}

nlohmann::json base_summary(const std::string& experiment, const GridSpec& g, const InstanceGen& gen,
                            std::size_t instances) {
  const DyadicConstants dc = dyadic_constants(g);
  nlohmann::json seeds = nlohmann::json::array();
  for (std::size_t i = 0; i < instances; ++i) seeds.push_back(gen.instance_seed(i));
  return {{"experiment", experiment},
          {"grids", nlohmann::json::array({grid_label(g)})},
          {"seeds", seeds},
          {"base_seed", gen.seed},
          {"constants", {{"delta", dc.delta}, {"C1", dc.C1}, {"C2", dc.C2}, {"ahlfors_low", dc.ahlfors_low},
                         {"ahlfors_high", dc.ahlfors_high}}}};
}

double column_max(const Table& t, const std::string& name) {
  double m = 0.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double v = t.number(r, name);
    if (std::isfinite(v)) m = std::max(m, v);
  }
  return m;
}

// Merge per-instance row blocks in instance order, then violations.
void merge(ExperimentResult& res, std::vector<std::vector<std::vector<Value>>>& blocks,
           std::vector<std::vector<std::string>>& viol) {
  for (auto& b : blocks)
    for (auto& r : b) res.table.add(std::move(r));
  for (auto& v : viol)
    for (auto& s : v) res.violations.push_back(std::move(s));
}

}  // namespace

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < w; ++k)
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

bool is_known_operator(const std::string& tag, int d) {
  if (tag == "riesz" || tag == "riesz_perp") return d == 1;
  if (tag.size() == 8 && tag.rfind("leray_", 0) == 0) {
    const int i = tag[6] - '1', j = tag[7] - '1';
    return d >= 2 && i >= 0 && i < d && j >= 0 && j < d;
  }
  return false;
}

ScalarOperator make_operator(const std::string& tag, const GridSpec& g) {
  if (!is_known_operator(tag, g.d)) throw InvalidArgument("unknown operator tag '" + tag + "' for d = " + std::to_string(g.d));
  ScalarOperator T;
  T.tag = tag;
  if (tag == "riesz")
    T.symbol = riesz_symbol(g.L);
  else if (tag == "riesz_perp")
    T.symbol = riesz_symbol(g.L).complement();
  else
    T.symbol = leray_symbol(g.d, g.L, tag[6] - '1', tag[7] - '1');
  T.norm = T.symbol.sup_modulus();
  return T;
}

// ------------------------------------------------------------------ czd

ExperimentResult czd_experiment(const InstanceGen& gen, const GridSpec& g, const std::vector<double>& s_grid,
                                std::size_t instances, const std::string& op_tag, const RunOptions& opt) {
  ExperimentResult res;
  res.experiment = "czd";
  res.grid = g;
  const bool with_T = !op_tag.empty();
  ScalarOperator T;
  if (with_T) T = make_operator(op_tag, g);
  res.table.columns = {"seed", "instance", "s", "f_l1", "parts_l1", "recon_rel", "a_l2_sq", "a_l1", "C_a",
                       "trace_p_perp", "C_p", "trace_1mq", "trace_1mq_bound", "cutoff_excess",
                       "pTbdp_l1", "pTbop_l1", "C_d", "C_o"};
  std::vector<std::vector<std::vector<Value>>> blocks(instances);
  std::vector<std::vector<std::string>> viol(instances);
  parallel_for(instances, opt.workers, [&](std::size_t i) {
    const std::uint64_t seed = gen.instance_seed(i);
    const MatrixField f = gen.generate(g, i, 1).at(0);
    const double fn2 = lp_norm(f, 2.0);
    for (double s : s_grid) {
      const CZParts cz = cz_decompose(f, s);
      const auto& c = cz.constants;
      const MatrixField rec = cz.a + cz.b_d + cz.b_o;
      const double recon = fn2 > 0 ? l2_distance(rec, f) / fn2 : l2_distance(rec, f);
      double excess = -s;
      for (std::size_t k = 0; k < cz.states.size(); ++k) excess = std::max(excess, cutoff_excess(cz.states[k], cz.parts[k]));
      double bd = 0.0, bo = 0.0, Cd = 0.0, Co = 0.0;
      if (with_T) {
        bd = lp_norm(cz.p * T(cz.b_d) * cz.p, 1.0);
        bo = lp_norm(cz.p * T(cz.b_o) * cz.p, 1.0);
        if (c.f_l1 > 0) {
          Cd = bd / c.f_l1;
          Co = bo / c.f_l1;
        }
      }
      const double bound = c.parts_l1 / s;
      check_le(viol[i], "czd reconstruction", recon, 1e-10, seed, s);
      check_le(viol[i], "czd trace(1-q) <= ||f||_1/s", c.trace_1mq, bound * (1 + kNormSlack) + kNormSlack, seed, s);
      check_le(viol[i], "czd ||q_n E_n f q_n|| <= s", excess, kNormSlack, seed, s);
      blocks[i].push_back({seed, static_cast<std::int64_t>(i), s, c.f_l1, c.parts_l1, recon, c.a_l2_sq, c.a_l1,
                           c.a_bound, c.trace_p_perp, c.p_bound, c.trace_1mq, bound, excess, bd, bo, Cd, Co});
    }
  });
  merge(res, blocks, viol);
  res.summary = base_summary("czd", g, gen, instances);
  res.summary["operator"] = op_tag;
  res.summary["max"] = {{"C_a", column_max(res.table, "C_a")},
                        {"C_p", column_max(res.table, "C_p")},
                        {"C_d", column_max(res.table, "C_d")},
                        {"C_o", column_max(res.table, "C_o")}};
  res.summary["C_emp"] = std::max({column_max(res.table, "C_a"), column_max(res.table, "C_p"),
                                   column_max(res.table, "C_d"), column_max(res.table, "C_o")});
  return res;
}

// ------------------------------------------------------------------ weak type

std::vector<std::string> weak_type_columns() {
  return {"seed",         "instance",      "s",          "f_l1",       "lambda_Tf_4s", "lambda_Ta",   "markov_Ta",
          "lambda_1mp_Tb", "lambda_pTb_1mp", "trace_p_perp", "lambda_pTbp", "markov_pTbp", "split_sum",
          "pTbdp_l1",     "pTbop_l1",      "C_a",        "C_p",        "C_b",          "C_d",         "C_o",
          "C",            "T_norm",        "bound",      "weak_constant"};
}

std::vector<std::vector<Value>> weak_type_rows(const ScalarOperator& T, const MatrixField& f,
                                               const std::vector<double>& s_grid, std::uint64_t seed,
                                               std::int64_t instance, std::vector<std::string>& violations) {
  std::vector<std::vector<Value>> rows;
  const GridSpec& g = f.spec();
  const MatrixField Tf = T(f);
  const SingularFunction muTf = singular_function(Tf);
  const double f_l1 = lp_norm(f, 1.0);
  const double weak = f_l1 > 0 ? muTf.weak_l1() / f_l1 : 0.0;
  const MatrixField id = MatrixField::identity(g);
  const double lo = 1.0 - 1e-9, hi = 1.0 + 1e-9;
  for (double s : s_grid) {
    if (f.is_zero()) {
      std::vector<Value> r{seed, instance, s};
      for (std::size_t k = 3; k < weak_type_columns().size(); ++k) r.push_back(0.0);
      rows.push_back(std::move(r));
      continue;
    }
    const CZParts cz = cz_decompose(f, s);
    const MatrixField& p = cz.p;
    const MatrixField pp = id - p;
    const MatrixField Ta = T(cz.a);
    const MatrixField Tbd = T(cz.b_d);
    const MatrixField Tbo = T(cz.b_o);
    const MatrixField Tb = Tbd + Tbo;
    const MatrixField t1 = pp * Tb;
    const MatrixField t2 = p * Tb * pp;
    const MatrixField t3 = p * Tb * p;

    const double lam_Tf = singular_function(Tf).lambda(4.0 * s * hi);
    const double lam_Ta = singular_function(Ta).lambda(s * lo);
    const double markov_Ta = l2_sq(Ta) / (s * s);
    const double lam_1 = singular_function(t1).lambda(s * lo);
    const double lam_2 = singular_function(t2).lambda(s * lo);
    const double trace_pp = cz.constants.trace_p_perp;
    const double t3_l1 = lp_norm(t3, 1.0);
    const double lam_3 = singular_function(t3).lambda(s * lo);
    const double markov_3 = t3_l1 / s;
    const double split = lam_Ta + lam_1 + lam_2 + lam_3;
    const double bd = lp_norm(p * Tbd * p, 1.0);
    const double bo = lp_norm(p * Tbo * p, 1.0);
    const double Ca = cz.constants.a_bound, Cp = cz.constants.p_bound;
    const double Cb = t3_l1 / f_l1, Cd = bd / f_l1, Co = bo / f_l1;
    const double C = std::max({Ca, Cp * Cp, Cb});
    const double bound = (3.0 * C + T.norm * T.norm * C * C) * f_l1 / s;

    const double sl = kNormSlack;
    check_le(violations, "weak: lambda_Tf(4s) <= sum of four split terms", lam_Tf, split + sl, seed, s);
    check_le(violations, "weak: lambda_Ta(s) <= s^-2 ||Ta||_2^2", lam_Ta, markov_Ta * hi + sl, seed, s);
    check_le(violations, "weak: ||Ta||_2^2 <= ||T||^2 ||a||_2^2", l2_sq(Ta),
             T.norm * T.norm * cz.constants.a_l2_sq * hi + sl, seed, s);
    check_le(violations, "weak: lambda_(1-p)Tb(s) <= sigma(1-p)", lam_1, trace_pp * hi + sl, seed, s);
    check_le(violations, "weak: lambda_pTb(1-p)(s) <= sigma(1-p)", lam_2, trace_pp * hi + sl, seed, s);
    check_le(violations, "weak: lambda_pTbp(s) <= s^-1 ||pTbp||_1", lam_3, markov_3 * hi + sl, seed, s);
    check_le(violations, "weak: lambda_Tf(4s) <= (3C + ||T||^2 C^2) ||f||_1 / s", lam_Tf, bound * hi + sl, seed, s);
    rows.push_back({seed, instance, s, f_l1, lam_Tf, lam_Ta, markov_Ta, lam_1, lam_2, trace_pp, lam_3, markov_3,
                    split, bd, bo, Ca, Cp, Cb, Cd, Co, C, T.norm, bound, weak});
  }
  return rows;
}

ExperimentResult weak_type_experiment(const std::string& op_tag, const InstanceGen& gen, const GridSpec& g,
                                      const std::vector<double>& s_grid, std::size_t instances, const RunOptions& opt) {
  const ScalarOperator T = make_operator(op_tag, g);
  ExperimentResult res;
  res.experiment = "weaktype";
  res.grid = g;
  res.table.columns = weak_type_columns();
  std::vector<std::vector<std::vector<Value>>> blocks(instances);
  std::vector<std::vector<std::string>> viol(instances);
  std::vector<double> weak(instances, 0.0);
  parallel_for(instances, opt.workers, [&](std::size_t i) {
    MatrixField f = gen.generate(g, i, 1).at(0);
    const double n1 = lp_norm(f, 1.0);
    if (n1 > 0) f *= cplx(1.0 / n1, 0.0);
    weak[i] = n1 > 0 ? singular_function(T(f)).weak_l1() / lp_norm(f, 1.0) : 0.0;
    blocks[i] = weak_type_rows(T, f, s_grid, gen.instance_seed(i), static_cast<std::int64_t>(i), viol[i]);
  });
  merge(res, blocks, viol);
  res.summary = base_summary("weaktype", g, gen, instances);
  res.summary["operator"] = op_tag;
  res.summary["C_emp"] = instances ? *std::max_element(weak.begin(), weak.end()) : 0.0;
  res.summary["weak_constants"] = weak;
  res.summary["max"] = {{"C_a", column_max(res.table, "C_a")}, {"C_p", column_max(res.table, "C_p")},
                        {"C_b", column_max(res.table, "C_b")}, {"C_d", column_max(res.table, "C_d")},
                        {"C_o", column_max(res.table, "C_o")}, {"C", column_max(res.table, "C")}};
  return res;
}

// ------------------------------------------------------------------ K-closedness

int projection_components(const std::string& P, int d) {
  if (P == "riesz" || P == "riesz_perp") {
    if (d != 1) throw InvalidArgument("riesz projection requires d = 1");
    return 1;
  }
  if (P == "leray" || P == "leray_perp") {
    if (d < 2) throw InvalidArgument("leray projection requires d >= 2");
    return d;
  }
  throw InvalidArgument("unknown projection tag: " + P);
}

namespace {

double tuple_l2(const FieldTuple& x) { return lp_norm(std::span<const MatrixField>(x), 2.0); }
double tuple_l1(const FieldTuple& x) { return lp_norm(std::span<const MatrixField>(x), 1.0); }

double tuple_distance(const FieldTuple& a, const FieldTuple& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double r = l2_distance(a[k], b[k]);
    acc += r * r;
  }
  return std::sqrt(acc);
}

FieldTuple tuple_sum(const FieldTuple& a, const FieldTuple& b) {
  FieldTuple out;
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a[k] + b[k]);
  return out;
}

bool tuple_zero(const FieldTuple& a) {
  return std::all_of(a.begin(), a.end(), [](const MatrixField& f) { return f.is_zero(); });
}

}  // namespace

std::pair<FieldTuple, FieldTuple> l1_l2_cutoff_split(const FieldTuple& x, double t) {
  const CutoffOptimum opt = k_functional_cutoff(singular_function(std::span<const MatrixField>(x)), t, Couple::L1_L2);
  FieldTuple y, z;
  for (const auto& c : x) {
    CutoffSplit sp = cutoff_split(c, opt.cutoff);
    y.push_back(std::move(sp.y));
    z.push_back(std::move(sp.z));
  }
  return {std::move(y), std::move(z)};
}

KClosedResult kclosed_decompose(const std::string& P, const FieldTuple& x, const FieldTuple& y, const FieldTuple& z,
                                double t) {
  if (!(t > 0.0)) throw InvalidArgument("kclosed_decompose: t must be > 0");
  if (x.empty() || x.size() != y.size() || x.size() != z.size()) throw InvalidArgument("kclosed_decompose: tuple sizes differ");
  const int comps = projection_components(P, x[0].spec().d);
  if (static_cast<int>(x.size()) != comps) throw InvalidArgument("kclosed_decompose: wrong tuple length for " + P);
  const double xn = tuple_l2(x);
  const double scale = xn > 0 ? xn : 1.0;
  if (tuple_distance(x, tuple_sum(y, z)) > 1e-9 * scale) throw InvalidArgument("kclosed_decompose: x != y + z");
  if (projection_residual(P, x) > 1e-9 * scale) throw InvalidArgument("kclosed_decompose: x is not in the range of P");

  KClosedResult r;
  r.s = 1.0 / (t * t);
  r.y_l1 = tuple_l1(y);
  r.z_l2 = tuple_l2(z);
  r.lower = r.y_l1 + t * r.z_l2;
  if (tuple_zero(y)) {
    for (const auto& c : x) r.y_prime.emplace_back(c.spec());
    r.z_prime = x;
  } else {
    const VectorCZParts cz = cz_decompose_vector(std::span<const MatrixField>(y), r.s);
    r.y_prime = apply_projection(P, cz.b());
    r.z_prime = apply_projection(P, tuple_sum(cz.a, z));
  }
  r.yp_l1 = tuple_l1(r.y_prime);
  r.zp_l2 = tuple_l2(r.z_prime);
  r.upper = r.yp_l1 + t * r.zp_l2;
  r.ratio = r.lower > 0 ? r.upper / r.lower : (r.upper > 0 ? INFINITY : 1.0);
  r.recon_residual = tuple_distance(x, tuple_sum(r.y_prime, r.z_prime)) / scale;
  r.member_y = projection_residual(P, r.y_prime) / scale;
  r.member_z = projection_residual(P, r.z_prime) / scale;
  return r;
}

ExperimentResult kclosed_sweep(const std::string& P, const InstanceGen& gen, const GridSpec& g,
                               const std::vector<double>& t_grid, std::size_t instances, const RunOptions& opt) {
  const int comps = projection_components(P, g.d);
  ExperimentResult res;
  res.experiment = "kclosed";
  res.grid = g;
  res.table.columns = {"seed", "instance", "t", "s", "x_l2", "y_l1", "z_l2", "lower", "yp_l1", "zp_l2", "upper",
                       "ratio", "recon_residual", "member_y", "member_z"};
  std::vector<std::vector<std::vector<Value>>> blocks(instances);
  std::vector<std::vector<std::string>> viol(instances);
  parallel_for(instances, opt.workers, [&](std::size_t i) {
    const std::uint64_t seed = gen.instance_seed(i);
    const FieldTuple x = apply_projection(P, gen.generate(g, i, comps));
    const double xn = tuple_l2(x);
    for (double t : t_grid) {
      auto [y, z] = l1_l2_cutoff_split(x, t);
      const KClosedResult r = kclosed_decompose(P, x, y, z, t);
      check_le(viol[i], "kclosed: x = y' + z'", r.recon_residual, 1e-9, seed, t);
      check_le(viol[i], "kclosed: y' in range(P)", r.member_y, 1e-9, seed, t);
      check_le(viol[i], "kclosed: z' in range(P)", r.member_z, 1e-9, seed, t);
      if (!std::isfinite(r.ratio)) viol[i].push_back(describe("kclosed: ratio finite", r.ratio, 0, seed, t));
      blocks[i].push_back({seed, static_cast<std::int64_t>(i), t, r.s, xn, r.y_l1, r.z_l2, r.lower, r.yp_l1,
                           r.zp_l2, r.upper, r.ratio, r.recon_residual, r.member_y, r.member_z});
    }
  });
  merge(res, blocks, viol);
  res.summary = base_summary("kclosed", g, gen, instances);
  res.summary["projection"] = P;
  res.summary["C_emp"] = column_max(res.table, "ratio");
  return res;
}

// ------------------------------------------------------------------ Sobolev

MatrixField antiderivative(const FieldTuple& U) {
  if (U.empty()) throw InvalidArgument("antiderivative: empty tuple");
  const GridSpec& g = U[0].spec();
  const int d = g.d;
  if (static_cast<int>(U.size()) != d) throw InvalidArgument("antiderivative: tuple length must be d");
  std::vector<FourierCoefficients> fc;
  double scale = 0.0;
  for (const auto& u : U) {
    fc.push_back(fourier(u));
    scale = std::max(scale, lp_norm(u, 2.0));
  }
  const Index zero{};
  for (int j = 0; j < d; ++j)
    if (fc[static_cast<std::size_t>(j)].at(zero).norm() > 1e-12 * std::max(scale, 1.0))
      throw InvalidArgument("antiderivative: tuple has a nonzero mean (n = 0 coefficient)");
  FourierCoefficients out(g);
  const std::size_t mm = g.matrix_entries();
  for (std::size_t s = 0; s < out.size(); ++s) {
    const Index n = out.frequency(s);
    double n2 = 0.0;
    for (int j = 0; j < d; ++j) n2 += static_cast<double>(n[j] * n[j]);
    if (n2 == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      const cplx w(0.0, -static_cast<double>(n[j]) / n2);
      if (n[j] == 0) continue;
      const auto& src = fc[static_cast<std::size_t>(j)].data();
      for (std::size_t e = 0; e < mm; ++e) out.data()[s * mm + e] += w * src[s * mm + e];
    }
  }
  return inverse_fourier(out);
}

SobolevPoint sobolev_witness(const MatrixField& f, double t) {
  const GridSpec& g = f.spec();
  const int d = g.d;
  if (d < 2) throw InvalidArgument("sobolev_witness requires d >= 2");
  SobolevPoint pt;
  FieldTuple u;
  for (int j = 0; j < d; ++j) u.push_back(partial_derivative(f, j));
  FieldTuple Y;
  for (int j = 0; j < d; ++j) {
    const SingularFunction mu = singular_function(u[static_cast<std::size_t>(j)]);
    pt.lower += mu.integral(t);
    const double c = mu.mu(t);
    Y.push_back(cutoff_split(u[static_cast<std::size_t>(j)], c).y);
  }
  const FieldTuple U = leray_complement(Y);
  const MatrixField gpart = antiderivative(U);
  const MatrixField hpart = f - gpart;
  double res2 = 0.0, un2 = 0.0;
  for (int j = 0; j < d; ++j) {
    const MatrixField dg = partial_derivative(gpart, j);
    const MatrixField dh = partial_derivative(hpart, j);
    pt.g_w11 += lp_norm(dg, 1.0);
    const double hinf = lp_norm(dh, INFINITY);
    pt.h_sum += hinf;
    pt.h_sup = std::max(pt.h_sup, hinf);
    const double r = l2_distance(dg, U[static_cast<std::size_t>(j)]);
    res2 += r * r;
    const double un = lp_norm(u[static_cast<std::size_t>(j)], 2.0);
    un2 += un * un;
  }
  pt.residual = un2 > 0 ? std::sqrt(res2 / un2) : std::sqrt(res2);
  pt.upper_sum = pt.g_w11 + t * pt.h_sum;
  pt.upper_sup = pt.g_w11 + t * pt.h_sup;
  if (pt.lower > 0) {
    pt.ratio_sum = pt.upper_sum / pt.lower;
    pt.ratio_sup = pt.upper_sup / pt.lower;
  } else {
    pt.ratio_sum = pt.upper_sum > 0 ? INFINITY : 1.0;
    pt.ratio_sup = pt.upper_sup > 0 ? INFINITY : 1.0;
  }
  return pt;
}

ExperimentResult sobolev_k_experiment(const InstanceGen& gen, const GridSpec& g, const std::vector<double>& t_grid,
                                      std::size_t instances, const RunOptions& opt) {
  if (g.d < 2) throw InvalidArgument("sobolev experiment requires d >= 2");
  ExperimentResult res;
  res.experiment = "sobolev";
  res.grid = g;
  res.table.columns = {"seed", "instance", "t", "lower", "g_w11", "h_w1inf_sum", "h_w1inf_sup", "upper_sum",
                       "upper_sup", "ratio_sum", "ratio_sup", "residual"};
  std::vector<std::vector<std::vector<Value>>> blocks(instances);
  std::vector<std::vector<std::string>> viol(instances);
  parallel_for(instances, opt.workers, [&](std::size_t i) {
    const std::uint64_t seed = gen.instance_seed(i);
    const MatrixField f = gen.generate(g, i, 1).at(0);
    for (double t : t_grid) {
      const SobolevPoint pt = sobolev_witness(f, t);
      check_le(viol[i], "sobolev: lower <= upper witness", pt.lower, pt.upper_sum * (1 + kNormSlack) + kNormSlack, seed, t);
      check_le(viol[i], "sobolev: grad g = P^perp(Y)", pt.residual, 1e-9, seed, t);
      blocks[i].push_back({seed, static_cast<std::int64_t>(i), t, pt.lower, pt.g_w11, pt.h_sum, pt.h_sup,
                           pt.upper_sum, pt.upper_sup, pt.ratio_sum, pt.ratio_sup, pt.residual});
    }
  });
  merge(res, blocks, viol);
  res.summary = base_summary("sobolev", g, gen, instances);
  res.summary["C_emp"] = column_max(res.table, "ratio_sum");
  double lo = INFINITY;
  for (std::size_t r = 0; r < res.table.rows.size(); ++r) lo = std::min(lo, res.table.number(r, "ratio_sum"));
  res.summary["ratio_sum_min"] = res.table.rows.empty() ? 1.0 : lo;
  res.summary["ratio_sup_max"] = column_max(res.table, "ratio_sup");
  return res;
}

// ------------------------------------------------------------------ kernels

ExperimentResult kernelcheck_experiment(const std::string& op_tag, const GridSpec& g, int samples) {
  if (!is_known_operator(op_tag, g.d) || op_tag == "riesz_perp")
    throw InvalidArgument("kernelcheck supports riesz (d = 1) and leray_ij (d >= 2)");
  ExperimentResult res;
  res.experiment = "kernelcheck";
  res.grid = g;
  res.table.columns = {"kernel", "condition", "parameter", "value", "samples", "grid"};
  const std::string label = grid_label(g);
  const double floor = std::ldexp(1.0, -g.L - 2);
  SamplingOptions so;
  so.separation_floor = floor;
  const bool riesz = op_tag == "riesz";
  const int R_max = 32;
  const Kernel k = riesz ? riesz_kernel() : leray_torus_kernel(op_tag[6] - '1', op_tag[7] - '1', g.d, R_max);
  auto row = [&](const std::string& cond, double param, double value, int n) {
    res.table.add({k.name(), cond, param, value, static_cast<std::int64_t>(n), label});
    if (!std::isfinite(value)) res.violations.push_back(k.name() + " " + cond + " is not finite");
  };
  row("size", floor, size_condition_check(k, samples, so), samples);
  const double lip = lipschitz_condition_check(k, 1.0, samples, so);
  row("lipschitz", floor, lip, samples);
  if (!riesz) {
    const PeriodizedKernel pk = leray_kernel(op_tag[6] - '1', op_tag[7] - '1', g.d, R_max);
    row("sphere_integral", 0.0, sphere_integral(pk.base()), 0);
    row("tail_constant", R_max, pk.tail_constant(), 24);
  }
  QuadratureOptions qo;
  qo.level = std::min(g.L + 2, g.d == 1 ? 14 : 7);
  qo.y_samples = riesz ? 16 : 4;
  Point y0;
  y0.d = g.d;
  for (int m = 2; m <= std::min(g.L, 5); ++m) {
    const double r = std::ldexp(1.0, -m);
    const HormanderSum h = hormander_l2_sum(k, y0, r, 16, qo);
    row("hormander_l2", r, h.value, qo.y_samples);
    row("hormander_l2_over_lipschitz", r, lip > 0 ? h.value / lip : 0.0, qo.y_samples);
    row("hormander_l1", r, hormander_l1_check(k, y0, r, qo), qo.y_samples);
  }
  res.summary = {{"experiment", "kernelcheck"}, {"operator", op_tag}, {"grids", {label}},
                 {"seeds", nlohmann::json::array()}, {"C_emp", column_max(res.table, "value")}};
  return res;
}

}  // namespace czlab
