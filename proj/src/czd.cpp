#include "czlab/czd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "czlab/dyadic.hpp"
#include "czlab/error.hpp"
#include "czlab/linalg.hpp"
#include "czlab/ncmeasure.hpp"

namespace czlab {

namespace {

Mat block(const std::vector<cplx>& flat, std::size_t id, int m) {
  return ConstMatMap(flat.data() + id * static_cast<std::size_t>(m) * m, m, m);
}

void store(std::vector<cplx>& flat, std::size_t id, const Mat& v) {
  const std::size_t mm = static_cast<std::size_t>(v.size());
  std::copy_n(v.data(), mm, flat.begin() + static_cast<std::ptrdiff_t>(id * mm));
}

void check_positive(const MatrixField& f) {
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    const auto c = f.cell(i);
    const double asym = (c - c.adjoint()).norm();
    if (asym > 1e-8)
      throw InvalidArgument("cuculescu: cell " + std::to_string(i) + " is not Hermitian (defect " + std::to_string(asym) + ")");
    const auto eg = hermitian_eigen(hermitian_part(c));
    if (eg.values.size() > 0 && eg.values(0) < -1e-8)
      throw InvalidArgument("cuculescu: cell " + std::to_string(i) + " has eigenvalue " + std::to_string(eg.values(0)));
  }
}

double sigma_complement(const MatrixField& p) {
  return static_cast<double>(p.m()) - trace(p).real();
}

void fill_constants(CZConstants& c, double s) {
  if (c.f_l1 > 0.0) {
    c.a_bound = std::sqrt(c.a_l2_sq / (s * c.f_l1));
    c.p_bound = std::sqrt(std::max(c.trace_p_perp, 0.0) * s / c.f_l1);
  }
}

}  // namespace

Mat CuculescuState::q_cube(int n, std::size_t id) const { return block(q_cubes.at(n), id, spec.m); }

Mat CuculescuState::e_cube(int n, std::size_t id) const {
  if (n < 1) throw InvalidArgument("e_n is defined for n >= 1");
  return block(e_cubes.at(n), id, spec.m);
}

MatrixField CuculescuState::q_field(int n) const { return expand_cubes(spec, n, q_cubes.at(n)); }

MatrixField CuculescuState::e_field(int n) const {
  if (n < 1) throw InvalidArgument("e_n is defined for n >= 1");
  return expand_cubes(spec, n, e_cubes.at(n));
}

MatrixField CuculescuState::e() const { return MatrixField::identity(spec) - q(); }

CuculescuState cuculescu(const MatrixField& f, double s) {
  if (!(s > 0.0)) throw InvalidArgument("cuculescu: s must be > 0");
  check_positive(f);
  const GridSpec& g = f.spec();
  const int m = g.m;
  CuculescuState st;
  st.s = s;
  st.spec = g;
  st.q_cubes.resize(g.L + 1);
  st.e_cubes.resize(g.L + 1);
  const Mat id = Mat::Identity(m, m);
  st.q_cubes[0].assign(g.matrix_entries(), cplx{});
  store(st.q_cubes[0], 0, id);
  // closed cutoff at s
  const double cut = s * (1.0 + 1e-12);
  for (int n = 1; n <= g.L; ++n) {
    const std::vector<cplx> avg = cube_averages(f, n);
    const std::size_t nq = std::size_t{1} << (g.d * n);
    st.q_cubes[n].assign(nq * g.matrix_entries(), cplx{});
    st.e_cubes[n].assign(nq * g.matrix_entries(), cplx{});
    for (std::size_t q = 0; q < nq; ++q) {
      const Cube cube = make_cube(g.d, n, q);
      const Mat prev = block(st.q_cubes[n - 1], cube.parent, m);
      if (prev.squaredNorm() < 0.5) continue;  // q_{n-1} = 0 here, stays 0
      const Mat mq = prev * block(avg, q, m) * prev;
      const Mat high = hermitian_part(projection_above(mq, cut));
      store(st.q_cubes[n], q, hermitian_part(prev - high));
      store(st.e_cubes[n], q, high);
    }
  }
  return st;
}

double cutoff_excess(const CuculescuState& st, const MatrixField& f) {
  const GridSpec& g = st.spec;
  double worst = -st.s;
  for (int n = 1; n <= g.L; ++n) {
    const std::vector<cplx> avg = cube_averages(f, n);
    const std::size_t nq = std::size_t{1} << (g.d * n);
    for (std::size_t q = 0; q < nq; ++q) {
      const Mat qq = block(st.q_cubes[n], q, g.m);
      worst = std::max(worst, operator_norm(qq * block(avg, q, g.m) * qq) - st.s);
    }
  }
  return worst;
}

double projection_defect(const CuculescuState& st) {
  double worst = 0.0;
  for (int n = 0; n <= st.spec.L; ++n) {
    const std::size_t nq = std::size_t{1} << (st.spec.d * n);
    for (std::size_t q = 0; q < nq; ++q) worst = std::max(worst, czlab::projection_defect(block(st.q_cubes[n], q, st.spec.m)));
  }
  return worst;
}

double monotonicity_defect(const CuculescuState& st) {
  double worst = 0.0;
  for (int n = 1; n <= st.spec.L; ++n) {
    const std::size_t nq = std::size_t{1} << (st.spec.d * n);
    for (std::size_t q = 0; q < nq; ++q) {
      const Cube c = make_cube(st.spec.d, n, q);
      const Mat diff = block(st.q_cubes[n - 1], c.parent, st.spec.m) - block(st.q_cubes[n], q, st.spec.m);
      const auto eg = hermitian_eigen(hermitian_part(diff));
      worst = std::max(worst, -eg.values(0));
    }
  }
  return worst;
}

MatrixField cz_projection(const CuculescuState& st) {
  const GridSpec& g = st.spec;
  const int m = g.m;
  const std::size_t N = g.side();
  MatrixField acc(g);
  bool any = false;
  for (int n = 1; n <= g.L; ++n) {
    const std::size_t nq = std::size_t{1} << (g.d * n);
    for (std::size_t q = 0; q < nq; ++q) {
      const Mat e = block(st.e_cubes[n], q, m);
      if (e.squaredNorm() < 0.5) continue;
      any = true;
      const Cube cube = make_cube(g.d, n, q);
      const double R = 3.0 * cube.diameter;
      // candidate coordinates per axis
      std::array<std::vector<std::int64_t>, kMaxDim> axis;
      for (int k = 0; k < g.d; ++k) {
        const double centre = cube.center[k] * static_cast<double>(N) - 0.5;
        const auto lo = static_cast<std::int64_t>(std::ceil(centre - R * static_cast<double>(N)));
        const auto hi = static_cast<std::int64_t>(std::floor(centre + R * static_cast<double>(N)));
        if (hi - lo + 1 >= static_cast<std::int64_t>(N)) {
          for (std::size_t c = 0; c < N; ++c) axis[k].push_back(static_cast<std::int64_t>(c));
        } else {
          for (std::int64_t c = lo; c <= hi; ++c) {
            const std::int64_t w = ((c % static_cast<std::int64_t>(N)) + static_cast<std::int64_t>(N)) % static_cast<std::int64_t>(N);
            axis[k].push_back(w);
          }
        }
      }
      Index coords{};
      std::array<std::size_t, kMaxDim> pos{};
      while (true) {
        for (int k = 0; k < g.d; ++k) coords[k] = axis[k][pos[k]];
        const std::size_t cell = cell_index(g, coords);
        if (torus_distance(cell_center(g, cell), cube.center) < R) acc.cell(cell) += e;
        int k = g.d - 1;
        while (k >= 0 && ++pos[k] == axis[k].size()) pos[k--] = 0;
        if (k < 0) break;
      }
    }
  }
  MatrixField p = MatrixField::identity(g);
  if (!any) return p;
  const Mat id = Mat::Identity(m, m);
  for (std::size_t i = 0; i < p.cell_count(); ++i) {
    const auto s = acc.cell(i);
    if (s.squaredNorm() == 0.0) continue;
    p.cell(i) = hermitian_part(id - range_projection(hermitian_part(s), 1e-9));
  }
  return p;
}

CZParts cz_decompose_positive(const MatrixField& f, double s) {
  CuculescuState st = cuculescu(f, s);
  const GridSpec& g = f.spec();
  const int m = g.m;
  CZParts out;
  out.s = s;
  const MatrixField qf = st.q();
  MatrixField qfq = qf * f * qf;
  MatrixField a = qfq;
  MatrixField sum_efe(g);
  MatrixField sum_cond(g);
  for (int n = 1; n <= g.L; ++n) {
    bool any = false;
    for (const cplx& v : st.e_cubes[n])
      if (v != cplx{}) {
        any = true;
        break;
      }
    if (!any) continue;
    MatrixField efe(g);
    for (std::size_t i = 0; i < f.cell_count(); ++i) {
      const Mat e = block(st.e_cubes[n], cube_of_cell(g, i, n), m);
      efe.cell(i) = e * f.cell(i) * e;
    }
    sum_efe += efe;
    sum_cond += conditional_expectation(efe, n - 1);
  }
  out.a = qfq + sum_cond;
  out.b_d = sum_efe - sum_cond;
  out.b_o = f - qfq - sum_efe;
  out.p = cz_projection(st);

  auto& c = out.constants;
  c.f_l1 = lp_norm(f, 1.0);
  const double a2 = lp_norm(out.a, 2.0);
  c.a_l2_sq = a2 * a2;
  c.a_l1 = lp_norm(out.a, 1.0);
  c.trace_p_perp = sigma_complement(out.p);
  c.trace_1mq = sigma_complement(qf);
  c.parts_l1 = c.f_l1;
  fill_constants(c, s);
  out.states.push_back(std::move(st));
  out.parts.push_back(f);
  return out;
}

std::array<MatrixField, 4> positive_parts(const MatrixField& f) {
  const GridSpec& g = f.spec();
  std::array<MatrixField, 4> parts{MatrixField(g), MatrixField(g), MatrixField(g), MatrixField(g)};
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    const Mat c = f.cell(i);
    Mat pos, neg;
    positive_negative_parts(hermitian_part(c), pos, neg);
    parts[0].cell(i) = pos;
    parts[1].cell(i) = neg;
    positive_negative_parts(antihermitian_part(c), pos, neg);
    parts[2].cell(i) = pos;
    parts[3].cell(i) = neg;
  }
  return parts;
}

MatrixField projection_meet(const std::vector<MatrixField>& ps) {
  if (ps.empty()) throw InvalidArgument("projection_meet: no projections");
  if (ps.size() == 1) return ps.front();
  MatrixField out(ps.front().spec());
  std::vector<Mat> cell(ps.size());
  for (std::size_t i = 0; i < out.cell_count(); ++i) {
    for (std::size_t k = 0; k < ps.size(); ++k) cell[k] = ps[k].cell(i);
    out.cell(i) = hermitian_part(czlab::projection_meet(cell));
  }
  return out;
}

CZParts cz_decompose(const MatrixField& f, double s) {
  if (!(s > 0.0)) throw InvalidArgument("cz_decompose: s must be > 0");
  const GridSpec& g = f.spec();
  const std::array<MatrixField, 4> parts = positive_parts(f);
  const std::array<cplx, 4> coef{cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)};
  CZParts out;
  out.s = s;
  out.a = MatrixField(g);
  out.b_d = MatrixField(g);
  out.b_o = MatrixField(g);
  std::vector<MatrixField> ps;
  double trace_1mq = 0.0, parts_l1 = 0.0;
  for (int j = 0; j < 4; ++j) {
    if (parts[j].is_zero()) continue;
    CZParts pj = cz_decompose_positive(parts[j], s);
    parts_l1 += pj.constants.f_l1;
    out.parts.push_back(parts[j]);
    out.a += coef[j] * pj.a;
    out.b_d += coef[j] * pj.b_d;
    out.b_o += coef[j] * pj.b_o;
    ps.push_back(std::move(pj.p));
    trace_1mq += pj.constants.trace_1mq;
    for (auto& st : pj.states) out.states.push_back(std::move(st));
  }
  out.p = ps.empty() ? MatrixField::identity(g) : projection_meet(ps);

  auto& c = out.constants;
  c.f_l1 = lp_norm(f, 1.0);
  const double a2 = lp_norm(out.a, 2.0);
  c.a_l2_sq = a2 * a2;
  c.a_l1 = lp_norm(out.a, 1.0);
  c.trace_p_perp = sigma_complement(out.p);
  c.trace_1mq = trace_1mq;
  c.parts_l1 = parts_l1;
  fill_constants(c, s);
  return out;
}

FieldTuple VectorCZParts::b() const {
  FieldTuple out;
  for (std::size_t i = 0; i < b_d.size(); ++i) out.push_back(b_d[i] + b_o[i]);
  return out;
}

VectorCZParts cz_decompose_vector(std::span<const MatrixField> fs, double s) {
  if (fs.empty()) throw InvalidArgument("cz_decompose_vector: empty tuple");
  for (std::size_t i = 1; i < fs.size(); ++i) require_same_grid(fs[0], fs[i]);
  VectorCZParts out;
  out.s = s;
  double trace_1mq = 0.0, parts_l1 = 0.0;
  for (const MatrixField& f : fs) {
    CZParts pi = cz_decompose(f, s);
    parts_l1 += pi.constants.parts_l1;
    out.a.push_back(std::move(pi.a));
    out.b_d.push_back(std::move(pi.b_d));
    out.b_o.push_back(std::move(pi.b_o));
    out.component_p.push_back(std::move(pi.p));
    trace_1mq += pi.constants.trace_1mq;
  }
  out.p = projection_meet(out.component_p);

  auto& c = out.constants;
  c.f_l1 = lp_norm(fs, 1.0);
  const double a2 = lp_norm(std::span<const MatrixField>(out.a), 2.0);
  c.a_l2_sq = a2 * a2;
  c.a_l1 = lp_norm(std::span<const MatrixField>(out.a), 1.0);
  c.trace_p_perp = static_cast<double>(fs.size()) * sigma_complement(out.p);
  c.trace_1mq = trace_1mq;
  c.parts_l1 = parts_l1;
  fill_constants(c, s);
  return out;
}

}  // namespace czlab
