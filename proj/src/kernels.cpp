#include "czlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "czlab/dyadic.hpp"
#include "czlab/error.hpp"

namespace czlab {

namespace {

constexpr double kPi = std::numbers::pi;

double norm2(const Vec& x, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) s += x[k] * x[k];
  return std::sqrt(s);
}

double reduce(double w) {  // to [-1/2, 1/2)
  return w - std::floor(w + 0.5);
}

// 5-point Gauss-Legendre on [-1, 1]
constexpr std::array<double, 5> kGLx{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                     0.9061798459386640};
constexpr std::array<double, 5> kGLw{0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                                     0.2369268850561891};

// Composite Gauss-Legendre nodes/weights on [-1, 1].
void composite_rule(int panels, std::vector<double>& x, std::vector<double>& w) {
  x.clear();
  w.clear();
  const double h = 2.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = -1.0 + (p + 0.5) * h;
    for (int k = 0; k < 5; ++k) {
      x.push_back(mid + 0.5 * h * kGLx[k]);
      w.push_back(0.5 * h * kGLw[k]);
    }
  }
}

Point offset_point(const Point& base, const Vec& dir, double r) {
  Point p = base;
  for (int k = 0; k < base.d; ++k) {
    double v = base[k] + r * dir[k];
    p[k] = v - std::floor(v);
  }
  return p;
}

// Unit direction from low-discrepancy coordinates.
Vec direction(int d, const double* u) {
  Vec v{};
  if (d == 1) {
    v[0] = u[0] < 0.5 ? -1.0 : 1.0;
  } else if (d == 2) {
    v[0] = std::cos(2 * kPi * u[0]);
    v[1] = std::sin(2 * kPi * u[0]);
  } else {
    const double z = 2.0 * u[0] - 1.0;
    const double phi = 2 * kPi * u[1];
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    v[0] = rho * std::cos(phi);
    v[1] = rho * std::sin(phi);
    v[2] = z;
  }
  return v;
}

int direction_dims(int d) { return d == 1 ? 1 : d - 1; }

}  // namespace

Kernel::Kernel(std::string name, int d, Eval eval, bool translation_invariant)
    : name_(std::move(name)), d_(d), eval_(std::move(eval)), translation_invariant_(translation_invariant) {}

EuclideanKernel riesz_euclidean_kernel() {
  return {"riesz", 1, [](const Vec& x) { return 1.0 / (2.0 * kPi * x[0]); }};
}

double unit_sphere_measure(int d) {
  switch (d) {
    case 1:
      return 2.0;
    case 2:
      return 2.0 * kPi;
    case 3:
      return 4.0 * kPi;
    default:
      throw InvalidArgument("unit_sphere_measure: d must be 1..3");
  }
}

EuclideanKernel leray_euclidean_kernel(int i, int j, int d) {
  if (d < 2 || d > kMaxDim) throw InvalidArgument("leray kernel requires 2 <= d <= 3");
  if (i < 0 || j < 0 || i >= d || j >= d) throw InvalidArgument("leray kernel: axis out of range");
  const double omega = unit_sphere_measure(d);
  const double delta = i == j ? 1.0 : 0.0;
  return {"leray_" + std::to_string(i + 1) + std::to_string(j + 1), d, [=](const Vec& x) {
            double r2 = 0.0;
            for (int k = 0; k < d; ++k) r2 += x[k] * x[k];
            const double rd = std::pow(r2, 0.5 * d);
            return -(delta / rd - d * x[i] * x[j] / (rd * r2)) / omega;
          }};
}

double sphere_integral(const EuclideanKernel& K) {
  const int d = K.d;
  if (d == 1) return K.eval({1.0, 0.0, 0.0}) + K.eval({-1.0, 0.0, 0.0});
  std::vector<double> xs, ws;
  composite_rule(64, xs, ws);
  double acc = 0.0;
  for (int axis = 0; axis < d; ++axis)
    for (double sign : {-1.0, 1.0}) {
      // face x_axis = sign, remaining coordinates over [-1,1]^{d-1}
      int other[2] = {-1, -1};
      int c = 0;
      for (int k = 0; k < d; ++k)
        if (k != axis) other[c++] = k;
      if (d == 2) {
        for (std::size_t a = 0; a < xs.size(); ++a) {
          Vec y{};
          y[axis] = sign;
          y[other[0]] = xs[a];
          acc += ws[a] * K.eval(y);
        }
      } else {
        for (std::size_t a = 0; a < xs.size(); ++a)
          for (std::size_t b = 0; b < xs.size(); ++b) {
            Vec y{};
            y[axis] = sign;
            y[other[0]] = xs[a];
            y[other[1]] = xs[b];
            acc += ws[a] * ws[b] * K.eval(y);
          }
      }
    }
  return acc;
}

PeriodizedKernel::PeriodizedKernel(EuclideanKernel K, int R_max) : K_(std::move(K)), R_max_(R_max) {
  if (R_max < 1) throw InvalidArgument("periodize: R_max must be >= 1");
  const double si = sphere_integral(K_);
  if (std::abs(si) > 1e-8)
    throw InvalidArgument("periodize: kernel has nonzero sphere integral " + std::to_string(si));
  // Tail constant: sup of R^2 |shell| / (|x| + 1) over Halton points and the
  // {-pi, -pi/2, 0, pi/2, pi}^d lattice (the sup sits at the corners). Beyond R = 16
  // the ratio is decreasing, so d = 3 stops there to stay cheap.
  const int d = K_.d;
  const int R_top = d == 3 ? std::min(R_max_, 16) : R_max_;
  std::vector<Vec> pts;
  for (std::size_t s = 1; s <= 24; ++s) {
    const auto h = halton(s, d);
    Vec x{};
    for (int k = 0; k < d; ++k) x[k] = (2.0 * h[static_cast<std::size_t>(k)] - 1.0) * kPi;
    pts.push_back(x);
  }
  int lattice = 1;
  for (int k = 0; k < d; ++k) lattice *= 5;
  for (int id = 0; id < lattice; ++id) {
    Vec x{};
    for (int k = 0, r = id; k < d; ++k, r /= 5) x[k] = (r % 5 - 2) * 0.5 * kPi;
    pts.push_back(x);
  }
  for (const Vec& x : pts) {
    const double scale = norm2(x, d) + 1.0;
    for (int R = 1; R <= R_top; ++R) tail_constant_ = std::max(tail_constant_, std::abs(shell(x, R)) * R * R / scale);
  }
}

double PeriodizedKernel::shell(const Vec& x, int R) const {
  const int d = K_.d;
  double acc = 0.0;
  Vec y{};
  if (d == 1) {
    for (int s : {-R, R}) {
      y[0] = x[0] + 2 * kPi * s;
      acc += K_.eval(y);
    }
    return acc;
  }
  // all m in [-R, R]^d with max |m_k| = R, lexicographic
  auto add = [&](int a, int b, int c) {
    y[0] = x[0] + 2 * kPi * a;
    y[1] = x[1] + 2 * kPi * b;
    if (d == 3) y[2] = x[2] + 2 * kPi * c;
    acc += K_.eval(y);
  };
  auto last_axis = [&](int a, int b, bool outer_on_shell) {
    if (outer_on_shell) {
      for (int c = -R; c <= R; ++c) add(a, b, c);
    } else {
      add(a, b, -R);
      add(a, b, R);
    }
  };
  if (d == 2) {
    for (int a = -R; a <= R; ++a) {
      if (std::abs(a) == R) {
        for (int b = -R; b <= R; ++b) add(a, b, 0);
      } else {
        add(a, -R, 0);
        add(a, R, 0);
      }
    }
  } else {
    for (int a = -R; a <= R; ++a)
      for (int b = -R; b <= R; ++b) last_axis(a, b, std::abs(a) == R || std::abs(b) == R);
  }
  return acc;
}

double PeriodizedKernel::partial_sum(const Vec& x, int R) const {
  double acc = K_.eval(x);
  for (int r = 1; r <= R; ++r) acc += shell(x, r);
  return acc;
}

double PeriodizedKernel::tail_bound(const Vec& x) const {
  return tail_constant_ * (norm2(x, K_.d) + 1.0) / R_max_;
}

double PeriodizedKernel::envelope_ratio(const Vec& x, int R_lo) const {
  double best = 0.0;
  const double scale = norm2(x, K_.d) + 1.0;
  for (int R = std::max(R_lo, 1); R <= R_max_; ++R)
    best = std::max(best, std::abs(shell(x, R)) * R * R / scale);
  return best;
}

Kernel PeriodizedKernel::to_torus_kernel(std::string name, cplx c0, cplx c1) const {
  const int d = K_.d;
  const double jac = std::pow(2 * kPi, d);
  auto self = std::make_shared<PeriodizedKernel>(*this);
  return Kernel(std::move(name), d, [self, c0, c1, jac, d](const Point& u, const Point& v) {
    Vec x{};
    for (int k = 0; k < d; ++k) x[k] = 2 * kPi * reduce(u[k] - v[k]);
    return c0 + c1 * jac * self->value(x);
  }, true);
}

PeriodizedKernel periodize(const EuclideanKernel& K, int R_max) { return PeriodizedKernel(K, R_max); }

Kernel riesz_kernel() {
  return Kernel("riesz", 1, [](const Point& u, const Point& v) {
    const double w = reduce(u[0] - v[0]);
    return cplx(0.5, 0.5 / std::tan(kPi * w));
  }, true);
}

Kernel riesz_kernel_exponential() {
  return Kernel("riesz_exp", 1, [](const Point& u, const Point& v) {
    const cplx z = std::polar(1.0, 2 * kPi * u[0]);
    const cplx w = std::polar(1.0, 2 * kPi * v[0]);
    return w / (w - z);
  }, true);
}

PeriodizedKernel leray_kernel(int i, int j, int d, int R_max) {
  return periodize(leray_euclidean_kernel(i, j, d), R_max);
}

Kernel leray_torus_kernel(int i, int j, int d, int R_max) {
  const double c0 = i == j ? 1.0 / d : 0.0;
  return leray_kernel(i, j, d, R_max)
      .to_torus_kernel("leray_" + std::to_string(i + 1) + std::to_string(j + 1), c0, 1.0);
}

Kernel constant_kernel(int d, cplx c) {
  return Kernel("constant", d, [c](const Point&, const Point&) { return c; }, true);
}

Kernel oversingular_kernel(int d) {
  return Kernel("oversingular", d, [d](const Point& x, const Point& y) {
    return cplx(std::pow(torus_distance(x, y), -(d + 1)), 0.0);
  }, true);
}

MatrixField apply_kernel_operator(const Kernel& k, const MatrixField& f, double exclusion_radius) {
  const GridSpec& g = f.spec();
  if (k.dim() != g.d) throw InvalidArgument("apply_kernel_operator: kernel dimension mismatch");
  const double h = 1.0 / static_cast<double>(g.side());
  if (exclusion_radius < h * std::sqrt(static_cast<double>(g.d)) * (1.0 - 1e-12))
    throw InvalidArgument("apply_kernel_operator: exclusion radius smaller than a cell");
  const std::size_t n = g.cells();
  const double vol = g.cell_volume();
  MatrixField out(g);
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < n; ++j)
    if (f.cell(j).squaredNorm() != 0.0) support.push_back(j);
  if (support.empty()) return out;

  if (k.translation_invariant()) {
    // difference lattice table: k(delta/N, 0)
    const auto N = static_cast<std::int64_t>(g.side());
    std::vector<cplx> table(n);
    std::vector<char> active(n, 0);
    Point origin;
    origin.d = g.d;
    for (std::size_t s = 0; s < n; ++s) {
      const Index c = cell_coords(g, s);
      Point p;
      p.d = g.d;
      for (int a = 0; a < g.d; ++a) p[a] = static_cast<double>(c[a]) * h;
      if (torus_distance(p, origin) > exclusion_radius) {
        table[s] = k(p, origin);
        active[s] = 1;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Index ci = cell_coords(g, i);
      auto acc = out.cell(i);
      for (std::size_t j : support) {
        const Index cj = cell_coords(g, j);
        Index diff{};
        for (int a = 0; a < g.d; ++a) diff[a] = ((ci[a] - cj[a]) % N + N) % N;
        const std::size_t s = cell_index(g, diff);
        if (active[s]) acc += (table[s] * vol) * f.cell(j);
      }
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = cell_center(g, i);
    auto acc = out.cell(i);
    for (std::size_t j : support) {
      const Point y = cell_center(g, j);
      if (torus_distance(x, y) > exclusion_radius) acc += (k(x, y) * vol) * f.cell(j);
    }
  }
  return out;
}

std::vector<double> halton(std::size_t index, int dims) {
  static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (dims < 0 || dims > 12) throw InvalidArgument("halton: at most 12 dimensions");
  std::vector<double> out(static_cast<std::size_t>(dims));
  for (int k = 0; k < dims; ++k) {
    const int b = primes[k];
    double f = 1.0, r = 0.0;
    std::size_t i = index;
    while (i > 0) {
      f /= b;
      r += f * static_cast<double>(i % static_cast<std::size_t>(b));
      i /= static_cast<std::size_t>(b);
    }
    out[static_cast<std::size_t>(k)] = r;
  }
  return out;
}

double size_condition_check(const Kernel& k, int samples, const SamplingOptions& opt) {
  if (samples < 1) throw InvalidArgument("size_condition_check: samples must be >= 1");
  const int d = k.dim();
  const double diam = torus_diameter(d);
  const double floor = std::min(opt.separation_floor, diam);
  const int dd = direction_dims(d);
  double best = 0.0;
  for (int s = 1; s <= samples; ++s) {
    const auto h = halton(static_cast<std::size_t>(s), d + dd + 1);
    Point x;
    x.d = d;
    for (int a = 0; a < d; ++a) x[a] = h[static_cast<std::size_t>(a)];
    const Vec dir = direction(d, &h[static_cast<std::size_t>(d)]);
    const double r = floor * std::pow(diam / floor, h[static_cast<std::size_t>(d + dd)]);
    const Point y = offset_point(x, dir, r);
    const double dist = torus_distance(x, y);
    if (dist <= 0.0) continue;
    best = std::max(best, std::abs(k(x, y)) * ball_volume(d, dist));
  }
  return best;
}

double lipschitz_condition_check(const Kernel& k, double alpha, int samples, const SamplingOptions& opt) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("lipschitz_condition_check: alpha must be in (0,1]");
  const int d = k.dim();
  const double diam = torus_diameter(d);
  const double floor = std::min(opt.separation_floor, diam);
  const int dd = direction_dims(d);
  double best = 0.0;
  for (int s = 1; s <= samples; ++s) {
    const auto h = halton(static_cast<std::size_t>(s), d + 2 * dd + 2);
    Point x;
    x.d = d;
    for (int a = 0; a < d; ++a) x[a] = h[static_cast<std::size_t>(a)];
    const Vec dir1 = direction(d, &h[static_cast<std::size_t>(d)]);
    const double r = floor * std::pow(diam / floor, h[static_cast<std::size_t>(d + dd)]);
    const Point yp = offset_point(x, dir1, r);
    const Vec dir2 = direction(d, &h[static_cast<std::size_t>(d + dd + 1)]);
    // d(y, y') between 1e-3 r and 0.45 r
    const double rho = r * 1e-3 * std::pow(450.0, h[static_cast<std::size_t>(d + 2 * dd + 1)]);
    const Point y = offset_point(yp, dir2, rho);
    const double dxy = torus_distance(x, y), dxyp = torus_distance(x, yp), dyy = torus_distance(y, yp);
    if (dyy <= 0.0 || !(2.0 * dyy < dxy)) continue;
    const double diff = std::abs(k(x, y) - k(x, yp));
    best = std::max(best, diff * ball_volume(d, dxyp) * std::pow(dxyp / dyy, alpha));
  }
  return best;
}

namespace {

int default_level(int d) { return d == 1 ? 14 : (d == 2 ? 8 : 5); }

struct QuadGrid {
  std::vector<Point> pts;
  std::vector<double> dist;  // to y'
  double weight = 0.0;
};

QuadGrid quad_grid(int d, const Point& yp, int level) {
  QuadGrid q;
  const std::size_t M = std::size_t{1} << level;
  const std::size_t total = std::size_t{1} << (d * level);
  q.weight = 1.0 / static_cast<double>(total);
  q.pts.reserve(total);
  q.dist.reserve(total);
  for (std::size_t s = 0; s < total; ++s) {
    const Index c = block_coords(d, level, s);
    Point p;
    p.d = d;
    for (int a = 0; a < d; ++a) {
      const double v = yp[a] + (static_cast<double>(c[a]) + 0.5) / static_cast<double>(M);
      p[a] = v - std::floor(v);
    }
    q.pts.push_back(p);
    q.dist.push_back(torus_distance(p, yp));
  }
  return q;
}

std::vector<Point> inner_points(const Point& yp, double r, int count) {
  const int d = yp.d;
  const int dd = direction_dims(d);
  std::vector<Point> ys;
  ys.push_back(yp);
  for (int s = 1; s < count; ++s) {
    const auto h = halton(static_cast<std::size_t>(s), dd + 1);
    const Vec dir = direction(d, h.data());
    const double rho = (r / 3.0) * std::pow(h[static_cast<std::size_t>(dd)], 1.0 / d) * (1.0 - 1e-9);
    ys.push_back(offset_point(yp, dir, rho));
  }
  return ys;
}

int annulus_of(double dist, double r) {  // m with 2^m r <= dist < 2^{m+1} r, -1 inside B_r
  if (dist < r) return -1;
  return static_cast<int>(std::floor(std::log2(dist / r)));
}

}  // namespace

HormanderSum hormander_l2_sum(const Kernel& k, const Point& yp, double r, int m_max, const QuadratureOptions& opt) {
  if (!(r > 0.0)) throw InvalidArgument("hormander_l2_sum: r must be > 0");
  const int d = k.dim();
  const double diam = torus_diameter(d);
  const int level = opt.level > 0 ? opt.level : default_level(d);
  const QuadGrid q = quad_grid(d, yp, level);
  std::vector<cplx> kp(q.pts.size());
  for (std::size_t s = 0; s < q.pts.size(); ++s)
    if (q.dist[s] >= r) kp[s] = k(q.pts[s], yp);
  HormanderSum out;
  std::vector<double> sup(static_cast<std::size_t>(m_max + 1), 0.0);
  for (const Point& y : inner_points(yp, r, opt.y_samples)) {
    std::vector<double> acc(static_cast<std::size_t>(m_max + 1), 0.0);
    for (std::size_t s = 0; s < q.pts.size(); ++s) {
      const int m = annulus_of(q.dist[s], r);
      if (m < 0 || m > m_max) continue;
      acc[static_cast<std::size_t>(m)] += std::norm(k(q.pts[s], y) - kp[s]) * q.weight;
    }
    for (int m = 0; m <= m_max; ++m)
      sup[static_cast<std::size_t>(m)] = std::max(sup[static_cast<std::size_t>(m)], acc[static_cast<std::size_t>(m)]);
  }
  for (int m = 0; m <= m_max; ++m) {
    const double inner = std::ldexp(r, m);
    if (inner >= diam) break;
    ++out.annuli;
    const double area = ball_volume(d, std::ldexp(r, m + 1)) - ball_volume(d, inner);
    out.value += std::sqrt(area) * std::sqrt(sup[static_cast<std::size_t>(m)]);
  }
  return out;
}

double hormander_l1_check(const Kernel& k, const Point& yp, double r, const QuadratureOptions& opt) {
  if (!(r > 0.0)) throw InvalidArgument("hormander_l1_check: r must be > 0");
  const int d = k.dim();
  const int level = opt.level > 0 ? opt.level : default_level(d);
  const QuadGrid q = quad_grid(d, yp, level);
  double best = 0.0;
  for (const Point& y : inner_points(yp, r, opt.y_samples)) {
    double acc = 0.0;
    for (std::size_t s = 0; s < q.pts.size(); ++s) {
      if (torus_distance(q.pts[s], y) < r) continue;
      acc += std::abs(k(q.pts[s], y) - k(q.pts[s], yp)) * q.weight;
    }
    best = std::max(best, acc);
  }
  return best;
}

double lipschitz_implied_l2_bound(int d, double lip, double alpha, const Point& yp, double r, int m_max,
                                  const QuadratureOptions& opt) {
  const double diam = torus_diameter(d);
  const int level = opt.level > 0 ? opt.level : default_level(d);
  const QuadGrid q = quad_grid(d, yp, level);
  std::vector<double> acc(static_cast<std::size_t>(m_max + 1), 0.0);
  for (std::size_t s = 0; s < q.pts.size(); ++s) {
    const int m = annulus_of(q.dist[s], r);
    if (m < 0 || m > m_max) continue;
    const double v = ball_volume(d, q.dist[s]);
    acc[static_cast<std::size_t>(m)] += std::pow(q.dist[s], -2.0 * alpha) / (v * v) * q.weight;
  }
  double total = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    const double inner = std::ldexp(r, m);
    if (inner >= diam) break;
    const double area = ball_volume(d, std::ldexp(r, m + 1)) - ball_volume(d, inner);
    total += std::sqrt(area) * std::sqrt(acc[static_cast<std::size_t>(m)]);
  }
  return lip * std::pow(r / 3.0, alpha) * total;
}

void write_kernel_condition_csv(std::ostream& os, const std::vector<KernelConditionRow>& rows) {
  os << "kernel,condition,parameter,value,samples,grid\r\n";
  std::ostringstream num;
  num << std::setprecision(17);
  for (const auto& r : rows) {
    num.str("");
    num << r.parameter << ',' << r.value;
    os << r.kernel << ',' << r.condition << ',' << num.str() << ',' << r.samples << ',' << r.grid << "\r\n";
  }
}

}  // namespace czlab
