#include "czlab/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "czlab/error.hpp"

namespace czlab {

namespace {

double wrap(double a) {
  double t = std::fabs(a - std::floor(a));  // in [0, 1)
  return std::min(t, 1.0 - t);
}

// Area of {x in [-1/2,1/2)^2 : |x| < r}.
double disc_in_square(double r) {
  if (r <= 0.0) return 0.0;
  if (r <= 0.5) return std::numbers::pi * r * r;
  if (r >= std::sqrt(0.5)) return 1.0;
  const double h = 0.5;
  const double seg = r * r * std::acos(h / r) - h * std::sqrt(r * r - h * h);
  return std::numbers::pi * r * r - 4.0 * seg;
}

double ball_in_cube_lattice(double r) {
  static std::mutex mu;
  static std::map<double, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(r); it != cache.end()) return it->second;
  }
  constexpr int n = 100;
  const double h = 1.0 / n;
  const double r2 = r * r;
  long count = 0;
  for (int i = 0; i < n; ++i) {
    const double x = -0.5 + (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      const double y = -0.5 + (j + 0.5) * h;
      for (int k = 0; k < n; ++k) {
        const double z = -0.5 + (k + 0.5) * h;
        if (x * x + y * y + z * z < r2) ++count;
      }
    }
  }
  const double v = static_cast<double>(count) / (static_cast<double>(n) * n * n);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(r, v);
  return v;
}

}  // namespace

double torus_diameter(int d) { return std::sqrt(static_cast<double>(d)) / 2.0; }

double torus_distance(const Point& x, const Point& y) {
  double acc = 0.0;
  for (int k = 0; k < x.d; ++k) {
    const double t = wrap(x[k] - y[k]);
    acc += t * t;
  }
  return std::sqrt(acc);
}

double ball_volume(int d, double r) {
  if (!(r > 0.0)) throw InvalidArgument("ball_volume: r must be > 0");
  if (r >= torus_diameter(d)) return 1.0;
  switch (d) {
    case 1:
      return std::min(2.0 * r, 1.0);
    case 2:
      return disc_in_square(r);
    case 3:
      if (r <= 0.5) return 4.0 / 3.0 * std::numbers::pi * r * r * r;
      return ball_in_cube_lattice(r);
    default:
      throw InvalidArgument("ball_volume: dimension must be 1..3");
  }
}

double ball_volume_between(const Point& x, const Point& y) {
  const double r = torus_distance(x, y);
  if (r == 0.0) return 0.0;
  return ball_volume(x.d, r);
}

Cube make_cube(int d, int n, std::size_t id) {
  Cube q;
  q.order = n;
  q.id = id;
  q.index = block_coords(d, n, id);
  q.side = std::ldexp(1.0, -n);
  q.center.d = d;
  for (int k = 0; k < d; ++k) q.center[k] = (static_cast<double>(q.index[k]) + 0.5) * q.side;
  if (n > 0) {
    Index p = q.index;
    for (int k = 0; k < d; ++k) p[k] >>= 1;
    q.parent = block_index(d, n - 1, p);
  }
  q.diameter = std::min(q.side, 0.5) * std::sqrt(static_cast<double>(d));
  return q;
}

std::vector<Cube> cubes(int d, int n) {
  if (n < 0) throw InvalidArgument("cubes: order must be >= 0");
  const std::size_t count = std::size_t{1} << (d * n);
  std::vector<Cube> out;
  out.reserve(count);
  for (std::size_t id = 0; id < count; ++id) out.push_back(make_cube(d, n, id));
  return out;
}

std::vector<std::size_t> children(int d, const Cube& q) {
  std::vector<std::size_t> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Index c{};
    for (int k = 0; k < d; ++k) c[k] = 2 * q.index[k] + static_cast<std::int64_t>((mask >> (d - 1 - k)) & 1);
    out.push_back(block_index(d, q.order + 1, c));
  }
  return out;
}

DyadicConstants dyadic_constants(const GridSpec& g) {
  DyadicConstants c;
  c.C2 = std::sqrt(static_cast<double>(g.d));
  const double lo = std::ldexp(1.0, -g.L);
  const double hi = torus_diameter(g.d);
  c.ahlfors_low = INFINITY;
  c.ahlfors_high = 0.0;
  constexpr int samples = 256;
  for (int i = 0; i <= samples; ++i) {
    const double r = lo * std::pow(hi / lo, static_cast<double>(i) / samples);
    const double ratio = ball_volume(g.d, r) / std::pow(r, g.d);
    c.ahlfors_low = std::min(c.ahlfors_low, ratio);
    c.ahlfors_high = std::max(c.ahlfors_high, ratio);
  }
  return c;
}

std::vector<cplx> cube_averages(const MatrixField& f, int n) {
  const GridSpec& g = f.spec();
  if (n < 0 || n > g.L) throw InvalidArgument("conditional_expectation: order out of range");
  const std::size_t mm = g.matrix_entries();
  const std::size_t nq = std::size_t{1} << (g.d * n);
  std::vector<cplx> acc(nq * mm, cplx{});
  const auto& data = f.data();
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    const std::size_t q = cube_of_cell(g, i, n);
    for (std::size_t e = 0; e < mm; ++e) acc[q * mm + e] += data[i * mm + e];
  }
  const double w = static_cast<double>(nq) / static_cast<double>(g.cells());
  for (cplx& v : acc) v *= w;
  return acc;
}

MatrixField expand_cubes(const GridSpec& g, int n, const std::vector<cplx>& blocks) {
  MatrixField out(g);
  const std::size_t mm = g.matrix_entries();
  auto& data = out.data();
  for (std::size_t i = 0; i < out.cell_count(); ++i) {
    const std::size_t q = cube_of_cell(g, i, n);
    std::copy_n(blocks.begin() + static_cast<std::ptrdiff_t>(q * mm), mm, data.begin() + static_cast<std::ptrdiff_t>(i * mm));
  }
  return out;
}

MatrixField conditional_expectation(const MatrixField& f, int n) {
  if (n == f.spec().L) return f;
  return expand_cubes(f.spec(), n, cube_averages(f, n));
}

}  // namespace czlab
