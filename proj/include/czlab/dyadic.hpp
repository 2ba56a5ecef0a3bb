#pragma once

#include <cstddef>
#include <vector>

#include "czlab/grid.hpp"
#include "czlab/matrix_field.hpp"

namespace czlab {

// Euclidean quotient metric on [0,1)^d.
double torus_distance(const Point& x, const Point& y);
double torus_diameter(int d);  // sqrt(d)/2

// Measure of the open ball of radius r (independent of the center).
double ball_volume(int d, double r);
inline double ball_volume(const Point& x, double r) { return ball_volume(x.d, r); }
// V(x, y) = |B_{d(x,y)}(x)|
double ball_volume_between(const Point& x, const Point& y);

struct Cube {
  int order = 0;
  Index index{};
  std::size_t id = 0;      // lexicographic id among cubes of this order
  std::size_t parent = 0;  // id of the parent (order - 1); 0 for order 0
  Point center;
  double side = 1.0;
  double diameter = 0.0;
};

Cube make_cube(int d, int n, std::size_t id);
std::vector<Cube> cubes(int d, int n);
std::vector<std::size_t> children(int d, const Cube& q);

struct DyadicConstants {
  double delta = 0.5;
  double C1 = 0.5;
  double C2 = 1.0;
  double ahlfors_low = 0.0;   // inf of |B_r| / r^d over r in [2^-L, diam]
  double ahlfors_high = 0.0;  // sup of the same
};
DyadicConstants dyadic_constants(const GridSpec& g);

// Cube averages of f at order n: one m x m block per cube, flat like a field.
std::vector<cplx> cube_averages(const MatrixField& f, int n);
MatrixField conditional_expectation(const MatrixField& f, int n);
// Expand per-cube matrices at order n into a full-resolution field.
MatrixField expand_cubes(const GridSpec& g, int n, const std::vector<cplx>& blocks);

}  // namespace czlab
