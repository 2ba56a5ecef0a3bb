#include "czlab/grid.hpp"

#include <string>

#include "czlab/error.hpp"

namespace czlab {

void GridSpec::validate() const {
  if (d < 1 || d > kMaxDim) throw InvalidArgument("grid dimension must be in 1..3, got " + std::to_string(d));
  if (L < 0 || d * L > 30) throw InvalidArgument("grid level out of range: " + std::to_string(L));
  if (m < 1 || m > 64) throw InvalidArgument("matrix size out of range: " + std::to_string(m));
}

Index block_coords(int d, int n, std::size_t id) {
  Index c{};
  const std::size_t mask = (std::size_t{1} << n) - 1;
  for (int k = d - 1; k >= 0; --k) {
    c[k] = static_cast<std::int64_t>(id & mask);
    id >>= n;
  }
  return c;
}

std::size_t block_index(int d, int n, const Index& coords) {
  std::size_t id = 0;
  for (int k = 0; k < d; ++k) id = (id << n) | static_cast<std::size_t>(coords[k]);
  return id;
}

Index cell_coords(const GridSpec& g, std::size_t cell) { return block_coords(g.d, g.L, cell); }

std::size_t cell_index(const GridSpec& g, const Index& coords) { return block_index(g.d, g.L, coords); }

Point cell_center(const GridSpec& g, std::size_t cell) {
  const Index c = cell_coords(g, cell);
  Point p;
  p.d = g.d;
  const double h = 1.0 / static_cast<double>(g.side());
  for (int k = 0; k < g.d; ++k) p.x[k] = (static_cast<double>(c[k]) + 0.5) * h;
  return p;
}

std::size_t cube_of_cell(const GridSpec& g, std::size_t cell, int n) {
  Index c = cell_coords(g, cell);
  for (int k = 0; k < g.d; ++k) c[k] >>= (g.L - n);
  return block_index(g.d, n, c);
}

}  // namespace czlab
