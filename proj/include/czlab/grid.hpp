#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace czlab {

inline constexpr int kMaxDim = 3;

// Dyadic grid on [0,1)^d with 2^L cells per axis and m x m matrix cells.
struct GridSpec {
  int d = 1;
  int L = 1;
  int m = 1;

  std::size_t side() const { return std::size_t{1} << L; }
  std::size_t cells() const { return std::size_t{1} << (d * L); }
  double cell_volume() const { return 1.0 / static_cast<double>(cells()); }
  std::size_t matrix_entries() const { return static_cast<std::size_t>(m) * m; }

  void validate() const;
  bool operator==(const GridSpec&) const = default;
};

struct Point {
  int d = 1;
  std::array<double, kMaxDim> x{};

  double operator[](int k) const { return x[k]; }
  double& operator[](int k) { return x[k]; }
};

using Index = std::array<std::int64_t, kMaxDim>;

// Lexicographic cell order, axis 0 most significant.
Index cell_coords(const GridSpec& g, std::size_t cell);
std::size_t cell_index(const GridSpec& g, const Index& coords);
Point cell_center(const GridSpec& g, std::size_t cell);

// Same at an arbitrary order n (2^n cells per axis).
Index block_coords(int d, int n, std::size_t id);
std::size_t block_index(int d, int n, const Index& coords);

// Order-n cube containing a full-resolution cell.
std::size_t cube_of_cell(const GridSpec& g, std::size_t cell, int n);

}  // namespace czlab
