#pragma once

#include <cstdint>
#include <string>

#include "czlab/matrix_field.hpp"

namespace czlab {

enum class InstanceKind { RandomTrigPoly, PositiveField, Analytic, GradientField };

InstanceKind parse_instance_kind(const std::string& s);
std::string to_string(InstanceKind k);

std::uint64_t splitmix64(std::uint64_t x);

// Reproducible random trigonometric polynomials sampled at cell centres.
// Instance i depends only on (seed, i, kind, freq_cutoff, m, d), not on L,
// so the same function is seen at every refinement level.
struct InstanceGen {
  std::uint64_t seed = 1;
  InstanceKind kind = InstanceKind::RandomTrigPoly;
  int freq_cutoff = 4;
  double amplitude_decades = 4.0;  // amplitude 10^U(-decades/2, decades/2)

  std::uint64_t instance_seed(std::size_t i) const;
  // `components` independent fields (for tuples); a gradient field always has d.
  FieldTuple generate(const GridSpec& g, std::size_t i, int components = 1) const;
};

// Trig polynomial with coefficients on [-K, K]^d (or [0, K] on axis 0 if analytic).
MatrixField random_trig_poly(const GridSpec& g, int K, std::uint64_t seed, bool analytic = false, bool mean_zero = false);

// chi_n (x) A sampled at cell centres
MatrixField character_field(const GridSpec& g, const Index& n, const Mat& A);

}  // namespace czlab
