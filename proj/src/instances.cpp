#include "czlab/instances.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "czlab/error.hpp"
#include "czlab/fourier.hpp"
#include "czlab/multipliers.hpp"

namespace czlab {

InstanceKind parse_instance_kind(const std::string& s) {
  if (s == "random_trig_poly") return InstanceKind::RandomTrigPoly;
  if (s == "positive_field") return InstanceKind::PositiveField;
  if (s == "analytic") return InstanceKind::Analytic;
  if (s == "gradient_field") return InstanceKind::GradientField;
  throw InvalidArgument("unknown instance kind: " + s);
}

std::string to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::RandomTrigPoly:
      return "random_trig_poly";
    case InstanceKind::PositiveField:
      return "positive_field";
    case InstanceKind::Analytic:
      return "analytic";
    case InstanceKind::GradientField:
      return "gradient_field";
  }
  return "?";
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t InstanceGen::instance_seed(std::size_t i) const {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i) + 0x5DEECE66DULL));
}

MatrixField random_trig_poly(const GridSpec& g, int K, std::uint64_t seed, bool analytic, bool mean_zero) {
  if (K < 0) throw InvalidArgument("freq_cutoff must be >= 0");
  const auto N = static_cast<int>(g.side());
  if (K > N / 2 - 1 && !(N == 1 && K == 0))
    throw InvalidArgument("freq_cutoff " + std::to_string(K) + " does not fit the frequency box of level " +
                          std::to_string(g.L));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  FourierCoefficients fc(g);
  const int span = 2 * K + 1;
  std::size_t count = 1;
  for (int k = 0; k < g.d; ++k) count *= static_cast<std::size_t>(span);
  const double scale = 1.0 / std::sqrt(static_cast<double>(count));
  // draw order is lexicographic over [-K, K]^d regardless of the grid level
  for (std::size_t t = 0; t < count; ++t) {
    Index n{};
    std::size_t r = t;
    for (int k = g.d - 1; k >= 0; --k) {
      n[k] = static_cast<std::int64_t>(r % static_cast<std::size_t>(span)) - K;
      r /= static_cast<std::size_t>(span);
    }
    Mat c(g.m, g.m);
    for (int a = 0; a < g.m; ++a)
      for (int b = 0; b < g.m; ++b) {
        const double re = normal(rng);
        const double im = normal(rng);
        c(a, b) = cplx(re, im) * scale;
      }
    bool zero = false;
    if (analytic && n[0] < 0) zero = true;
    if (mean_zero) {
      bool all0 = true;
      for (int k = 0; k < g.d; ++k) all0 = all0 && n[k] == 0;
      if (all0) zero = true;
    }
    if (!zero) fc.at(n) = c;
  }
  return inverse_fourier(fc);
}

MatrixField character_field(const GridSpec& g, const Index& n, const Mat& A) {
  MatrixField f(g);
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    const Point c = cell_center(g, i);
    double phase = 0.0;
    for (int k = 0; k < g.d; ++k) phase += static_cast<double>(n[k]) * c[k];
    f.cell(i) = std::polar(1.0, 2.0 * std::numbers::pi * phase) * A;
  }
  return f;
}

FieldTuple InstanceGen::generate(const GridSpec& g, std::size_t i, int components) const {
  const std::uint64_t base = instance_seed(i);
  std::mt19937_64 amp_rng(base);
  std::uniform_real_distribution<double> u(-0.5 * amplitude_decades, 0.5 * amplitude_decades);
  const double amp = std::pow(10.0, u(amp_rng));
  FieldTuple out;
  if (kind == InstanceKind::GradientField) {
    MatrixField gpot = random_trig_poly(g, freq_cutoff, splitmix64(base + 1), false, true);
    for (int j = 0; j < g.d; ++j) out.push_back(cplx(amp, 0.0) * partial_derivative(gpot, j));
    return out;
  }
  for (int c = 0; c < components; ++c) {
    const std::uint64_t s = splitmix64(base + 1 + static_cast<std::uint64_t>(c));
    switch (kind) {
      case InstanceKind::RandomTrigPoly:
        out.push_back(cplx(amp, 0.0) * random_trig_poly(g, freq_cutoff, s));
        break;
      case InstanceKind::Analytic:
        out.push_back(cplx(amp, 0.0) * random_trig_poly(g, freq_cutoff, s, g.d == 1));
        break;
      case InstanceKind::PositiveField: {
        const MatrixField h = random_trig_poly(g, freq_cutoff, s);
        MatrixField f(g);
        for (std::size_t k = 0; k < f.cell_count(); ++k) {
          const Mat p = h.cell(k).adjoint() * h.cell(k);
          f.cell(k) = 0.5 * amp * (p + p.adjoint());
        }
        out.push_back(std::move(f));
        break;
      }
      case InstanceKind::GradientField:
        break;
    }
  }
  return out;
}

}  // namespace czlab
