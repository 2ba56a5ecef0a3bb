#pragma once

#include <vector>

#include "czlab/matrix_field.hpp"

namespace czlab {

// Frequency of FFT index k on an axis of length N: k for k < N/2, else k - N.
inline std::int64_t frequency_of(std::int64_t k, std::int64_t N) { return k < N / 2 ? k : k - N; }
inline std::int64_t index_of_frequency(std::int64_t n, std::int64_t N) { return n >= 0 ? n : n + N; }

// Coefficients on the box {-N/2..N/2-1}^d, stored in FFT order with the same
// layout as a MatrixField (one m x m block per frequency).
class FourierCoefficients {
 public:
  FourierCoefficients() = default;
  explicit FourierCoefficients(const GridSpec& spec) : table_(spec) {}

  const GridSpec& spec() const { return table_.spec(); }
  std::size_t size() const { return table_.cell_count(); }

  Index frequency(std::size_t slot) const;
  std::size_t slot(const Index& n) const;  // n must lie in the box

  MatMap at(const Index& n) { return table_.cell(slot(n)); }
  ConstMatMap at(const Index& n) const { return table_.cell(slot(n)); }
  MatMap operator[](std::size_t s) { return table_.cell(s); }
  ConstMatMap operator[](std::size_t s) const { return table_.cell(s); }

  std::vector<cplx>& data() { return table_.data(); }
  const std::vector<cplx>& data() const { return table_.data(); }

 private:
  MatrixField table_;
};

// f^(n) = mean over cells c of f(c) exp(-2 pi i n.c), c = cell centre.
FourierCoefficients fourier(const MatrixField& f);
// f(c) = sum_n f^(n) exp(2 pi i n.c)
MatrixField inverse_fourier(const FourierCoefficients& fc);

}  // namespace czlab
