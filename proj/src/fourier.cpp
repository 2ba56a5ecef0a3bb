#include "czlab/fourier.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include <fftw3.h>

#include "czlab/error.hpp"

namespace czlab {

namespace {

// One plan per (d, L, m, sign); the planner is not thread safe, execution is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const GridSpec& g, int sign) {
    const auto key = std::make_tuple(g.d, g.L, g.m, sign);
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    int dims[kMaxDim];
    for (int k = 0; k < g.d; ++k) dims[k] = static_cast<int>(g.side());
    const int howmany = g.m * g.m;
    std::vector<cplx> scratch_in(g.cells() * static_cast<std::size_t>(howmany));
    std::vector<cplx> scratch_out(scratch_in.size());
    auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
    auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
    fftw_plan plan = fftw_plan_many_dft(g.d, dims, howmany, in, nullptr, howmany, 1, out, nullptr, howmany, 1,
                                        sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw InvalidArgument("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [k, p] : plans_) fftw_destroy_plan(p);
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans_;
};

void execute(const GridSpec& g, int sign, const std::vector<cplx>& in, std::vector<cplx>& out) {
  fftw_plan plan = PlanCache::instance().get(g, sign);
  // new-array execute; FFTW does not write the input for out-of-place complex DFTs
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

// exp(sign * pi i * sum_k n_k / N), the cell-centre phase.
std::vector<cplx> centre_phases(const GridSpec& g, double sign) {
  const auto N = static_cast<std::int64_t>(g.side());
  std::vector<cplx> axis(static_cast<std::size_t>(N));
  for (std::int64_t k = 0; k < N; ++k)
    axis[static_cast<std::size_t>(k)] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(frequency_of(k, N)) / static_cast<double>(N));
  std::vector<cplx> ph(g.cells());
  for (std::size_t s = 0; s < g.cells(); ++s) {
    const Index c = cell_coords(g, s);
    cplx v(1.0, 0.0);
    for (int k = 0; k < g.d; ++k) v *= axis[static_cast<std::size_t>(c[k])];
    ph[s] = v;
  }
  return ph;
}

}  // namespace

Index FourierCoefficients::frequency(std::size_t slot) const {
  const GridSpec& g = spec();
  Index c = cell_coords(g, slot);
  const auto N = static_cast<std::int64_t>(g.side());
  for (int k = 0; k < g.d; ++k) c[k] = frequency_of(c[k], N);
  return c;
}

std::size_t FourierCoefficients::slot(const Index& n) const {
  const GridSpec& g = spec();
  const auto N = static_cast<std::int64_t>(g.side());
  Index c{};
  for (int k = 0; k < g.d; ++k) {
    if (n[k] < -N / 2 || n[k] >= N / 2 + (N == 1 ? 1 : 0)) throw InvalidArgument("frequency outside the box");
    c[k] = index_of_frequency(n[k], N);
  }
  return cell_index(g, c);
}

FourierCoefficients fourier(const MatrixField& f) {
  const GridSpec& g = f.spec();
  FourierCoefficients fc(g);
  execute(g, FFTW_FORWARD, f.data(), fc.data());
  const std::vector<cplx> ph = centre_phases(g, -1.0);
  const double w = g.cell_volume();
  const std::size_t mm = g.matrix_entries();
  auto& data = fc.data();
  for (std::size_t s = 0; s < g.cells(); ++s) {
    const cplx k = ph[s] * w;
    for (std::size_t e = 0; e < mm; ++e) data[s * mm + e] *= k;
  }
  return fc;
}

MatrixField inverse_fourier(const FourierCoefficients& fc) {
  const GridSpec& g = fc.spec();
  const std::vector<cplx> ph = centre_phases(g, 1.0);
  const std::size_t mm = g.matrix_entries();
  std::vector<cplx> tmp(fc.data());
  for (std::size_t s = 0; s < g.cells(); ++s)
    for (std::size_t e = 0; e < mm; ++e) tmp[s * mm + e] *= ph[s];
  MatrixField f(g);
  execute(g, FFTW_BACKWARD, tmp, f.data());
  return f;
}

}  // namespace czlab
