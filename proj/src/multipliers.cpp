#include "czlab/multipliers.hpp"

#include <algorithm>
#include <cmath>

#include "czlab/error.hpp"
#include "czlab/ncmeasure.hpp"

namespace czlab {

Symbol::Symbol(int d, int L, std::string name)
    : d_(d), L_(L), name_(std::move(name)), values_(std::size_t{1} << (d * L), cplx{}) {}

Symbol Symbol::from_function(int d, int L, std::string name, const std::function<cplx(const Index&)>& fn) {
  Symbol s(d, L, std::move(name));
  const auto N = static_cast<std::int64_t>(std::size_t{1} << L);
  for (std::size_t slot = 0; slot < s.size(); ++slot) {
    Index n = block_coords(d, L, slot);
    for (int k = 0; k < d; ++k) n[k] = frequency_of(n[k], N);
    s.values_[slot] = fn(n);
  }
  return s;
}

Symbol Symbol::constant(int d, int L, cplx c) {
  Symbol s(d, L, "constant");
  std::fill(s.values_.begin(), s.values_.end(), c);
  return s;
}

cplx Symbol::at(const Index& n) const {
  const auto N = static_cast<std::int64_t>(std::size_t{1} << L_);
  Index c{};
  for (int k = 0; k < d_; ++k) c[k] = index_of_frequency(n[k], N);
  return values_[block_index(d_, L_, c)];
}

double Symbol::sup_modulus() const {
  double s = 0.0;
  for (const cplx& v : values_) s = std::max(s, std::abs(v));
  return s;
}

bool Symbol::is_projection() const {
  return std::all_of(values_.begin(), values_.end(), [](cplx v) { return v == cplx(0, 0) || v == cplx(1, 0); });
}

Symbol Symbol::operator*(const Symbol& o) const {
  if (o.d_ != d_ || o.L_ != L_) throw InvalidArgument("symbol box mismatch");
  Symbol s(d_, L_, name_ + "*" + o.name_);
  for (std::size_t k = 0; k < values_.size(); ++k) s.values_[k] = values_[k] * o.values_[k];
  return s;
}

Symbol Symbol::operator+(const Symbol& o) const {
  if (o.d_ != d_ || o.L_ != L_) throw InvalidArgument("symbol box mismatch");
  Symbol s(d_, L_, name_ + "+" + o.name_);
  for (std::size_t k = 0; k < values_.size(); ++k) s.values_[k] = values_[k] + o.values_[k];
  return s;
}

Symbol Symbol::complement() const {
  Symbol s(d_, L_, name_ + "_perp");
  for (std::size_t k = 0; k < values_.size(); ++k) s.values_[k] = cplx(1, 0) - values_[k];
  return s;
}

FourierCoefficients apply_multiplier(const Symbol& sym, const FourierCoefficients& fc) {
  const GridSpec& g = fc.spec();
  if (sym.d() != g.d || sym.L() != g.L) throw InvalidArgument("apply_multiplier: frequency box mismatch");
  FourierCoefficients out = fc;
  const std::size_t mm = g.matrix_entries();
  auto& data = out.data();
  for (std::size_t s = 0; s < out.size(); ++s)
    for (std::size_t e = 0; e < mm; ++e) data[s * mm + e] *= sym[s];
  return out;
}

MatrixField apply_multiplier(const Symbol& sym, const MatrixField& f) {
  return inverse_fourier(apply_multiplier(sym, fourier(f)));
}

Symbol riesz_symbol(int L) {
  return Symbol::from_function(1, L, "riesz", [](const Index& n) { return cplx(n[0] >= 0 ? 1.0 : 0.0, 0.0); });
}

MatrixField riesz_projection(const MatrixField& f) {
  if (f.spec().d != 1) throw InvalidArgument("riesz_projection requires d = 1");
  return apply_multiplier(riesz_symbol(f.spec().L), f);
}

MatrixField riesz_complement(const MatrixField& f) {
  if (f.spec().d != 1) throw InvalidArgument("riesz_complement requires d = 1");
  return apply_multiplier(riesz_symbol(f.spec().L).complement(), f);
}

Symbol fejer_symbol(int d, int L, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("fejer: lambda must be > 0");
  return Symbol::from_function(d, L, "fejer", [d, lambda](const Index& n) {
    double w = 1.0;
    for (int k = 0; k < d; ++k) w *= std::max(0.0, 1.0 - std::abs(static_cast<double>(n[k])) / lambda);
    return cplx(w, 0.0);
  });
}

MatrixField fejer(const MatrixField& f, double lambda) {
  return apply_multiplier(fejer_symbol(f.spec().d, f.spec().L, lambda), f);
}

Symbol leray_symbol(int d, int L, int i, int j) {
  if (d < 2) throw InvalidArgument("leray requires d >= 2");
  if (i < 0 || i >= d || j < 0 || j >= d) throw InvalidArgument("leray: axis out of range");
  return Symbol::from_function(d, L, "leray_" + std::to_string(i + 1) + std::to_string(j + 1), [=](const Index& n) {
    const double delta = i == j ? 1.0 : 0.0;
    double n2 = 0.0;
    for (int k = 0; k < d; ++k) n2 += static_cast<double>(n[k] * n[k]);
    if (n2 == 0.0) return cplx(delta, 0.0);
    return cplx(delta - static_cast<double>(n[i] * n[j]) / n2, 0.0);
  });
}

namespace {

void check_tuple(const FieldTuple& f) {
  if (f.empty()) throw InvalidArgument("empty tuple");
  for (std::size_t k = 1; k < f.size(); ++k) require_same_grid(f[0], f[k]);
  if (static_cast<int>(f.size()) != f[0].spec().d)
    throw InvalidArgument("tuple length must equal the dimension d");
}

FieldTuple leray_apply(const FieldTuple& f, bool complement) {
  check_tuple(f);
  const GridSpec& g = f[0].spec();
  const int d = g.d;
  if (d < 2) throw InvalidArgument("leray requires d >= 2");
  std::vector<FourierCoefficients> in;
  for (const auto& c : f) in.push_back(fourier(c));
  std::vector<Symbol> rho;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho.push_back(leray_symbol(d, g.L, i, j));
  const std::size_t mm = g.matrix_entries();
  FieldTuple out;
  for (int i = 0; i < d; ++i) {
    FourierCoefficients acc(g);
    auto& a = acc.data();
    for (int j = 0; j < d; ++j) {
      const Symbol& r = rho[static_cast<std::size_t>(i * d + j)];
      const auto& src = in[static_cast<std::size_t>(j)].data();
      for (std::size_t s = 0; s < acc.size(); ++s) {
        cplx w = r[s];
        if (complement) w = (i == j ? cplx(1, 0) : cplx(0, 0)) - w;
        if (w == cplx(0, 0)) continue;
        for (std::size_t e = 0; e < mm; ++e) a[s * mm + e] += w * src[s * mm + e];
      }
    }
    out.push_back(inverse_fourier(acc));
  }
  return out;
}

}  // namespace

FieldTuple leray_projection(const FieldTuple& f) { return leray_apply(f, false); }
FieldTuple leray_complement(const FieldTuple& f) { return leray_apply(f, true); }

Symbol derivative_symbol(int d, int L, int j) {
  if (j < 0 || j >= d) throw InvalidArgument("derivative: axis out of range");
  return Symbol::from_function(d, L, "d" + std::to_string(j + 1),
                               [j](const Index& n) { return cplx(0.0, static_cast<double>(n[j])); });
}

MatrixField partial_derivative(const MatrixField& f, int j) {
  return apply_multiplier(derivative_symbol(f.spec().d, f.spec().L, j), f);
}

double sobolev_norm(const MatrixField& f, double p) {
  const int d = f.spec().d;
  if (std::isinf(p)) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) s = std::max(s, lp_norm(partial_derivative(f, j), p));
    return s;
  }
  double acc = 0.0;
  for (int j = 0; j < d; ++j) acc += std::pow(lp_norm(partial_derivative(f, j), p), p);
  return std::pow(acc, 1.0 / p);
}

double membership_check(const FieldTuple& f, Membership which) {
  check_tuple(f);
  const GridSpec& g = f[0].spec();
  const int d = g.d;
  std::vector<FourierCoefficients> fc;
  for (const auto& c : f) fc.push_back(fourier(c));
  std::vector<Symbol> eta;
  for (int j = 0; j < d; ++j) eta.push_back(derivative_symbol(d, g.L, j));
  const std::size_t mm = g.matrix_entries();
  double acc = 0.0;  // Parseval: sum of |coefficients|^2
  if (which == Membership::RangeP) {
    for (std::size_t s = 0; s < fc[0].size(); ++s)
      for (std::size_t e = 0; e < mm; ++e) {
        cplx div{};
        for (int j = 0; j < d; ++j) div += eta[static_cast<std::size_t>(j)][s] * fc[static_cast<std::size_t>(j)].data()[s * mm + e];
        acc += std::norm(div);
      }
  } else {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (std::size_t s = 0; s < fc[0].size(); ++s)
          for (std::size_t e = 0; e < mm; ++e) {
            const cplx curl = eta[static_cast<std::size_t>(i)][s] * fc[static_cast<std::size_t>(j)].data()[s * mm + e] -
                              eta[static_cast<std::size_t>(j)][s] * fc[static_cast<std::size_t>(i)].data()[s * mm + e];
            acc += std::norm(curl);
          }
    const Index zero{};
    for (int j = 0; j < d; ++j) acc += fc[static_cast<std::size_t>(j)].at(zero).squaredNorm();
  }
  return std::sqrt(acc);
}

bool is_known_projection(const std::string& tag) {
  return tag == "riesz" || tag == "riesz_perp" || tag == "leray" || tag == "leray_perp";
}

FieldTuple apply_projection(const std::string& tag, const FieldTuple& f) {
  if (tag == "riesz" || tag == "riesz_perp") {
    if (f.size() != 1) throw InvalidArgument("riesz projection acts on a single field");
    return {tag == "riesz" ? riesz_projection(f[0]) : riesz_complement(f[0])};
  }
  if (tag == "leray") return leray_projection(f);
  if (tag == "leray_perp") return leray_complement(f);
  throw InvalidArgument("unknown projection tag: " + tag);
}

double projection_residual(const std::string& tag, const FieldTuple& f) {
  const FieldTuple pf = apply_projection(tag, f);
  double acc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double r = l2_distance(pf[k], f[k]);
    acc += r * r;
  }
  return std::sqrt(acc);
}

}  // namespace czlab
