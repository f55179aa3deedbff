#pragma once

// Fourier analysis on a finite abelian group with probability Haar measure
// on G and counting measure on the dual group:
//
//   f^(m)  = (1/N) sum_x f(x) conj((x, m))
//   f(x)   = sum_m f^(m) (x, m)
//
// Densities (FunctionOnG, integrated against Haar measure) and measures
// (MeasureOnG, point weights) are different types. A density h corresponds
// to the measure with weights h(x) / N; see density_to_measure().

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "group.hpp"

namespace mclab {

struct SpectrumTag {};
using SpectrumOnGamma = IndexedValues<SpectrumTag>;

/// Complex point-mass weights on G.
class MeasureOnG {
 public:
  MeasureOnG() = default;
  explicit MeasureOnG(FiniteAbelianGroup group) : weights_(std::move(group)) {}
  MeasureOnG(FiniteAbelianGroup group, std::vector<complex> weights)
      : weights_(std::move(group), std::move(weights)) {}

  static MeasureOnG dirac(const FiniteAbelianGroup& g, std::size_t x) {
    MeasureOnG m(g);
    m.weights_[x] = 1.0;
    return m;
  }

  /// Normalized Haar measure: every weight is 1/N.
  static MeasureOnG haar(const FiniteAbelianGroup& g) {
    return {g, std::vector<complex>(g.order(), complex{g.haar_weight()})};
  }

  const FiniteAbelianGroup& group() const noexcept { return weights_.group(); }
  std::size_t size() const noexcept { return weights_.size(); }
  complex operator[](std::size_t x) const { return weights_[x]; }
  complex& operator[](std::size_t x) { return weights_[x]; }
  const std::vector<complex>& weights() const noexcept { return weights_.values(); }

  double tv_norm() const noexcept {
    double s = 0.0;
    for (const auto& w : weights_.values()) s += std::abs(w);
    return s;
  }

 private:
  IndexedValues<FunctionTag> weights_;
};

/// The measure h dmu, i.e. weights h(x)/N.
inline MeasureOnG density_to_measure(const FunctionOnG& h) {
  MeasureOnG m(h.group());
  const double w = h.group().haar_weight();
  for (std::size_t x = 0; x < h.size(); ++x) m[x] = h[x] * w;
  return m;
}

/// Inverse of density_to_measure: h(x) = N * weight(x).
inline FunctionOnG measure_to_density(const MeasureOnG& m) {
  FunctionOnG h(m.group());
  const auto n = static_cast<double>(m.size());
  for (std::size_t x = 0; x < m.size(); ++x) h[x] = m[x] * n;
  return h;
}

namespace detail {

/// In-place unnormalized DFT along every axis, one axis at a time.
/// sign = -1 for analysis, +1 for synthesis.
inline void row_column_dft(const FiniteAbelianGroup& g, std::vector<complex>& data, int sign) {
  const auto& factors = g.factors();
  const std::size_t total = g.order();
  std::size_t stride = total;
  std::vector<complex> line, out;
  for (std::size_t axis = 0; axis < factors.size(); ++axis) {
    const auto n = static_cast<std::size_t>(factors[axis]);
    stride /= n;
    std::vector<complex> twiddle(n);
    for (std::size_t k = 0; k < n; ++k) {
      twiddle[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    }
    line.resize(n);
    out.resize(n);
    const std::size_t block = stride * n;
    for (std::size_t outer = 0; outer < total; outer += block) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer + inner;
        for (std::size_t t = 0; t < n; ++t) line[t] = data[base + t * stride];
        for (std::size_t m = 0; m < n; ++m) {
          complex s{};
          for (std::size_t t = 0; t < n; ++t) s += line[t] * twiddle[(t * m) % n];
          out[m] = s;
        }
        for (std::size_t m = 0; m < n; ++m) data[base + m * stride] = out[m];
      }
    }
  }
}

}  // namespace detail

inline SpectrumOnGamma fourier(const FunctionOnG& f) {
  std::vector<complex> data = f.values();
  detail::row_column_dft(f.group(), data, -1);
  const double w = f.group().haar_weight();
  for (auto& v : data) v *= w;
  return {f.group(), std::move(data)};
}

inline FunctionOnG inverse_fourier(const SpectrumOnGamma& s) {
  std::vector<complex> data = s.values();
  detail::row_column_dft(s.group(), data, +1);
  return {s.group(), std::move(data)};
}

/// O(N^2) transform straight from the defining sum. Kept as a cross-check.
inline SpectrumOnGamma fourier_reference(const FunctionOnG& f) {
  const auto& g = f.group();
  SpectrumOnGamma out(g);
  for (std::size_t m = 0; m < g.order(); ++m) {
    complex s{};
    for (std::size_t x = 0; x < g.order(); ++x) s += f[x] * std::conj(pairing(g, x, m));
    out[m] = s * g.haar_weight();
  }
  return out;
}

inline FunctionOnG inverse_fourier_reference(const SpectrumOnGamma& s) {
  const auto& g = s.group();
  FunctionOnG out(g);
  for (std::size_t x = 0; x < g.order(); ++x) {
    complex v{};
    for (std::size_t m = 0; m < g.order(); ++m) v += s[m] * pairing(g, x, m);
    out[x] = v;
  }
  return out;
}

/// (f * g)(x) = (1/N) sum_y f(x - y) g(y).
inline FunctionOnG convolve(const FunctionOnG& f, const FunctionOnG& h) {
  require_same_group(f.group(), h.group());
  const auto& g = f.group();
  FunctionOnG out(g);
  for (std::size_t x = 0; x < g.order(); ++x) {
    complex s{};
    for (std::size_t y = 0; y < g.order(); ++y) s += f[g.subtract(x, y)] * h[y];
    out[x] = s * g.haar_weight();
  }
  return out;
}

/// f * lambda = sum_y w(y) tau_y f.
inline FunctionOnG convolve_measure(const FunctionOnG& f, const MeasureOnG& lambda) {
  require_same_group(f.group(), lambda.group());
  const auto& g = f.group();
  FunctionOnG out(g);
  for (std::size_t y = 0; y < g.order(); ++y) {
    const complex w = lambda[y];
    if (w == complex{}) continue;
    for (std::size_t x = 0; x < g.order(); ++x) out[x] += w * f[g.subtract(x, y)];
  }
  return out;
}

/// lambda^(m) = sum_x w(x) (-x, m).
inline SpectrumOnGamma measure_transform(const MeasureOnG& lambda) {
  const auto& g = lambda.group();
  SpectrumOnGamma out(g);
  for (std::size_t m = 0; m < g.order(); ++m) {
    complex s{};
    for (std::size_t x = 0; x < g.order(); ++x) s += lambda[x] * pairing(g, g.negate(x), m);
    out[m] = s;
  }
  return out;
}

struct SupportThresholds {
  double eps_abs = 1e-12;
  double eps_rel = 1e-10;

  double cutoff(double max_abs) const noexcept { return std::max(eps_abs, eps_rel * max_abs); }
};

/// {m : |s(m)| > max(eps_abs, eps_rel * max|s|)}.
inline std::vector<std::size_t> support(const SpectrumOnGamma& s, SupportThresholds t = {}) {
  const double cut = t.cutoff(s.max_abs());
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (std::abs(s[m]) > cut) out.push_back(m);
  }
  return out;
}

}  // namespace mclab
