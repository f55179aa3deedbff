#pragma once

// Fourier multiplier operators M_phi, convolution operators, the natural
// involution T -> T^natural, and operator norm estimates.
//
// Operators are dense N x N matrices in the point basis:
//   (Tf)(x) = sum_y matrix[x, y] f(y).
// On a finite group every symbol is a multiplier for every norm.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourier.hpp"
#include "group.hpp"
#include "rng.hpp"
#include "spaces.hpp"

namespace mclab {

using MultiplierSymbol = SpectrumOnGamma;

/// Largest group order for which dense operators are materialized.
inline std::size_t& dense_order_cap() {
  static std::size_t cap = 256;
  return cap;
}

inline MultiplierSymbol constant_symbol(const FiniteAbelianGroup& g, complex c) {
  return {g, std::vector<complex>(g.order(), c)};
}

class LinearOperatorOnG {
 public:
  LinearOperatorOnG() = default;

  explicit LinearOperatorOnG(FiniteAbelianGroup group) : group_(std::move(group)) {
    if (group_.order() > dense_order_cap()) {
      throw std::length_error("group order " + std::to_string(group_.order()) + " exceeds dense operator cap " +
                              std::to_string(dense_order_cap()));
    }
    data_.assign(group_.order() * group_.order(), complex{});
  }

  LinearOperatorOnG(FiniteAbelianGroup group, std::vector<complex> row_major) : LinearOperatorOnG(std::move(group)) {
    if (row_major.size() != data_.size()) throw std::invalid_argument("operator matrix has wrong size");
    data_ = std::move(row_major);
  }

  static LinearOperatorOnG identity(const FiniteAbelianGroup& g) {
    LinearOperatorOnG t(g);
    for (std::size_t i = 0; i < g.order(); ++i) t(i, i) = 1.0;
    return t;
  }

  /// Matrix of f -> tau_y f.
  static LinearOperatorOnG translation(const FiniteAbelianGroup& g, std::size_t y) {
    LinearOperatorOnG t(g);
    for (std::size_t x = 0; x < g.order(); ++x) t(x, g.subtract(x, y)) = 1.0;
    return t;
  }

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  std::size_t dim() const noexcept { return group_.order(); }
  const std::vector<complex>& data() const noexcept { return data_; }

  complex operator()(std::size_t row, std::size_t col) const { return data_[row * dim() + col]; }
  complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim() + col]; }

  FunctionOnG apply(const FunctionOnG& f) const {
    require_same_group(group_, f.group());
    const std::size_t n = dim();
    FunctionOnG out(group_);
    for (std::size_t x = 0; x < n; ++x) {
      complex s{};
      for (std::size_t y = 0; y < n; ++y) s += data_[x * n + y] * f[y];
      out[x] = s;
    }
    return out;
  }

  friend LinearOperatorOnG operator*(const LinearOperatorOnG& a, const LinearOperatorOnG& b) {
    require_same_group(a.group_, b.group_);
    const std::size_t n = a.dim();
    LinearOperatorOnG out(a.group_);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const complex aik = a.data_[i * n + k];
        if (aik == complex{}) continue;
        for (std::size_t j = 0; j < n; ++j) out.data_[i * n + j] += aik * b.data_[k * n + j];
      }
    }
    return out;
  }

  LinearOperatorOnG& operator+=(const LinearOperatorOnG& o) {
    require_same_group(group_, o.group_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  LinearOperatorOnG& operator-=(const LinearOperatorOnG& o) {
    require_same_group(group_, o.group_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend LinearOperatorOnG operator+(LinearOperatorOnG a, const LinearOperatorOnG& b) { return a += b; }
  friend LinearOperatorOnG operator-(LinearOperatorOnG a, const LinearOperatorOnG& b) { return a -= b; }
  friend LinearOperatorOnG operator*(complex c, LinearOperatorOnG a) {
    for (auto& v : a.data_) v *= c;
    return a;
  }

  LinearOperatorOnG adjoint() const {
    const std::size_t n = dim();
    LinearOperatorOnG out(group_);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out.data_[j * n + i] = std::conj(data_[i * n + j]);
    }
    return out;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  FiniteAbelianGroup group_;
  std::vector<complex> data_;
};

inline double max_abs_diff(const LinearOperatorOnG& a, const LinearOperatorOnG& b) {
  require_same_group(a.group(), b.group());
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

/// M_phi f = inverse_fourier(phi * f^).
inline FunctionOnG apply_multiplier(const MultiplierSymbol& phi, const FunctionOnG& f) {
  require_same_group(phi.group(), f.group());
  return inverse_fourier(phi * fourier(f));
}

/// Dense matrix of M_phi, built column by column from point indicators.
inline LinearOperatorOnG multiplier_matrix(const MultiplierSymbol& phi) {
  const auto& g = phi.group();
  LinearOperatorOnG t(g);
  for (std::size_t y = 0; y < g.order(); ++y) {
    const auto column = apply_multiplier(phi, point_indicator(g, y));
    for (std::size_t x = 0; x < g.order(); ++x) t(x, y) = column[x];
  }
  return t;
}

/// Convolution operator f -> f * lambda; matrix[x, y] = w(x - y).
inline LinearOperatorOnG operator_from_measure(const MeasureOnG& lambda) {
  const auto& g = lambda.group();
  LinearOperatorOnG t(g);
  for (std::size_t x = 0; x < g.order(); ++x) {
    for (std::size_t y = 0; y < g.order(); ++y) t(x, y) = lambda[g.subtract(x, y)];
  }
  return t;
}

/// T^natural f = (T f^natural)^natural; entrywise conj(matrix[-x, -y]).
inline LinearOperatorOnG natural_operator(const LinearOperatorOnG& t) {
  const auto& g = t.group();
  LinearOperatorOnG out(g);
  for (std::size_t x = 0; x < g.order(); ++x) {
    for (std::size_t y = 0; y < g.order(); ++y) out(x, y) = std::conj(t(g.negate(x), g.negate(y)));
  }
  return out;
}

/// Probe functions for operator-norm lower bounds.
struct ProbeSet {
  bool characters = true;
  bool point_indicators = true;
  std::size_t random_functions = 16;
  std::uint64_t seed = 0;
  std::vector<FunctionOnG> extras;

  static ProbeSet characters_only() {
    ProbeSet p;
    p.point_indicators = false;
    p.random_functions = 0;
    return p;
  }
};

struct OperatorNormBound {
  double value = 0.0;
  FunctionOnG argmax;
};

/// max ||T f||_E / ||f||_E over the probe set; a lower bound for ||T||.
inline OperatorNormBound operator_norm_probe(const LinearOperatorOnG& t, const SpaceNorm& norm,
                                             const ProbeSet& probes = {}) {
  const auto& g = t.group();
  require_same_group(g, norm.group());
  OperatorNormBound best;
  best.argmax = FunctionOnG(g);
  auto consider = [&](const FunctionOnG& f) {
    const double nf = norm(f);
    if (!(nf > 0.0)) return;
    const double r = norm(t.apply(f)) / nf;
    if (r > best.value) {
      best.value = r;
      best.argmax = f;
    }
  };
  if (probes.characters) {
    for (std::size_t m = 0; m < g.order(); ++m) consider(character(g, m));
  }
  if (probes.point_indicators) {
    for (std::size_t x = 0; x < g.order(); ++x) consider(point_indicator(g, x));
  }
  for (const auto& f : probes.extras) consider(f);
  for (std::size_t i = 0; i < probes.random_functions; ++i) {
    CounterRng rng(probes.seed, i);
    consider(random_function(g, rng));
  }
  return best;
}

inline double operator_norm_lower_bound(const LinearOperatorOnG& t, const SpaceNorm& norm,
                                        const std::vector<FunctionOnG>& extra_candidates = {}) {
  ProbeSet probes;
  probes.extras = extra_candidates;
  return operator_norm_probe(t, norm, probes).value;
}

struct L2NormResult {
  double value = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

/// Largest singular value of the point-basis matrix by power iteration on
/// B = T*T. Uniform Haar weights make the point basis orthogonal, so this is
/// the L^2 operator norm.
///
/// Each step applies the current power P = B^(2^k) to the iterate and then
/// squares P, so step k holds B^(2^k - 1) v0. Close top singular values
/// (ratio r) would otherwise need O(1 / (1 - r)) plain steps.
inline L2NormResult operator_norm_l2(const LinearOperatorOnG& t, double tol = 1e-12, std::size_t max_iters = 10000) {
  const auto& g = t.group();
  auto power = t.adjoint() * t;
  CounterRng rng(0x5EED, 0);
  FunctionOnG v = random_function(g, rng);
  auto rayleigh = [&](const FunctionOnG& u) {
    double uu = 0.0, tu = 0.0;
    const auto image = t.apply(u);
    for (std::size_t i = 0; i < u.size(); ++i) {
      uu += std::norm(u[i]);
      tu += std::norm(image[i]);
    }
    return uu > 0.0 ? tu / uu : 0.0;
  };
  L2NormResult r;
  double previous = rayleigh(v);
  std::size_t calm = 0;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    v = power.apply(v);
    const double scale = v.max_abs();
    r.iterations = it;
    if (scale == 0.0) {
      r.value = 0.0;
      r.converged = true;
      return r;
    }
    v *= 1.0 / scale;
    const double lambda = rayleigh(v);
    r.value = std::sqrt(lambda);
    calm = std::abs(lambda - previous) <= tol * lambda ? calm + 1 : 0;
    if (calm >= 2) {
      r.converged = true;
      break;
    }
    previous = lambda;
    power = power * power;
    const double pm = power.max_abs();
    if (pm > 0.0) power = (1.0 / pm) * power;
  }
  return r;
}

}  // namespace mclab
