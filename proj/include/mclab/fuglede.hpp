#pragma once

// Intertwining of multipliers through an arbitrary operator T.
//
// In the character basis T becomes A[xi, gamma] = (T gamma)^(xi), and
//   M_phi T - T M_psi  <->  (phi(xi) - psi(gamma)) A[xi, gamma].
// So M_phi T = T M_psi exactly when phi(xi) = psi(gamma) on every pair with
// A[xi, gamma] != 0. Conjugating phi and psi leaves |phi(xi) - psi(gamma)|
// unchanged, which transfers intertwining to the conjugate symbols.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fourier.hpp"
#include "group.hpp"
#include "multiplier.hpp"
#include "rng.hpp"
#include "verdict.hpp"

namespace mclab {

/// A[xi, gamma] = (T gamma)^(xi), row-major in xi.
class CharBasisMatrix {
 public:
  CharBasisMatrix() = default;
  explicit CharBasisMatrix(FiniteAbelianGroup group)
      : group_(std::move(group)), data_(group_.order() * group_.order(), complex{}) {}

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  std::size_t dim() const noexcept { return group_.order(); }
  const std::vector<complex>& data() const noexcept { return data_; }

  complex operator()(std::size_t xi, std::size_t gamma) const { return data_[xi * dim() + gamma]; }
  complex& operator()(std::size_t xi, std::size_t gamma) { return data_[xi * dim() + gamma]; }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  FiniteAbelianGroup group_;
  std::vector<complex> data_;
};

inline CharBasisMatrix char_basis(const LinearOperatorOnG& t) {
  const auto& g = t.group();
  CharBasisMatrix a(g);
  for (std::size_t gamma = 0; gamma < g.order(); ++gamma) {
    const auto col = fourier(t.apply(character(g, gamma)));
    for (std::size_t xi = 0; xi < g.order(); ++xi) a(xi, gamma) = col[xi];
  }
  return a;
}

/// Inverse of char_basis: T e_y = sum_gamma (e_y)^(gamma) T gamma.
inline LinearOperatorOnG to_point_basis(const CharBasisMatrix& a) {
  const auto& g = a.group();
  const std::size_t n = g.order();
  // T gamma for every gamma.
  std::vector<FunctionOnG> images;
  images.reserve(n);
  for (std::size_t gamma = 0; gamma < n; ++gamma) {
    SpectrumOnGamma col(g);
    for (std::size_t xi = 0; xi < n; ++xi) col[xi] = a(xi, gamma);
    images.push_back(inverse_fourier(col));
  }
  LinearOperatorOnG t(g);
  for (std::size_t y = 0; y < n; ++y) {
    const auto coeffs = fourier(point_indicator(g, y));
    for (std::size_t gamma = 0; gamma < n; ++gamma) {
      const complex c = coeffs[gamma];
      for (std::size_t x = 0; x < n; ++x) t(x, y) += c * images[gamma][x];
    }
  }
  return t;
}

struct SupportRelation {
  FiniteAbelianGroup group;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (xi, gamma)
  SupportThresholds thresholds;
  double cutoff = 0.0;
  /// Entries with magnitude in (cutoff, 10 * cutoff]: too close to the
  /// threshold to call zero or nonzero with confidence.
  std::size_t band_entries = 0;
  double min_edge_magnitude = std::numeric_limits<double>::infinity();
};

inline SupportRelation support_relation(const CharBasisMatrix& a, SupportThresholds t = {}) {
  SupportRelation s{a.group(), {}, t, t.cutoff(a.max_abs())};
  for (std::size_t xi = 0; xi < a.dim(); ++xi) {
    for (std::size_t gamma = 0; gamma < a.dim(); ++gamma) {
      const double m = std::abs(a(xi, gamma));
      if (m > s.cutoff) {
        s.edges.emplace_back(xi, gamma);
        s.min_edge_magnitude = std::min(s.min_edge_magnitude, m);
        if (m <= 10.0 * s.cutoff) ++s.band_entries;
      }
    }
  }
  return s;
}

inline SupportRelation support_relation(const LinearOperatorOnG& t, SupportThresholds th = {}) {
  return support_relation(char_basis(t), th);
}

/// max_{xi, gamma} |phi(xi) A[xi, gamma] - A[xi, gamma] psi(gamma)|.
inline double intertwine_residual(const MultiplierSymbol& phi, const MultiplierSymbol& psi, const CharBasisMatrix& a) {
  require_same_group(phi.group(), psi.group());
  require_same_group(phi.group(), a.group());
  double r = 0.0;
  for (std::size_t xi = 0; xi < a.dim(); ++xi) {
    for (std::size_t gamma = 0; gamma < a.dim(); ++gamma) {
      const complex e = a(xi, gamma);
      r = std::max(r, std::abs(phi[xi] * e - e * psi[gamma]));
    }
  }
  return r;
}

inline double intertwine_residual(const MultiplierSymbol& phi, const MultiplierSymbol& psi,
                                  const LinearOperatorOnG& t) {
  return intertwine_residual(phi, psi, char_basis(t));
}

/// Character-basis max-abs of M_phi T - T M_psi formed by dense products
/// in the point basis.
inline double commutator_residual_dense(const MultiplierSymbol& phi, const MultiplierSymbol& psi,
                                        const LinearOperatorOnG& t) {
  const auto c = multiplier_matrix(phi) * t - t * multiplier_matrix(psi);
  return char_basis(c).max_abs();
}

struct ConstraintCheck {
  bool satisfied = true;
  double worst_violation = 0.0;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // (xi, gamma) of the worst edge
};

/// phi(xi) = psi(gamma) on every edge, up to tol.
inline ConstraintCheck constraint_satisfied(const MultiplierSymbol& phi, const MultiplierSymbol& psi,
                                            const SupportRelation& s, double tol = 1e-8) {
  ConstraintCheck c;
  for (const auto& [xi, gamma] : s.edges) {
    const double v = std::abs(phi[xi] - psi[gamma]);
    if (v > c.worst_violation) {
      c.worst_violation = v;
      c.witness = std::pair{xi, gamma};
    }
  }
  c.satisfied = c.worst_violation <= tol;
  if (c.satisfied) c.witness.reset();
  return c;
}

struct LemmaTolerances {
  double tol_resid = 1e-10;
  double tol_sym = 1e-8;
  SupportThresholds support;
};

struct LemmaReport {
  double residual = 0.0;        // character-basis formula
  double residual_dense = 0.0;  // dense point-basis commutator, transformed
  ConstraintCheck constraints;
  bool intertwines = false;
  std::size_t band_entries = 0;
  bool in_gap = false;  // some entry sits between the two tolerance scales
  Verdict verdict = Verdict::pass;
};

/// Checks that "M_phi T = T M_psi" and "phi(xi) = psi(gamma) on supp" agree.
inline LemmaReport lemma_equivalence_check(const LinearOperatorOnG& t, const MultiplierSymbol& phi,
                                           const MultiplierSymbol& psi, const LemmaTolerances& tol = {}) {
  const auto a = char_basis(t);
  const auto s = support_relation(a, tol.support);
  LemmaReport r;
  r.residual = intertwine_residual(phi, psi, a);
  r.residual_dense = commutator_residual_dense(phi, psi, t);
  r.constraints = constraint_satisfied(phi, psi, s, tol.tol_sym);
  r.intertwines = std::max(r.residual, r.residual_dense) <= tol.tol_resid;
  r.band_entries = s.band_entries;
  for (std::size_t xi = 0; xi < a.dim() && !r.in_gap; ++xi) {
    for (std::size_t gamma = 0; gamma < a.dim(); ++gamma) {
      const double v = std::abs(phi[xi] - psi[gamma]);
      const double m = std::abs(a(xi, gamma));
      const bool edge = m > s.cutoff;
      if ((edge && v > tol.tol_sym && v * m <= tol.tol_resid) || (v <= tol.tol_sym && v * m > tol.tol_resid) ||
          (!edge && v * m > tol.tol_resid)) {
        r.in_gap = true;
        break;
      }
    }
  }
  if (r.band_entries > 0) {
    r.verdict = Verdict::indeterminate;
  } else if (r.intertwines == r.constraints.satisfied) {
    r.verdict = Verdict::pass;
  } else {
    r.verdict = r.in_gap ? Verdict::indeterminate : Verdict::fail;
  }
  return r;
}

/// Raised when fuglede_transfer is called on a pair that does not intertwine.
class intertwining_precondition : public std::domain_error {
 public:
  explicit intertwining_precondition(double residual)
      : std::domain_error("M_phi T != T M_psi (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

struct TransferReport {
  double residual_forward = 0.0;
  double residual_conjugate = 0.0;
  double tol_out = 0.0;
  bool holds = false;
};

/// Given M_phi T = T M_psi (residual <= tol), checks M_conj(phi) T = T M_conj(psi).
inline TransferReport fuglede_transfer(const LinearOperatorOnG& t, const MultiplierSymbol& phi,
                                       const MultiplierSymbol& psi, double tol = 1e-10) {
  const auto a = char_basis(t);
  TransferReport r;
  r.residual_forward = intertwine_residual(phi, psi, a);
  if (r.residual_forward > tol) throw intertwining_precondition(r.residual_forward);
  r.residual_conjugate = intertwine_residual(phi.conj(), psi.conj(), a);
  // Roundoff allowance relative to the entry and symbol scales.
  const double scale = a.max_abs() * std::max(phi.max_abs(), psi.max_abs());
  r.tol_out = tol + 8.0 * std::numeric_limits<double>::epsilon() * scale;
  r.holds = r.residual_conjugate <= r.tol_out;
  return r;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

  /// Dense component labels 0..k-1 in order of first appearance.
  std::vector<std::size_t> labels(std::size_t& count) {
    std::vector<std::size_t> out(parent_.size());
    std::vector<std::size_t> remap(parent_.size(), parent_.size());
    count = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      const std::size_t r = find(i);
      if (remap[r] == parent_.size()) remap[r] = count++;
      out[i] = remap[r];
    }
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

enum class PartitionMode { pair, single };

/// Connected components of the support relation. In pair mode the vertices
/// are xi_0..xi_{N-1} (phi side) followed by gamma_0..gamma_{N-1} (psi side);
/// in single mode both sides are identified.
struct ConstraintPartition {
  FiniteAbelianGroup group;
  PartitionMode mode = PartitionMode::pair;
  std::vector<std::size_t> labels;
  std::size_t component_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t xi_component(std::size_t xi) const { return labels[xi]; }
  std::size_t gamma_component(std::size_t gamma) const {
    return mode == PartitionMode::pair ? labels[group.order() + gamma] : labels[gamma];
  }

  /// Members of each component, by vertex id.
  std::vector<std::vector<std::size_t>> components() const {
    std::vector<std::vector<std::size_t>> out(component_count);
    for (std::size_t v = 0; v < labels.size(); ++v) out[labels[v]].push_back(v);
    return out;
  }

  /// Whether a component contains at least one edge.
  std::vector<bool> constrained() const {
    std::vector<bool> out(component_count, false);
    for (const auto& [xi, gamma] : edges) out[xi_component(xi)] = true;
    return out;
  }
};

inline ConstraintPartition commuting_partition(const SupportRelation& s, PartitionMode mode = PartitionMode::pair) {
  const std::size_t n = s.group.order();
  ConstraintPartition p{s.group, mode, {}, 0, s.edges};
  DisjointSets sets(mode == PartitionMode::pair ? 2 * n : n);
  for (const auto& [xi, gamma] : s.edges) sets.unite(xi, mode == PartitionMode::pair ? n + gamma : gamma);
  p.labels = sets.labels(p.component_count);
  return p;
}

inline ConstraintPartition commuting_partition(const LinearOperatorOnG& t, SupportThresholds th = {},
                                               PartitionMode mode = PartitionMode::pair) {
  return commuting_partition(support_relation(t, th), mode);
}

struct IntertwiningSymbols {
  MultiplierSymbol phi;
  MultiplierSymbol psi;
  std::optional<std::size_t> flipped_component;
};

/// Symbols constant on the components of the partition. In adversarial mode
/// psi is moved on one constrained component so the constraints break.
inline IntertwiningSymbols random_intertwining_instance(const ConstraintPartition& p, CounterRng& rng,
                                                        bool adversarial = false) {
  const auto& g = p.group;
  const std::size_t n = g.order();
  // Component values kept at least 1e-3 apart so no two components are
  // accidentally equal at the symbol tolerance.
  std::vector<complex> values;
  values.reserve(p.component_count);
  while (values.size() < p.component_count) {
    const complex c = rng.polar(0.1, 1.0);
    const bool clash = std::any_of(values.begin(), values.end(), [&](complex v) { return std::abs(v - c) < 1e-3; });
    if (!clash) values.push_back(c);
  }
  IntertwiningSymbols out{MultiplierSymbol(g), MultiplierSymbol(g), std::nullopt};
  for (std::size_t i = 0; i < n; ++i) {
    out.phi[i] = values[p.xi_component(i)];
    out.psi[i] = values[p.gamma_component(i)];
  }
  if (adversarial) {
    const auto constrained = p.constrained();
    std::vector<std::size_t> pool;
    for (std::size_t c = 0; c < constrained.size(); ++c) {
      if (constrained[c]) pool.push_back(c);
    }
    if (!pool.empty()) {
      const std::size_t c = pool[rng.below(pool.size())];
      const complex shift = rng.polar(0.5, 1.0);
      for (std::size_t gamma = 0; gamma < n; ++gamma) {
        if (p.gamma_component(gamma) == c) out.psi[gamma] += shift;
      }
      out.flipped_component = c;
    }
  }
  return out;
}

/// Sparse character-basis matrix: each entry nonzero with probability
/// `density`, modulus log-uniform in [min_magnitude, 1], uniform phase.
inline CharBasisMatrix random_sparse_char_matrix(const FiniteAbelianGroup& g, CounterRng& rng, double density,
                                                 double min_magnitude = 1e-6) {
  CharBasisMatrix a(g);
  const double log_lo = std::log(min_magnitude);
  for (std::size_t xi = 0; xi < g.order(); ++xi) {
    for (std::size_t gamma = 0; gamma < g.order(); ++gamma) {
      if (!rng.bernoulli(density)) continue;
      const double mag = std::exp(rng.uniform(log_lo, 0.0));
      a(xi, gamma) = std::polar(mag, 2.0 * std::numbers::pi * rng.uniform());
    }
  }
  return a;
}

/// Groups symbol values into level sets (values within tol are merged,
/// transitively) and returns sum |L|^2, the dimension of {T : M_phi T = T M_phi}.
inline std::size_t commutant_dimension(const MultiplierSymbol& phi, double tol = 1e-12) {
  const std::size_t n = phi.size();
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(phi[i] - phi[j]) <= tol) sets.unite(i, j);
    }
  }
  std::size_t count = 0;
  const auto labels = sets.labels(count);
  std::vector<std::size_t> sizes(count, 0);
  for (auto l : labels) ++sizes[l];
  std::size_t dim = 0;
  for (auto s : sizes) dim += s * s;
  return dim;
}

}  // namespace mclab
