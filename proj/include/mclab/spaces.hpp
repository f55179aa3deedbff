#pragma once

// Lattice norms on functions over a finite abelian group (L^p, mixed
// L^p(L^q) over a product split, the translation-invariant hull E_g of a
// weight g), their Koethe duals, and checks of the structural properties
// these norms are expected to have.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "fourier.hpp"
#include "group.hpp"
#include "rng.hpp"

namespace mclab {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// Raised when an exact (closed form) answer is not available for a norm.
class unsupported_norm : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// 1/p + 1/p' = 1, with 1 <-> infinity.
inline double conjugate_exponent(double p) {
  if (p == 1.0) return infinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

inline void require_exponent(double p, const char* what) {
  if (!(p >= 1.0)) throw std::domain_error(std::string(what) + " must lie in [1, inf], got " + std::to_string(p));
}

inline std::string format_exponent(double p) {
  if (std::isinf(p)) return "inf";
  std::string s = std::to_string(p);
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  return s;
}

/// L^p norm for the normalized counting measure.
inline double lp_norm(const FunctionOnG& f, double p) {
  require_exponent(p, "p");
  if (std::isinf(p)) return f.max_abs();
  double s = 0.0;
  if (p == 1.0) {
    for (const auto& v : f.values()) s += std::abs(v);
    return s / static_cast<double>(f.size());
  }
  // Scale by the max to keep |f|^p in range.
  const double scale = f.max_abs();
  if (scale == 0.0) return 0.0;
  for (const auto& v : f.values()) s += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(s / static_cast<double>(f.size()), 1.0 / p);
}

/// Splits the coordinate positions of G into G = G1 x G2.
struct MixedSplit {
  std::vector<std::size_t> outer;  // positions forming G1
  std::vector<std::size_t> inner;  // positions forming G2

  /// Contiguous blocks of the given sizes: {1, 1} splits Z_a x Z_b into Z_a | Z_b.
  static MixedSplit from_block_sizes(std::size_t outer_size, std::size_t inner_size) {
    MixedSplit s;
    for (std::size_t i = 0; i < outer_size; ++i) s.outer.push_back(i);
    for (std::size_t i = 0; i < inner_size; ++i) s.inner.push_back(outer_size + i);
    return s;
  }

  void validate(const FiniteAbelianGroup& g) const {
    if (outer.empty() || inner.empty()) throw std::invalid_argument("mixed split blocks must be non-empty");
    std::vector<int> seen(g.rank(), 0);
    for (auto pos : outer) {
      if (pos >= g.rank()) throw std::invalid_argument("mixed split position out of range");
      ++seen[pos];
    }
    for (auto pos : inner) {
      if (pos >= g.rank()) throw std::invalid_argument("mixed split position out of range");
      ++seen[pos];
    }
    for (int c : seen) {
      if (c != 1) throw std::invalid_argument("mixed split blocks must be disjoint and cover every position");
    }
  }

  friend bool operator==(const MixedSplit&, const MixedSplit&) = default;
};

namespace detail {

struct MixedLayout {
  std::vector<std::size_t> outer_index;  // element -> index in G1
  std::size_t outer_order = 1;
  std::size_t inner_order = 1;
};

inline MixedLayout mixed_layout(const FiniteAbelianGroup& g, const MixedSplit& split) {
  split.validate(g);
  MixedLayout layout;
  for (auto pos : split.outer) layout.outer_order *= static_cast<std::size_t>(g.factors()[pos]);
  layout.inner_order = g.order() / layout.outer_order;
  layout.outer_index.resize(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    const auto r = g.residues(x);
    std::size_t idx = 0;
    for (auto pos : split.outer) idx = idx * static_cast<std::size_t>(g.factors()[pos]) + static_cast<std::size_t>(r[pos]);
    layout.outer_index[x] = idx;
  }
  return layout;
}

inline double mixed_norm_with_layout(const FunctionOnG& f, const MixedLayout& layout, double p, double q) {
  std::vector<double> inner(layout.outer_order, 0.0);
  const double scale = f.max_abs();
  if (scale == 0.0) return 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) {
    const double a = std::abs(f[x]) / scale;
    auto& acc = inner[layout.outer_index[x]];
    acc = std::isinf(q) ? std::max(acc, a) : acc + std::pow(a, q);
  }
  if (!std::isinf(q)) {
    for (auto& v : inner) v = std::pow(v / static_cast<double>(layout.inner_order), 1.0 / q);
  }
  if (std::isinf(p)) return scale * *std::max_element(inner.begin(), inner.end());
  double s = 0.0;
  for (double v : inner) s += std::pow(v, p);
  return scale * std::pow(s / static_cast<double>(layout.outer_order), 1.0 / p);
}

}  // namespace detail

/// ( (1/N1) sum_x ( (1/N2) sum_y |f(x,y)|^q )^(p/q) )^(1/p), with max for infinite exponents.
inline double mixed_norm(const FunctionOnG& f, const MixedSplit& split, double p, double q) {
  require_exponent(p, "p");
  require_exponent(q, "q");
  return detail::mixed_norm_with_layout(f, detail::mixed_layout(f.group(), split), p, q);
}

/// A nonnegative weight g together with the table of its translates.
///
/// g must be real, nonnegative and not identically zero; the supremum over
/// all translates makes ||.||_{E_g} definite even when g vanishes somewhere.
class EgWeight {
 public:
  explicit EgWeight(FunctionOnG weight, double tol = default_tolerance) : weight_(std::move(weight)) {
    const auto& g = weight_.group();
    const std::size_t n = g.order();
    bool nonzero = false;
    for (std::size_t x = 0; x < n; ++x) {
      const complex v = weight_[x];
      if (std::abs(v.imag()) > tol || v.real() < 0.0 || !std::isfinite(v.real())) {
        throw std::invalid_argument("E_g weight must be real and nonnegative (value at index " + std::to_string(x) + ")");
      }
      weight_[x] = v.real();
      nonzero = nonzero || v.real() > 0.0;
    }
    if (!nonzero) throw std::invalid_argument("E_g weight must not vanish identically");
    translates_.resize(n * n);
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t x = 0; x < n; ++x) translates_[y * n + x] = weight_[g.subtract(x, y)].real();
    }
    l1_ = lp_norm(weight_, 1.0);
  }

  const FunctionOnG& weight() const noexcept { return weight_; }
  const FiniteAbelianGroup& group() const noexcept { return weight_.group(); }
  double l1() const noexcept { return l1_; }

  /// (tau_y g)(x).
  double translate_at(std::size_t y, std::size_t x) const noexcept { return translates_[y * weight_.size() + x]; }

  /// The same weight rescaled so that its Haar integral is 1.
  EgWeight normalized() const { return EgWeight((1.0 / l1_) * weight_); }

 private:
  FunctionOnG weight_;
  std::vector<double> translates_;
  double l1_ = 0.0;
};

/// sup_y integral |f| (tau_y g) dmu.
inline double eg_norm(const FunctionOnG& f, const EgWeight& w) {
  require_same_group(f.group(), w.group());
  const std::size_t n = f.size();
  std::vector<double> a(n);
  for (std::size_t x = 0; x < n; ++x) a[x] = std::abs(f[x]);
  double best = 0.0;
  for (std::size_t y = 0; y < n; ++y) {
    double s = 0.0;
    for (std::size_t x = 0; x < n; ++x) s += a[x] * w.translate_at(y, x);
    best = std::max(best, s);
  }
  return best / static_cast<double>(n);
}

/// Midpoint samples on Z_M of the circle weight that is 1/sqrt(x) on (0, pi]
/// and 0 on (-pi, 0]: g(k) = ((k + 1/2) * 2 pi / M)^(-1/2) for k < M/2, else 0.
inline FunctionOnG half_circle_inverse_sqrt(int m) {
  if (m < 2 || m % 2 != 0) throw std::domain_error("circle discretization needs an even M >= 2");
  FiniteAbelianGroup g({m});
  FunctionOnG f(g);
  const double step = 2.0 * std::numbers::pi / m;
  for (int k = 0; k < m / 2; ++k) f[static_cast<std::size_t>(k)] = 1.0 / std::sqrt((k + 0.5) * step);
  return f;
}

class SpaceNorm;

struct LpDescriptor {
  double p;
};
struct MixedDescriptor {
  MixedSplit split;
  double p;
  double q;
};
struct EgDescriptor {
  std::shared_ptr<const EgWeight> weight;
};
struct KotheDualDescriptor {
  std::shared_ptr<const SpaceNorm> base;
};

struct DualEstimate {
  double value = 0.0;
  FunctionOnG maximizer;  // nonnegative, on the unit sphere of the base norm
  std::size_t evaluations = 0;
};

struct DualEstimateOptions {
  std::size_t iters = 200;
  double tol = 1e-12;
  std::size_t random_starts = 4;
  std::uint64_t seed = 0;
  bool seed_with_profile = true;  // start from the Hoelder maximizer when the base has one
};

inline DualEstimate kothe_dual_estimate(const FunctionOnG& g, const SpaceNorm& base, const DualEstimateOptions& opts = {});

/// A lattice norm bound to a group. Immutable after construction.
class SpaceNorm {
 public:
  using Descriptor = std::variant<LpDescriptor, MixedDescriptor, EgDescriptor, KotheDualDescriptor>;

  static SpaceNorm lp(const FiniteAbelianGroup& g, double p) {
    require_exponent(p, "p");
    return SpaceNorm(g, LpDescriptor{p});
  }

  static SpaceNorm mixed(const FiniteAbelianGroup& g, MixedSplit split, double p, double q) {
    require_exponent(p, "p");
    require_exponent(q, "q");
    SpaceNorm n(g, MixedDescriptor{split, p, q});
    n.layout_ = std::make_shared<const detail::MixedLayout>(detail::mixed_layout(g, split));
    return n;
  }

  static SpaceNorm eg(EgWeight weight) {
    auto w = std::make_shared<const EgWeight>(std::move(weight));
    const auto g = w->group();
    return SpaceNorm(g, EgDescriptor{std::move(w)});
  }

  static SpaceNorm kothe_dual(const SpaceNorm& base) {
    return SpaceNorm(base.group(), KotheDualDescriptor{std::make_shared<const SpaceNorm>(base)});
  }

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  const Descriptor& descriptor() const noexcept { return desc_; }

  bool is_lp() const noexcept { return std::holds_alternative<LpDescriptor>(desc_); }
  bool is_mixed() const noexcept { return std::holds_alternative<MixedDescriptor>(desc_); }
  bool is_eg() const noexcept { return std::holds_alternative<EgDescriptor>(desc_); }
  bool is_kothe_dual() const noexcept { return std::holds_alternative<KotheDualDescriptor>(desc_); }

  /// True when the Koethe dual of this norm has a closed form.
  bool has_closed_dual() const noexcept {
    if (is_lp() || is_mixed()) return true;
    if (const auto* d = std::get_if<KotheDualDescriptor>(&desc_)) return d->base->has_closed_dual();
    return false;
  }

  /// True when evaluation is exact (no estimator involved).
  bool is_exact() const noexcept {
    if (const auto* d = std::get_if<KotheDualDescriptor>(&desc_)) return d->base->has_closed_dual();
    return true;
  }

  /// Koethe dual with the closed form resolved where it exists
  /// (L^p -> L^p', mixed p x q -> mixed p' x q', dual of dual -> base).
  SpaceNorm dual() const {
    if (const auto* d = std::get_if<LpDescriptor>(&desc_)) return lp(group_, conjugate_exponent(d->p));
    if (const auto* d = std::get_if<MixedDescriptor>(&desc_)) {
      return mixed(group_, d->split, conjugate_exponent(d->p), conjugate_exponent(d->q));
    }
    if (const auto* d = std::get_if<KotheDualDescriptor>(&desc_)) {
      if (d->base->has_closed_dual()) return *d->base;
    }
    return kothe_dual(*this);
  }

  double operator()(const FunctionOnG& f) const {
    require_same_group(group_, f.group());
    return std::visit(
        [&](const auto& d) -> double {
          using D = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<D, LpDescriptor>) {
            return lp_norm(f, d.p);
          } else if constexpr (std::is_same_v<D, MixedDescriptor>) {
            return detail::mixed_norm_with_layout(f, *layout_, d.p, d.q);
          } else if constexpr (std::is_same_v<D, EgDescriptor>) {
            return eg_norm(f, *d.weight);
          } else {
            if (d.base->has_closed_dual()) return d.base->dual()(f);
            return kothe_dual_estimate(f, *d.base).value;
          }
        },
        desc_);
  }

  /// Descriptor string in the CLI syntax. E_g weights print as "eg:inline".
  std::string describe() const {
    return std::visit(
        [&](const auto& d) -> std::string {
          using D = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<D, LpDescriptor>) {
            return "lp:p=" + format_exponent(d.p);
          } else if constexpr (std::is_same_v<D, MixedDescriptor>) {
            return "mixed:split=" + std::to_string(d.split.outer.size()) + "|" + std::to_string(d.split.inner.size()) +
                   ",p=" + format_exponent(d.p) + ",q=" + format_exponent(d.q);
          } else if constexpr (std::is_same_v<D, EgDescriptor>) {
            return "eg:inline";
          } else {
            return "dual:" + d.base->describe();
          }
        },
        desc_);
  }

  /// The weight of an E_g norm, else nullptr.
  const EgWeight* eg_weight() const noexcept {
    if (const auto* d = std::get_if<EgDescriptor>(&desc_)) return d->weight.get();
    return nullptr;
  }

 private:
  SpaceNorm(FiniteAbelianGroup g, Descriptor d) : group_(std::move(g)), desc_(std::move(d)) {}

  FiniteAbelianGroup group_;
  Descriptor desc_;
  std::shared_ptr<const detail::MixedLayout> layout_;
};

/// Exact Koethe dual norm of g for L^p, mixed and dual-of-those bases.
inline double kothe_dual_norm_closed(const FunctionOnG& g, const SpaceNorm& base) {
  if (!base.has_closed_dual()) {
    throw unsupported_norm("no closed-form Koethe dual for '" + base.describe() + "'; use the estimator");
  }
  return base.dual()(g);
}

namespace detail {

inline double pairing_abs(const std::vector<double>& f, const std::vector<double>& weight) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * weight[i];
  return s / static_cast<double>(f.size());
}

/// The nonnegative f maximizing integral f|g| over the unit ball of the
/// base, when the base is L^p or mixed (the Hoelder equality profile).
inline std::optional<FunctionOnG> holder_profile(const FunctionOnG& absg, const SpaceNorm& base) {
  const auto& grp = absg.group();
  if (const auto* d = std::get_if<LpDescriptor>(&base.descriptor())) {
    const double pd = conjugate_exponent(d->p);
    if (std::isinf(pd)) return std::nullopt;  // p = 1: point indicators are optimal
    FunctionOnG f(grp);
    for (std::size_t x = 0; x < grp.order(); ++x) {
      const double a = absg[x].real();
      f[x] = a > 0.0 ? std::pow(a, pd - 1.0) : 0.0;
    }
    return f;
  }
  if (const auto* d = std::get_if<MixedDescriptor>(&base.descriptor())) {
    const double pd = conjugate_exponent(d->p);
    const double qd = conjugate_exponent(d->q);
    if (std::isinf(pd) || std::isinf(qd)) return std::nullopt;
    const auto layout = mixed_layout(grp, d->split);
    std::vector<double> inner(layout.outer_order, 0.0);
    for (std::size_t x = 0; x < grp.order(); ++x) inner[layout.outer_index[x]] += std::pow(absg[x].real(), qd);
    for (auto& v : inner) v = std::pow(v / static_cast<double>(layout.inner_order), 1.0 / qd);
    FunctionOnG f(grp);
    for (std::size_t x = 0; x < grp.order(); ++x) {
      const double a = absg[x].real();
      const double r = inner[layout.outer_index[x]];
      f[x] = (a > 0.0 && r > 0.0) ? std::pow(a, qd - 1.0) * std::pow(r, pd - qd) : 0.0;
    }
    return f;
  }
  return std::nullopt;
}

}  // namespace detail

/// Lower bound for sup{ integral |f g| dmu : ||f||_base <= 1 } by maximizing
/// over a candidate set (level-set indicators, point indicators, the Hoelder
/// profile where known, random starts) refined by coordinate ascent.
inline DualEstimate kothe_dual_estimate(const FunctionOnG& g, const SpaceNorm& base, const DualEstimateOptions& opts) {
  require_same_group(g.group(), base.group());
  const auto& grp = g.group();
  const std::size_t n = grp.order();
  const FunctionOnG absg = g.abs();
  std::vector<double> weight(n);
  for (std::size_t x = 0; x < n; ++x) weight[x] = absg[x].real();

  DualEstimate best;
  best.maximizer = FunctionOnG(grp);
  if (absg.max_abs() == 0.0) return best;

  auto ratio = [&](const std::vector<double>& f) {
    ++best.evaluations;
    FunctionOnG fn(grp);
    for (std::size_t x = 0; x < n; ++x) fn[x] = f[x];
    const double nf = base(fn);
    if (!(nf > 0.0)) return 0.0;
    return detail::pairing_abs(f, weight) / nf;
  };

  std::vector<std::vector<double>> candidates;
  // Superlevel sets {|g| >= t} and exact level sets {|g| = t}.
  std::vector<double> levels(weight);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (double t : levels) {
    if (t <= 0.0) continue;
    std::vector<double> upper(n, 0.0), exact(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
      upper[x] = weight[x] >= t ? 1.0 : 0.0;
      exact[x] = weight[x] == t ? 1.0 : 0.0;
    }
    candidates.push_back(std::move(upper));
    candidates.push_back(std::move(exact));
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<double> e(n, 0.0);
    e[x] = 1.0;
    candidates.push_back(std::move(e));
  }
  if (auto profile = opts.seed_with_profile ? detail::holder_profile(absg, base) : std::nullopt) {
    std::vector<double> f(n);
    for (std::size_t x = 0; x < n; ++x) f[x] = (*profile)[x].real();
    candidates.push_back(std::move(f));
  }
  const std::size_t fixed = candidates.size();
  CounterRng rng(opts.seed, 0xD0A1);
  for (std::size_t s = 0; s < opts.random_starts; ++s) {
    std::vector<double> f(n);
    for (auto& v : f) v = rng.uniform();
    candidates.push_back(std::move(f));
  }

  // Coordinate ascent on the ratio; f stays nonnegative.
  auto refine = [&](std::vector<double> f, double value) {
    double step = 0.5;
    for (std::size_t it = 0; it < opts.iters && step > opts.tol; ++it) {
      bool improved = false;
      for (std::size_t x = 0; x < n; ++x) {
        const double scale = *std::max_element(f.begin(), f.end());
        for (double delta : {step * scale, -step * scale}) {
          std::vector<double> trial = f;
          trial[x] = std::max(0.0, trial[x] + delta);
          const double r = ratio(trial);
          if (r > value) {
            value = r;
            f = std::move(trial);
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    return std::pair{std::move(f), value};
  };

  std::vector<double> best_f;
  double best_value = -1.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    double value = ratio(candidates[c]);
    std::vector<double> f = candidates[c];
    if (c >= fixed && opts.iters > 0) std::tie(f, value) = refine(std::move(f), value);
    if (value > best_value) {
      best_value = value;
      best_f = std::move(f);
    }
  }
  if (opts.iters > 0) std::tie(best_f, best_value) = refine(std::move(best_f), best_value);

  FunctionOnG fn(grp);
  for (std::size_t x = 0; x < n; ++x) fn[x] = best_f[x];
  const double nf = base(fn);
  best.maximizer = (1.0 / nf) * fn;
  best.value = best_value;
  return best;
}

inline double kothe_dual_norm_estimate(const FunctionOnG& g, const SpaceNorm& base, std::size_t iters = 200,
                                       double tol = 1e-12) {
  DualEstimateOptions opts;
  opts.iters = iters;
  opts.tol = tol;
  return kothe_dual_estimate(g, base, opts).value;
}

struct HolderReport {
  double pairing_modulus = 0.0;    // |integral f g dmu|
  double absolute_integral = 0.0;  // integral |f g| dmu
  double norm_f = 0.0;             // ||f||_E
  double dual_norm_g = 0.0;        // ||g||_{E^x}
  bool dual_exact = true;          // false when the dual norm is an estimator lower bound

  double modulus_slack() const noexcept { return absolute_integral - pairing_modulus; }
  double bound_slack() const noexcept { return norm_f * dual_norm_g - absolute_integral; }

  /// Both inequalities hold up to -tol. With an estimated dual norm the
  /// bound is only a lower bound, so a negative bound slack is not a
  /// counterexample; callers should rely on exact duals for verdicts.
  bool holds(double tol = default_tolerance) const noexcept {
    return modulus_slack() >= -tol && bound_slack() >= -tol;
  }
};

/// |integral f g| <= integral |f g| <= ||f||_E ||g||_{E^x}.
inline HolderReport holder_check(const FunctionOnG& f, const FunctionOnG& g, const SpaceNorm& base) {
  require_same_group(f.group(), g.group());
  HolderReport r;
  r.pairing_modulus = std::abs(integrate(f * g));
  r.absolute_integral = integrate((f * g).abs()).real();
  r.norm_f = base(f);
  r.dual_exact = base.has_closed_dual();
  r.dual_norm_g = r.dual_exact ? kothe_dual_norm_closed(g, base) : kothe_dual_norm_estimate(g, base);
  return r;
}

enum class InvarianceKind { translation, reflection };

inline const char* to_string(InvarianceKind k) { return k == InvarianceKind::translation ? "translation" : "reflection"; }

struct InvarianceWitness {
  std::size_t candidate = 0;  // index into the sampled candidates
  std::size_t shift = 0;      // translation amount (0 for reflection)
  double norm_f = 0.0;
  double norm_transformed = 0.0;
  /// max(||op f|| / ||f||, ||f|| / ||op f||).
  double ratio() const noexcept {
    if (norm_f == 0.0 || norm_transformed == 0.0) return norm_f == norm_transformed ? 1.0 : infinity;
    return std::max(norm_transformed / norm_f, norm_f / norm_transformed);
  }
};

struct InvarianceReport {
  InvarianceKind kind = InvarianceKind::translation;
  std::size_t candidates = 0;
  double max_relative_deviation = 0.0;
  double threshold = 1e-12;
  InvarianceWitness witness;
  bool certified() const noexcept { return max_relative_deviation <= threshold; }
};

/// Samples `trials` random functions (plus `extras`, plus the weight and its
/// reflection for E_g norms) and measures |‖op f‖ - ‖f‖| / ‖f‖ over every
/// translate, or over the reflection.
inline InvarianceReport certify_invariance(const SpaceNorm& norm, InvarianceKind kind, std::size_t trials,
                                           std::uint64_t seed, const std::vector<FunctionOnG>& extras = {},
                                           double threshold = 1e-12) {
  const auto& grp = norm.group();
  std::vector<FunctionOnG> cands;
  for (std::size_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, t);
    cands.push_back(random_function(grp, rng));
  }
  for (const auto& e : extras) cands.push_back(e);
  if (const auto* w = norm.eg_weight()) {
    cands.push_back(w->weight());
    cands.push_back(reflect(w->weight()));
  }

  InvarianceReport rep;
  rep.kind = kind;
  rep.threshold = threshold;
  rep.candidates = cands.size();
  rep.max_relative_deviation = -1.0;
  for (std::size_t c = 0; c < cands.size(); ++c) {
    const auto& f = cands[c];
    const double nf = norm(f);
    if (nf == 0.0) continue;
    auto record = [&](std::size_t shift, double nt) {
      const double dev = std::abs(nt - nf) / nf;
      if (dev > rep.max_relative_deviation) {
        rep.max_relative_deviation = dev;
        rep.witness = {c, shift, nf, nt};
      }
    };
    if (kind == InvarianceKind::translation) {
      for (std::size_t y = 0; y < grp.order(); ++y) record(y, norm(translate(f, y)));
    } else {
      record(0, norm(reflect(f)));
    }
  }
  rep.max_relative_deviation = std::max(rep.max_relative_deviation, 0.0);
  return rep;
}

/// min over random samples of ‖f‖_E - ‖f‖_1.
inline double embedding_slack(const SpaceNorm& norm, std::size_t trials, std::uint64_t seed) {
  double slack = infinity;
  for (std::size_t t = 0; t < trials; ++t) {
    CounterRng rng(seed, t);
    const auto f = random_function(norm.group(), rng);
    slack = std::min(slack, norm(f) - lp_norm(f, 1.0));
  }
  return slack;
}

}  // namespace mclab
