#pragma once

// Finite abelian groups Z_{n1} x ... x Z_{nk}, their characters, and the
// elementary operations on complex functions over them.
//
// Elements and characters share one index space (the group is self-dual).
// Enumeration is mixed-radix with the last factor varying fastest.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mclab {

using complex = std::complex<double>;

/// Default absolute tolerance for complex comparisons.
inline constexpr double default_tolerance = 1e-12;

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  explicit FiniteAbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
      throw std::invalid_argument("group needs at least one invariant factor");
    }
    order_ = 1;
    for (int n : factors_) {
      if (n < 2) {
        throw std::invalid_argument("invariant factors must be >= 2, got " + std::to_string(n));
      }
      order_ *= static_cast<std::size_t>(n);
    }
  }

  const std::vector<int>& factors() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  std::size_t order() const noexcept { return order_; }
  double haar_weight() const noexcept { return 1.0 / static_cast<double>(order_); }

  /// Residue tuple of the element with enumeration index `index`.
  std::vector<int> residues(std::size_t index) const {
    std::vector<int> r(factors_.size());
    for (std::size_t j = factors_.size(); j-- > 0;) {
      const auto n = static_cast<std::size_t>(factors_[j]);
      r[j] = static_cast<int>(index % n);
      index /= n;
    }
    return r;
  }

  /// Enumeration index of a residue tuple; entries are reduced modulo the factors.
  std::size_t index_of(const std::vector<int>& residues) const {
    if (residues.size() != factors_.size()) {
      throw std::invalid_argument("residue tuple length does not match group rank");
    }
    std::size_t index = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      const int n = factors_[j];
      const int a = ((residues[j] % n) + n) % n;
      index = index * static_cast<std::size_t>(n) + static_cast<std::size_t>(a);
    }
    return index;
  }

  std::size_t add(std::size_t a, std::size_t b) const noexcept {
    std::size_t out = 0, stride = 1;
    for (std::size_t j = factors_.size(); j-- > 0;) {
      const auto n = static_cast<std::size_t>(factors_[j]);
      out += ((a % n + b % n) % n) * stride;
      a /= n;
      b /= n;
      stride *= n;
    }
    return out;
  }

  std::size_t negate(std::size_t a) const noexcept {
    std::size_t out = 0, stride = 1;
    for (std::size_t j = factors_.size(); j-- > 0;) {
      const auto n = static_cast<std::size_t>(factors_[j]);
      out += ((n - a % n) % n) * stride;
      a /= n;
      stride *= n;
    }
    return out;
  }

  std::size_t subtract(std::size_t a, std::size_t b) const noexcept { return add(a, negate(b)); }

  /// Phase of the pairing (x, m) as a fraction of a full turn, in [0, 1).
  double pairing_turns(std::size_t x, std::size_t m) const noexcept {
    double turns = 0.0;
    for (std::size_t j = factors_.size(); j-- > 0;) {
      const auto n = static_cast<std::size_t>(factors_[j]);
      turns += static_cast<double>((x % n) * (m % n) % n) / static_cast<double>(n);
      x /= n;
      m /= n;
    }
    return turns - std::floor(turns);
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < factors_.size(); ++j) os << (j ? "," : "") << factors_[j];
    return os.str();
  }

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<int> factors_;
  std::size_t order_ = 0;
};

/// Parses the literal "3,4" into Z_3 x Z_4.
inline FiniteAbelianGroup parse_group(std::string_view literal) {
  std::vector<int> factors;
  std::string token;
  auto flush = [&] {
    if (token.empty()) throw std::invalid_argument("malformed group literal '" + std::string(literal) + "'");
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw std::invalid_argument("malformed group factor '" + token + "'");
    factors.push_back(n);
    token.clear();
  };
  for (char c : literal) {
    if (c == ',') {
      flush();
    } else if (c != ' ') {
      token.push_back(c);
    }
  }
  flush();
  return FiniteAbelianGroup(std::move(factors));
}

inline void require_same_group(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
  if (!(a == b)) {
    throw std::invalid_argument("group mismatch: (" + a.to_string() + ") vs (" + b.to_string() + ")");
  }
}

/// Group element or character index, tied to its group.
class GroupElement {
 public:
  GroupElement(FiniteAbelianGroup group, std::size_t index) : group_(std::move(group)), index_(index) {
    if (index >= group_.order()) throw std::out_of_range("element index out of range");
  }
  GroupElement(FiniteAbelianGroup group, const std::vector<int>& residues)
      : group_(std::move(group)), index_(group_.index_of(residues)) {}

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  std::size_t index() const noexcept { return index_; }
  std::vector<int> residues() const { return group_.residues(index_); }

  GroupElement operator+(const GroupElement& o) const {
    require_same_group(group_, o.group_);
    return {group_, group_.add(index_, o.index_)};
  }
  GroupElement operator-() const { return {group_, group_.negate(index_)}; }
  GroupElement operator-(const GroupElement& o) const { return *this + (-o); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  FiniteAbelianGroup group_;
  std::size_t index_ = 0;
};

using CharacterIndex = GroupElement;

/// exp(2 pi i sum_j x_j m_j / n_j).
inline complex pairing(const GroupElement& x, const CharacterIndex& m) {
  require_same_group(x.group(), m.group());
  return std::polar(1.0, 2.0 * std::numbers::pi * x.group().pairing_turns(x.index(), m.index()));
}

inline complex pairing(const FiniteAbelianGroup& g, std::size_t x, std::size_t m) {
  return std::polar(1.0, 2.0 * std::numbers::pi * g.pairing_turns(x, m));
}

/// Complex values indexed by the enumeration of a group. Used both for
/// functions on G and for sequences on the dual group.
template <class Tag>
class IndexedValues {
 public:
  IndexedValues() = default;
  explicit IndexedValues(FiniteAbelianGroup group)
      : group_(std::move(group)), values_(group_.order(), complex{}) {}
  IndexedValues(FiniteAbelianGroup group, std::vector<complex> values)
      : group_(std::move(group)), values_(std::move(values)) {
    if (values_.size() != group_.order()) {
      throw std::invalid_argument("value count " + std::to_string(values_.size()) +
                                  " does not match group order " + std::to_string(group_.order()));
    }
  }

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<complex>& values() const noexcept { return values_; }
  std::vector<complex>& values() noexcept { return values_; }

  complex operator[](std::size_t i) const { return values_[i]; }
  complex& operator[](std::size_t i) { return values_[i]; }
  complex operator()(const GroupElement& x) const {
    require_same_group(group_, x.group());
    return values_[x.index()];
  }

  IndexedValues& operator+=(const IndexedValues& o) {
    require_same_group(group_, o.group_);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  IndexedValues& operator-=(const IndexedValues& o) {
    require_same_group(group_, o.group_);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  IndexedValues& operator*=(complex c) {
    for (auto& v : values_) v *= c;
    return *this;
  }
  friend IndexedValues operator+(IndexedValues a, const IndexedValues& b) { return a += b; }
  friend IndexedValues operator-(IndexedValues a, const IndexedValues& b) { return a -= b; }
  friend IndexedValues operator*(complex c, IndexedValues a) { return a *= c; }

  /// Pointwise product.
  friend IndexedValues operator*(const IndexedValues& a, const IndexedValues& b) {
    require_same_group(a.group_, b.group_);
    IndexedValues out(a.group_);
    for (std::size_t i = 0; i < a.size(); ++i) out.values_[i] = a.values_[i] * b.values_[i];
    return out;
  }

  IndexedValues conj() const {
    IndexedValues out = *this;
    for (auto& v : out.values_) v = std::conj(v);
    return out;
  }

  IndexedValues abs() const {
    IndexedValues out = *this;
    for (auto& v : out.values_) v = std::abs(v);
    return out;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  FiniteAbelianGroup group_;
  std::vector<complex> values_;
};

struct FunctionTag {};
using FunctionOnG = IndexedValues<FunctionTag>;

/// Max-abs distance between two sequences on the same group.
template <class Tag>
double max_abs_diff(const IndexedValues<Tag>& a, const IndexedValues<Tag>& b) {
  require_same_group(a.group(), b.group());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template <class Tag>
bool approx_equal(const IndexedValues<Tag>& a, const IndexedValues<Tag>& b, double tol = default_tolerance) {
  return max_abs_diff(a, b) <= tol;
}

inline FunctionOnG constant_function(const FiniteAbelianGroup& g, complex c) {
  return FunctionOnG(g, std::vector<complex>(g.order(), c));
}

/// Indicator of a set of element indices.
inline FunctionOnG indicator(const FiniteAbelianGroup& g, const std::vector<std::size_t>& points) {
  FunctionOnG f(g);
  for (auto p : points) {
    if (p >= g.order()) throw std::out_of_range("indicator point out of range");
    f[p] = 1.0;
  }
  return f;
}

inline FunctionOnG point_indicator(const FiniteAbelianGroup& g, std::size_t x) { return indicator(g, {x}); }

/// The character gamma_m as a function x -> (x, m).
inline FunctionOnG character(const FiniteAbelianGroup& g, std::size_t m) {
  FunctionOnG f(g);
  for (std::size_t x = 0; x < g.order(); ++x) f[x] = pairing(g, x, m);
  return f;
}

/// (tau_y f)(x) = f(x - y).
inline FunctionOnG translate(const FunctionOnG& f, const GroupElement& y) {
  require_same_group(f.group(), y.group());
  const auto& g = f.group();
  FunctionOnG out(g);
  for (std::size_t x = 0; x < g.order(); ++x) out[x] = f[g.subtract(x, y.index())];
  return out;
}

inline FunctionOnG translate(const FunctionOnG& f, std::size_t y) { return translate(f, GroupElement(f.group(), y)); }

/// f~(x) = f(-x).
inline FunctionOnG reflect(const FunctionOnG& f) {
  const auto& g = f.group();
  FunctionOnG out(g);
  for (std::size_t x = 0; x < g.order(); ++x) out[x] = f[g.negate(x)];
  return out;
}

/// f^natural(x) = conj(f(-x)).
inline FunctionOnG natural(const FunctionOnG& f) { return reflect(f).conj(); }

/// Integral against normalized Haar measure.
inline complex integrate(const FunctionOnG& f) {
  complex s{};
  for (const auto& v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

}  // namespace mclab
