#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "mclab/multiplier.hpp"
#include "mclab/rng.hpp"
#include "oracles.hpp"

using namespace mclab;

namespace {

const std::vector<std::vector<int>> kGroups{{4}, {8}, {6}, {3, 4}, {2, 2, 3}};

MultiplierSymbol random_symbol(const FiniteAbelianGroup& g, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  return random_values<SpectrumTag>(g, rng);
}

double largest_singular_value(const LinearOperatorOnG& t) {
  const auto n = static_cast<Eigen::Index>(t.dim());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = t(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

double max_diff(const LinearOperatorOnG& t, const std::vector<complex>& m) {
  double d = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) d = std::max(d, std::abs(t.data()[i] - m[i]));
  return d;
}

std::vector<SpaceNorm> probe_norms(const FiniteAbelianGroup& g) {
  std::vector<SpaceNorm> out;
  for (double p : {1.0, 2.0, 3.0, infinity}) out.push_back(SpaceNorm::lp(g, p));
  if (g.rank() >= 2) out.push_back(SpaceNorm::mixed(g, MixedSplit::from_block_sizes(1, g.rank() - 1), 2.0, 4.0));
  CounterRng rng(99, 0);
  FunctionOnG w(g);
  for (std::size_t x = 0; x < g.order(); ++x) w[x] = rng.uniform(0.1, 1.0);
  out.push_back(SpaceNorm::eg(EgWeight(w).normalized()));
  return out;
}

}  // namespace

TEST(ApplyMultiplier, Examples) {
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    CounterRng rng(51, 0);
    const auto f = random_function(g, rng);
    EXPECT_LE(max_abs_diff(apply_multiplier(constant_symbol(g, 1.0), f), f), 1e-14);
    const auto phi = random_symbol(g, 52, 0);
    for (std::size_t m = 0; m < g.order(); ++m) {
      EXPECT_LE(max_abs_diff(apply_multiplier(phi, character(g, m)), phi[m] * character(g, m)), 1e-14);
      // Spectral projection onto one character.
      SpectrumOnGamma proj(g);
      proj[m] = 1.0;
      EXPECT_LE(max_abs_diff(apply_multiplier(proj, f), fourier(f)[m] * character(g, m)), 1e-14);
    }
  }
}

TEST(MultiplierMatrix, MatchesBasisConjugationOracle) {
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    for (std::uint64_t t = 0; t < 10; ++t) {
      const auto phi = random_symbol(g, 53, t);
      EXPECT_LE(max_diff(multiplier_matrix(phi), oracle::multiplier_matrix(factors, phi.values())), 1e-13);
    }
    EXPECT_LE(max_abs_diff(multiplier_matrix(constant_symbol(g, 1.0)), LinearOperatorOnG::identity(g)), 1e-14);
  }
}

TEST(MultiplierMatrix, TranslationSymbol) {
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    for (std::size_t y = 0; y < g.order(); ++y) {
      MultiplierSymbol phi(g);
      for (std::size_t m = 0; m < g.order(); ++m) phi[m] = pairing(g, g.negate(y), m);
      EXPECT_LE(max_abs_diff(multiplier_matrix(phi), LinearOperatorOnG::translation(g, y)), 1e-13);
      EXPECT_EQ(max_abs_diff(operator_from_measure(MeasureOnG::dirac(g, y)), LinearOperatorOnG::translation(g, y)), 0.0);
    }
  }
}

TEST(MultiplierMatrix, IsAUnitalHomomorphism) {
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    for (std::uint64_t t = 0; t < 20; ++t) {
      const auto phi = random_symbol(g, 54, t), psi = random_symbol(g, 55, t);
      const auto mp = multiplier_matrix(phi), mq = multiplier_matrix(psi);
      EXPECT_LE(max_abs_diff(multiplier_matrix(phi * psi), mp * mq), 1e-12);
      EXPECT_LE(max_abs_diff(multiplier_matrix(phi + psi), mp + mq), 1e-13);
      EXPECT_LE(max_abs_diff(mp * mq, mq * mp), 1e-12);
    }
  }
}

TEST(OperatorFromMeasure, Examples) {
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    EXPECT_EQ(max_abs_diff(operator_from_measure(MeasureOnG::dirac(g, 0)), LinearOperatorOnG::identity(g)), 0.0);
    const auto avg = operator_from_measure(MeasureOnG::haar(g));
    CounterRng rng(56, 0);
    const auto f = random_function(g, rng);
    EXPECT_LE(max_abs_diff(avg.apply(f), constant_function(g, integrate(f))), 1e-14);
    MeasureOnG lambda(g);
    for (std::size_t x = 0; x < g.order(); ++x) lambda[x] = rng.unit_box();
    EXPECT_LE(max_abs_diff(operator_from_measure(lambda), multiplier_matrix(measure_transform(lambda))), 1e-13);
    EXPECT_LE(max_abs_diff(operator_from_measure(lambda).apply(f), convolve_measure(f, lambda)), 1e-14);
  }
}

TEST(NaturalOperator, Examples) {
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    EXPECT_EQ(max_abs_diff(natural_operator(LinearOperatorOnG::identity(g)), LinearOperatorOnG::identity(g)), 0.0);
    for (std::size_t y = 0; y < g.order(); ++y) {
      // tau_y has symbol gamma(-y); its conjugate belongs to tau_{-y}.
      const auto ty = LinearOperatorOnG::translation(g, y);
      EXPECT_EQ(max_abs_diff(natural_operator(ty), LinearOperatorOnG::translation(g, g.negate(y))), 0.0);
    }
    for (std::uint64_t t = 0; t < 20; ++t) {
      const auto phi = random_symbol(g, 57, t);
      const auto m = multiplier_matrix(phi);
      EXPECT_LE(max_abs_diff(natural_operator(m), multiplier_matrix(phi.conj())), 1e-13);
      // Definition: T^natural f = (T f^natural)^natural.
      CounterRng rng(58, t);
      const auto f = random_function(g, rng);
      EXPECT_LE(max_abs_diff(natural_operator(m).apply(f), natural(m.apply(natural(f)))), 1e-13);
      // L^2 adjoint.
      EXPECT_LE(max_abs_diff(multiplier_matrix(phi.conj()), m.adjoint()), 1e-13);
    }
  }
}

TEST(NaturalOperator, PreservesNorms) {
  // Characters are fixed by the involution and point indicators are permuted,
  // so the candidate bounds of T and its natural operator coincide.
  ProbeSet fixed;
  fixed.random_functions = 0;
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    const auto norms = probe_norms(g);
    for (std::uint64_t t = 0; t < 10; ++t) {
      CounterRng rng(62, t);
      LinearOperatorOnG a(g);
      for (std::size_t i = 0; i < g.order() * g.order(); ++i) a(i / g.order(), i % g.order()) = rng.unit_box();
      const auto nat = natural_operator(a);
      const double l2 = largest_singular_value(a);
      EXPECT_NEAR(operator_norm_l2(nat).value, l2, 1e-9 * l2);
      EXPECT_NEAR(largest_singular_value(nat), l2, 1e-12 * l2);
      for (const auto& n : norms) {
        if (n.is_eg()) continue;  // E_g with a generic weight is not reflection invariant
        const double b = operator_norm_probe(a, n, fixed).value;
        EXPECT_NEAR(operator_norm_probe(nat, n, fixed).value, b, 1e-12 * b) << n.describe();
      }
    }
  }
}

TEST(OperatorNorm, CharacterProbeReachesSupOfSymbol) {
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    const auto norms = probe_norms(g);
    for (std::uint64_t t = 0; t < 10; ++t) {
      const auto phi = random_symbol(g, 59, t);
      const auto m = multiplier_matrix(phi);
      for (const auto& n : norms) {
        const double chars = operator_norm_probe(m, n, ProbeSet::characters_only()).value;
        EXPECT_NEAR(chars, phi.max_abs(), 1e-12) << n.describe();
        EXPECT_GE(operator_norm_lower_bound(m, n), phi.max_abs() - 1e-12);
      }
    }
    for (const auto& n : norms) EXPECT_NEAR(operator_norm_lower_bound(LinearOperatorOnG::identity(g), n), 1.0, 1e-14);
  }
}

TEST(OperatorNorm, L2AgainstSvdOracle) {
  for (const auto& factors : kGroups) {
    FiniteAbelianGroup g(factors);
    for (std::uint64_t t = 0; t < 20; ++t) {
      const auto phi = random_symbol(g, 60, t);
      const auto m = multiplier_matrix(phi);
      const auto r = operator_norm_l2(m);
      EXPECT_TRUE(r.converged);
      EXPECT_NEAR(r.value, phi.max_abs(), 1e-9);
      EXPECT_NEAR(r.value, largest_singular_value(m), 1e-9);
      EXPECT_NEAR(operator_norm_lower_bound(m, SpaceNorm::lp(g, 2.0)), r.value, 1e-9);
      // A generic dense operator, not normal.
      CounterRng rng(61, t);
      LinearOperatorOnG a(g);
      for (std::size_t i = 0; i < g.order() * g.order(); ++i) a(i / g.order(), i % g.order()) = rng.unit_box();
      EXPECT_NEAR(operator_norm_l2(a).value, largest_singular_value(a), 1e-9 * largest_singular_value(a));
    }
    EXPECT_NEAR(operator_norm_l2(LinearOperatorOnG::identity(g)).value, 1.0, 1e-12);
    EXPECT_NEAR(operator_norm_l2(operator_from_measure(MeasureOnG::haar(g))).value, 1.0, 1e-12);
    EXPECT_EQ(operator_norm_l2(LinearOperatorOnG(g)).value, 0.0);
  }
}

TEST(OperatorNorm, NearlyDegenerateTopSingularValues) {
  FiniteAbelianGroup g({12});
  MultiplierSymbol phi(g);
  for (std::size_t m = 0; m < g.order(); ++m) phi[m] = 0.5;
  phi[3] = 1.35;
  phi[7] = complex(0.0, 1.349);
  const auto r = operator_norm_l2(multiplier_matrix(phi));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.35, 1e-12);
}

TEST(LinearOperator, DenseCapAndShapes) {
  const auto saved = dense_order_cap();
  dense_order_cap() = 8;
  EXPECT_THROW(LinearOperatorOnG(FiniteAbelianGroup({3, 3})), std::length_error);
  EXPECT_NO_THROW(LinearOperatorOnG(FiniteAbelianGroup({8})));
  dense_order_cap() = saved;
  EXPECT_THROW(LinearOperatorOnG(FiniteAbelianGroup({4}), std::vector<complex>(15)), std::invalid_argument);
  EXPECT_THROW(LinearOperatorOnG::identity(FiniteAbelianGroup({4})) * LinearOperatorOnG::identity(FiniteAbelianGroup({2, 2})),
               std::invalid_argument);
}
