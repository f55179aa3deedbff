#pragma once

// Seeded property suites (fourier, algebra, spaces, fuglede), the circle
// discretization experiment, and single-instance intertwining verdicts.
//
// Every random draw comes from CounterRng(seed, stream) with a stream
// derived from the check and the trial index, so reports depend only on
// the configuration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fourier.hpp"
#include "fuglede.hpp"
#include "group.hpp"
#include "io.hpp"
#include "multiplier.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "spaces.hpp"

namespace mclab {

inline constexpr int config_schema_version = 1;

struct ExperimentConfig {
  std::string suite;
  FiniteAbelianGroup group;
  std::vector<std::string> norms;  // empty: suite defaults
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  Thresholds thresholds;
  std::string out;
  std::filesystem::path base_dir;  // resolves relative weight files

  void validate() const {
    static const std::vector<std::string> suites{"fourier", "algebra", "spaces", "fuglede"};
    if (std::find(suites.begin(), suites.end(), suite) == suites.end()) {
      throw config_error("unknown suite '" + suite + "' (expected fourier|algebra|spaces|fuglede)");
    }
    if (group.order() == 0) throw config_error("group is required");
    if (group.order() > dense_order_cap()) {
      throw config_error("group order " + std::to_string(group.order()) + " exceeds the cap " +
                         std::to_string(dense_order_cap()) + " (MCLAB_MAX_N)");
    }
    if (trials < 1) throw config_error("trials must be >= 1");
    thresholds.validate();
  }
};

inline std::uint64_t parse_seed(const json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s, &used, 0);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw config_error("seed must be a nonnegative integer or a hex string");
}

/// Versioned JSON config; unknown keys are rejected.
inline ExperimentConfig config_from_json(const json& j, const std::filesystem::path& base_dir = {}) {
  reject_unknown_keys(j, {"schema", "suite", "group", "norms", "trials", "seed", "thresholds", "out"}, "config");
  if (!j.contains("schema") || !j.at("schema").is_number_integer() || j.at("schema").get<int>() != config_schema_version) {
    throw config_error("config needs \"schema\": " + std::to_string(config_schema_version));
  }
  ExperimentConfig c;
  c.base_dir = base_dir;
  if (!j.contains("suite") || !j.at("suite").is_string()) throw config_error("config needs a 'suite' string");
  c.suite = j.at("suite").get<std::string>();
  if (!j.contains("group")) throw config_error("config needs a 'group'");
  c.group = group_from_json(j.at("group"));
  if (j.contains("norms")) {
    if (!j.at("norms").is_array()) throw config_error("'norms' must be an array of descriptors");
    for (const auto& n : j.at("norms")) {
      if (!n.is_string()) throw config_error("norm descriptors must be strings");
      c.norms.push_back(n.get<std::string>());
    }
  }
  if (j.contains("trials")) {
    if (!j.at("trials").is_number_integer() || j.at("trials").get<std::int64_t>() < 1) {
      throw config_error("trials must be an integer >= 1");
    }
    c.trials = j.at("trials").get<std::size_t>();
  }
  if (j.contains("seed")) c.seed = parse_seed(j.at("seed"));
  if (j.contains("thresholds")) c.thresholds = thresholds_from_json(j.at("thresholds"));
  if (j.contains("out")) {
    if (!j.at("out").is_string()) throw config_error("'out' must be a path string");
    c.out = j.at("out").get<std::string>();
  }
  c.validate();
  return c;
}

struct NamedNorm {
  std::string label;
  SpaceNorm norm;
};

/// Deterministic positive weight with unit Haar integral.
inline EgWeight default_eg_weight(const FiniteAbelianGroup& g, std::uint64_t seed) {
  CounterRng rng(seed, 0xE9E9E9ULL);
  FunctionOnG w(g);
  for (std::size_t x = 0; x < g.order(); ++x) w[x] = rng.uniform(0.1, 1.0);
  return EgWeight(w).normalized();
}

inline std::vector<NamedNorm> resolve_norms(const ExperimentConfig& c, bool include_fractional) {
  std::vector<NamedNorm> out;
  if (!c.norms.empty()) {
    for (const auto& d : c.norms) out.push_back({d, parse_norm(d, c.group, c.base_dir)});
    return out;
  }
  std::vector<double> ps{1.0, 2.0, 3.0, infinity};
  if (include_fractional) ps.insert(ps.begin() + 1, 1.5);
  for (double p : ps) {
    auto n = SpaceNorm::lp(c.group, p);
    out.push_back({n.describe(), n});
  }
  if (c.group.rank() >= 2) {
    auto n = SpaceNorm::mixed(c.group, MixedSplit::from_block_sizes(1, c.group.rank() - 1), 2.0, 4.0);
    out.push_back({n.describe(), n});
  }
  out.push_back({"eg:default", SpaceNorm::eg(default_eg_weight(c.group, c.seed))});
  return out;
}

namespace detail {

/// Stream id for (check family, trial).
constexpr std::uint64_t stream(std::uint64_t family, std::uint64_t trial) noexcept { return (family << 32) | trial; }

inline MeasureOnG random_probability_like_measure(const FiniteAbelianGroup& g, CounterRng& rng) {
  MeasureOnG m(g);
  for (std::size_t x = 0; x < g.order(); ++x) m[x] = rng.unit_box();
  const double tv = m.tv_norm();
  for (std::size_t x = 0; x < g.order(); ++x) m[x] /= tv;
  return m;
}

inline MultiplierSymbol random_symbol(const FiniteAbelianGroup& g, CounterRng& rng) {
  return random_values<SpectrumTag>(g, rng);
}

inline std::vector<std::string> labels_of(const std::vector<NamedNorm>& norms) {
  std::vector<std::string> out;
  for (const auto& n : norms) out.push_back(n.label);
  return out;
}

}  // namespace detail

inline SuiteReport run_fourier_suite(const ExperimentConfig& c) {
  const auto& g = c.group;
  const std::size_t n = g.order();
  double roundtrip = 0.0, fast_vs_ref = 0.0, plancherel = 0.0, conv_thm = 0.0, conv_inv = 0.0;
  double finite_sum = 0.0, measure_thm = 0.0, modulation = 0.0, natural_conj = 0.0, bound_excess = -infinity;
  for (std::size_t t = 0; t < c.trials; ++t) {
    CounterRng rng(c.seed, detail::stream(1, t));
    const auto f = random_function(g, rng);
    const auto h = random_function(g, rng);
    const auto lambda = detail::random_probability_like_measure(g, rng);
    const std::size_t y = rng.below(n);

    const auto fh = fourier(f);
    roundtrip = std::max(roundtrip, max_abs_diff(inverse_fourier(fh), f));
    fast_vs_ref = std::max(fast_vs_ref, max_abs_diff(fh, fourier_reference(f)));

    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lhs += std::norm(f[i]);
      rhs += std::norm(fh[i]);
    }
    lhs /= static_cast<double>(n);
    plancherel = std::max(plancherel, std::abs(lhs - rhs) / lhs);

    const auto direct = convolve(f, h);
    const auto hh = fourier(h);
    conv_thm = std::max(conv_thm, max_abs_diff(fourier(direct), fh * hh));
    conv_inv = std::max(conv_inv, max_abs_diff(direct, inverse_fourier(fh * hh)));

    FunctionOnG sum(g);
    for (std::size_t z = 0; z < n; ++z) sum += lambda[z] * translate(f, z);
    const auto fl = convolve_measure(f, lambda);
    finite_sum = std::max(finite_sum, max_abs_diff(fl, sum));
    measure_thm = std::max(measure_thm, max_abs_diff(fourier(fl), measure_transform(lambda) * fh));

    const auto shifted = fourier(translate(f, y));
    SpectrumOnGamma expected(g);
    for (std::size_t m = 0; m < n; ++m) expected[m] = pairing(g, g.negate(y), m) * fh[m];
    modulation = std::max(modulation, max_abs_diff(shifted, expected));
    natural_conj = std::max(natural_conj, max_abs_diff(fourier(natural(f)), fh.conj()));
    bound_excess = std::max(bound_excess, fh.max_abs() - lp_norm(f, 1.0));
  }
  SuiteReport r{"fourier", g.to_string(), c.seed, c.trials, {}, {}, nullptr};
  r.add(CheckRecord::bound("inversion_roundtrip_max_error", roundtrip, 1e-12));
  r.add(CheckRecord::bound("row_column_vs_reference_max_error", fast_vs_ref, 1e-12));
  r.add(CheckRecord::bound("plancherel_relative_error", plancherel, 1e-12));
  r.add(CheckRecord::bound("convolution_theorem_max_error", conv_thm, 1e-12));
  r.add(CheckRecord::bound("convolution_inverse_max_error", conv_inv, 1e-12));
  r.add(CheckRecord::bound("measure_convolution_finite_sum_max_error", finite_sum, 1e-12));
  r.add(CheckRecord::bound("measure_convolution_theorem_max_error", measure_thm, 1e-12));
  r.add(CheckRecord::bound("translation_modulation_max_error", modulation, 1e-12));
  r.add(CheckRecord::bound("natural_conjugation_max_error", natural_conj, 1e-12));
  r.add(CheckRecord::bound("transform_sup_minus_l1_max", bound_excess, 1e-12));
  return r;
}

inline SuiteReport run_algebra_suite(const ExperimentConfig& c) {
  const auto& g = c.group;
  const std::size_t n = g.order();
  const auto norms = resolve_norms(c, false);
  const auto id = LinearOperatorOnG::identity(g);
  double hom = 0.0, comm = 0.0, eigen = 0.0, involution = 0.0, involution_twice = 0.0, conj_linear = 0.0;
  double adjoint = 0.0, l2_exact = 0.0, from_measure = 0.0, translation_comm = 0.0, natural_iso = 0.0;
  double injectivity_gap = -infinity, full_probe_gap = -infinity;
  std::vector<double> probe_error(norms.size(), 0.0);
  const double unit = max_abs_diff(multiplier_matrix(constant_symbol(g, 1.0)), id);
  bool l2_converged = true;

  for (std::size_t t = 0; t < c.trials; ++t) {
    CounterRng rng(c.seed, detail::stream(2, t));
    const auto phi = detail::random_symbol(g, rng);
    const auto psi = detail::random_symbol(g, rng);
    const auto lambda = detail::random_probability_like_measure(g, rng);
    const complex scalar = rng.unit_box();
    const std::size_t y = rng.below(n);

    const auto mphi = multiplier_matrix(phi);
    const auto mpsi = multiplier_matrix(psi);
    hom = std::max(hom, max_abs_diff(multiplier_matrix(phi * psi), mphi * mpsi));
    comm = std::max(comm, max_abs_diff(mphi * mpsi, mpsi * mphi));
    for (std::size_t m = 0; m < n; ++m) {
      const auto gm = character(g, m);
      eigen = std::max(eigen, max_abs_diff(apply_multiplier(phi, gm), phi[m] * gm));
    }
    const auto mphi_bar = multiplier_matrix(phi.conj());
    const auto nat = natural_operator(mphi);
    involution = std::max(involution, max_abs_diff(nat, mphi_bar));
    involution_twice = std::max(involution_twice, max_abs_diff(natural_operator(nat), mphi));
    conj_linear = std::max(conj_linear, max_abs_diff(natural_operator(scalar * mphi), std::conj(scalar) * nat));

    // Character basis of M_conj(phi) against the conjugate transpose of M_phi's.
    const auto a = char_basis(mphi);
    const auto abar = char_basis(mphi_bar);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) adjoint = std::max(adjoint, std::abs(abar(i, j) - std::conj(a(j, i))));
    }

    const auto l2 = operator_norm_l2(mphi);
    l2_converged = l2_converged && l2.converged;
    l2_exact = std::max(l2_exact, std::abs(l2.value - phi.max_abs()));

    from_measure = std::max(from_measure,
                            max_abs_diff(operator_from_measure(lambda), multiplier_matrix(measure_transform(lambda))));
    const auto ty = LinearOperatorOnG::translation(g, y);
    translation_comm = std::max(translation_comm, max_abs_diff(mphi * ty, ty * mphi));

    // A generic operator: the L^2 norm is unchanged by the involution.
    LinearOperatorOnG generic(g);
    for (std::size_t i = 0; i < n * n; ++i) generic(i / n, i % n) = rng.unit_box();
    const double gn = operator_norm_l2(generic).value;
    natural_iso = std::max(natural_iso, std::abs(operator_norm_l2(natural_operator(generic)).value - gn) / gn);

    const double sup_phi = phi.max_abs();
    for (std::size_t k = 0; k < norms.size(); ++k) {
      const auto bound = operator_norm_probe(mphi, norms[k].norm, ProbeSet::characters_only()).value;
      probe_error[k] = std::max(probe_error[k], std::abs(bound - sup_phi));
    }
    const auto& first = norms.front().norm;
    ProbeSet probes;
    probes.seed = c.seed ^ t;
    full_probe_gap = std::max(full_probe_gap, sup_phi - operator_norm_probe(mphi, first, probes).value);
    injectivity_gap =
        std::max(injectivity_gap, (phi - psi).max_abs() - operator_norm_probe(mphi - mpsi, first, probes).value);
  }

  SuiteReport r{"algebra", g.to_string(), c.seed, c.trials, detail::labels_of(norms), {}, nullptr};
  r.add(CheckRecord::bound("homomorphism_max_error", hom, 1e-12));
  r.add(CheckRecord::bound("unit_max_error", unit, 1e-12));
  r.add(CheckRecord::bound("commutativity_max_error", comm, 1e-12));
  r.add(CheckRecord::bound("character_eigen_max_error", eigen, 1e-12));
  r.add(CheckRecord::bound("involution_max_error", involution, 1e-12));
  r.add(CheckRecord::bound("involution_twice_max_error", involution_twice, 1e-12));
  r.add(CheckRecord::bound("involution_conjugate_linear_max_error", conj_linear, 1e-12));
  r.add(CheckRecord::bound("hilbert_adjoint_max_error", adjoint, 1e-12));
  r.add(CheckRecord::bound("l2_operator_norm_vs_sup_symbol", l2_exact, 1e-9, Relation::at_most,
                           json{{"power_iteration_converged", l2_converged}}));
  if (!l2_converged) r.checks.back().verdict = Verdict::fail;
  r.add(CheckRecord::bound("natural_l2_isometry_relative_error", natural_iso, 1e-9));
  r.add(CheckRecord::bound("measure_operator_vs_multiplier_max_error", from_measure, 1e-12));
  r.add(CheckRecord::bound("translation_commutation_max_error", translation_comm, 1e-12));
  for (std::size_t k = 0; k < norms.size(); ++k) {
    r.add(CheckRecord::bound("character_probe_bound_error[" + norms[k].label + "]", probe_error[k], 1e-12));
  }
  r.add(CheckRecord::bound("sup_symbol_minus_probe_bound_max", full_probe_gap, 1e-12));
  r.add(CheckRecord::bound("injectivity_gap_max", injectivity_gap, 1e-12));
  return r;
}

inline SuiteReport run_spaces_suite(const ExperimentConfig& c) {
  const auto& g = c.group;
  const auto norms = resolve_norms(c, true);
  SuiteReport r{"spaces", g.to_string(), c.seed, c.trials, detail::labels_of(norms), {}, nullptr};

  for (std::size_t k = 0; k < norms.size(); ++k) {
    const auto& nn = norms[k];
    const auto tr = certify_invariance(nn.norm, InvarianceKind::translation, c.trials, c.seed ^ (0x100 + k));
    r.add(CheckRecord::bound("translation_invariance[" + nn.label + "]", tr.max_relative_deviation, 1e-12));
    if (!nn.norm.is_eg()) {
      const auto rf = certify_invariance(nn.norm, InvarianceKind::reflection, c.trials, c.seed ^ (0x200 + k));
      r.add(CheckRecord::bound("reflection_invariance[" + nn.label + "]", rf.max_relative_deviation, 1e-12));
    }
  }

  // Absolute monotonicity, embedding into L^1 (for norms with ||1||_E = 1),
  // and the triangle inequality.
  for (const auto& nn : norms) {
    double mono = -infinity, embed = -infinity, tri = -infinity;
    const bool normalized = std::abs(nn.norm(constant_function(g, 1.0)) - 1.0) <= 1e-12;
    for (std::size_t t = 0; t < c.trials; ++t) {
      CounterRng rng(c.seed, detail::stream(3, t));
      const auto h = random_function(g, rng);
      FunctionOnG f(g);
      for (std::size_t x = 0; x < g.order(); ++x) f[x] = h[x] * rng.polar(0.0, 1.0);
      const auto u = random_function(g, rng);
      const double nh = nn.norm(h);
      mono = std::max(mono, nn.norm(f) - nh);
      embed = std::max(embed, lp_norm(h, 1.0) - nh);
      tri = std::max(tri, nn.norm(h + u) - nh - nn.norm(u));
    }
    r.add(CheckRecord::bound("absolute_monotonicity_excess[" + nn.label + "]", mono, 1e-12));
    if (normalized) r.add(CheckRecord::bound("l1_embedding_excess[" + nn.label + "]", embed, 1e-12));
    r.add(CheckRecord::bound("triangle_inequality_excess[" + nn.label + "]", tri, 1e-12));
  }

  // Koethe duality on the norms with closed forms.
  const std::size_t dual_trials = std::min<std::size_t>(c.trials, 20);
  for (const auto& nn : norms) {
    if (!nn.norm.has_closed_dual()) continue;
    double low = infinity, over = -infinity, bidual = 0.0, holder = infinity, saturation = 0.0;
    for (std::size_t t = 0; t < c.trials; ++t) {
      CounterRng rng(c.seed, detail::stream(4, t));
      const auto f = random_function(g, rng);
      const auto gg = random_function(g, rng);
      const auto rep = holder_check(f, gg, nn.norm);
      holder = std::min({holder, rep.modulus_slack(), rep.bound_slack()});
      bidual = std::max(bidual, std::abs(SpaceNorm::kothe_dual(SpaceNorm::kothe_dual(nn.norm))(f) - nn.norm(f)) /
                                    nn.norm(f));
      if (t < dual_trials) {
        const double closed = kothe_dual_norm_closed(gg, nn.norm);
        const double est = kothe_dual_norm_estimate(gg, nn.norm);
        low = std::min(low, est / closed);
        over = std::max(over, est - closed);
        // Hoelder saturation at the estimator's maximizer.
        const auto maxi = kothe_dual_estimate(gg, nn.norm).maximizer;
        const auto sat = holder_check(maxi, gg, nn.norm);
        saturation = std::max(saturation, sat.bound_slack() / (sat.norm_f * sat.dual_norm_g));
      }
    }
    r.add(CheckRecord::bound("holder_min_slack[" + nn.label + "]", holder, -1e-12, Relation::at_least));
    r.add(CheckRecord::bound("bidual_relative_error[" + nn.label + "]", bidual, 1e-9));
    r.add(CheckRecord::bound("dual_estimate_over_closed_min[" + nn.label + "]", low, 0.98, Relation::at_least));
    r.add(CheckRecord::bound("dual_estimate_minus_closed_max[" + nn.label + "]", over, 1e-12));
    r.add(CheckRecord::bound("holder_saturation_relative_gap[" + nn.label + "]", saturation, 0.02));
    const auto dual_tr =
        certify_invariance(SpaceNorm::kothe_dual(nn.norm), InvarianceKind::translation, dual_trials, c.seed ^ 0x300);
    r.add(CheckRecord::bound("dual_translation_invariance[" + nn.label + "]", dual_tr.max_relative_deviation, 1e-12));
  }
  return r;
}

/// Counts and extremes gathered over seeded intertwining instances.
struct FugledeTally {
  std::size_t instances = 0;
  std::size_t disagreements = 0;
  std::size_t indeterminate = 0;
  std::size_t adversarial = 0;
  std::size_t adversarial_rejected = 0;
  std::size_t perturbed = 0;
  std::size_t perturbed_rejected = 0;
  double perturbation_ratio_min = infinity;
  std::size_t constructed = 0;
  std::size_t transfer_failures = 0;
  double forward_max = 0.0;
  double conjugate_max = 0.0;
  double oracle_gap_max = 0.0;
  std::size_t split_edge_trials = 0;
  std::size_t split_edge_rejected = 0;
  json first_disagreement;
};

/// Runs one seeded instance of each kind through the lemma and transfer checks.
/// kind: 0 constructed, 1 adversarial component flip, 2 perturbation by delta
/// at a constrained xi, 3 independent random symbols.
inline void fuglede_trial(const FiniteAbelianGroup& g, CounterRng& rng, int kind, const Thresholds& th,
                          FugledeTally& tally, double delta = 1e-3) {
  const std::size_t n = g.order();
  const double density = rng.uniform(0.1, 0.9);
  const auto a0 = random_sparse_char_matrix(g, rng, density, 1e-6);
  const auto t = to_point_basis(a0);
  const auto s = support_relation(t, {th.eps_abs, th.eps_rel});
  const auto part = commuting_partition(s, PartitionMode::pair);

  MultiplierSymbol phi(g), psi(g);
  std::optional<std::pair<std::size_t, std::size_t>> perturbed_edge;
  if (kind == 3) {
    for (std::size_t i = 0; i < n; ++i) {
      phi[i] = rng.polar(0.1, 1.0);
      psi[i] = rng.polar(0.1, 1.0);
    }
  } else {
    auto sym = random_intertwining_instance(part, rng, kind == 1);
    phi = sym.phi;
    psi = sym.psi;
    if (kind == 2 && !s.edges.empty()) {
      perturbed_edge = s.edges[rng.below(s.edges.size())];
      phi[perturbed_edge->first] += delta * std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    }
  }

  const auto rep = lemma_equivalence_check(t, phi, psi, th.lemma());
  ++tally.instances;
  tally.oracle_gap_max = std::max(tally.oracle_gap_max, std::abs(rep.residual - rep.residual_dense));
  if (rep.verdict == Verdict::indeterminate) ++tally.indeterminate;
  if (rep.intertwines != rep.constraints.satisfied) {
    ++tally.disagreements;
    if (tally.first_disagreement.is_null()) {
      tally.first_disagreement = {{"kind", kind}, {"residual", rep.residual}, {"worst_violation", rep.constraints.worst_violation}};
    }
  }

  if (kind == 1 && !s.edges.empty()) {
    ++tally.adversarial;
    if (!rep.intertwines && !rep.constraints.satisfied) ++tally.adversarial_rejected;
  }
  if (kind == 2 && perturbed_edge) {
    ++tally.perturbed;
    if (!rep.intertwines && !rep.constraints.satisfied) ++tally.perturbed_rejected;
    tally.perturbation_ratio_min = std::min(tally.perturbation_ratio_min, rep.residual / (delta * s.min_edge_magnitude));
  }
  if (kind == 0) {
    ++tally.constructed;
    try {
      const auto tr = fuglede_transfer(t, phi, psi, th.tol_resid);
      tally.forward_max = std::max(tally.forward_max, tr.residual_forward);
      tally.conjugate_max = std::max(tally.conjugate_max, tr.residual_conjugate);
      if (!tr.holds) ++tally.transfer_failures;
    } catch (const intertwining_precondition& e) {
      ++tally.transfer_failures;
      tally.forward_max = std::max(tally.forward_max, e.residual());
    }
    // Splitting the symbols across a single edge must break the constraints.
    if (!s.edges.empty()) {
      ++tally.split_edge_trials;
      const auto [xi, gamma] = s.edges[rng.below(s.edges.size())];
      auto psi_split = psi;
      psi_split[gamma] = phi[xi] + 0.5;
      if (!constraint_satisfied(phi, psi_split, s, th.tol_sym).satisfied) ++tally.split_edge_rejected;
    }
  }
}

inline void add_fuglede_checks(SuiteReport& r, const FugledeTally& f, const Thresholds& th) {
  r.add(CheckRecord::bound("lemma_disagreements", static_cast<double>(f.disagreements), 0.0, Relation::at_most,
                           f.first_disagreement));
  auto& ind = r.add(CheckRecord::bound("lemma_indeterminate", static_cast<double>(f.indeterminate), 0.0));
  if (ind.verdict == Verdict::fail) ind.verdict = Verdict::indeterminate;
  r.add(CheckRecord::bound("oracle_residual_gap_max", f.oracle_gap_max, 1e-12));
  r.add(CheckRecord::bound("transfer_forward_residual_max", f.forward_max, th.tol_resid));
  r.add(CheckRecord::bound("transfer_conjugate_residual_max", f.conjugate_max, th.tol_resid));
  r.add(CheckRecord::bound("transfer_failures", static_cast<double>(f.transfer_failures), 0.0));
  r.add(CheckRecord::bound("adversarial_rejected_fraction",
                           f.adversarial ? static_cast<double>(f.adversarial_rejected) / f.adversarial : 1.0, 1.0,
                           Relation::at_least));
  r.add(CheckRecord::bound("perturbation_rejected_fraction",
                           f.perturbed ? static_cast<double>(f.perturbed_rejected) / f.perturbed : 1.0, 1.0,
                           Relation::at_least));
  r.add(CheckRecord::bound("perturbation_residual_ratio_min", f.perturbed ? f.perturbation_ratio_min : 1.0, 0.99,
                           Relation::at_least));
  r.add(CheckRecord::bound("partition_split_edge_rejected_fraction",
                           f.split_edge_trials ? static_cast<double>(f.split_edge_rejected) / f.split_edge_trials : 1.0,
                           1.0, Relation::at_least));
}

inline SuiteReport run_fuglede_suite(const ExperimentConfig& c) {
  FugledeTally tally;
  for (std::size_t t = 0; t < c.trials; ++t) {
    CounterRng rng(c.seed, detail::stream(5, t));
    fuglede_trial(c.group, rng, static_cast<int>(t % 4), c.thresholds, tally);
  }
  SuiteReport r{"fuglede", c.group.to_string(), c.seed, c.trials, {}, {}, nullptr};
  add_fuglede_checks(r, tally, c.thresholds);
  r.data = {{"instances", tally.instances},
            {"constructed", tally.constructed},
            {"adversarial", tally.adversarial},
            {"perturbed", tally.perturbed},
            {"thresholds", to_json(c.thresholds)}};
  return r;
}

inline SuiteReport run_suite(const ExperimentConfig& c) {
  c.validate();
  if (c.suite == "fourier") return run_fourier_suite(c);
  if (c.suite == "algebra") return run_algebra_suite(c);
  if (c.suite == "spaces") return run_spaces_suite(c);
  return run_fuglede_suite(c);
}

struct CircleRow {
  std::size_t k = 0;
  double shift = 0.0;  // k * 2 pi / M
  double value = 0.0;  // ||f - tau_k f||_p
  double exact = 0.0;  // (2k / M)^(1/p)
};

/// ||chi_B - tau_k chi_B||_p for the half circle B = {0, ..., M/2 - 1},
/// k = M/2, M/4, ..., 1.
inline std::vector<CircleRow> translation_continuity_table(int m, double p) {
  if (m < 8 || m % 2 != 0) throw config_error("circle experiment needs an even M >= 8");
  if (!(p >= 1.0)) throw config_error("circle experiment needs p in [1, inf]");
  FiniteAbelianGroup g({m});
  std::vector<std::size_t> half;
  for (int k = 0; k < m / 2; ++k) half.push_back(static_cast<std::size_t>(k));
  const auto f = indicator(g, half);
  std::vector<std::size_t> shifts;
  for (std::size_t k = static_cast<std::size_t>(m / 2); k >= 1; k /= 2) shifts.push_back(k);
  if (shifts.back() != 1) shifts.push_back(1);
  std::vector<CircleRow> rows;
  for (auto k : shifts) {
    const double measure = 2.0 * static_cast<double>(k) / m;
    rows.push_back({k, static_cast<double>(k) * 2.0 * std::numbers::pi / m, lp_norm(f - translate(f, k), p),
                    std::isinf(p) ? 1.0 : std::pow(measure, 1.0 / p)});
  }
  return rows;
}

struct AsymmetryRow {
  int m = 0;
  double norm_weight = 0.0;     // ||g||_{E_g}
  double norm_reflected = 0.0;  // ||g~||_{E_g}
  double ratio() const noexcept { return norm_weight / norm_reflected; }
};

inline AsymmetryRow eg_reflection_asymmetry(int m) {
  const auto g = half_circle_inverse_sqrt(m);
  const EgWeight w(g);
  return {m, eg_norm(g, w), eg_norm(reflect(g), w)};
}

inline SuiteReport circle_experiment(int m, double p) {
  const auto rows = translation_continuity_table(m, p);
  SuiteReport r{"circle", std::to_string(m), 0, 1, {"lp:p=" + format_exponent(p)}, {}, nullptr};
  json table = json::array();
  double increase = -infinity, exact_err = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    table.push_back({{"k", row.k}, {"shift", row.shift}, {"value", row.value}, {"exact", row.exact}});
    exact_err = std::max(exact_err, std::abs(row.value - row.exact));
    if (i > 0) increase = std::max(increase, row.value - rows[i - 1].value);
  }
  r.add(CheckRecord::bound("nonincreasing_as_shift_shrinks", rows.size() > 1 ? increase : 0.0, 1e-12));
  r.add(CheckRecord::bound("smallest_shift_vs_exact", std::abs(rows.back().value - rows.back().exact), 1e-12));
  r.add(CheckRecord::bound("half_swap_minus_one", std::abs(rows.front().value - 1.0), 1e-12));
  r.add(CheckRecord::bound("symmetric_difference_identity_max_error", exact_err, 1e-12));

  json asym = json::array();
  std::vector<AsymmetryRow> arows;
  for (int mm : {64, 128, 256}) {
    arows.push_back(eg_reflection_asymmetry(mm));
    const auto& a = arows.back();
    asym.push_back({{"m", a.m}, {"norm_weight", a.norm_weight}, {"norm_reflected", a.norm_reflected}, {"ratio", a.ratio()}});
  }
  r.add(CheckRecord::bound("eg_reflection_ratio_m64", arows[0].ratio(), 1.5, Relation::at_least));
  const double growth = std::min(arows[1].ratio() - arows[0].ratio(), arows[2].ratio() - arows[1].ratio());
  r.add(CheckRecord::bound("eg_reflection_ratio_min_growth", growth, 0.0, Relation::at_least));
  r.data = {{"m", m}, {"p", std::isinf(p) ? json("inf") : json(p)}, {"translation_continuity", table}, {"eg_asymmetry", asym}};
  return r;
}

/// Verdict object for one intertwining instance. lemma_verdict records
/// whether the residual and constraint criteria agree.
inline json commutant_verdict(const IntertwiningInstance& inst) {
  const auto rep = lemma_equivalence_check(inst.op, inst.phi, inst.psi, inst.thresholds.lemma());
  const auto a = char_basis(inst.op);
  const double conj_residual = intertwine_residual(inst.phi.conj(), inst.psi.conj(), a);
  // PASS: T intertwines (phi, psi) and (conj phi, conj psi). FAIL: it does
  // not, or the two criteria disagree outside the tolerance gap.
  Verdict v = rep.verdict;
  if (v == Verdict::pass) {
    const bool holds = rep.intertwines && rep.constraints.satisfied && conj_residual <= inst.thresholds.tol_resid;
    v = holds ? Verdict::pass : Verdict::fail;
  }
  json witness = nullptr;
  if (rep.constraints.witness) {
    const auto [xi, gamma] = *rep.constraints.witness;
    witness = {{"xi", xi}, {"gamma", gamma}, {"violation", rep.constraints.worst_violation}};
  }
  const auto part = commuting_partition(support_relation(a, {inst.thresholds.eps_abs, inst.thresholds.eps_rel}));
  return {{"residual_forward", rep.residual},
          {"residual_conjugate", conj_residual},
          {"residual_dense", rep.residual_dense},
          {"constraint_worst_violation", rep.constraints.worst_violation},
          {"intertwines", rep.intertwines},
          {"constraints_satisfied", rep.constraints.satisfied},
          {"band_entries", rep.band_entries},
          {"support_edges", part.edges.size()},
          {"components", part.component_count},
          {"lemma_verdict", std::string(to_string(rep.verdict))},
          {"verdict", std::string(to_string(v))},
          {"witness", witness}};
}

}  // namespace mclab
