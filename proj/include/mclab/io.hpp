#pragma once

// JSON forms of functions, spectra, operators and intertwining instances,
// and the norm descriptor syntax used on the command line.
//
// Complex sequences are flat arrays [re0, im0, re1, im1, ...] in the fixed
// element enumeration order. Groups are the literal "3,4".

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fourier.hpp"
#include "fuglede.hpp"
#include "group.hpp"
#include "multiplier.hpp"
#include "spaces.hpp"

namespace mclab {

using json = nlohmann::json;

/// Malformed input (configs, instance files, descriptors).
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json complex_array_to_json(const std::vector<complex>& values) {
  json out = json::array();
  for (const auto& v : values) {
    out.push_back(v.real());
    out.push_back(v.imag());
  }
  return out;
}

inline std::vector<complex> complex_array_from_json(const json& j, std::size_t expected, std::string_view what) {
  if (!j.is_array()) throw config_error(std::string(what) + " must be a flat array of (re, im) pairs");
  if (j.size() != 2 * expected) {
    throw config_error(std::string(what) + " has " + std::to_string(j.size()) + " numbers, expected " +
                       std::to_string(2 * expected));
  }
  std::vector<complex> out(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    if (!j[2 * i].is_number() || !j[2 * i + 1].is_number()) throw config_error(std::string(what) + " holds a non-number");
    out[i] = {j[2 * i].get<double>(), j[2 * i + 1].get<double>()};
  }
  return out;
}

inline void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  if (!j.is_object()) throw config_error(std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw config_error("unknown key '" + key + "' in " + std::string(what));
  }
}

inline FiniteAbelianGroup group_from_json(const json& j) {
  if (!j.is_string()) throw config_error("group must be a string literal such as \"3,4\"");
  try {
    return parse_group(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
}

inline json to_json(const FunctionOnG& f) {
  return {{"group", f.group().to_string()}, {"values", complex_array_to_json(f.values())}};
}

inline json to_json(const SpectrumOnGamma& s) {
  return {{"group", s.group().to_string()}, {"coefficients", complex_array_to_json(s.values())}};
}

inline json to_json(const LinearOperatorOnG& t) {
  return {{"group", t.group().to_string()}, {"basis", "point"}, {"matrix", complex_array_to_json(t.data())}};
}

inline json to_json(const CharBasisMatrix& a) {
  return {{"group", a.group().to_string()}, {"basis", "character"}, {"matrix", complex_array_to_json(a.data())}};
}

/// Reads {group, basis, matrix}; a character-basis matrix is converted to the point basis.
inline LinearOperatorOnG operator_from_json(const json& j) {
  reject_unknown_keys(j, {"group", "basis", "matrix"}, "operator");
  if (!j.contains("group") || !j.contains("matrix")) throw config_error("operator needs 'group' and 'matrix'");
  const auto g = group_from_json(j.at("group"));
  const std::string basis = j.value("basis", std::string("point"));
  const std::size_t n = g.order();
  if (n > dense_order_cap()) {
    throw config_error("group order " + std::to_string(n) + " exceeds the cap " + std::to_string(dense_order_cap()));
  }
  auto values = complex_array_from_json(j.at("matrix"), n * n, "operator matrix");
  if (basis == "point") return LinearOperatorOnG(g, std::move(values));
  if (basis == "character") {
    CharBasisMatrix a(g);
    for (std::size_t i = 0; i < n * n; ++i) a(i / n, i % n) = values[i];
    return to_point_basis(a);
  }
  throw config_error("operator basis must be \"point\" or \"character\", got \"" + basis + "\"");
}

/// Reads an E_g weight file: {"group": "64", "values": [re, im, ...]}.
inline FunctionOnG weight_from_json(const json& j) {
  reject_unknown_keys(j, {"group", "values"}, "weight file");
  if (!j.contains("group") || !j.contains("values")) throw config_error("weight file needs 'group' and 'values'");
  const auto g = group_from_json(j.at("group"));
  return {g, complex_array_from_json(j.at("values"), g.order(), "weight values")};
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error("invalid JSON in '" + path.string() + "': " + e.what());
  }
}

namespace detail {

inline double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return infinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw config_error("bad exponent '" + s + "'");
  }
  if (used != s.size()) throw config_error("bad exponent '" + s + "'");
  if (!(v >= 1.0)) throw config_error("exponent must lie in [1, inf], got '" + s + "'");
  return v;
}

/// "p=2,q=4" -> {p: 2, q: 4}; keys must be in `allowed`.
inline std::map<std::string, std::string> parse_params(std::string_view text, std::initializer_list<std::string_view> allowed,
                                                       std::string_view kind) {
  std::map<std::string, std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, end - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) throw config_error("malformed parameter '" + std::string(item) + "'");
    std::string key(item.substr(0, eq));
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw config_error("unknown parameter '" + key + "' for " + std::string(kind));
    if (!out.emplace(key, std::string(item.substr(eq + 1))).second) throw config_error("duplicate parameter '" + key + "'");
    start = end + 1;
  }
  return out;
}

}  // namespace detail

/// Parses "lp:p=2", "mixed:split=1|1,p=2,q=4", "eg:file=weights.json",
/// "dual:<descriptor>". Relative weight paths resolve against `base_dir`.
inline SpaceNorm parse_norm(std::string_view descriptor, const FiniteAbelianGroup& g,
                            const std::filesystem::path& base_dir = {}) {
  const std::size_t colon = descriptor.find(':');
  if (colon == std::string_view::npos) throw config_error("norm descriptor needs a kind prefix: '" + std::string(descriptor) + "'");
  const std::string kind(descriptor.substr(0, colon));
  const std::string_view rest = descriptor.substr(colon + 1);
  if (kind == "dual") return SpaceNorm::kothe_dual(parse_norm(rest, g, base_dir));
  if (kind == "lp") {
    const auto params = detail::parse_params(rest, {"p"}, "lp");
    if (!params.contains("p")) throw config_error("lp norm needs p");
    return SpaceNorm::lp(g, detail::parse_exponent(params.at("p")));
  }
  if (kind == "mixed") {
    const auto params = detail::parse_params(rest, {"split", "p", "q"}, "mixed");
    if (!params.contains("split") || !params.contains("p") || !params.contains("q")) {
      throw config_error("mixed norm needs split, p and q");
    }
    const std::string& split = params.at("split");
    const std::size_t bar = split.find('|');
    if (bar == std::string::npos) throw config_error("mixed split must look like 1|1");
    std::size_t a = 0, b = 0;
    try {
      a = std::stoul(split.substr(0, bar));
      b = std::stoul(split.substr(bar + 1));
    } catch (const std::exception&) {
      throw config_error("malformed mixed split '" + split + "'");
    }
    if (a + b != g.rank() || a == 0 || b == 0) {
      throw config_error("mixed split " + split + " does not partition the " + std::to_string(g.rank()) +
                         " coordinate positions");
    }
    return SpaceNorm::mixed(g, MixedSplit::from_block_sizes(a, b), detail::parse_exponent(params.at("p")),
                            detail::parse_exponent(params.at("q")));
  }
  if (kind == "eg") {
    const auto params = detail::parse_params(rest, {"file"}, "eg");
    if (!params.contains("file")) throw config_error("eg norm needs file=<weights.json>");
    std::filesystem::path path(params.at("file"));
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    const auto weight = weight_from_json(read_json_file(path));
    if (!(weight.group() == g)) throw config_error("weight file group does not match the experiment group");
    try {
      return SpaceNorm::eg(EgWeight(weight));
    } catch (const std::invalid_argument& e) {
      throw config_error(e.what());
    }
  }
  throw config_error("unknown norm kind '" + kind + "'");
}

/// Thresholds shared by the fuglede checks.
struct Thresholds {
  double eps_abs = 1e-12;
  double eps_rel = 1e-10;
  double tol_resid = 1e-10;
  double tol_sym = 1e-8;

  LemmaTolerances lemma() const { return {tol_resid, tol_sym, {eps_abs, eps_rel}}; }

  void validate() const {
    for (double v : {eps_abs, eps_rel, tol_resid, tol_sym}) {
      if (!(v > 0.0) || !std::isfinite(v)) throw config_error("thresholds must be positive and finite");
    }
    if (eps_abs >= tol_resid) throw config_error("eps_abs must be below tol_resid");
  }
};

inline Thresholds thresholds_from_json(const json& j) {
  reject_unknown_keys(j, {"eps_abs", "eps_rel", "tol_resid", "tol_sym"}, "thresholds");
  Thresholds t;
  auto read = [&](const char* key, double& dst) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number()) throw config_error(std::string("threshold ") + key + " must be a number");
    dst = j.at(key).get<double>();
  };
  read("eps_abs", t.eps_abs);
  read("eps_rel", t.eps_rel);
  read("tol_resid", t.tol_resid);
  read("tol_sym", t.tol_sym);
  t.validate();
  return t;
}

inline json to_json(const Thresholds& t) {
  return {{"eps_abs", t.eps_abs}, {"eps_rel", t.eps_rel}, {"tol_resid", t.tol_resid}, {"tol_sym", t.tol_sym}};
}

/// {group, phi, psi, operator, thresholds}.
struct IntertwiningInstance {
  LinearOperatorOnG op;
  MultiplierSymbol phi;
  MultiplierSymbol psi;
  Thresholds thresholds;
};

inline IntertwiningInstance instance_from_json(const json& j) {
  reject_unknown_keys(j, {"group", "phi", "psi", "operator", "thresholds"}, "instance");
  for (const char* key : {"group", "phi", "psi", "operator"}) {
    if (!j.contains(key)) throw config_error(std::string("instance is missing '") + key + "'");
  }
  const auto g = group_from_json(j.at("group"));
  IntertwiningInstance inst{operator_from_json(j.at("operator")),
                            {g, complex_array_from_json(j.at("phi"), g.order(), "phi")},
                            {g, complex_array_from_json(j.at("psi"), g.order(), "psi")},
                            {}};
  if (!(inst.op.group() == g)) throw config_error("operator group does not match instance group");
  if (j.contains("thresholds")) inst.thresholds = thresholds_from_json(j.at("thresholds"));
  return inst;
}

inline json to_json(const IntertwiningInstance& inst) {
  return {{"group", inst.op.group().to_string()},
          {"phi", complex_array_to_json(inst.phi.values())},
          {"psi", complex_array_to_json(inst.psi.values())},
          {"operator", to_json(inst.op)},
          {"thresholds", to_json(inst.thresholds)}};
}

}  // namespace mclab
