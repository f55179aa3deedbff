#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "mclab/io.hpp"
#include "mclab/report.hpp"
#include "mclab/suites.hpp"

using namespace mclab;

namespace {

const std::filesystem::path kData = MCLAB_TEST_DATA_DIR;

ExperimentConfig make_config(std::string suite, std::string group, std::size_t trials, std::uint64_t seed) {
  ExperimentConfig c;
  c.suite = std::move(suite);
  c.group = parse_group(group);
  c.trials = trials;
  c.seed = seed;
  return c;
}

const CheckRecord* find_check(const SuiteReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST(Config, ParsesSchemaOne) {
  const auto c = config_from_json(json::parse(R"({"schema": 1, "suite": "fuglede", "group": "3,4", "trials": 7,
      "seed": "0x2A", "norms": ["lp:p=2"], "thresholds": {"tol_sym": 1e-7}, "out": "r.json"})"));
  EXPECT_EQ(c.suite, "fuglede");
  EXPECT_EQ(c.group, FiniteAbelianGroup({3, 4}));
  EXPECT_EQ(c.trials, 7u);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.norms, std::vector<std::string>{"lp:p=2"});
  EXPECT_EQ(c.thresholds.tol_sym, 1e-7);
  EXPECT_EQ(c.thresholds.tol_resid, 1e-10);
  EXPECT_EQ(c.out, "r.json");
}

TEST(Config, RejectsBadInput) {
  const char* bad[] = {
      R"({"suite": "fuglede", "group": "4"})",
      R"({"schema": 2, "suite": "fuglede", "group": "4"})",
      R"({"schema": 1, "suite": "fuglede", "group": "4", "seeed": 1})",
      R"({"schema": 1, "suite": "fuglede", "group": "4", "trials": 0})",
      R"({"schema": 1, "suite": "fuglede", "group": "4", "trials": 1.5})",
      R"({"schema": 1, "suite": "other", "group": "4"})",
      R"({"schema": 1, "suite": "fuglede", "group": "4,x"})",
      R"({"schema": 1, "suite": "fuglede", "group": [4]})",
      R"({"schema": 1, "suite": "fuglede", "group": "4", "seed": -1})",
      R"({"schema": 1, "suite": "fuglede", "group": "4", "seed": "0xZZ"})",
      R"({"schema": 1, "suite": "fuglede", "group": "4", "thresholds": {"eps_abs": -1}})",
      R"({"schema": 1, "suite": "fuglede", "group": "4", "thresholds": {"eps_abs": 1e-9, "tol_resid": 1e-10}})",
      R"({"schema": 1, "suite": "fuglede", "group": "4", "thresholds": {"tol": 1}})",
      R"({"schema": 1, "suite": "fuglede", "group": "4", "norms": "lp:p=2"})",
      R"([1, 2])",
  };
  for (const char* text : bad) EXPECT_THROW(config_from_json(json::parse(text)), config_error) << text;
}

TEST(Config, GroupOrderCap) {
  const auto saved = dense_order_cap();
  dense_order_cap() = 16;
  EXPECT_THROW(config_from_json(json::parse(R"({"schema": 1, "suite": "fourier", "group": "5,4"})")), config_error);
  dense_order_cap() = saved;
}

TEST(Norms, DescriptorParsing) {
  FiniteAbelianGroup g({3, 4});
  EXPECT_EQ(parse_norm("lp:p=2", g).describe(), "lp:p=2");
  EXPECT_EQ(parse_norm("lp:p=inf", g).describe(), "lp:p=inf");
  EXPECT_EQ(parse_norm("mixed:split=1|1,p=2,q=4", g).describe(), "mixed:split=1|1,p=2,q=4");
  EXPECT_TRUE(parse_norm("dual:lp:p=3", g).is_kothe_dual());
  const auto w = parse_norm("eg:file=weight_z3x4.json", g, kData);
  EXPECT_TRUE(w.is_eg());
  for (const char* bad : {"lp:p=0.5", "lp:q=2", "lp", "mixed:split=1|2,p=2,q=4", "mixed:split=1|1,p=2", "sobolev:p=2",
                          "eg:file=missing.json", "lp:p=two"}) {
    EXPECT_ANY_THROW(parse_norm(bad, g, kData)) << bad;
  }
}

TEST(Instance, RoundTripAndValidation) {
  const auto inst = instance_from_json(read_json_file(kData / "instance_pass.json"));
  EXPECT_EQ(inst.op.group(), FiniteAbelianGroup({4}));
  const auto again = instance_from_json(json::parse(to_json(inst).dump()));
  EXPECT_EQ(max_abs_diff(again.op, inst.op), 0.0);
  EXPECT_EQ(max_abs_diff(again.phi, inst.phi), 0.0);

  auto j = read_json_file(kData / "instance_pass.json");
  j["extra"] = 1;
  EXPECT_THROW(instance_from_json(j), config_error);
  j = read_json_file(kData / "instance_pass.json");
  j["phi"] = json::array({1.0, 0.0});
  EXPECT_THROW(instance_from_json(j), config_error);
  j = read_json_file(kData / "instance_pass.json");
  j["operator"]["basis"] = "fourier";
  EXPECT_THROW(instance_from_json(j), config_error);
  EXPECT_THROW(read_json_file(kData / "missing.json"), config_error);
}

TEST(Commutant, VerdictsOnDataFiles) {
  const auto pass = commutant_verdict(instance_from_json(read_json_file(kData / "instance_pass.json")));
  EXPECT_EQ(pass.at("verdict"), "PASS");
  EXPECT_TRUE(pass.at("intertwines").get<bool>());
  EXPECT_LE(pass.at("residual_conjugate").get<double>(), 1e-10);
  EXPECT_TRUE(pass.at("witness").is_null());

  const auto fail = commutant_verdict(instance_from_json(read_json_file(kData / "instance_fail.json")));
  EXPECT_EQ(fail.at("verdict"), "FAIL");
  EXPECT_EQ(fail.at("lemma_verdict"), "PASS");
  EXPECT_NEAR(fail.at("residual_forward").get<double>(), 0.25, 1e-12);
  EXPECT_EQ(fail.at("witness").at("xi"), 1);
  EXPECT_EQ(fail.at("witness").at("gamma"), 2);

  const auto band = commutant_verdict(instance_from_json(read_json_file(kData / "instance_band.json")));
  EXPECT_EQ(band.at("verdict"), "INDETERMINATE");
  EXPECT_EQ(band.at("band_entries"), 1);
}

TEST(Report, CanonicalJson) {
  SuiteReport r{"demo", "3,4", 0xABCDEFULL, 3, {"lp:p=2"}, {}, nullptr};
  r.add(CheckRecord::bound("b_check", 0.1, 1.0, Relation::at_most, json{{"x", 1}}));
  r.add(CheckRecord::bound("a_check", 0.1 + 0.2, 0.25, Relation::at_least));
  const auto text = canonical_dump(to_json(r));
  EXPECT_NE(text.find("\"seed\": \"0xabcdef\""), std::string::npos);
  EXPECT_NE(text.find("0.30000000000000004"), std::string::npos);
  // Keys sorted; passing checks drop their witness.
  EXPECT_LT(text.find("\"checks\""), text.find("\"group\""));
  EXPECT_EQ(to_json(r).at("checks")[0].at("witness"), nullptr);
  EXPECT_EQ(r.verdict(), Verdict::pass);
  EXPECT_EQ(text, canonical_dump(json::parse(text)));

  r.add(CheckRecord::bound("c_check", 2.0, 1.0, Relation::at_most, json{{"f", 2}}));
  EXPECT_EQ(r.verdict(), Verdict::fail);
  EXPECT_EQ(to_json(r).at("verdict"), "FAIL");
  EXPECT_EQ(to_json(r).at("checks")[2].at("witness").at("f"), 2);
}

TEST(Report, VerdictCombination) {
  EXPECT_EQ(combine(Verdict::pass, Verdict::indeterminate), Verdict::indeterminate);
  EXPECT_EQ(combine(Verdict::indeterminate, Verdict::fail), Verdict::fail);
  EXPECT_EQ(combine(Verdict::pass, Verdict::pass), Verdict::pass);
  SuiteReport r;
  auto& c = r.add(CheckRecord::bound("x", 1.0, 0.0));
  c.verdict = Verdict::indeterminate;
  EXPECT_EQ(r.verdict(), Verdict::indeterminate);
}

TEST(Report, WriteFailureIsIoError) {
  EXPECT_THROW(write_text_file("/nonexistent_dir/out.json", "{}"), io_error);
}

TEST(Suites, AllPassAndAreDeterministic) {
  for (const char* suite : {"fourier", "algebra", "spaces", "fuglede"}) {
    for (const char* group : {"8", "3,4"}) {
      const auto c = make_config(suite, group, 20, 42);
      const auto a = canonical_dump(to_json(run_suite(c)));
      const auto b = canonical_dump(to_json(run_suite(c)));
      EXPECT_EQ(a, b) << suite;
      EXPECT_EQ(json::parse(a).at("verdict"), "PASS") << suite << " " << group << "\n" << a;
    }
  }
}

TEST(Suites, SeedChangesReport) {
  const auto a = canonical_dump(to_json(run_suite(make_config("fourier", "3,4", 5, 1))));
  const auto b = canonical_dump(to_json(run_suite(make_config("fourier", "3,4", 5, 2))));
  EXPECT_NE(a, b);
}

TEST(Suites, FugledeReportsResidualMaxima) {
  const auto r = run_suite(make_config("fuglede", "3,4", 100, 42));
  ASSERT_NE(find_check(r, "transfer_forward_residual_max"), nullptr);
  ASSERT_NE(find_check(r, "transfer_conjugate_residual_max"), nullptr);
  EXPECT_EQ(find_check(r, "lemma_disagreements")->value, 0.0);
  EXPECT_EQ(r.verdict(), Verdict::pass);
}

TEST(Circle, TranslationContinuityTable) {
  const auto rows = translation_continuity_table(256, 2.0);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows.front().k, 128u);
  EXPECT_NEAR(rows.front().value, 1.0, 1e-12);
  EXPECT_EQ(rows.back().k, 1u);
  EXPECT_NEAR(rows.back().value, std::sqrt(2.0 / 256.0), 1e-12);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(rows[i].value, rows[i - 1].value);
  for (const auto& row : translation_continuity_table(64, infinity)) EXPECT_EQ(row.value, 1.0);
  for (const auto& row : translation_continuity_table(12, 1.0)) EXPECT_NEAR(row.value, 2.0 * row.k / 12.0, 1e-14);
  EXPECT_THROW(translation_continuity_table(6, 2.0), config_error);
  EXPECT_THROW(translation_continuity_table(9, 2.0), config_error);
  EXPECT_THROW(translation_continuity_table(16, 0.5), config_error);
}

TEST(Circle, ExperimentPasses) {
  const auto r = circle_experiment(256, 2.0);
  EXPECT_EQ(r.verdict(), Verdict::pass);
  EXPECT_GE(find_check(r, "eg_reflection_ratio_m64")->value, 1.5);
  EXPECT_GT(find_check(r, "eg_reflection_ratio_min_growth")->value, 0.0);
}
