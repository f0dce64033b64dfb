#include <cmath>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "primbase/error.hpp"
#include "primbase/formulas.hpp"
#include "primbase/verifier.hpp"

using namespace primbase;

namespace {

const ChainResult& chain(const std::vector<ChainResult>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return c;
  FAIL("no chain named " << name);
  return cs.front();
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("range expansion") {
  const auto v = expand_family_ranges("SymSubsets m=5..6 k=1,3");
  REQUIRE(v.size() == 4);
  CHECK(v[0] == "SymSubsets m=5 k=1");
  CHECK(v[1] == "SymSubsets m=5 k=3");
  CHECK(v[3] == "SymSubsets m=6 k=3");

  const auto w = expand_family_ranges("WreathProduct r=2..3 inner=(SymSubsets m=5 k=2)");
  REQUIRE(w.size() == 2);
  CHECK(w[1] == "WreathProduct r=3 inner=(SymSubsets m=5 k=2)");

  CHECK_THROWS_AS(expand_family_ranges("Nope m=1"), Error);
  CHECK_THROWS_AS(expand_family_ranges("SymSubsets m=6..5"), Error);
  CHECK_THROWS_AS(expand_family_ranges("SymSubsets m"), Error);
  CHECK_THROWS_AS(expand_family_ranges("WreathProduct inner=(SymSubsets m=5"), Error);
}

TEST_CASE("config parsing") {
  const auto cfg = parse_sweep_config(
      "# grid\n"
      "degree_cap = 300\n"
      "\n"
      "family = Affine d=1..2 q=2   # trailing comment\n"
      "checks = thm1, thm2\n"
      "format = json\n"
      "threads = 2\n"
      "order_cap = 5000\n");
  CHECK(cfg.degree_cap == 300);
  REQUIRE(cfg.families.size() == 1);
  CHECK(cfg.families[0].line == 4);
  CHECK(cfg.families[0].expansions.size() == 2);
  CHECK(cfg.checks == std::set<Check>{Check::Thm1, Check::Thm2});
  CHECK(cfg.format == ReportFormat::Json);
  CHECK(cfg.threads == 2);
  CHECK(cfg.order_cap == 5000);

  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_sweep_config(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("degree_cap = 10\ndegree_cap = x\n") == 2);
  CHECK(line_of("\n\nwhatever = 1\n") == 3);
  CHECK(line_of("family = SymSubsets m=5 k=2\nfamily = SymSubsets m=5 zz=2\n") == 2);
  CHECK(line_of("checks = thm1,thm9\n") == 1);
  CHECK(line_of("format = xml\n") == 1);
  CHECK(line_of("no equals sign\n") == 1);
  CHECK_THROWS_AS(load_sweep_config("/nonexistent/grid"), Error);
}

TEST_CASE("M24 is the expected exception") {
  const auto r = verify_spec("Mathieu24", SweepConfig{}, 1);
  CHECK(r.n == 24);
  CHECK(r.b == 7);
  CHECK(r.mu == 16u);
  CHECK(r.b_exact);
  CHECK(r.mu_exact);
  CHECK(r.thm1 == Verdict::FailExpected);
  CHECK(r.thm1_margin == doctest::Approx(24 * std::log2(24.0) - 112).epsilon(1e-9));
  CHECK(r.thm1_margin == doctest::Approx(-1.9609).epsilon(1e-4));
  CHECK(r.expected_exception);
  CHECK_FALSE(r.unexpected_failure());
  CHECK(r.crosscheck == Verdict::Pass);
  CHECK(r.lower_bound == Verdict::Pass);
}

TEST_CASE("partitions of 6 points") {
  const auto r = verify_spec("SymPartitions a=2 b=3", SweepConfig{}, 1);
  CHECK(r.n == 15);
  CHECK(r.b == 4);
  CHECK(r.thm2 == Verdict::Pass);
  CHECK(r.thm2_margin == doctest::Approx(std::log2(15.0) / 2 + 2).epsilon(1e-9));
  CHECK(r.thm1 == Verdict::Pass);
}

TEST_CASE("AGL_d(2) passes thm1 and is exempt from thm2") {
  const auto res = run_sweep(parse_sweep_config("family = Affine d=1..4 q=2\nthreads = 1\n"));
  REQUIRE(res.records.size() == 4);
  for (const auto& r : res.records) {
    CAPTURE(r.spec_text);
    CHECK(r.thm1 == Verdict::Pass);
    CHECK(r.thm2 == Verdict::Exempt);
    CHECK(r.crosscheck == Verdict::Pass);
  }
  CHECK(res.unexpected_failures() == 0);
}

TEST_CASE("exemptions") {
  CHECK(thm2_exempt(parse_family_spec("SymSubsets m=8 k=2")));
  CHECK(thm2_exempt(parse_family_spec("WreathProduct r=2 inner=(AltSubsets m=6 k=2)")));
  CHECK_FALSE(thm2_exempt(parse_family_spec("WreathProduct r=2 inner=(SymPartitions a=2 b=3)")));
  CHECK(thm2_exempt(parse_family_spec("LinearOnPk d=3 q=2 k=1")));
  CHECK_FALSE(thm2_exempt(parse_family_spec("LinearOnPk d=2 q=2 k=1")));
  CHECK_FALSE(thm2_exempt(parse_family_spec("LinearOnPk d=3 q=4 k=1")));
  CHECK(thm2_exempt(parse_family_spec("SpOnGOCosets d=6 sign=+")));
  CHECK_FALSE(thm2_exempt(parse_family_spec("SpOnGOCosets d=4 sign=+")));
  CHECK(thm2_exempt(parse_family_spec("Affine d=3 q=3")));
  CHECK_FALSE(thm2_exempt(parse_family_spec("Affine d=2 q=5")));
  CHECK(thm2_exempt(parse_family_spec("GOOnS1 d=8 q=2 sign=-")));
  CHECK_FALSE(thm2_exempt(parse_family_spec("GOOnS1 d=6 q=2 sign=-")));
  CHECK(is_large_base(parse_family_spec("AltSubsets m=7 k=3")));
  CHECK_FALSE(is_large_base(parse_family_spec("Mathieu24")));
}

TEST_CASE("skipped points") {
  SweepConfig cfg;
  cfg.degree_cap = 10;
  const auto r = verify_spec("SymSubsets m=8 k=2", cfg, 1);
  CHECK(r.skipped());
  CHECK(r.note.find("cap") != std::string::npos);
  CHECK_FALSE(r.unexpected_failure());
  const auto bad = verify_spec("SymSubsets m=8", SweepConfig{}, 1);
  CHECK(bad.skipped());
}

TEST_CASE("reports") {
  std::ostringstream empty;
  write_report(empty, SweepResult{}, ReportFormat::Csv);
  CHECK(count_lines(empty.str()) == 1);
  CHECK(empty.str().rfind("spec,family,n,order,", 0) == 0);

  const auto res = run_sweep(parse_sweep_config("family = SymSubsets m=5..7 k=2\n"));
  CHECK(res.summary_line() == "3 checked, 0 unexpected failures");

  std::ostringstream csv;
  write_report(csv, res, ReportFormat::Csv);
  CHECK(count_lines(csv.str()) == 4);
  CHECK(csv.str().find("SymSubsets m=5 k=2,SymSubsets,10,120,yes,") != std::string::npos);

  std::ostringstream js;
  write_report(js, res, ReportFormat::Json);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["records"].size() == 3);
  CHECK(j["records"][0]["n"] == 10);
  CHECK(j["summary"]["checked"] == 3);
  CHECK(j["scope"].get<std::string>().find("not a census") != std::string::npos);

  std::ostringstream tab;
  write_report(tab, res, ReportFormat::Table);
  CHECK(tab.str().find("3 checked, 0 unexpected failures") != std::string::npos);
}

TEST_CASE("sweep order does not depend on worker count") {
  auto cfg = parse_sweep_config("family = SymPartitions a=2 b=3..4\nfamily = Affine d=2 q=3..5\n");
  cfg.threads = 1;
  std::ostringstream one, three;
  write_report(one, run_sweep(cfg), ReportFormat::Csv);
  cfg.threads = 3;
  write_report(three, run_sweep(cfg), ReportFormat::Csv);
  CHECK(one.str() == three.str());
}

TEST_CASE("inequality chains") {
  const auto cs = check_inequality_chains();
  CHECK(chain(cs, "partition_f").holds());
  CHECK(chain(cs, "quadric_bound").holds());
  CHECK(chain(cs, "diagonal").holds());
  CHECK(chain(cs, "product_action").holds());
  CHECK(chain(cs, "largebase_value").holds());
  CHECK(chain(cs, "largebase_increasing_m").holds());
  CHECK(chain(cs, "largebase_increasing_r").holds());

  // the minimum of -3k^2+2kd-2k moves off k = 3 at d = 17
  const auto& qm = chain(cs, "quadric_min_at_3");
  CHECK_FALSE(qm.holds());
  CHECK(qm.first_violation.rfind("d=17 ", 0) == 0);
  CHECK(formulas::chain_quadric_min(16).second == 6 * 16 - 33);

  const auto& dk = chain(cs, "largebase_increasing_k");
  CHECK_FALSE(dk.holds());
  CHECK(dk.first_violation.rfind("(m,r,k)=(20,40,", 0) == 0);

  SweepConfig cfg;
  cfg.checks.insert(Check::InequalityChains);
  const auto res = run_sweep(cfg);
  REQUIRE(res.chains);
  CHECK(res.summary_line() == "0 checked, 0 unexpected failures, 2 chain violations");
}

TEST_CASE("selftest") {
  for (const auto& it : run_selftest()) {
    CAPTURE(it.name);
    CAPTURE(it.detail);
    CHECK(it.ok);
  }
}
