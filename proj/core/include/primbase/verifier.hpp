#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "primbase/bigint.hpp"
#include "primbase/families.hpp"
#include "primbase/invariants.hpp"

namespace primbase {

enum class Verdict { Pass, Fail, FailExpected, Inconclusive, Exempt, NotApplicable, Skipped };
std::string to_string(Verdict v);

enum class Check { Thm1, Thm2, LowerBound, FormulaCrosscheck, InequalityChains };
std::string to_string(Check c);

enum class ReportFormat { Csv, Json, Table };
std::string to_string(ReportFormat f);
/// Throws Error for anything but csv, json, table.
ReportFormat parse_report_format(const std::string& s);

struct FamilyLine {
  int line = 0;
  std::string text;                    // as written, ranges included
  std::vector<std::string> expansions;  // one spec string per grid point
};

/// A sweep grid file: "key = value" lines, '#' comments. See docs/FORMATS.md.
struct SweepConfig {
  std::vector<FamilyLine> families;
  std::size_t degree_cap = 5000;
  std::size_t exact_base_degree_cap = 5000;
  BigInt order_cap = BigInt(1'000'000'000);
  std::uint64_t base_budget = 100'000'000;
  std::set<Check> checks{Check::Thm1, Check::Thm2, Check::LowerBound, Check::FormulaCrosscheck};
  ReportFormat format = ReportFormat::Csv;
  unsigned threads = 0;
};

/// Throws ConfigError naming the line and field. Every grid point must parse.
SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);

/// Expands "Family key=lo..hi key=a,b,c ..." into its grid points, first key
/// varying slowest. A parenthesized inner spec is copied verbatim. Throws
/// Error on malformed ranges.
std::vector<std::string> expand_family_ranges(const std::string& text);

struct VerificationRecord {
  std::string spec_text;
  std::optional<FamilySpec> spec;
  std::string note;  // skip reason or remarks

  std::size_t n = 0;
  BigInt order;
  bool transitive = false;
  bool primitive = false;

  std::size_t b = 0;
  bool b_exact = false;
  std::size_t b_lower = 0;
  std::size_t b_greedy = 0;

  std::optional<std::size_t> mu;
  bool mu_exact = false;
  std::optional<std::size_t> mu_witness;

  double nlogn = 0;
  double thm1_margin = 0;  // n log n - b mu
  double thm2_bound = 0;   // log n / 2 + 6
  double thm2_margin = 0;  // thm2_bound - b

  Verdict thm1 = Verdict::NotApplicable;
  Verdict thm2 = Verdict::NotApplicable;
  Verdict lower_bound = Verdict::NotApplicable;
  Verdict crosscheck = Verdict::NotApplicable;
  bool expected_exception = false;

  bool skipped() const { return thm1 == Verdict::Skipped; }
  bool unexpected_failure() const;
};

struct ChainResult {
  std::string name;
  std::string claim;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::string first_violation;
  bool holds() const { return violations == 0; }
};

/// Every sign and monotonicity claim the proofs reduce to, on finite samples
/// of their domains (see docs/FORMATS.md for the sample scheme).
std::vector<ChainResult> check_inequality_chains();

struct SweepResult {
  std::vector<VerificationRecord> records;
  std::optional<std::vector<ChainResult>> chains;

  std::size_t checked() const;
  std::size_t skipped() const;
  std::size_t unexpected_failures() const;
  std::size_t expected_failures() const;
  /// "N checked, M unexpected failures", plus skip and chain counts when nonzero.
  std::string summary_line() const;
};

/// Thm2 does not apply: large-base groups, affine groups over GF(2) and
/// GF(3), and the subspace actions excluded from the bound.
bool thm2_exempt(const FamilySpec& spec);
bool is_large_base(const FamilySpec& spec);

/// Invariants and verdicts for one built action.
VerificationRecord verify_action(const ConstructedAction& act, const SweepConfig& cfg,
                                 unsigned mu_threads = 0);
/// Parses, builds and verifies one spec string. Construction problems become
/// a SKIPPED record with the reason in `note`.
VerificationRecord verify_spec(const std::string& spec_text, const SweepConfig& cfg,
                               unsigned mu_threads = 0);

/// One record per grid point, in grid order. Grid points run on
/// resolve_threads(cfg.threads) workers.
SweepResult run_sweep(const SweepConfig& cfg);

/// Line stating which checks the report covers and which it does not.
std::string scope_statement();

/// Throws Error if the stream fails.
void write_report(std::ostream& out, const SweepResult& result, ReportFormat format);

struct SelftestItem {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// The documented examples: small exact values and closed forms.
std::vector<SelftestItem> run_selftest();

}  // namespace primbase
