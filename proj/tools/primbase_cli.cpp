#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "primbase/error.hpp"
#include "primbase/verifier.hpp"

using namespace primbase;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

// PRIMBASE_THREADS wins over the grid's threads key.
void apply_thread_override(SweepConfig& cfg) {
  if (std::getenv("PRIMBASE_THREADS")) cfg.threads = 0;
}

int emit(const SweepResult& res, ReportFormat format, const std::string& out_path) {
  if (out_path.empty()) {
    write_report(std::cout, res, format);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot open '" + out_path + "' for writing");
    write_report(out, res, format);
    std::cerr << res.summary_line() << '\n';
  }
  return res.unexpected_failures() > 0 ? kFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Base size and minimal degree of primitive permutation groups"};
  app.require_subcommand(1);

  std::string config_path, out_path, format_name, spec_text;

  auto* sweep = app.add_subcommand("sweep", "Verify every point of a grid file");
  sweep->add_option("config", config_path, "grid file")->required();
  sweep->add_option("--format", format_name, "csv, json or table (overrides the grid)")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  sweep->add_option("--out", out_path, "write the report here instead of stdout");

  auto* family = app.add_subcommand("family", "Build one group and verify it");
  family->add_option("spec", spec_text, "e.g. \"SymPartitions a=2 b=3\"")->required();
  family->add_option("--format", format_name, "csv, json or table")
      ->check(CLI::IsMember({"csv", "json", "table"}));

  app.add_subcommand("chains", "Check the inequality chains");
  app.add_subcommand("selftest", "Run the built-in examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (sweep->parsed()) {
      SweepConfig cfg;
      try {
        cfg = load_sweep_config(config_path);
      } catch (const Error& e) {
        std::cerr << config_path << ": " << e.what() << '\n';
        return kUsage;
      }
      apply_thread_override(cfg);
      const auto format = format_name.empty() ? cfg.format : parse_report_format(format_name);
      const auto res = run_sweep(cfg);
      int rc = emit(res, format, out_path);
      if (res.chains) {
        for (const auto& c : *res.chains)
          if (!c.holds()) rc = kFailure;
      }
      return rc;
    }

    if (family->parsed()) {
      SweepConfig cfg;
      apply_thread_override(cfg);
      FamilySpec spec;
      try {
        spec = parse_family_spec(spec_text);
      } catch (const Error& e) {
        std::cerr << "bad spec: " << e.what() << '\n';
        return kUsage;
      }
      SweepResult res;
      res.records.push_back(verify_spec(spec.to_string(), cfg));
      const auto format = format_name.empty() ? ReportFormat::Table : parse_report_format(format_name);
      return emit(res, format, "");
    }

    if (app.got_subcommand("chains")) {
      SweepResult res;
      res.chains = check_inequality_chains();
      write_report(std::cout, res, ReportFormat::Table);
      for (const auto& c : *res.chains)
        if (!c.holds()) return kFailure;
      return kOk;
    }

    if (app.got_subcommand("selftest")) {
      std::size_t bad = 0;
      const auto items = run_selftest();
      for (const auto& it : items) {
        std::cout << (it.ok ? "ok   " : "FAIL ") << it.name;
        if (!it.detail.empty()) std::cout << "  [" << it.detail << "]";
        std::cout << '\n';
        bad += !it.ok;
      }
      std::cout << items.size() - bad << "/" << items.size() << " passed\n";
      return bad ? kFailure : kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
