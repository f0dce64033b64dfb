#include "primbase/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "primbase/error.hpp"
#include "primbase/formulas.hpp"

namespace primbase {

namespace {

constexpr double kSlack = 1e-9;
const BigInt kM24Order = BigInt(244823040);

// A bad field value; parse_sweep_config adds the line number.
class FieldError : public Error {
 public:
  using Error::Error;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

template <class T>
T parse_uint(const std::string& s, const std::string& what) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw FieldError(what + ": expected a nonnegative integer, got '" + s + "'");
  }
  return v;
}

Check parse_check(const std::string& s) {
  if (s == "thm1") return Check::Thm1;
  if (s == "thm2") return Check::Thm2;
  if (s == "lower_bound") return Check::LowerBound;
  if (s == "formula_crosscheck") return Check::FormulaCrosscheck;
  if (s == "inequality_chains") return Check::InequalityChains;
  throw FieldError("checks: unknown check '" + s + "'");
}

// Top-level tokens of a family line; "(...)" groups stay whole.
std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') {
      if (--depth < 0) throw FieldError("unbalanced ')' in '" + text + "'");
    }
    if ((c == ' ' || c == '\t') && depth == 0) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw FieldError("unbalanced '(' in '" + text + "'");
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<std::string> expand_value(const std::string& key, const std::string& value) {
  if (!value.empty() && value.front() == '(') return {value};
  std::vector<std::string> out;
  for (const auto& item : split(value, ',')) {
    if (item.empty()) throw FieldError(key + ": empty value in '" + value + "'");
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(item);
      continue;
    }
    const int lo = parse_uint<int>(item.substr(0, dots), key);
    const int hi = parse_uint<int>(item.substr(dots + 2), key);
    if (lo > hi) throw FieldError(key + ": empty range '" + item + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(std::to_string(v));
  }
  return out;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

double round4(double x) { return std::round(x * 1e4) / 1e4; }

std::optional<BigInt> expected_order(const FamilySpec& s) {
  using formulas::factorial;
  switch (s.family) {
    case Family::SymSubsets:
      return factorial(s.need('m'));
    case Family::AltSubsets:
      return factorial(s.need('m')) / 2;
    case Family::SymPartitions:
      return factorial(s.need('a') * s.need('b'));
    case Family::Affine: {
      const int d = s.need('d'), q = s.need('q');
      const auto g = s.group == AffinePart::Full ? formulas::Classical::GL : formulas::Classical::SL;
      return formulas::ipow(q, d) * formulas::classical_order(g, d, q);
    }
    case Family::SpOnGOCosets:
      return formulas::classical_order(formulas::Classical::Sp, s.need('d'), 2);
    case Family::WreathProduct: {
      const auto inner = expected_order(*s.inner);
      if (!inner) return std::nullopt;
      const int r = s.need('r');
      return boost::multiprecision::pow(*inner, static_cast<unsigned>(r)) * factorial(r);
    }
    case Family::Mathieu24:
      return kM24Order;
    default:
      if (is_constructible(s.family)) return classical_image_order(s);
      return std::nullopt;
  }
}

bool in(int x, std::initializer_list<int> xs) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

void add_note(std::string& note, const std::string& s) {
  if (!note.empty()) note += "; ";
  note += s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class T>
std::string opt_str(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::FailExpected: return "FAIL_EXPECTED";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::Exempt: return "EXEMPT";
    case Verdict::NotApplicable: return "N/A";
    case Verdict::Skipped: return "SKIPPED";
  }
  return "?";
}

std::string to_string(Check c) {
  switch (c) {
    case Check::Thm1: return "thm1";
    case Check::Thm2: return "thm2";
    case Check::LowerBound: return "lower_bound";
    case Check::FormulaCrosscheck: return "formula_crosscheck";
    case Check::InequalityChains: return "inequality_chains";
  }
  return "?";
}

std::string to_string(ReportFormat f) {
  switch (f) {
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Json: return "json";
    case ReportFormat::Table: return "table";
  }
  return "?";
}

ReportFormat parse_report_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  if (s == "table") return ReportFormat::Table;
  throw FieldError("format: expected csv, json or table, got '" + s + "'");
}

std::vector<std::string> expand_family_ranges(const std::string& text) {
  const auto tokens = tokenize(text);
  if (tokens.empty()) throw FieldError("family: empty value");
  if (!parse_family(tokens[0])) throw FieldError("family: unknown family '" + tokens[0] + "'");
  std::vector<std::string> out{tokens[0]};
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos || eq == 0) {
      throw FieldError("family: expected key=value, got '" + tokens[i] + "'");
    }
    const std::string key = tokens[i].substr(0, eq);
    const auto values = expand_value(key, tokens[i].substr(eq + 1));
    std::vector<std::string> next;
    for (const auto& prefix : out) {
      for (const auto& v : values) next.push_back(prefix + " " + key + "=" + v);
    }
    out = std::move(next);
  }
  return out;
}

SweepConfig parse_sweep_config(const std::string& text) {
  SweepConfig cfg;
  bool checks_set = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    try {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw FieldError("expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "family") {
        auto points = expand_family_ranges(value);
        for (const auto& pt : points) {
          try {
            parse_family_spec(pt);
          } catch (const FieldError&) {
            throw;
          } catch (const Error& e) {
            throw FieldError("family: " + std::string(e.what()));
          }
        }
        cfg.families.push_back({lineno, value, std::move(points)});
      } else if (key == "degree_cap") {
        cfg.degree_cap = parse_uint<std::size_t>(value, key);
      } else if (key == "exact_base_degree_cap") {
        cfg.exact_base_degree_cap = parse_uint<std::size_t>(value, key);
      } else if (key == "order_cap") {
        cfg.order_cap = BigInt(parse_uint<unsigned long long>(value, key));
      } else if (key == "base_budget") {
        cfg.base_budget = parse_uint<std::uint64_t>(value, key);
      } else if (key == "threads") {
        cfg.threads = parse_uint<unsigned>(value, key);
      } else if (key == "format") {
        cfg.format = parse_report_format(value);
      } else if (key == "checks") {
        if (!checks_set) cfg.checks.clear();
        checks_set = true;
        for (const auto& c : split(value, ',')) cfg.checks.insert(parse_check(c));
      } else {
        throw FieldError("unknown key '" + key + "'");
      }
    } catch (const FieldError& e) {
      throw ConfigError(static_cast<std::size_t>(lineno), e.what());
    }
  }
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep_config(ss.str());
}

bool VerificationRecord::unexpected_failure() const {
  return thm1 == Verdict::Fail || thm2 == Verdict::Fail || lower_bound == Verdict::Fail ||
         crosscheck == Verdict::Fail;
}

bool is_large_base(const FamilySpec& s) {
  switch (s.family) {
    case Family::SymSubsets:
    case Family::AltSubsets:
      return true;
    case Family::WreathProduct:
      return s.inner && is_large_base(*s.inner);
    default:
      return false;
  }
}

bool thm2_exempt(const FamilySpec& s) {
  if (is_large_base(s)) return true;
  const auto d = s.d.value_or(0), q = s.q.value_or(0);
  switch (s.family) {
    case Family::Affine:
      return in(q, {2, 3});
    case Family::LinearOnPk:
      return s.k == 1 && d >= 3 && in(q, {2, 3});
    case Family::SpOnSk:
      return s.k == 1 && d >= 6 && in(q, {2, 3});
    case Family::SpOnGOCosets:
      return d >= 6;
    case Family::GOOnS1:
    case Family::GOOnN1:
    case Family::OmegaOnS1:
    case Family::OmegaOnN1:
      // odd d: N_1 is the action on the nondegenerate hyperplanes N_{d-1}
      if (d % 2 == 0) return d >= 8 && in(q, {2, 3});
      return d >= 7 && q == 3;
    default:
      return false;
  }
}

VerificationRecord verify_action(const ConstructedAction& act, const SweepConfig& cfg,
                                 unsigned mu_threads) {
  VerificationRecord r;
  r.spec = act.spec;
  r.spec_text = act.spec.to_string();
  r.expected_exception = act.spec.family == Family::Mathieu24;

  InvariantOptions io;
  io.base.node_budget = cfg.base_budget;
  io.mu.order_cap = cfg.order_cap;
  io.mu.threads = mu_threads;
  io.exact_base_degree_cap = cfg.exact_base_degree_cap;
  const auto inv = compute_invariants(act, io);

  r.n = inv.n;
  r.order = inv.order;
  r.transitive = inv.transitive;
  r.primitive = inv.transitive && r.n > 1 && is_primitive(act.group);
  r.b = inv.b();
  r.b_exact = inv.b_is_exact();
  r.b_lower = inv.b_lower;
  r.b_greedy = inv.b_greedy.size;
  r.mu = inv.mu();
  r.mu_exact = inv.mu_is_exact();
  if (inv.mu_witness) r.mu_witness = inv.mu_witness->support;
  if (inv.b_exact && !inv.b_exact->exact) {
    add_note(r.note, "b in [" + std::to_string(inv.b_exact->lower) + "," + std::to_string(r.b) + "]");
  } else if (!inv.b_exact) {
    add_note(r.note, "b greedy only");
  }
  if (!r.mu_exact && r.mu) add_note(r.note, "mu witness only");
  if (!r.mu) add_note(r.note, "mu unknown");
  if (!r.primitive) add_note(r.note, "not primitive");

  const BigInt nn(r.n);
  r.nlogn = formulas::n_log_n(nn);
  r.thm2_bound = formulas::thm2(nn);
  r.thm2_margin = r.thm2_bound - static_cast<double>(r.b);

  // thm1: b mu <= n log n
  if (!cfg.checks.count(Check::Thm1) || !r.primitive) {
    r.thm1 = Verdict::NotApplicable;
  } else if (!r.mu) {
    r.thm1 = Verdict::Inconclusive;
  } else {
    const std::size_t bmu = r.b * *r.mu;
    r.thm1_margin = r.nlogn - static_cast<double>(bmu);
    bool ok = static_cast<double>(bmu) <= r.nlogn + kSlack;
    if (!ok) ok = formulas::HighFloat(bmu) <= formulas::n_log_n_hp(nn);
    if (ok) {
      r.thm1 = Verdict::Pass;
    } else if (r.b_exact && r.mu_exact) {
      r.thm1 = r.expected_exception ? Verdict::FailExpected : Verdict::Fail;
    } else {
      r.thm1 = Verdict::Inconclusive;
    }
  }
  if (r.mu) r.thm1_margin = r.nlogn - static_cast<double>(r.b * *r.mu);

  // thm2: b <= log n / 2 + 6, i.e. b <= 6 or n >= 2^(2b - 12)
  auto thm2_holds = [&](std::size_t b) {
    return b <= 6 || nn >= formulas::ipow(2, static_cast<int>(2 * b - 12));
  };
  if (!cfg.checks.count(Check::Thm2) || !r.primitive) {
    r.thm2 = Verdict::NotApplicable;
  } else if (thm2_exempt(act.spec)) {
    r.thm2 = Verdict::Exempt;
  } else if (thm2_holds(r.b)) {
    r.thm2 = Verdict::Pass;
  } else if (r.b_exact || !thm2_holds(inv.b_exact ? inv.b_exact->lower : r.b_lower)) {
    r.thm2 = Verdict::Fail;
  } else {
    r.thm2 = Verdict::Inconclusive;
  }

  // elementary bounds: b_lower <= b <= greedy, and n <= b mu when transitive
  if (cfg.checks.count(Check::LowerBound)) {
    bool ran = false, ok = true;
    if (r.b_exact) {
      ran = true;
      ok = ok && r.b_lower <= r.b && r.b <= r.b_greedy;
    }
    if (r.transitive && r.b_exact && r.mu_exact) {
      ran = true;
      ok = ok && r.n <= r.b * *r.mu;
    }
    if (r.mu_exact && r.mu_witness) {
      ran = true;
      ok = ok && *r.mu <= *r.mu_witness;
    }
    r.lower_bound = !ran ? Verdict::NotApplicable : ok ? Verdict::Pass : Verdict::Fail;
  }

  if (cfg.checks.count(Check::FormulaCrosscheck)) {
    bool ok = formulas::degree(act.spec) == nn;
    if (const auto o = expected_order(act.spec)) ok = ok && *o == r.order;
    r.crosscheck = ok ? Verdict::Pass : Verdict::Fail;
  }
  return r;
}

VerificationRecord verify_spec(const std::string& spec_text, const SweepConfig& cfg,
                               unsigned mu_threads) {
  VerificationRecord skipped;
  skipped.spec_text = spec_text;
  skipped.thm1 = skipped.thm2 = skipped.lower_bound = skipped.crosscheck = Verdict::Skipped;
  try {
    const FamilySpec spec = parse_family_spec(spec_text);
    skipped.spec = spec;
    skipped.spec_text = spec.to_string();
    BuildOptions bo;
    bo.degree_cap = cfg.degree_cap;
    const auto act = build(spec, bo);
    return verify_action(act, cfg, mu_threads);
  } catch (const CapExceeded& e) {
    skipped.note = std::string("cap exceeded: ") + e.what();
  } catch (const ConstructionError& e) {
    skipped.note = std::string("not constructed: ") + e.what();
  } catch (const Error& e) {
    skipped.note = std::string("bad spec: ") + e.what();
  }
  return skipped;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  std::vector<std::string> points;
  for (const auto& f : cfg.families) points.insert(points.end(), f.expansions.begin(), f.expansions.end());

  SweepResult res;
  res.records.resize(points.size());
  const unsigned total = resolve_threads(cfg.threads);
  const unsigned workers = std::max(1u, std::min<unsigned>(total, static_cast<unsigned>(points.size())));
  const unsigned inner = workers > 1 ? 1 : total;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
      res.records[i] = verify_spec(points[i], cfg, inner);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (cfg.checks.count(Check::InequalityChains)) res.chains = check_inequality_chains();
  return res;
}

std::size_t SweepResult::checked() const { return records.size() - skipped(); }

std::size_t SweepResult::skipped() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                [](const auto& r) { return r.skipped(); }));
}

std::size_t SweepResult::unexpected_failures() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                [](const auto& r) { return r.unexpected_failure(); }));
}

std::size_t SweepResult::expected_failures() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) {
    return r.thm1 == Verdict::FailExpected;
  }));
}

std::string SweepResult::summary_line() const {
  std::string s = std::to_string(checked()) + " checked, " + std::to_string(unexpected_failures()) +
                  " unexpected failures";
  if (const auto e = expected_failures()) s += ", " + std::to_string(e) + " expected";
  if (const auto k = skipped()) s += ", " + std::to_string(k) + " skipped";
  if (chains) {
    const auto bad = std::count_if(chains->begin(), chains->end(), [](const auto& c) { return !c.holds(); });
    s += ", " + std::to_string(bad) + " chain violations";
  }
  return s;
}

std::string scope_statement() {
  return "scope: constructible families listed below only; not a census of all primitive groups of "
         "degree <= 4095; thm2 is not checked on large-base, affine q<=3 or excluded subspace actions";
}

void write_report(std::ostream& out, const SweepResult& res, ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: {
      out << "spec,family,n,order,primitive,b,b_exact,b_lower,b_greedy,mu,mu_exact,mu_witness,"
             "nlogn,b_mu,thm1_margin,thm2_bound,thm2_margin,thm1,thm2,lower_bound,formula_crosscheck,"
             "expected_exception,note\n";
      for (const auto& r : res.records) {
        const bool sk = r.skipped();
        const std::string family = r.spec ? to_string(r.spec->family) : "";
        out << csv_field(r.spec_text) << ',' << family << ',';
        if (sk) {
          out << ",,,,,,,,,,,,,,,";
        } else {
          out << r.n << ',' << r.order.str() << ',' << (r.primitive ? "yes" : "no") << ',' << r.b << ','
              << (r.b_exact ? "yes" : "no") << ',' << r.b_lower << ',' << r.b_greedy << ','
              << opt_str(r.mu) << ',' << (r.mu_exact ? "yes" : "no") << ',' << opt_str(r.mu_witness) << ','
              << fmt_double(r.nlogn) << ',' << (r.mu ? std::to_string(r.b * *r.mu) : "") << ','
              << (r.mu ? fmt_double(r.thm1_margin) : "") << ',' << fmt_double(r.thm2_bound) << ','
              << fmt_double(r.thm2_margin) << ',';
        }
        out << to_string(r.thm1) << ',' << to_string(r.thm2) << ',' << to_string(r.lower_bound) << ','
            << to_string(r.crosscheck) << ',' << (r.expected_exception ? "true" : "false") << ','
            << csv_field(r.note) << '\n';
      }
      break;
    }
    case ReportFormat::Json: {
      using nlohmann::ordered_json;
      ordered_json j;
      j["scope"] = scope_statement();
      j["records"] = ordered_json::array();
      for (const auto& r : res.records) {
        ordered_json o;
        o["spec"] = r.spec_text;
        o["family"] = r.spec ? to_string(r.spec->family) : "";
        if (!r.skipped()) {
          o["n"] = r.n;
          o["order"] = r.order.str();
          o["primitive"] = r.primitive;
          o["b"] = r.b;
          o["b_exact"] = r.b_exact;
          o["b_lower"] = r.b_lower;
          o["b_greedy"] = r.b_greedy;
          o["mu"] = r.mu ? ordered_json(*r.mu) : ordered_json(nullptr);
          o["mu_exact"] = r.mu_exact;
          o["mu_witness"] = r.mu_witness ? ordered_json(*r.mu_witness) : ordered_json(nullptr);
          o["nlogn"] = round4(r.nlogn);
          o["thm1_margin"] = r.mu ? ordered_json(round4(r.thm1_margin)) : ordered_json(nullptr);
          o["thm2_bound"] = round4(r.thm2_bound);
          o["thm2_margin"] = round4(r.thm2_margin);
        }
        o["thm1"] = to_string(r.thm1);
        o["thm2"] = to_string(r.thm2);
        o["lower_bound"] = to_string(r.lower_bound);
        o["formula_crosscheck"] = to_string(r.crosscheck);
        o["expected_exception"] = r.expected_exception;
        o["note"] = r.note;
        j["records"].push_back(std::move(o));
      }
      if (res.chains) {
        j["chains"] = ordered_json::array();
        for (const auto& c : *res.chains) {
          j["chains"].push_back({{"name", c.name},
                                 {"claim", c.claim},
                                 {"samples", c.samples},
                                 {"violations", c.violations},
                                 {"first_violation", c.first_violation}});
        }
      }
      j["summary"] = {{"checked", res.checked()},
                      {"unexpected_failures", res.unexpected_failures()},
                      {"expected_failures", res.expected_failures()},
                      {"skipped", res.skipped()},
                      {"line", res.summary_line()}};
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::Table: {
      std::size_t w = 4;
      for (const auto& r : res.records) w = std::max(w, r.spec_text.size());
      char buf[1024];
      out << "# " << scope_statement() << '\n';
      if (!res.records.empty() || !res.chains) {
        std::snprintf(buf, sizeof buf, "%-*s %6s %4s %5s %10s %8s %-13s %-12s %-11s %-11s %s\n",
                      static_cast<int>(w), "spec", "n", "b", "mu", "thm1_marg", "thm2_marg", "thm1", "thm2",
                      "lower", "crosscheck", "note");
        out << buf;
        for (const auto& r : res.records) {
          const std::string n = r.skipped() ? "" : std::to_string(r.n);
          const std::string b = r.skipped() ? "" : std::to_string(r.b) + (r.b_exact ? "" : "*");
          const std::string mu = r.mu ? std::to_string(*r.mu) + (r.mu_exact ? "" : "*") : "";
          const std::string m1 = r.mu && !r.skipped() ? fmt_double(r.thm1_margin) : "";
          const std::string m2 = r.skipped() ? "" : fmt_double(r.thm2_margin);
          std::snprintf(buf, sizeof buf, "%-*s %6s %4s %5s %10s %8s %-13s %-12s %-11s %-11s %s\n",
                        static_cast<int>(w), r.spec_text.c_str(), n.c_str(), b.c_str(), mu.c_str(), m1.c_str(),
                        m2.c_str(), to_string(r.thm1).c_str(), to_string(r.thm2).c_str(),
                        to_string(r.lower_bound).c_str(), to_string(r.crosscheck).c_str(), r.note.c_str());
          out << buf;
        }
      }
      if (res.chains) {
        out << "# inequality chains\n";
        for (const auto& c : *res.chains) {
          out << (c.holds() ? "HOLDS    " : "VIOLATED ") << c.name << " (" << c.samples << " samples): "
              << c.claim;
          if (!c.holds()) out << "; " << c.violations << " violations, first " << c.first_violation;
          out << '\n';
        }
      }
      out << res.summary_line() << '\n';
      break;
    }
  }
  if (!out) throw Error("report: write failed");
}

std::vector<ChainResult> check_inequality_chains() {
  using namespace formulas;
  std::vector<ChainResult> out;
  auto record = [](ChainResult& c, bool ok, const std::string& where) {
    ++c.samples;
    if (!ok && c.violations++ == 0) c.first_violation = where;
  };

  {
    ChainResult c{"partition_f", "f(9) <= 0 and f(a) > 0 for 10 <= a <= 2000", 0, 0, {}};
    record(c, chain_f_partition(9) <= 0, "a=9");
    for (int a = 10; a <= 2000; ++a) record(c, chain_f_partition(a) > 0, "a=" + std::to_string(a));
    out.push_back(c);
  }
  {
    ChainResult c{"quadric_min_at_3", "min over 3 <= k < d/2 of -3k^2+2kd-2k is 6d-33, 16 <= d <= 200", 0, 0, {}};
    for (int d = 16; d <= 200; ++d) {
      const auto [k, v] = chain_quadric_min(d);
      record(c, v >= 6LL * d - 33, "d=" + std::to_string(d) + " k=" + std::to_string(k) + " value " +
                                       std::to_string(v));
    }
    out.push_back(c);
  }
  {
    ChainResult c{"quadric_bound", "d/k + 8 <= (-3k^2+2kd-2k)/2 + 6 for 3 <= k < d/2, 16 <= d <= 200", 0, 0, {}};
    for (int d = 16; d <= 200; ++d) {
      for (int k = 3; 2 * k < d; ++k) {
        record(c, static_cast<double>(d) / k + 8 <= chain_quadric(d, k) / 2.0 + 6,
               "d=" + std::to_string(d) + " k=" + std::to_string(k));
      }
    }
    out.push_back(c);
  }
  {
    ChainResult c{"diagonal", "2 log k - (k-1) log^2 60 - 6 log 60 < 0 and decreasing, 3 <= k <= 100", 0, 0, {}};
    for (int k = 3; k <= 100; ++k) {
      record(c, chain_diagonal(k) < 0, "k=" + std::to_string(k));
      if (k < 100) record(c, chain_diagonal(k + 1) < chain_diagonal(k), "k=" + std::to_string(k) + "->" + std::to_string(k + 1));
    }
    out.push_back(c);
  }
  {
    ChainResult c{"product_action", "k - 5 <= (k-2) log n for k = 2..50, n = 5..1000", 0, 0, {}};
    for (int k = 2; k <= 50; ++k) {
      for (int n = 5; n <= 1000; ++n) {
        record(c, chain_product_margin(k, n) >= 0, "k=" + std::to_string(k) + " n=" + std::to_string(n));
      }
    }
    out.push_back(c);
  }
  auto where = [](int m, int r, int k) {
    return "(m,r,k)=(" + std::to_string(m) + "," + std::to_string(r) + "," + std::to_string(k) + ")";
  };
  {
    ChainResult c{"largebase_value", "f(m,r,k) >= 0 for f(20,40,1) and m = 20..29, r = 40..49, k = 1..min(10,m/2)", 0, 0, {}};
    record(c, chain_largebase(20, 40, 1) >= 0, where(20, 40, 1));
    for (int m = 20; m < 30; ++m)
      for (int r = 40; r < 50; ++r)
        for (int k = 1; k <= 10 && 2 * k <= m; ++k) record(c, chain_largebase(m, r, k) >= 0, where(m, r, k));
    out.push_back(c);
  }
  const char* var[3] = {"m", "r", "k"};
  for (int v = 0; v < 3; ++v) {
    ChainResult c{std::string("largebase_increasing_") + var[v],
                  std::string("f(m,r,k) is nondecreasing in ") + var[v] +
                      " on m = 20..29, r = 40..49, k = 1..min(10,m/2)",
                  0, 0, {}};
    for (int m = 20; m < 30; ++m)
      for (int r = 40; r < 50; ++r)
        for (int k = 1; k <= 10 && 2 * k <= m; ++k) {
          const auto d = chain_largebase_diffs(m, r, k);
          if (v == 0) record(c, d.dm >= 0, where(m, r, k));
          if (v == 1) record(c, d.dr >= 0, where(m, r, k));
          if (v == 2 && d.dk) record(c, *d.dk >= 0, where(m, r, k) + " dk=" + fmt_double(*d.dk));
        }
    out.push_back(c);
  }
  return out;
}

std::vector<SelftestItem> run_selftest() {
  std::vector<SelftestItem> items;
  auto run = [&](const std::string& name, auto&& fn) {
    SelftestItem it{name, false, {}};
    try {
      it.ok = fn(it.detail);
    } catch (const std::exception& e) {
      it.detail = e.what();
    }
    items.push_back(std::move(it));
  };
  auto act = [](const char* s) { return build(parse_family_spec(s)); };

  run("S_4 natural: b = 3, mu = 2", [&](std::string& d) {
    const auto a = act("SymSubsets m=4 k=1");
    const auto b = base_size_exact(a.group).size;
    const auto mu = *minimal_degree_exact(a.group).mu;
    d = "b=" + std::to_string(b) + " mu=" + std::to_string(mu);
    return b == 3 && mu == 2 && base_size_greedy(a.group).size == 3;
  });
  run("S_6 on partitions (2,3): b = 4 = bz(2,3)", [&](std::string& d) {
    const auto b = base_size_exact(act("SymPartitions a=2 b=3").group).size;
    d = "b=" + std::to_string(b);
    return b == 4 && formulas::bz(2, 3)->value == 4;
  });
  run("AGL_3(2): mu = 4, b = 4, greedy <= 4", [&](std::string& d) {
    const auto a = affine(3, 2);
    const auto mu = *minimal_degree_exact(a.group).mu;
    const auto b = base_size_exact(a.group).size;
    d = "mu=" + std::to_string(mu) + " b=" + std::to_string(b);
    return mu == 4 && b == 4 && base_size_greedy(a.group).size <= 4 && affine_mu_structure(a).t == 2;
  });
  run("PSL_4(2) on P_1: mu = 8", [&](std::string& d) {
    const auto mu = *minimal_degree_exact(act("LinearOnPk d=4 q=2 k=1").group).mu;
    d = "mu=" + std::to_string(mu);
    return mu == 8;
  });
  run("M24: b = 7, mu = 16, 24 log 24 in (110.0, 110.1)", [&](std::string& d) {
    const auto m = mathieu24();
    const auto b = base_size_exact(m.group).size;
    const auto mu = *minimal_degree_exact(m.group).mu;
    const double nl = formulas::n_log_n(24);
    d = "b=" + std::to_string(b) + " mu=" + std::to_string(mu) + " nlogn=" + fmt_double(nl);
    return b == 7 && mu == 16 && nl > 110.0 && nl < 110.1 && m.group.order() == kM24Order;
  });
  run("A_{7,3}: 3-cycle moves 30 = 3 C(5,2)", [&](std::string& d) {
    const auto w = minimal_degree_witness(act("AltSubsets m=7 k=3"));
    d = "support=" + std::to_string(w.support);
    return w.support == 30;
  });
  run("GO_8^-(2) on S_1: reflection product moves 84, fixes 35", [&](std::string& d) {
    const auto w = minimal_degree_witness(act("GOOnS1 d=8 q=2 sign=-"));
    d = "support=" + std::to_string(w.support);
    return w.support == 84 && w.element.fixed_count() == 35;
  });
  run("(S_5 on pairs) wr S_2: (h,1) moves mu(H) * 10", [&](std::string& d) {
    const auto w = minimal_degree_witness(act("WreathProduct r=2 inner=(SymSubsets m=5 k=2)"));
    d = "support=" + std::to_string(w.support);
    return w.support == 60;
  });
  run("Sp_6(2) on quadratic forms: degrees 36 and 28", [&](std::string& d) {
    const auto p = act("SpOnGOCosets d=6 sign=+").n(), m = act("SpOnGOCosets d=6 sign=-").n();
    d = std::to_string(p) + "/" + std::to_string(m);
    return p == 36 && m == 28;
  });
  run("GO_6^+(2), GO_6^-(2) on S_1: degrees 35 and 27", [&](std::string& d) {
    const auto p = act("GOOnS1 d=6 q=2 sign=+").n(), m = act("GOOnS1 d=6 q=2 sign=-").n();
    d = std::to_string(p) + "/" + std::to_string(m);
    return p == 35 && m == 27;
  });
  run("f(10) > 0 >= f(9)", [&](std::string& d) {
    d = fmt_double(formulas::chain_f_partition(9)) + " / " + fmt_double(formulas::chain_f_partition(10));
    return formulas::chain_f_partition(10) > 0 && formulas::chain_f_partition(9) <= 0;
  });
  run("large-base f(20,40,1) >= 0", [&](std::string& d) {
    d = fmt_double(formulas::chain_largebase(20, 40, 1));
    return formulas::chain_largebase(20, 40, 1) >= 0;
  });
  run("product action: k = 2 holds for n = 5..1000", [&](std::string&) {
    for (int n = 5; n <= 1000; ++n)
      if (formulas::chain_product_margin(2, n) < 0) return false;
    return true;
  });
  run("partitions (2,3): thm2 margin 3.95", [&](std::string& d) {
    SweepConfig cfg;
    const auto r = verify_spec("SymPartitions a=2 b=3", cfg, 1);
    d = fmt_double(r.thm2_margin);
    return r.b == 4 && r.thm2 == Verdict::Pass && std::abs(r.thm2_margin - 3.9534) < 1e-3;
  });
  run("M24 record fails thm1 as expected", [&](std::string& d) {
    SweepConfig cfg;
    const auto r = verify_spec("Mathieu24", cfg, 1);
    d = to_string(r.thm1) + " b*mu=" + std::to_string(r.b * r.mu.value_or(0));
    return r.thm1 == Verdict::FailExpected && r.expected_exception && !r.unexpected_failure();
  });
  run("AGL_d(2), d = 1..4: thm1 passes", [&](std::string& d) {
    auto cfg = parse_sweep_config("family = Affine d=1..4 q=2\n");
    const auto res = run_sweep(cfg);
    d = res.summary_line();
    return res.records.size() == 4 &&
           std::all_of(res.records.begin(), res.records.end(), [](const auto& r) { return r.thm1 == Verdict::Pass; });
  });
  run("empty record list gives a header-only CSV", [&](std::string& d) {
    std::ostringstream s;
    write_report(s, SweepResult{}, ReportFormat::Csv);
    const std::string text = s.str();
    const auto lines = std::count(text.begin(), text.end(), '\n');
    d = std::to_string(lines) + " lines";
    return lines == 1;
  });
  run("three-record sweep summary", [&](std::string& d) {
    auto cfg = parse_sweep_config("family = SymSubsets m=5..7 k=2\n");
    const auto res = run_sweep(cfg);
    d = res.summary_line();
    return res.records.size() == 3 && d == "3 checked, 0 unexpected failures";
  });
  return items;
}

}  // namespace primbase
