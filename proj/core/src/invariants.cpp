#include "primbase/invariants.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <thread>

#include "primbase/error.hpp"
#include "primbase/forms.hpp"
#include "primbase/formulas.hpp"

namespace primbase {

namespace {

using gf::Matrix;
using gf::Vec;

const std::vector<Permutation>& top_generators(const StabilizerChain& c) {
  static const std::vector<Permutation> none;
  return c.levels().empty() ? none : c.levels()[0].generators;
}

// Orbits of <gens>, each listed from its smallest point, ordered by that point.
std::vector<std::vector<point_t>> orbits_of(std::size_t n, const std::vector<Permutation>& gens) {
  std::vector<bool> seen(n, false);
  std::vector<std::vector<point_t>> out;
  for (point_t p = 0; p < n; ++p) {
    if (seen[p]) continue;
    std::vector<point_t> orb{p};
    seen[p] = true;
    for (std::size_t i = 0; i < orb.size(); ++i) {
      for (const auto& s : gens) {
        const point_t y = s(orb[i]);
        if (!seen[y]) {
          seen[y] = true;
          orb.push_back(y);
        }
      }
    }
    out.push_back(std::move(orb));
  }
  return out;
}

StabilizerChain stabilize(const StabilizerChain& h, point_t p) {
  const point_t b[1] = {p};
  StabilizerChain c(h.degree(), b);
  for (const auto& s : h.strong_generators()) c.extend(s);
  return c.subchain(1);
}

struct BudgetExhausted {};

struct BaseSearch {
  std::size_t n;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<point_t> prefix;

  bool dfs(const StabilizerChain& h, std::size_t remaining) {
    if (++nodes > budget) throw BudgetExhausted{};
    const BigInt order = h.order();
    if (order == 1) return true;
    if (remaining == 0) return false;
    const auto orbs = orbits_of(n, top_generators(h));
    std::size_t maxorb = 1;
    for (const auto& o : orbs) maxorb = std::max(maxorb, o.size());
    if (formulas::ipow(static_cast<long long>(maxorb), static_cast<int>(remaining)) < order) return false;
    for (const auto& o : orbs) {
      if (o.size() < 2) continue;
      const point_t p = o[0];
      const BigInt child_order = order / o.size();
      if (child_order == 1) {
        prefix.push_back(p);
        return true;
      }
      if (remaining == 1) continue;
      if (formulas::ipow(static_cast<long long>(maxorb), static_cast<int>(remaining - 1)) < child_order) continue;
      prefix.push_back(p);
      if (dfs(stabilize(h, p), remaining - 1)) return true;
      prefix.pop_back();
    }
    return false;
  }
};

// Enumeration state for the transversal product tree from level `start`.
struct MuScan {
  const std::vector<StabilizerChain::Level>* levels;
  std::size_t start;
  std::size_t n;

  struct Best {
    std::size_t fix = 0;
    bool found = false;
    std::vector<std::uint32_t> path;
    std::uint64_t elements = 0;
  };

  // Product u_{L-1} ... u_{start}, with u_{L-1} applied first.
  void run_top(std::uint32_t top, Best& best) const {
    const auto& lv = *levels;
    std::vector<std::vector<point_t>> buf(lv.size());
    std::vector<std::uint32_t> path(lv.size(), 0);
    path[start] = top;
    const auto imgs = lv[start].transversal[top].images();
    buf[start].assign(imgs.begin(), imgs.end());
    walk(start + 1, buf, path, best);
  }

  void walk(std::size_t k, std::vector<std::vector<point_t>>& buf, std::vector<std::uint32_t>& path,
            Best& best) const {
    const auto& lv = *levels;
    const auto& prev = buf[k - 1];
    if (k == lv.size()) {
      // single-level tree: the element is the top representative itself
      consider(prev, path, best);
      return;
    }
    const auto& level = lv[k];
    const bool last = k + 1 == lv.size();
    for (std::uint32_t j = 0; j < level.transversal.size(); ++j) {
      path[k] = j;
      const auto u = level.transversal[j].images();
      if (last) {
        std::size_t fix = 0;
        for (std::size_t i = 0; i < n; ++i) fix += prev[u[i]] == i;
        ++best.elements;
        if (fix < n && (!best.found || fix > best.fix)) {
          best.found = true;
          best.fix = fix;
          best.path.assign(path.begin(), path.end());
        }
      } else {
        auto& cur = buf[k];
        cur.resize(n);
        for (std::size_t i = 0; i < n; ++i) cur[i] = prev[u[i]];
        walk(k + 1, buf, path, best);
      }
    }
  }

  void consider(const std::vector<point_t>& x, const std::vector<std::uint32_t>& path,
                Best& best) const {
    std::size_t fix = 0;
    for (std::size_t i = 0; i < n; ++i) fix += x[i] == i;
    ++best.elements;
    if (fix < n && (!best.found || fix > best.fix)) {
      best.found = true;
      best.fix = fix;
      best.path.assign(path.begin(), path.end());
    }
  }

  Permutation element(const std::vector<std::uint32_t>& path) const {
    Permutation x(n);
    for (std::size_t k = start; k < levels->size(); ++k) {
      x = compose((*levels)[k].transversal[path[k]], x);
    }
    return x;
  }
};

// Point permutation induced on subset or partition labels such as
// "{0,2,5}" or "{0,1|2,3}".
Permutation induce_on_labels(const std::vector<std::string>& labels, const Permutation& s) {
  std::map<std::string, point_t> idx;
  for (std::size_t i = 0; i < labels.size(); ++i) idx.emplace(labels[i], static_cast<point_t>(i));
  std::vector<point_t> img(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string body = labels[i].substr(1, labels[i].size() - 2);
    std::vector<std::vector<point_t>> blocks;
    std::istringstream bs(body);
    std::string block;
    while (std::getline(bs, block, '|')) {
      std::vector<point_t> b;
      std::istringstream es(block);
      std::string tok;
      while (std::getline(es, tok, ',')) b.push_back(s(static_cast<point_t>(std::stoul(tok))));
      std::sort(b.begin(), b.end());
      blocks.push_back(std::move(b));
    }
    std::sort(blocks.begin(), blocks.end());
    std::string out = "{";
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (j) out += '|';
      for (std::size_t t = 0; t < blocks[j].size(); ++t) out += (t ? "," : "") + std::to_string(blocks[j][t]);
    }
    out += "}";
    img[i] = idx.at(out);
  }
  return Permutation(std::move(img));
}

BigInt partition_count(int a, int b) {
  return formulas::factorial(a * b) / (boost::multiprecision::pow(formulas::factorial(a), static_cast<unsigned>(b)) * formulas::factorial(b));
}

// Support of r_{v1} r_{v2} on the quadric. Minus type, S_1: the fixed points
// are the singular points of the hyperbolic <v1,v2>^perp. Plus type, N_1:
// Q restricted to <v1,v2>^perp is (a+b)^2 + Q', so it fixes 2^(d-3) points.
BigInt quadric_witness_support(int d, gf::Sign sign) {
  if (sign == gf::Sign::Minus) return 3 * (formulas::ipow(2, d - 3) - formulas::ipow(2, d / 2 - 2));
  return 3 * formulas::ipow(2, d - 3) - formulas::ipow(2, d / 2 - 1);
}

bool is_quadric_witness_case(const FamilySpec& s) {
  if (!s.d || !s.q || *s.q != 2 || *s.d % 2 != 0 || *s.d < 4) return false;
  switch (s.family) {
    case Family::GOOnS1:
    case Family::OmegaOnS1:
      return s.sign == gf::Sign::Minus;
    case Family::GOOnN1:
    case Family::OmegaOnN1:
      return s.sign == gf::Sign::Plus;
    default:
      return false;
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PRIMBASE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::size_t base_size_lower_bound(const PermGroup& g) {
  const BigInt order = g.order();
  if (order == 1) return 0;
  std::size_t b = 0;
  BigInt p = 1;
  while (p < order) {
    p *= g.degree();
    ++b;
  }
  return b;
}

BaseResult base_size_greedy(const PermGroup& g) {
  BaseResult r;
  StabilizerChain h = g.chain();
  while (h.order() != 1) {
    const auto orbs = orbits_of(g.degree(), top_generators(h));
    const std::vector<point_t>* best = nullptr;
    for (const auto& o : orbs) {
      if (!best || o.size() > best->size()) best = &o;
    }
    r.base.push_back((*best)[0]);
    h = stabilize(h, (*best)[0]);
  }
  r.size = r.base.size();
  r.lower = base_size_lower_bound(g);
  return r;
}

BaseResult base_size_exact(const PermGroup& g, const BaseSearchOptions& opts) {
  BaseResult greedy = base_size_greedy(g);
  const std::size_t lower = std::max<std::size_t>(base_size_lower_bound(g), 1);
  BaseSearch search{g.degree(), opts.node_budget, 0, {}};
  for (std::size_t len = lower; len < greedy.size; ++len) {
    search.prefix.clear();
    try {
      if (search.dfs(g.chain(), len)) {
        BaseResult r;
        r.base = search.prefix;
        r.size = r.base.size();
        r.exact = true;
        r.lower = r.size;
        r.nodes = search.nodes;
        return r;
      }
    } catch (const BudgetExhausted&) {
      greedy.exact = false;
      greedy.lower = len;
      greedy.nodes = search.nodes;
      return greedy;
    }
  }
  greedy.exact = true;
  greedy.lower = greedy.size;
  greedy.nodes = search.nodes;
  return greedy;
}

MinimalDegreeResult minimal_degree_exact(const PermGroup& g, const MinimalDegreeOptions& opts) {
  if (g.is_trivial()) throw Error("minimal degree of the trivial group is undefined");
  MinimalDegreeResult res;
  const auto& chain = g.chain();
  const auto& levels = chain.levels();
  if (chain.order() > opts.order_cap) return res;
  const std::size_t n = g.degree();
  const std::size_t start = is_transitive(g) ? 1 : 0;

  // skip levels with trivial transversal at the top of the range
  std::size_t first = start;
  while (first < levels.size() && levels[first].transversal.size() == 1) ++first;
  if (first == levels.size()) {
    // regular: every nonidentity element is fixed-point free
    const auto& l0 = levels[0];
    res.mu = n;
    res.witness = reduce_to_prime_order(l0.transversal[l0.position[l0.orbit[1]]]);
    res.elements = 1;
    return res;
  }

  MuScan scan{&levels, first, n};
  const std::uint32_t tops = static_cast<std::uint32_t>(levels[first].transversal.size());
  std::vector<MuScan::Best> per_top(tops);
  const unsigned workers = std::min<unsigned>(resolve_threads(opts.threads), tops);
  std::atomic<std::uint32_t> next{0};
  auto work = [&] {
    for (std::uint32_t t; (t = next.fetch_add(1)) < tops;) scan.run_top(t, per_top[t]);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  const MuScan::Best* best = nullptr;
  for (const auto& b : per_top) {
    res.elements += b.elements;
    if (b.found && (!best || b.fix > best->fix)) best = &b;
  }
  if (!best) throw Error("minimal_degree_exact: no nonidentity element found");
  const Permutation x = scan.element(best->path);
  res.witness = reduce_to_prime_order(x);
  res.mu = n - best->fix;
  if (res.witness.support_size() != *res.mu) {
    throw Error("minimal_degree_exact: power reduction changed the support");
  }
  return res;
}

bool has_witness_recipe(const FamilySpec& s) {
  switch (s.family) {
    case Family::SymSubsets:
    case Family::AltSubsets:
    case Family::SymPartitions:
    case Family::Affine:
      return true;
    case Family::LinearOnPk:
    case Family::SpOnSk:
      return s.k && *s.k == 1;
    case Family::WreathProduct:
      return s.inner && has_witness_recipe(*s.inner);
    default:
      return is_quadric_witness_case(s);
  }
}

MinimalDegreeWitness minimal_degree_witness(const ConstructedAction& act) {
  const auto& s = act.spec;
  if (!has_witness_recipe(s)) throw Error(s.to_string() + ": no witness recipe");
  MinimalDegreeWitness w;
  switch (s.family) {
    case Family::SymSubsets: {
      const int m = s.need('m'), k = s.need('k');
      w.element = induce_on_labels(act.labels, Permutation::from_cycles(m, {{0, 1}}));
      w.closed_form = 2 * formulas::binomial(m - 2, k - 1);
      break;
    }
    case Family::AltSubsets: {
      const int m = s.need('m'), k = s.need('k');
      w.element = induce_on_labels(act.labels, Permutation::from_cycles(m, {{0, 1, 2}}));
      w.closed_form = 3 * formulas::binomial(m - 2, k - 1);
      break;
    }
    case Family::SymPartitions: {
      const int a = s.need('a'), b = s.need('b');
      w.element = induce_on_labels(act.labels, Permutation::from_cycles(a * b, {{0, 1}}));
      // partitions with 0 and 1 in one block are fixed
      w.closed_form = partition_count(a, b) - formulas::binomial(a * b - 2, a - 2) * partition_count(a, b - 1);
      break;
    }
    case Family::Affine: {
      const int d = s.need('d'), q = s.need('q');
      const auto& F = gf::field(q);
      if (d >= 2) {
        Matrix t = Matrix::identity(q, d);
        t(0, 1) = 1;
        w.element = gf::matrix_action_on_vectors(t);
        w.closed_form = formulas::ipow(q, d) - formulas::ipow(q, d - 1);
      } else if (q > 2 && s.group == AffinePart::Full) {
        w.element = gf::matrix_action_on_vectors(Matrix::diagonal(q, {F.primitive()}));
        w.closed_form = q - 1;
      } else {
        std::vector<point_t> img(q);
        for (int x = 0; x < q; ++x) img[x] = F.add(static_cast<gf::elem_t>(x), 1);
        w.element = Permutation(std::move(img));
        w.closed_form = q;
      }
      break;
    }
    case Family::LinearOnPk: {
      const int d = s.need('d'), q = s.need('q');
      Matrix t = Matrix::identity(q, d);
      t(0, 1) = 1;
      w.element = gf::matrix_action_on_domain(t, *act.domain);
      w.closed_form = formulas::ipow(q, d - 1);
      break;
    }
    case Family::SpOnSk: {
      // symplectic transvection: fixes the points of e_0^perp
      const int d = s.need('d'), q = s.need('q');
      Vec v(d, 0);
      v[0] = 1;
      w.element = gf::matrix_action_on_domain(gf::transvection(*act.domain->form(), v, 1), *act.domain);
      w.closed_form = formulas::ipow(q, d - 1);
      break;
    }
    case Family::WreathProduct: {
      const auto inner = build(*s.inner);
      const auto h = minimal_degree_witness(inner);
      const std::size_t m = inner.n();
      const std::size_t rest = act.n() / m;
      std::vector<point_t> img(act.n());
      for (std::size_t x = 0; x < act.n(); ++x) {
        img[x] = static_cast<point_t>(h.element(static_cast<point_t>(x / rest)) * rest + x % rest);
      }
      w.element = Permutation(std::move(img));
      w.closed_form = h.closed_form * rest;
      break;
    }
    default: {
      // product of the reflections in two nonsingular vectors; their span is
      // anisotropic (minus type) or, for the N_1 case, hyperbolic
      const int d = s.need('d');
      const auto& form = *act.domain->form();
      Vec v1(d, 0), v2(d, 0);
      if (s.sign == gf::Sign::Minus) {
        v1[0] = 1;
        v2[1] = 1;
      } else {
        v1[0] = v1[1] = 1;
        v2[2] = v2[3] = 1;
      }
      const Matrix g = gf::reflection(form, v1) * gf::reflection(form, v2);
      w.element = gf::matrix_action_on_domain(g, *act.domain);
      w.closed_form = quadric_witness_support(d, s.sign);
    }
  }
  w.support = w.element.support_size();
  if (BigInt(w.support) != w.closed_form) {
    throw ConstructionError(s.to_string() + ": witness moves " + std::to_string(w.support) +
                            " points, closed form gives " + w.closed_form.str());
  }
  if (!act.group.contains(w.element)) {
    throw ConstructionError(s.to_string() + ": witness element is not in the group");
  }
  return w;
}

AffineMuStructure affine_mu_structure(const ConstructedAction& act, const MinimalDegreeOptions& opts) {
  const auto& s = act.spec;
  if (s.family != Family::Affine || s.need('q') != 2 || s.need('d') < 2) {
    throw Error(s.to_string() + ": affine_mu_structure needs an affine group over GF(2) with d >= 2");
  }
  const int d = s.need('d');
  const std::size_t n = act.n();
  std::vector<Permutation> gens;
  for (const auto& m : act.matrices) gens.push_back(gf::matrix_action_on_vectors(m));
  const PermGroup h(n, std::move(gens));
  if (h.is_trivial()) throw Error(s.to_string() + ": trivial linear part");
  const auto mu = minimal_degree_exact(h, opts);
  if (!mu.mu) throw CapExceeded(s.to_string() + ": linear part exceeds the order cap");

  AffineMuStructure r;
  r.element = mu.witness;
  const std::size_t fixed = n - *mu.mu;
  while ((std::size_t{1} << r.t) < fixed) ++r.t;
  if ((std::size_t{1} << r.t) != fixed) throw Error("fixed set of a linear map is not a subspace");
  r.mu_linear = BigInt(n - fixed);

  // basis of the fixed space, smallest indices first
  const auto& F = gf::field(2);
  std::vector<bool> in_span(n, false);
  in_span[0] = true;
  std::vector<std::size_t> span{0};
  auto extend_span = [&](std::size_t idx) {
    const Vec v = gf::vector_from_index(2, d, idx);
    const std::size_t cur = span.size();
    for (std::size_t i = 0; i < cur; ++i) {
      const std::size_t j = gf::vector_index(2, gf::add(F, gf::vector_from_index(2, d, span[i]), v));
      in_span[j] = true;
      span.push_back(j);
    }
    r.base.push_back(static_cast<point_t>(idx));
  };
  for (point_t x = 0; x < n; ++x) {
    if (r.element(x) == x && !in_span[x]) {
      r.fix_basis.push_back(gf::vector_from_index(2, d, x));
      extend_span(x);
    }
  }
  for (point_t x = 0; x < n; ++x) {
    if (r.element(x) != x) {
      r.base.push_back(x);
      break;
    }
  }
  if (static_cast<int>(r.fix_basis.size()) != r.t) throw Error("fixed space basis has the wrong size");
  if (pointwise_stabilizer(h, r.base).order() != 1) {
    throw Error(s.to_string() + ": {v_1..v_{t+1}} is not a base of the linear part");
  }
  return r;
}

std::size_t InvariantReport::b() const { return b_exact ? b_exact->size : b_greedy.size; }

bool InvariantReport::b_is_exact() const { return b_exact && b_exact->exact; }

std::optional<std::size_t> InvariantReport::mu() const {
  if (mu_exact && mu_exact->mu) return mu_exact->mu;
  if (mu_witness) return mu_witness->support;
  return std::nullopt;
}

bool InvariantReport::mu_is_exact() const { return mu_exact && mu_exact->mu.has_value(); }

InvariantReport compute_invariants(const ConstructedAction& act, const InvariantOptions& opts) {
  InvariantReport r;
  r.n = act.n();
  r.order = act.group.order();
  r.transitive = act.n() > 0 && is_transitive(act.group);
  r.b_lower = base_size_lower_bound(act.group);

  auto t0 = std::chrono::steady_clock::now();
  r.b_greedy = base_size_greedy(act.group);
  if (r.n <= opts.exact_base_degree_cap) r.b_exact = base_size_exact(act.group, opts.base);
  r.base_seconds = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  if (!act.group.is_trivial()) {
    r.mu_exact = minimal_degree_exact(act.group, opts.mu);
    if (has_witness_recipe(act.spec)) r.mu_witness = minimal_degree_witness(act);
  }
  r.mu_seconds = seconds_since(t0);
  return r;
}

}  // namespace primbase
