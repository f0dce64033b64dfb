#include "primbase/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "primbase/error.hpp"

namespace primbase {

PermGroup::PermGroup() : state_(std::make_shared<State>()) {}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), state_(std::make_shared<State>()) {
  std::set<Permutation> seen;
  for (auto& g : generators) {
    if (g.degree() != degree) {
      throw DegreeMismatch("generator of degree " + std::to_string(g.degree()) +
                           " in group of degree " + std::to_string(degree));
    }
    if (g.is_identity() || !seen.insert(g).second) continue;
    generators_.push_back(std::move(g));
  }
}

PermGroup PermGroup::from_chain(StabilizerChain chain) {
  std::vector<Permutation> gens;
  if (!chain.levels().empty()) gens = chain.levels().front().generators;
  PermGroup g(chain.degree(), std::move(gens));
  std::call_once(g.state_->once, [&] {
    g.state_->chain = std::make_unique<StabilizerChain>(std::move(chain));
  });
  return g;
}

const StabilizerChain& PermGroup::chain() const {
  std::call_once(state_->once, [this] {
    state_->chain =
        std::make_unique<StabilizerChain>(StabilizerChain::build(degree_, generators_));
  });
  return *state_->chain;
}

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_) throw DegreeMismatch("contains: degree mismatch");
  return chain().contains(p);
}

StabilizerChain build_chain(const PermGroup& g, std::span<const point_t> initial_base) {
  return StabilizerChain::build(g.degree(), g.generators(), initial_base);
}

BigInt order(const PermGroup& g) { return g.order(); }

bool contains(const PermGroup& g, const Permutation& p) { return g.contains(p); }

std::vector<point_t> orbit(const PermGroup& g, point_t point) {
  if (point >= g.degree()) throw Error("orbit: point out of range");
  std::vector<bool> seen(g.degree(), false);
  std::vector<point_t> out{point};
  seen[point] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& s : g.generators()) {
      const point_t y = s(out[i]);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<point_t>> orbits(const PermGroup& g) {
  std::vector<std::vector<point_t>> out;
  std::vector<bool> seen(g.degree(), false);
  for (point_t p = 0; p < g.degree(); ++p) {
    if (seen[p]) continue;
    auto o = orbit(g, p);
    for (point_t x : o) seen[x] = true;
    out.push_back(std::move(o));
  }
  return out;
}

bool is_transitive(const PermGroup& g) {
  return g.degree() <= 1 || orbit(g, 0).size() == g.degree();
}

PermGroup pointwise_stabilizer(const PermGroup& g, std::span<const point_t> points) {
  for (point_t p : points) {
    if (p >= g.degree()) throw Error("pointwise_stabilizer: point out of range");
  }
  auto chain = build_chain(g, points);
  return PermGroup::from_chain(chain.subchain(points.size()));
}

PermGroup derived_subgroup(const PermGroup& g) {
  const auto& gens = g.generators();
  StabilizerChain n(g.degree());
  std::deque<Permutation> queue;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) queue.push_back(commutator(gens[i], gens[j]));
  }
  std::vector<Permutation> added;
  while (!queue.empty()) {
    Permutation x = std::move(queue.front());
    queue.pop_front();
    if (x.is_identity() || !n.extend(x)) continue;
    for (const auto& s : gens) queue.push_back(conjugate(x, s));
    added.push_back(std::move(x));
  }
  PermGroup out(g.degree(), std::move(added));
  (void)out.chain();
  return out;
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  point_t find(point_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(point_t a, point_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
  std::vector<point_t> parent;
};

}  // namespace

std::vector<point_t> minimal_block(const PermGroup& g, point_t beta) {
  if (beta >= g.degree()) throw Error("minimal_block: point out of range");
  UnionFind uf(g.degree());
  std::deque<std::pair<point_t, point_t>> pending;
  if (uf.unite(0, beta)) pending.emplace_back(0, beta);
  while (!pending.empty()) {
    auto [x, y] = pending.front();
    pending.pop_front();
    for (const auto& s : g.generators()) {
      const point_t a = s(x), b = s(y);
      if (uf.unite(a, b)) pending.emplace_back(a, b);
    }
  }
  std::vector<point_t> block;
  const point_t root = uf.find(0);
  for (point_t p = 0; p < g.degree(); ++p) {
    if (uf.find(p) == root) block.push_back(p);
  }
  return block;
}

bool is_primitive(const PermGroup& g) {
  if (!is_transitive(g)) throw Error("is_primitive: group is intransitive");
  if (g.degree() <= 2) return true;
  const point_t zero = 0;
  auto stab = pointwise_stabilizer(g, std::span<const point_t>(&zero, 1));
  for (const auto& o : orbits(stab)) {
    if (o.front() == 0) continue;
    if (minimal_block(g, o.front()).size() != g.degree()) return false;
  }
  return true;
}

}  // namespace primbase
