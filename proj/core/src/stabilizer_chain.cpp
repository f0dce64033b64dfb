#include "primbase/stabilizer_chain.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "primbase/error.hpp"

namespace primbase {

StabilizerChain::StabilizerChain(std::size_t degree, std::span<const point_t> initial_base)
    : degree_(degree) {
  for (point_t b : initial_base) {
    if (b >= degree) throw Error("base point out of range");
    push_level(b);
  }
}

StabilizerChain StabilizerChain::build(std::size_t degree,
                                       std::span<const Permutation> generators,
                                       std::span<const point_t> initial_base) {
  StabilizerChain chain(degree, initial_base);
  for (const auto& g : generators) {
    if (g.degree() != degree) throw DegreeMismatch("generator degree differs from group degree");
    chain.extend(g);
  }
  chain.verify();
  return chain;
}

void StabilizerChain::push_level(point_t base) {
  Level lv;
  lv.base = base;
  lv.position.assign(degree_, -1);
  lv.orbit.push_back(base);
  lv.transversal.emplace_back(degree_);
  lv.transversal_inverse.emplace_back(degree_);
  lv.position[base] = 0;
  levels_.push_back(std::move(lv));
}

point_t StabilizerChain::first_moved_point(const Permutation& g) const {
  for (point_t i = 0; i < degree_; ++i) {
    if (g(i) != i) return i;
  }
  throw std::logic_error("identity has no moved point");
}

StabilizerChain::SiftResult StabilizerChain::sift(const Permutation& g,
                                                  std::size_t from_level) const {
  if (g.degree() != degree_) throw DegreeMismatch("sift: degree mismatch");
  Permutation h = g;
  for (std::size_t i = from_level; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    const point_t img = h(lv.base);
    if (!lv.in_orbit(img)) return {std::move(h), i};
    if (img != lv.base) h = compose(h, lv.rep_inverse(img));
  }
  return {std::move(h), levels_.size()};
}

bool StabilizerChain::contains(const Permutation& g) const {
  auto r = sift(g);
  return r.level == levels_.size() && r.residue.is_identity();
}

bool StabilizerChain::extend(const Permutation& g) {
  if (g.degree() != degree_) throw DegreeMismatch("extend: degree mismatch");
  if (contains(g)) return false;
  add_generator(0, g);
  return true;
}

// g lies in G^(i) but not in the group currently described by levels i, i+1, ...
void StabilizerChain::add_generator(std::size_t i, Permutation g) {
  if (i == levels_.size()) push_level(first_moved_point(g));

  const std::size_t old_orbit = levels_[i].orbit.size();
  const std::size_t new_gen = levels_[i].generators.size();
  levels_[i].generators.push_back(std::move(g));

  // Extend the orbit. Old transversal entries stay as they are, so pairs that
  // were already checked remain valid.
  {
    Level& lv = levels_[i];
    for (std::size_t j = 0; j < lv.orbit.size(); ++j) {
      const std::size_t gen_begin = (j < old_orbit) ? new_gen : 0;
      for (std::size_t s = gen_begin; s < lv.generators.size(); ++s) {
        const point_t img = lv.generators[s](lv.orbit[j]);
        if (lv.in_orbit(img)) continue;
        lv.position[img] = static_cast<std::int32_t>(lv.orbit.size());
        lv.orbit.push_back(img);
        Permutation u = compose(lv.transversal[j], lv.generators[s]);
        lv.transversal_inverse.push_back(inverse(u));
        lv.transversal.push_back(std::move(u));
      }
    }
  }

  // Schreier generators u_x * s * u_{x^s}^-1 not seen before: the new generator
  // against every orbit point, and every generator against new orbit points.
  // Levels below i may change during the loop; level i does not.
  const std::size_t orbit_size = levels_[i].orbit.size();
  const std::size_t gen_count = levels_[i].generators.size();
  for (std::size_t j = 0; j < orbit_size; ++j) {
    const std::size_t gen_begin = (j < old_orbit) ? new_gen : 0;
    for (std::size_t s = gen_begin; s < gen_count; ++s) {
      const Level& lv = levels_[i];
      const point_t img = lv.generators[s](lv.orbit[j]);
      Permutation y = compose(compose(lv.transversal[j], lv.generators[s]), lv.rep_inverse(img));
      if (y.is_identity()) continue;
      auto r = sift(y, i + 1);
      if (r.level == levels_.size() && r.residue.is_identity()) continue;
      add_generator(i + 1, std::move(r.residue));
    }
  }
}

BigInt StabilizerChain::order() const {
  BigInt o = 1;
  for (const auto& lv : levels_) o *= lv.orbit.size();
  return o;
}

std::vector<point_t> StabilizerChain::base() const {
  std::vector<point_t> b;
  b.reserve(levels_.size());
  for (const auto& lv : levels_) b.push_back(lv.base);
  return b;
}

StabilizerChain StabilizerChain::subchain(std::size_t from_level) const {
  StabilizerChain out(degree_);
  for (std::size_t i = from_level; i < levels_.size(); ++i) out.levels_.push_back(levels_[i]);
  return out;
}

std::vector<Permutation> StabilizerChain::strong_generators() const {
  std::vector<Permutation> out;
  std::set<Permutation> seen;
  for (const auto& lv : levels_) {
    for (const auto& g : lv.generators) {
      if (seen.insert(g).second) out.push_back(g);
    }
  }
  return out;
}

void StabilizerChain::verify() const {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    for (const auto& s : lv.generators) {
      for (std::size_t k = 0; k < i; ++k) {
        if (s(levels_[k].base) != levels_[k].base) {
          throw std::logic_error("strong generator does not fix base prefix");
        }
      }
    }
    for (std::size_t j = 0; j < lv.orbit.size(); ++j) {
      if (lv.transversal[j](lv.base) != lv.orbit[j]) throw std::logic_error("bad transversal");
      for (const auto& s : lv.generators) {
        const point_t img = s(lv.orbit[j]);
        if (!lv.in_orbit(img)) throw std::logic_error("orbit not closed");
        Permutation y = compose(compose(lv.transversal[j], s), lv.rep_inverse(img));
        auto r = sift(y, i + 1);
        if (r.level != levels_.size() || !r.residue.is_identity()) {
          throw std::logic_error("Schreier generator does not sift to identity");
        }
      }
    }
  }
}

}  // namespace primbase
