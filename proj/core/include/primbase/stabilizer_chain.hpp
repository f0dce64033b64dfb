#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "primbase/bigint.hpp"
#include "primbase/permutation.hpp"

namespace primbase {

/// Base and strong generating set with explicit transversals.
///
/// Level i holds the base point b_i, generators S_i of the pointwise
/// stabilizer G^(i) of b_0..b_{i-1}, the orbit of b_i under S_i, and for every
/// orbit point a coset representative u with b_i^u = point.
///
/// Construction is the deterministic incremental Schreier-Sims algorithm: each
/// Schreier generator is checked exactly once, in generation order.
class StabilizerChain {
 public:
  struct Level {
    point_t base = 0;
    std::vector<Permutation> generators;
    std::vector<point_t> orbit;
    std::vector<Permutation> transversal;
    std::vector<Permutation> transversal_inverse;
    std::vector<std::int32_t> position;  // point -> index into orbit, or -1

    bool in_orbit(point_t p) const noexcept { return position[p] >= 0; }
    const Permutation& rep(point_t p) const { return transversal[position[p]]; }
    const Permutation& rep_inverse(point_t p) const { return transversal_inverse[position[p]]; }
  };

  struct SiftResult {
    Permutation residue;
    std::size_t level;  // first level whose orbit missed, or levels().size()
  };

  /// Empty chain of the trivial group. `initial_base` points become the first
  /// base points, in order, even if the group later fixes some of them.
  explicit StabilizerChain(std::size_t degree, std::span<const point_t> initial_base = {});

  /// Builds a complete chain for <generators>, then re-sifts every Schreier
  /// generator as a final consistency check.
  static StabilizerChain build(std::size_t degree, std::span<const Permutation> generators,
                               std::span<const point_t> initial_base = {});

  /// Adds g to the group. Returns false (and changes nothing) if g was already
  /// a member.
  bool extend(const Permutation& g);

  SiftResult sift(const Permutation& g, std::size_t from_level = 0) const;
  bool contains(const Permutation& g) const;

  BigInt order() const;
  std::size_t degree() const noexcept { return degree_; }
  std::vector<point_t> base() const;
  const std::vector<Level>& levels() const noexcept { return levels_; }

  /// Chain for G^(from_level), i.e. the pointwise stabilizer of the first
  /// `from_level` base points.
  StabilizerChain subchain(std::size_t from_level) const;

  /// Every generator stored at any level, deduplicated, in level order.
  std::vector<Permutation> strong_generators() const;

  /// Throws std::logic_error if a Schreier generator fails to sift, a
  /// transversal entry is wrong, or a strong generator does not fix the base
  /// prefix of its level.
  void verify() const;

 private:
  void push_level(point_t base);
  void add_generator(std::size_t level, Permutation g);
  point_t first_moved_point(const Permutation& g) const;

  std::size_t degree_;
  std::vector<Level> levels_;
};

}  // namespace primbase
