#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "primbase/bigint.hpp"
#include "primbase/permutation.hpp"
#include "primbase/stabilizer_chain.hpp"

namespace primbase {

/// A permutation group given by generators. The stabilizer chain is built on
/// first use and is then frozen; copies share it, and concurrent readers are safe.
class PermGroup {
 public:
  /// Trivial group of degree 0.
  PermGroup();

  /// Identity and duplicate generators are dropped. Throws DegreeMismatch if a
  /// generator has the wrong degree.
  PermGroup(std::size_t degree, std::vector<Permutation> generators);

  /// Group generated by the first level of an already complete chain.
  static PermGroup from_chain(StabilizerChain chain);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  bool is_trivial() const noexcept { return generators_.empty(); }

  const StabilizerChain& chain() const;
  BigInt order() const { return chain().order(); }
  bool contains(const Permutation& p) const;

 private:
  struct State {
    std::once_flag once;
    std::unique_ptr<StabilizerChain> chain;
  };

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::shared_ptr<State> state_;
};

/// Chain for g with the given base prefix.
StabilizerChain build_chain(const PermGroup& g, std::span<const point_t> initial_base = {});

BigInt order(const PermGroup& g);
bool contains(const PermGroup& g, const Permutation& p);

/// Sorted orbit of `point`. Throws Error if point >= degree.
std::vector<point_t> orbit(const PermGroup& g, point_t point);

/// All orbits, each sorted, ordered by smallest element.
std::vector<std::vector<point_t>> orbits(const PermGroup& g);

bool is_transitive(const PermGroup& g);

/// Subgroup fixing every listed point.
PermGroup pointwise_stabilizer(const PermGroup& g, std::span<const point_t> points);

/// [G, G]: normal closure of the commutators of generator pairs.
PermGroup derived_subgroup(const PermGroup& g);

/// True iff g has no nontrivial block system. Throws Error if g is intransitive.
bool is_primitive(const PermGroup& g);

/// Smallest block containing {0, beta} (union-find block closure).
std::vector<point_t> minimal_block(const PermGroup& g, point_t beta);

}  // namespace primbase
