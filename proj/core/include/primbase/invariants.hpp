#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "primbase/bigint.hpp"
#include "primbase/families.hpp"
#include "primbase/perm_group.hpp"

namespace primbase {

struct BaseSearchOptions {
  /// Number of stabilizer computations the exact search may perform.
  std::uint64_t node_budget = 100'000'000;
};

struct BaseResult {
  std::size_t size = 0;       // exact value, or the greedy upper bound
  std::vector<point_t> base;  // a base of length `size`
  bool exact = false;
  std::size_t lower = 0;      // proven lower bound (== size when exact)
  std::uint64_t nodes = 0;
};

/// Smallest b with n^b >= |G|, i.e. ceil(log|G| / log n). 0 for the trivial group.
std::size_t base_size_lower_bound(const PermGroup& g);

/// Greedy base: repeatedly appends the smallest point of a largest orbit of the
/// current stabilizer.
BaseResult base_size_greedy(const PermGroup& g);

/// Minimum base size by iterative deepening from the lower bound, branching on
/// the smallest point of each nontrivial orbit of the current stabilizer. The
/// witness is the first base found in that order. When the budget runs out the
/// result is the bracket [lower, greedy] with exact = false.
BaseResult base_size_exact(const PermGroup& g, const BaseSearchOptions& opts = {});

struct MinimalDegreeOptions {
  BigInt order_cap = BigInt(1'000'000'000);
  /// Worker threads; 0 reads PRIMBASE_THREADS, then falls back to the
  /// hardware concurrency.
  unsigned threads = 0;
};

struct MinimalDegreeResult {
  std::optional<std::size_t> mu;  // empty if |G| exceeds the cap
  Permutation witness;            // prime order, support == *mu
  std::uint64_t elements = 0;     // elements scanned
};

/// Minimal degree by enumerating the transversal product tree. For a
/// transitive group only the stabilizer of the first base point is scanned:
/// an element with a fixed point is conjugate into it. The witness is the
/// first element in enumeration order with the most fixed points, reduced to
/// prime order. Throws Error for the trivial group.
MinimalDegreeResult minimal_degree_exact(const PermGroup& g,
                                         const MinimalDegreeOptions& opts = {});

struct MinimalDegreeWitness {
  std::size_t support = 0;
  Permutation element;
  BigInt closed_form;  // the family's formula for the support
};

/// The family's witness element: a transposition or 3-cycle on subsets, a
/// transposition on partitions, a transvection for affine, projective and
/// symplectic point actions, a product of two reflections on orthogonal q = 2
/// quadrics, and (h, 1) for wreath products. Throws Error if the family has no recipe and
/// ConstructionError if the support differs from the closed form.
MinimalDegreeWitness minimal_degree_witness(const ConstructedAction& act);

/// True iff minimal_degree_witness has a recipe for this spec.
bool has_witness_recipe(const FamilySpec& spec);

struct AffineMuStructure {
  int t = 0;                         // dimension of the largest fixed space
  BigInt mu_linear;                  // 2^d - 2^t
  std::vector<gf::Vec> fix_basis;    // v_1..v_t
  std::vector<point_t> base;         // indices of v_1..v_{t+1}
  Permutation element;               // linear element fixing 2^t vectors
};

/// For an affine action over GF(2) with d >= 2: the nontrivial element of the
/// linear part H with the largest fixed space and the base {v_1..v_{t+1}} of H
/// built from it (checked). Throws Error otherwise.
AffineMuStructure affine_mu_structure(const ConstructedAction& act,
                                      const MinimalDegreeOptions& opts = {});

struct InvariantOptions {
  BaseSearchOptions base;
  MinimalDegreeOptions mu;
  std::size_t exact_base_degree_cap = 20000;
};

struct InvariantReport {
  std::size_t n = 0;
  BigInt order;
  bool transitive = false;

  std::size_t b_lower = 0;
  BaseResult b_greedy;
  std::optional<BaseResult> b_exact;  // with exact = false if the budget ran out

  std::optional<MinimalDegreeResult> mu_exact;
  std::optional<MinimalDegreeWitness> mu_witness;

  double base_seconds = 0;
  double mu_seconds = 0;

  /// Best known b and whether it is exact.
  std::size_t b() const;
  bool b_is_exact() const;
  /// Exact mu if computed, else the witness bound.
  std::optional<std::size_t> mu() const;
  bool mu_is_exact() const;
};

InvariantReport compute_invariants(const ConstructedAction& act,
                                   const InvariantOptions& opts = {});

/// Worker count: `requested` if nonzero, else PRIMBASE_THREADS, else the
/// hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested = 0);

}  // namespace primbase
