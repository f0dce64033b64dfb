#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "primbase/family_spec.hpp"
#include "primbase/matrix.hpp"
#include "primbase/perm_group.hpp"
#include "primbase/subspace.hpp"

namespace primbase {

/// A group together with the set it acts on.
struct ConstructedAction {
  FamilySpec spec;
  PermGroup group;
  std::vector<std::string> labels;  // one per point

  /// Subspace actions: the domain. Null otherwise.
  std::shared_ptr<const gf::SubspaceDomain> domain;
  /// Matrix generators: the linear part for affine groups, the isometries
  /// whose images generate the group for classical actions.
  std::vector<gf::Matrix> matrices;

  std::size_t n() const noexcept { return group.degree(); }
};

struct BuildOptions {
  std::size_t degree_cap = 20000;
};

/// One row of the table of constructible classical parameters.
struct EnvelopeEntry {
  Family family;
  int d_min, d_max;
  std::vector<int> qs;  // the spec's q (fixed field order for unitary families)
};

/// The constructible (family, d, q) ranges for the matrix families. The
/// degree cap applies on top of this.
const std::vector<EnvelopeEntry>& classical_envelope();

/// Builds the action named by `spec`. Every constructor checks the BSGS order
/// of its result against an independent order formula and throws
/// ConstructionError on a mismatch; it throws CapExceeded if the predicted
/// degree exceeds the cap and ConstructionError for parameters outside the
/// envelope or formula-only families.
ConstructedAction build(const FamilySpec& spec, const BuildOptions& opts = {});

/// S_m / A_m on k-subsets of {0..m-1}, points in lexicographic order.
ConstructedAction sym_on_subsets(int m, int k, const BuildOptions& opts = {});
ConstructedAction alt_on_subsets(int m, int k, const BuildOptions& opts = {});

/// S_ab on partitions of {0..ab-1} into b blocks of size a. Each point is the
/// block list with blocks sorted and ordered by least element; points are in
/// lexicographic order of that list.
ConstructedAction sym_on_partitions(int a, int b, const BuildOptions& opts = {});

/// AGL_d(q) or ASL_d(q) on GF(q)^d, points indexed by vector_index().
ConstructedAction affine(int d, int q, AffinePart part = AffinePart::Full,
                         const BuildOptions& opts = {});

/// Projective image of a classical group on one of its subspace domains.
/// Handles LinearOnPk, SpOnSk, GOOn*, OmegaOn*, UnitaryOn*.
ConstructedAction classical_action(const FamilySpec& spec, const BuildOptions& opts = {});

/// Sp_d(2) on the quadratic forms of type `sign` polarizing to the standard
/// symplectic form (the cosets of GO_d^sign(2)).
ConstructedAction sp_on_go_cosets(int d, gf::Sign sign, const BuildOptions& opts = {});

/// H wr S_r in product action on Gamma^r, points indexed with the first
/// coordinate most significant.
ConstructedAction wreath_product_action(const ConstructedAction& inner, int r,
                                        const BuildOptions& opts = {});

/// M_24 on 24 points from the embedded generator file.
ConstructedAction mathieu24();

/// Parses the generator file format (see docs/FORMATS.md) and checks its
/// checksum. Throws ConfigError with the offending line.
std::vector<Permutation> parse_generator_file(const std::string& text);

/// FNV-1a 64-bit hash, as used by the generator file checksum line.
std::uint64_t fnv1a64(std::string_view bytes);

/// Expected order of the group built for a classical spec (projective image).
BigInt classical_image_order(const FamilySpec& spec);

}  // namespace primbase
