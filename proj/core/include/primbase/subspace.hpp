#pragma once

#include <optional>
#include <string>
#include <vector>

#include "primbase/bigint.hpp"
#include "primbase/forms.hpp"
#include "primbase/permutation.hpp"

namespace primbase::gf {

enum class DomainKind { P, S, N };

/// Orbit class of nonsingular 1-spaces for odd q.
///   Square / Nonsquare: d even, split by the square class of Q(v).
///   Plus / Minus: d odd, split by the type of the hyperplane v-perp.
/// Any keeps every nonsingular point (the only option for even q).
enum class PointClass { Any, Square, Nonsquare, Plus, Minus };

std::string to_string(DomainKind k);
std::string to_string(PointClass c);
PointClass parse_point_class(const std::string& s);

/// k-subspaces of GF(q)^d of one kind, in canonical order.
///
/// Each subspace is stored as its reduced row echelon basis (leading entries 1,
/// rows sorted by pivot), flattened row by row into k*d entries. Members are
/// sorted lexicographically on that flattening, so point i of every action
/// built on this domain is reproducible.
///
///   P  all k-subspaces (no form)
///   S  totally singular (quadratic) / totally isotropic (symplectic, hermitian)
///   N  k = 1: Q(v) != 0 or B(v,v) != 0, restricted to `cls`;
///      k > 1: the polar form restricted to U is nondegenerate
class SubspaceDomain {
 public:
  static SubspaceDomain enumerate(DomainKind kind, int k, int d, int q,
                                  std::optional<Form> form = std::nullopt,
                                  PointClass cls = PointClass::Any);

  DomainKind kind() const noexcept { return kind_; }
  int k() const noexcept { return k_; }
  int dim() const noexcept { return d_; }
  int q() const noexcept { return q_; }
  const std::optional<Form>& form() const noexcept { return form_; }
  PointClass point_class() const noexcept { return cls_; }

  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<elem_t>& member(std::size_t i) const { return members_[i]; }
  std::vector<Vec> basis(std::size_t i) const;

  /// Index of the subspace spanned by `rows`, if it is a member.
  std::optional<std::size_t> index_of(std::vector<Vec> rows) const;

  /// Printable label, e.g. "<1,0,1>" or "<1,0,0,1|0,1,1,0>".
  std::string label(std::size_t i) const;

 private:
  DomainKind kind_ = DomainKind::P;
  int k_ = 0, d_ = 0, q_ = 2;
  std::optional<Form> form_;
  PointClass cls_ = PointClass::Any;
  std::vector<std::vector<elem_t>> members_;
};

/// Number of k-subspaces of GF(q)^d.
BigInt gaussian_binomial(int d, int k, int q);

/// Permutation induced on the domain. Throws Error if m is singular, has the
/// wrong size, does not preserve the domain's form, or maps a member outside.
Permutation matrix_action_on_domain(const Matrix& m, const SubspaceDomain& dom);

/// Induced action on all vectors of GF(q)^d, indexed by vector_index().
Permutation matrix_action_on_vectors(const Matrix& m);

}  // namespace primbase::gf
