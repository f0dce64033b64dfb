#pragma once

#include <string>
#include <vector>

#include "primbase/field.hpp"

namespace primbase::gf {

using Vec = std::vector<elem_t>;

/// Square matrix over GF(q). Matrices act on row vectors from the right, so
/// x * (A * B) applies A first and then B, matching compose() on permutations.
class Matrix {
 public:
  Matrix() = default;
  /// Zero matrix.
  Matrix(int q, int d);
  Matrix(int q, int d, std::vector<elem_t> entries);

  static Matrix identity(int q, int d);
  /// Diagonal matrix.
  static Matrix diagonal(int q, const Vec& diag);

  int q() const noexcept { return q_; }
  int dim() const noexcept { return d_; }
  const Field& field() const { return gf::field(q_); }

  elem_t operator()(int i, int j) const noexcept { return a_[i * d_ + j]; }
  elem_t& operator()(int i, int j) noexcept { return a_[i * d_ + j]; }
  const std::vector<elem_t>& entries() const noexcept { return a_; }
  Vec row(int i) const;

  elem_t determinant() const;
  bool invertible() const { return determinant() != 0; }
  /// Throws Error if singular.
  Matrix inverse() const;
  Matrix transpose() const;
  /// Entrywise x -> x^(p^e).
  Matrix frobenius(int e = 1) const;
  bool is_identity() const;
  /// True iff the matrix is a nonzero scalar multiple of the identity.
  bool is_scalar() const;

  std::string to_string() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix&, const Matrix&) = default;

 private:
  int q_ = 2;
  int d_ = 0;
  std::vector<elem_t> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
/// Row vector times matrix.
Vec operator*(const Vec& v, const Matrix& m);

Vec add(const Field& F, const Vec& u, const Vec& v);
Vec scale(const Field& F, elem_t c, const Vec& v);
elem_t dot(const Field& F, const Vec& u, const Vec& v);
bool is_zero(const Vec& v);
/// Basis vector e_i (0-based) of length d.
Vec unit(int d, int i);

/// Vectors of GF(q)^d are indexed by reading the coordinates as base-q digits,
/// first coordinate most significant. This is lexicographic order.
std::size_t vector_index(int q, const Vec& v);
Vec vector_from_index(int q, int d, std::size_t idx);

/// Reduced row echelon form in place; returns the rank. Zero rows are removed.
int rref(const Field& F, std::vector<Vec>& rows);

}  // namespace primbase::gf
