#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace primbase::gf {

using elem_t = std::uint8_t;

/// Field sizes with a pinned reduction polynomial.
inline constexpr std::array<int, 7> kSupportedOrders{2, 3, 4, 5, 7, 8, 9};

/// Reduction polynomials in the text format documented in docs/FORMATS.md.
/// One line per field: "q p f c_0 c_1 ... c_f" (coefficients of the monic
/// polynomial, constant term first).
extern const char* const kReductionTable;

struct FieldSpec {
  int q = 0;
  int p = 0;
  int f = 0;
  std::vector<int> modulus;  // c_0 .. c_f, c_f == 1
};

/// Parses a reduction table in the documented format.
std::vector<FieldSpec> parse_reduction_table(const std::string& text);

/// GF(q) with elements 0..q-1. Element x encodes the polynomial
/// sum_i d_i t^i where d_i are the base-p digits of x; 0 and 1 are the field's
/// zero and one. Arithmetic is table driven.
class Field {
 public:
  explicit Field(const FieldSpec& spec);

  int order() const noexcept { return q_; }
  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return f_; }
  const FieldSpec& spec() const noexcept { return spec_; }

  elem_t add(elem_t a, elem_t b) const noexcept { return add_[a * q_ + b]; }
  elem_t sub(elem_t a, elem_t b) const noexcept { return add_[a * q_ + neg_[b]]; }
  elem_t neg(elem_t a) const noexcept { return neg_[a]; }
  elem_t mul(elem_t a, elem_t b) const noexcept { return mul_[a * q_ + b]; }
  /// Throws Error for 0.
  elem_t inv(elem_t a) const;
  elem_t div(elem_t a, elem_t b) const { return mul(a, inv(b)); }
  elem_t pow(elem_t a, long long e) const;
  /// x -> x^p
  elem_t frobenius(elem_t a) const noexcept { return frob_[a]; }
  /// Generator of the multiplicative group (smallest such element).
  elem_t primitive() const noexcept { return primitive_; }
  bool is_square(elem_t a) const noexcept { return square_[a]; }

  /// Exhaustive check of the field axioms over all pairs/triples.
  bool check_axioms() const;

 private:
  FieldSpec spec_;
  int q_, p_, f_;
  std::vector<elem_t> add_, mul_, neg_, inv_, frob_;
  std::vector<bool> square_;
  elem_t primitive_ = 1;
};

/// Shared immutable instance. Throws Error for unsupported q.
const Field& field(int q);

bool is_supported_order(int q);

}  // namespace primbase::gf
