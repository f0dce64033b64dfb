#pragma once

#include <string>

#include "primbase/matrix.hpp"

namespace primbase::gf {

enum class FormKind { Symplectic, Hermitian, Quadratic };

/// Quadratic form type: + hyperbolic, - elliptic, o parabolic (odd dimension).
/// Symplectic and hermitian forms carry None.
enum class Sign { None, Plus, Minus, Circle };

std::string to_string(FormKind k);
std::string to_string(Sign s);
/// "+", "-", "o" (also accepts "0" for o). Throws Error otherwise.
Sign parse_sign(const std::string& s);

/// A nondegenerate classical form on GF(q)^d.
///
/// Quadratic forms store coefficients c_ij (i <= j) with
/// Q(x) = sum_{i<=j} c_ij x_i x_j; their polar form B(x,y) = Q(x+y)-Q(x)-Q(y)
/// has Gram matrix C + C^T. Symplectic and hermitian forms store the Gram
/// matrix G with B(x,y) = x G y'^T where y' is y (symplectic) or y with every
/// entry raised to the power sqrt(q) (hermitian).
struct Form {
  FormKind kind = FormKind::Symplectic;
  Sign sign = Sign::None;
  int d = 0;
  int q = 2;
  Matrix coeff;  // quadratic only
  Matrix gram;

  const Field& field() const { return gf::field(q); }
};

/// The standard forms:
///   symplectic  sum over pairs x_{2i} y_{2i+1} - x_{2i+1} y_{2i}
///   quadratic + X1X2 + X3X4 + ... (d even)
///   quadratic - X1^2 + X1X2 + a X2^2 + X3X4 + ..., a the smallest element with
///               t^2+t+a irreducible (a=1 for q=2)
///   quadratic o X1X2 + ... + X_{d-2}X_{d-1} + X_d^2 (d odd, q odd)
///   hermitian   sum x_i y_i^sqrt(q) (q a square)
/// The result's type is recomputed by counting singular vectors and checked.
/// Throws Error for an invalid kind/dimension/sign/q combination.
Form make_form(FormKind kind, int d, int q, Sign sign = Sign::None);

/// Q(v) for quadratic forms, B(v,v) otherwise.
elem_t evaluate(const Form& f, const Vec& v);
elem_t polar(const Form& f, const Vec& u, const Vec& v);
/// Q(v) == 0 (quadratic) or B(v,v) == 0 (otherwise).
bool is_singular(const Form& f, const Vec& v);

/// Number of nonzero singular vectors, by enumeration.
std::size_t count_singular_vectors(const Form& f);

/// Witt-type of a quadratic form by singular-vector count (None for other kinds).
/// Throws Error if the polar form is degenerate where it must not be.
Sign classify(const Form& f);

/// x -> x - B(x,v) Q(v)^-1 v. Quadratic forms only; throws Error if Q(v) == 0.
Matrix reflection(const Form& f, const Vec& v);

/// Symplectic: x -> x + lambda B(x,v) v for v != 0.
/// Hermitian: the same map, which needs B(v,v) == 0 and lambda^sqrt(q) == -lambda.
/// Throws Error on other forms or invalid input.
Matrix transvection(const Form& f, const Vec& v, elem_t lambda);

/// True iff m is an isometry (checked on all basis vectors and pairs).
bool preserves(const Form& f, const Matrix& m);

/// Integer square root of a square field order (4 -> 2, 9 -> 3); throws otherwise.
int sqrt_order(int q);

}  // namespace primbase::gf
