#include "primbase/forms.hpp"

#include "primbase/error.hpp"

namespace primbase::gf {

std::string to_string(FormKind k) {
  switch (k) {
    case FormKind::Symplectic: return "symplectic";
    case FormKind::Hermitian: return "hermitian";
    case FormKind::Quadratic: return "quadratic";
  }
  return "?";
}

std::string to_string(Sign s) {
  switch (s) {
    case Sign::None: return "";
    case Sign::Plus: return "+";
    case Sign::Minus: return "-";
    case Sign::Circle: return "o";
  }
  return "?";
}

Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return Sign::Plus;
  if (s == "-" || s == "minus") return Sign::Minus;
  if (s == "o" || s == "0" || s == "circle") return Sign::Circle;
  throw Error("unknown form sign '" + s + "'");
}

int sqrt_order(int q) {
  if (q == 4) return 2;
  if (q == 9) return 3;
  throw Error("q=" + std::to_string(q) + " is not a supported square");
}

namespace {

// y -> y^sqrt(q) on every entry
Vec conjugate(const Form& f, Vec v) {
  if (f.kind != FormKind::Hermitian) return v;
  const Field& F = f.field();
  for (auto& x : v) {
    for (int i = 0; i < F.degree() / 2; ++i) x = F.frobenius(x);
  }
  return v;
}

// G y'^T as a column, stored as a vector
Vec gram_times(const Form& f, const Vec& v) {
  const Field& F = f.field();
  const Vec w = conjugate(f, v);
  Vec out(f.d, 0);
  for (int i = 0; i < f.d; ++i) {
    elem_t s = 0;
    for (int j = 0; j < f.d; ++j) s = F.add(s, F.mul(f.gram(i, j), w[j]));
    out[i] = s;
  }
  return out;
}

elem_t elliptic_constant(const Field& F) {
  for (int a = 1; a < F.order(); ++a) {
    bool has_root = false;
    for (int t = 0; t < F.order() && !has_root; ++t) {
      has_root = F.add(F.add(F.mul(t, t), t), a) == 0;
    }
    if (!has_root) return static_cast<elem_t>(a);
  }
  throw Error("no irreducible t^2+t+a");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error("make_form: " + what);
}

}  // namespace

Form make_form(FormKind kind, int d, int q, Sign sign) {
  const Field& F = field(q);
  require(d >= 1, "dimension must be positive");
  Form f;
  f.kind = kind;
  f.d = d;
  f.q = q;
  f.gram = Matrix(q, d);

  switch (kind) {
    case FormKind::Symplectic:
      require(d % 2 == 0, "symplectic forms need even dimension");
      require(sign == Sign::None, "symplectic forms carry no sign");
      for (int i = 0; i + 1 < d; i += 2) {
        f.gram(i, i + 1) = 1;
        f.gram(i + 1, i) = F.neg(1);
      }
      break;
    case FormKind::Hermitian:
      (void)sqrt_order(q);
      require(sign == Sign::None, "hermitian forms carry no sign");
      f.gram = Matrix::identity(q, d);
      break;
    case FormKind::Quadratic: {
      f.coeff = Matrix(q, d);
      int start = 0;
      if (sign == Sign::Plus) {
        require(d % 2 == 0, "+ type needs even dimension");
      } else if (sign == Sign::Minus) {
        require(d % 2 == 0, "- type needs even dimension");
        f.coeff(0, 0) = 1;
        f.coeff(0, 1) = 1;
        f.coeff(1, 1) = elliptic_constant(F);
        start = 2;
      } else if (sign == Sign::Circle) {
        require(d % 2 == 1, "o type needs odd dimension");
        require(q % 2 == 1, "o type needs odd q");
        f.coeff(d - 1, d - 1) = 1;
      } else {
        require(false, "quadratic forms need a sign");
      }
      for (int i = start; i + 1 < d; i += 2) f.coeff(i, i + 1) = 1;
      f.gram = f.coeff + f.coeff.transpose();
      break;
    }
  }
  f.sign = sign;
  require(f.gram.determinant() != 0, "polar form is degenerate");
  require(classify(f) == sign, "computed type differs from requested type");
  return f;
}

elem_t evaluate(const Form& f, const Vec& v) {
  if (static_cast<int>(v.size()) != f.d) throw Error("evaluate: dimension mismatch");
  if (f.kind != FormKind::Quadratic) return polar(f, v, v);
  const Field& F = f.field();
  elem_t s = 0;
  for (int i = 0; i < f.d; ++i) {
    if (v[i] == 0) continue;
    for (int j = i; j < f.d; ++j) {
      const elem_t c = f.coeff(i, j);
      if (c) s = F.add(s, F.mul(c, F.mul(v[i], v[j])));
    }
  }
  return s;
}

elem_t polar(const Form& f, const Vec& u, const Vec& v) {
  if (static_cast<int>(u.size()) != f.d || static_cast<int>(v.size()) != f.d) {
    throw Error("polar: dimension mismatch");
  }
  return dot(f.field(), u, gram_times(f, v));
}

bool is_singular(const Form& f, const Vec& v) { return evaluate(f, v) == 0; }

std::size_t count_singular_vectors(const Form& f) {
  std::size_t total = 1;
  for (int i = 0; i < f.d; ++i) total *= f.q;
  std::size_t n = 0;
  for (std::size_t idx = 1; idx < total; ++idx) {
    n += is_singular(f, vector_from_index(f.q, f.d, idx));
  }
  return n;
}

Sign classify(const Form& f) {
  if (f.kind != FormKind::Quadratic) return Sign::None;
  if (f.d % 2 == 1) return Sign::Circle;
  const long long m = f.d / 2;
  long long qm = 1;
  for (long long i = 0; i < m; ++i) qm *= f.q;
  const long long qm1 = qm / f.q;
  const auto n = static_cast<long long>(count_singular_vectors(f));
  if (n == (qm - 1) * (qm1 + 1)) return Sign::Plus;
  if (n == (qm + 1) * (qm1 - 1)) return Sign::Minus;
  throw Error("classify: singular vector count matches neither type");
}

Matrix reflection(const Form& f, const Vec& v) {
  if (f.kind != FormKind::Quadratic) throw Error("reflection needs a quadratic form");
  const elem_t qv = evaluate(f, v);
  if (qv == 0) throw Error("reflection in a singular vector");
  const Field& F = f.field();
  const Vec gv = gram_times(f, v);
  const elem_t c = F.neg(F.inv(qv));
  Matrix m = Matrix::identity(f.q, f.d);
  for (int i = 0; i < f.d; ++i)
    for (int j = 0; j < f.d; ++j) m(i, j) = F.add(m(i, j), F.mul(c, F.mul(gv[i], v[j])));
  return m;
}

Matrix transvection(const Form& f, const Vec& v, elem_t lambda) {
  const Field& F = f.field();
  if (is_zero(v)) throw Error("transvection: zero vector");
  if (lambda == 0) throw Error("transvection: zero scalar");
  if (f.kind == FormKind::Quadratic) throw Error("transvection: use reflection for quadratic forms");
  if (f.kind == FormKind::Hermitian) {
    if (polar(f, v, v) != 0) throw Error("unitary transvection needs an isotropic vector");
    const Vec l = conjugate(f, Vec{lambda});
    if (l[0] != F.neg(lambda)) throw Error("unitary transvection needs a trace-zero scalar");
  }
  const Vec gv = gram_times(f, v);
  Matrix m = Matrix::identity(f.q, f.d);
  for (int i = 0; i < f.d; ++i)
    for (int j = 0; j < f.d; ++j) m(i, j) = F.add(m(i, j), F.mul(lambda, F.mul(gv[i], v[j])));
  return m;
}

bool preserves(const Form& f, const Matrix& m) {
  if (m.dim() != f.d || m.q() != f.q) return false;
  std::vector<Vec> img(f.d);
  for (int i = 0; i < f.d; ++i) img[i] = m.row(i);
  for (int i = 0; i < f.d; ++i) {
    if (f.kind == FormKind::Quadratic && evaluate(f, img[i]) != f.coeff(i, i)) return false;
    for (int j = 0; j < f.d; ++j) {
      if (polar(f, img[i], img[j]) != f.gram(i, j)) return false;
    }
  }
  return true;
}

}  // namespace primbase::gf
