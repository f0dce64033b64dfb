#include "primbase/matrix.hpp"

#include <sstream>

#include "primbase/error.hpp"

namespace primbase::gf {

Matrix::Matrix(int q, int d) : q_(q), d_(d), a_(static_cast<std::size_t>(d) * d, 0) {
  (void)gf::field(q);
}

Matrix::Matrix(int q, int d, std::vector<elem_t> entries) : q_(q), d_(d), a_(std::move(entries)) {
  if (a_.size() != static_cast<std::size_t>(d) * d) throw Error("matrix: wrong entry count");
  for (elem_t x : a_) {
    if (x >= q) throw Error("matrix: entry outside field");
  }
}

Matrix Matrix::identity(int q, int d) {
  Matrix m(q, d);
  for (int i = 0; i < d; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(int q, const Vec& diag) {
  Matrix m(q, static_cast<int>(diag.size()));
  for (int i = 0; i < m.d_; ++i) m(i, i) = diag[i];
  return m;
}

Vec Matrix::row(int i) const { return Vec(a_.begin() + i * d_, a_.begin() + (i + 1) * d_); }

elem_t Matrix::determinant() const {
  const Field& F = field();
  std::vector<Vec> m(d_);
  for (int i = 0; i < d_; ++i) m[i] = row(i);
  elem_t det = 1;
  for (int c = 0; c < d_; ++c) {
    int piv = -1;
    for (int r = c; r < d_; ++r) {
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = F.neg(det);
    }
    det = F.mul(det, m[c][c]);
    const elem_t inv = F.inv(m[c][c]);
    for (int r = c + 1; r < d_; ++r) {
      if (m[r][c] == 0) continue;
      const elem_t f = F.mul(m[r][c], inv);
      for (int j = c; j < d_; ++j) m[r][j] = F.sub(m[r][j], F.mul(f, m[c][j]));
    }
  }
  return det;
}

Matrix Matrix::inverse() const {
  const Field& F = field();
  std::vector<Vec> m(d_);
  for (int i = 0; i < d_; ++i) {
    m[i] = row(i);
    m[i].resize(2 * d_, 0);
    m[i][d_ + i] = 1;
  }
  for (int c = 0; c < d_; ++c) {
    int piv = -1;
    for (int r = c; r < d_; ++r) {
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw Error("matrix is singular");
    std::swap(m[piv], m[c]);
    const elem_t inv = F.inv(m[c][c]);
    for (auto& x : m[c]) x = F.mul(x, inv);
    for (int r = 0; r < d_; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const elem_t f = m[r][c];
      for (int j = 0; j < 2 * d_; ++j) m[r][j] = F.sub(m[r][j], F.mul(f, m[c][j]));
    }
  }
  Matrix out(q_, d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) out(i, j) = m[i][d_ + j];
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(q_, d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::frobenius(int e) const {
  const Field& F = field();
  Matrix out = *this;
  for (auto& x : out.a_) {
    for (int i = 0; i < e; ++i) x = F.frobenius(x);
  }
  return out;
}

bool Matrix::is_identity() const { return *this == identity(q_, d_); }

bool Matrix::is_scalar() const {
  if (d_ == 0 || a_[0] == 0) return false;
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      if ((*this)(i, j) != (i == j ? a_[0] : 0)) return false;
  return true;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < d_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < d_; ++j) os << (j ? "," : "") << int((*this)(i, j));
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.q() != b.q() || a.dim() != b.dim()) throw Error("matrix product: shape or field mismatch");
  const Field& F = a.field();
  const int d = a.dim();
  Matrix c(a.q(), d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      const elem_t x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < d; ++j) c(i, j) = F.add(c(i, j), F.mul(x, b(k, j)));
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.q() != b.q() || a.dim() != b.dim()) throw Error("matrix sum: shape or field mismatch");
  const Field& F = a.field();
  Matrix c(a.q(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c(i, j) = F.add(a(i, j), b(i, j));
  return c;
}

Vec operator*(const Vec& v, const Matrix& m) {
  if (static_cast<int>(v.size()) != m.dim()) throw Error("vector-matrix product: dimension mismatch");
  const Field& F = m.field();
  Vec out(m.dim(), 0);
  for (int i = 0; i < m.dim(); ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < m.dim(); ++j) out[j] = F.add(out[j], F.mul(v[i], m(i, j)));
  }
  return out;
}

Vec add(const Field& F, const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw Error("vector sum: dimension mismatch");
  Vec w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = F.add(u[i], v[i]);
  return w;
}

Vec scale(const Field& F, elem_t c, const Vec& v) {
  Vec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = F.mul(c, v[i]);
  return w;
}

elem_t dot(const Field& F, const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw Error("dot: dimension mismatch");
  elem_t s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s = F.add(s, F.mul(u[i], v[i]));
  return s;
}

bool is_zero(const Vec& v) {
  for (elem_t x : v) {
    if (x) return false;
  }
  return true;
}

Vec unit(int d, int i) {
  Vec v(d, 0);
  v[i] = 1;
  return v;
}

std::size_t vector_index(int q, const Vec& v) {
  std::size_t idx = 0;
  for (elem_t x : v) idx = idx * q + x;
  return idx;
}

Vec vector_from_index(int q, int d, std::size_t idx) {
  Vec v(d);
  for (int i = d - 1; i >= 0; --i) {
    v[i] = static_cast<elem_t>(idx % q);
    idx /= q;
  }
  return v;
}

int rref(const Field& F, std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  const int cols = static_cast<int>(rows.front().size());
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[r]);
    const elem_t inv = F.inv(rows[r][c]);
    for (auto& x : rows[r]) x = F.mul(x, inv);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const elem_t f = rows[i][c];
      for (int j = c; j < cols; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
    }
    ++r;
  }
  rows.resize(r);
  return r;
}

}  // namespace primbase::gf
