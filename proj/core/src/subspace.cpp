#include "primbase/subspace.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "primbase/error.hpp"

namespace primbase::gf {

std::string to_string(DomainKind k) {
  switch (k) {
    case DomainKind::P: return "P";
    case DomainKind::S: return "S";
    case DomainKind::N: return "N";
  }
  return "?";
}

std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::Any: return "any";
    case PointClass::Square: return "square";
    case PointClass::Nonsquare: return "nonsquare";
    case PointClass::Plus: return "+";
    case PointClass::Minus: return "-";
  }
  return "?";
}

PointClass parse_point_class(const std::string& s) {
  if (s == "any" || s.empty()) return PointClass::Any;
  if (s == "square") return PointClass::Square;
  if (s == "nonsquare") return PointClass::Nonsquare;
  if (s == "+" || s == "plus") return PointClass::Plus;
  if (s == "-" || s == "minus") return PointClass::Minus;
  throw Error("unknown point class '" + s + "'");
}

BigInt gaussian_binomial(int d, int k, int q) {
  if (k < 0 || k > d) return 0;
  BigInt num = 1, den = 1, qq = q;
  for (int i = 0; i < k; ++i) {
    num *= boost::multiprecision::pow(qq, d - i) - 1;
    den *= boost::multiprecision::pow(qq, i + 1) - 1;
  }
  return num / den;
}

namespace {

// All k x d matrices in reduced row echelon form, flattened.
void all_rref(int k, int d, int q, std::vector<std::vector<elem_t>>& out) {
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    // free positions: (row i, column c) with c > piv[i] and c not a pivot column
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < k; ++i) {
      for (int c = piv[i] + 1; c < d; ++c) {
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(i, c);
      }
    }
    std::vector<elem_t> m(static_cast<std::size_t>(k) * d, 0);
    for (int i = 0; i < k; ++i) m[i * d + piv[i]] = 1;
    std::vector<int> digit(free.size(), 0);
    while (true) {
      for (std::size_t t = 0; t < free.size(); ++t) {
        m[free[t].first * d + free[t].second] = static_cast<elem_t>(digit[t]);
      }
      out.push_back(m);
      std::size_t t = 0;
      while (t < free.size() && ++digit[t] == q) digit[t++] = 0;
      if (t == free.size()) break;
    }
    // next pivot combination
    int i = k - 1;
    while (i >= 0 && piv[i] == d - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
}

std::vector<Vec> unflatten(const std::vector<elem_t>& m, int k, int d) {
  std::vector<Vec> rows(k);
  for (int i = 0; i < k; ++i) rows[i].assign(m.begin() + i * d, m.begin() + (i + 1) * d);
  return rows;
}

bool totally_singular(const Form& f, const std::vector<Vec>& b) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!is_singular(f, b[i])) return false;
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      if (polar(f, b[i], b[j]) != 0) return false;
    }
  }
  return true;
}

bool restricted_nondegenerate(const Form& f, const std::vector<Vec>& b) {
  const int k = static_cast<int>(b.size());
  Matrix g(f.q, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = polar(f, b[i], b[j]);
  return g.determinant() != 0;
}

// Type of the nondegenerate hyperplane v-perp, found by counting its singular vectors.
Sign perp_type(const Form& f, const Vec& v) {
  const Field& F = f.field();
  const int d = f.d;
  Vec w(d);
  for (int i = 0; i < d; ++i) w[i] = polar(f, unit(d, i), v);
  int j = 0;
  while (w[j] == 0) ++j;
  std::vector<Vec> basis;
  for (int i = 0; i < d; ++i) {
    if (i == j) continue;
    Vec b = unit(d, i);
    b[j] = F.neg(F.div(w[i], w[j]));
    basis.push_back(std::move(b));
  }
  const int dim = d - 1;
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= f.q;
  long long singular = 0;
  for (std::size_t idx = 1; idx < total; ++idx) {
    const Vec c = vector_from_index(f.q, dim, idx);
    Vec x(d, 0);
    for (int i = 0; i < dim; ++i) {
      if (c[i]) x = add(F, x, scale(F, c[i], basis[i]));
    }
    singular += is_singular(f, x);
  }
  const int m = dim / 2;
  long long qm = 1;
  for (int i = 0; i < m; ++i) qm *= f.q;
  if (singular == (qm - 1) * (qm / f.q + 1)) return Sign::Plus;
  if (singular == (qm + 1) * (qm / f.q - 1)) return Sign::Minus;
  throw Error("perp_type: hyperplane is degenerate");
}

void check_class_allowed(const Form* f, int k, PointClass cls) {
  if (cls == PointClass::Any) return;
  const bool odd_quadratic = f && f->kind == FormKind::Quadratic && f->q % 2 == 1 && k == 1;
  if (!odd_quadratic) throw Error("point classes apply to N_1 of an odd-q quadratic form only");
  const bool even_d = f->d % 2 == 0;
  const bool square_class = cls == PointClass::Square || cls == PointClass::Nonsquare;
  if (even_d != square_class) {
    throw Error(even_d ? "even dimension: use square/nonsquare" : "odd dimension: use +/-");
  }
}

}  // namespace

SubspaceDomain SubspaceDomain::enumerate(DomainKind kind, int k, int d, int q,
                                         std::optional<Form> form, PointClass cls) {
  const Field& F = field(q);
  if (k < 1 || k > d) throw Error("subspace dimension out of range");
  if (kind == DomainKind::P && form) throw Error("P_k takes no form");
  if (kind != DomainKind::P) {
    if (!form) throw Error(to_string(kind) + "_k needs a form");
    if (form->d != d || form->q != q) throw Error("form does not match dimension/field");
  }
  check_class_allowed(form ? &*form : nullptr, k, kind == DomainKind::N ? cls : PointClass::Any);
  if (kind != DomainKind::N && cls != PointClass::Any) throw Error("point class only applies to N_1");

  SubspaceDomain dom;
  dom.kind_ = kind;
  dom.k_ = k;
  dom.d_ = d;
  dom.q_ = q;
  dom.form_ = form;
  dom.cls_ = cls;

  std::vector<std::vector<elem_t>> all;
  all_rref(k, d, q, all);

  // For d odd, the type of v-perp depends only on the square class of Q(v).
  std::map<bool, Sign> perp_by_square;

  for (auto& m : all) {
    bool keep = true;
    if (kind != DomainKind::P) {
      const auto b = unflatten(m, k, d);
      if (kind == DomainKind::S) {
        keep = totally_singular(*form, b);
      } else if (k == 1) {
        const elem_t val = evaluate(*form, b[0]);
        keep = val != 0;
        if (keep && cls != PointClass::Any) {
          const bool sq = F.is_square(val);
          if (cls == PointClass::Square || cls == PointClass::Nonsquare) {
            keep = sq == (cls == PointClass::Square);
          } else {
            auto it = perp_by_square.find(sq);
            if (it == perp_by_square.end()) it = perp_by_square.emplace(sq, perp_type(*form, b[0])).first;
            keep = (it->second == Sign::Plus) == (cls == PointClass::Plus);
          }
        }
      } else {
        keep = restricted_nondegenerate(*form, b);
      }
    }
    if (keep) dom.members_.push_back(std::move(m));
  }
  if (dom.members_.empty()) throw Error("empty subspace domain");
  std::sort(dom.members_.begin(), dom.members_.end());
  return dom;
}

std::vector<Vec> SubspaceDomain::basis(std::size_t i) const { return unflatten(members_.at(i), k_, d_); }

std::optional<std::size_t> SubspaceDomain::index_of(std::vector<Vec> rows) const {
  if (rref(field(q_), rows) != k_) return std::nullopt;
  std::vector<elem_t> flat;
  flat.reserve(static_cast<std::size_t>(k_) * d_);
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  auto it = std::lower_bound(members_.begin(), members_.end(), flat);
  if (it == members_.end() || *it != flat) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

std::string SubspaceDomain::label(std::size_t i) const {
  std::ostringstream os;
  os << '<';
  const auto& m = members_.at(i);
  for (int r = 0; r < k_; ++r) {
    if (r) os << '|';
    for (int c = 0; c < d_; ++c) os << (c ? "," : "") << int(m[r * d_ + c]);
  }
  os << '>';
  return os.str();
}

Permutation matrix_action_on_domain(const Matrix& m, const SubspaceDomain& dom) {
  if (m.dim() != dom.dim() || m.q() != dom.q()) throw Error("matrix does not match domain");
  if (!m.invertible()) throw Error("matrix is singular");
  if (dom.form() && !preserves(*dom.form(), m)) throw Error("matrix does not preserve the form");
  std::vector<point_t> img(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    auto rows = dom.basis(i);
    for (auto& r : rows) r = r * m;
    auto j = dom.index_of(std::move(rows));
    if (!j) throw std::logic_error("isometry maps a domain member outside the domain");
    img[i] = static_cast<point_t>(*j);
  }
  return Permutation(std::move(img));
}

Permutation matrix_action_on_vectors(const Matrix& m) {
  std::size_t total = 1;
  for (int i = 0; i < m.dim(); ++i) total *= m.q();
  std::vector<point_t> img(total);
  for (std::size_t i = 0; i < total; ++i) {
    img[i] = static_cast<point_t>(vector_index(m.q(), vector_from_index(m.q(), m.dim(), i) * m));
  }
  return Permutation(std::move(img));
}

}  // namespace primbase::gf
