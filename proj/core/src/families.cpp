#include "primbase/families.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "embedded_data.hpp"
#include "primbase/error.hpp"
#include "primbase/formulas.hpp"

namespace primbase {

namespace {

using formulas::classical_order;
using formulas::Classical;
using gf::DomainKind;
using gf::FormKind;
using gf::Matrix;
using gf::Sign;
using gf::Vec;

const BigInt kM24Order = 244823040;

void check_cap(const FamilySpec& spec, const BigInt& predicted, const BuildOptions& opts) {
  if (predicted > opts.degree_cap) {
    throw CapExceeded(spec.to_string() + ": degree " + predicted.str() + " exceeds cap " +
                      std::to_string(opts.degree_cap));
  }
}

// The construction's acceptance gate.
void check_order(const FamilySpec& spec, const PermGroup& g, const BigInt& expected) {
  const BigInt got = g.order();
  if (got != expected) {
    throw ConstructionError(spec.to_string() + ": generated order " + got.str() + ", expected " +
                            expected.str());
  }
}

FamilySpec make_spec(Family f) {
  FamilySpec s;
  s.family = f;
  return s;
}

std::string join(const std::vector<point_t>& xs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

// Permutation of `points` induced by `image`, looked up through `index`.
template <class T, class F>
Permutation induced(const std::vector<T>& points, const std::map<T, point_t>& index, F image) {
  std::vector<point_t> img(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto it = index.find(image(points[i]));
    if (it == index.end()) throw std::logic_error("induced action leaves the domain");
    img[i] = it->second;
  }
  return Permutation(std::move(img));
}

template <class T>
std::map<T, point_t> index_of(const std::vector<T>& points) {
  std::map<T, point_t> idx;
  for (std::size_t i = 0; i < points.size(); ++i) idx.emplace(points[i], static_cast<point_t>(i));
  return idx;
}

std::vector<std::vector<point_t>> combinations(int m, int k) {
  std::vector<std::vector<point_t>> out;
  std::vector<point_t> c(k);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == static_cast<point_t>(m - k + i)) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

Permutation transposition01(int m) { return Permutation::from_cycles(m, {{0, 1}}); }

Permutation cycle_of(int m, int from) {
  std::vector<point_t> cyc;
  for (int i = from; i < m; ++i) cyc.push_back(i);
  return Permutation::from_cycles(m, {cyc});
}

ConstructedAction on_subsets(const FamilySpec& spec, int m, int k, std::vector<Permutation> gens,
                             const BigInt& expected, const BuildOptions& opts) {
  if (m < 3 || k < 1 || 2 * k > m) throw ConstructionError(spec.to_string() + ": need m >= 3, 1 <= k <= m/2");
  check_cap(spec, formulas::binomial(m, k), opts);
  const auto pts = combinations(m, k);
  const auto idx = index_of(pts);
  std::vector<Permutation> induced_gens;
  for (const auto& s : gens) {
    induced_gens.push_back(induced(pts, idx, [&](const std::vector<point_t>& c) {
      std::vector<point_t> out;
      for (point_t x : c) out.push_back(s(x));
      std::sort(out.begin(), out.end());
      return out;
    }));
  }
  ConstructedAction a;
  a.spec = spec;
  a.group = PermGroup(pts.size(), std::move(induced_gens));
  for (const auto& c : pts) a.labels.push_back("{" + join(c, ',') + "}");
  check_order(spec, a.group, expected);
  return a;
}

using Partition = std::vector<std::vector<point_t>>;

void partitions_rec(std::vector<point_t> rest, int a, Partition& cur, std::vector<Partition>& out) {
  if (rest.empty()) {
    out.push_back(cur);
    return;
  }
  const point_t first = rest[0];
  const std::vector<point_t> tail(rest.begin() + 1, rest.end());
  for (const auto& pick : combinations(static_cast<int>(tail.size()), a - 1)) {
    std::vector<point_t> block{first};
    std::vector<bool> used(tail.size(), false);
    for (point_t i : pick) {
      block.push_back(tail[i]);
      used[i] = true;
    }
    std::vector<point_t> remaining;
    for (std::size_t i = 0; i < tail.size(); ++i) {
      if (!used[i]) remaining.push_back(tail[i]);
    }
    cur.push_back(block);
    partitions_rec(remaining, a, cur, out);
    cur.pop_back();
  }
}

std::string vec_label(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(int(v[i]));
  return s + ")";
}

std::size_t ipow_size(int q, int d) {
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= q;
  return n;
}

// x -> x + lambda * e_j on row i, i.e. the elementary matrix I + lambda E_ij.
Matrix elementary(int q, int d, int i, int j, gf::elem_t lambda) {
  Matrix m = Matrix::identity(q, d);
  m(i, j) = lambda;
  return m;
}

// Distinct values among {1, primitive}.
std::vector<gf::elem_t> small_scalars(int q) {
  const gf::elem_t w = gf::field(q).primitive();
  if (w == 1) return {1};
  return {1, w};
}

// Adds candidates one at a time (keeping those that enlarge the group) until
// the image group reaches `target`.
PermGroup close_to_order(const FamilySpec& spec, const gf::SubspaceDomain& dom,
                         const std::vector<Matrix>& candidates, const BigInt& target,
                         std::vector<Matrix>& used) {
  StabilizerChain chain(dom.size());
  for (const auto& m : candidates) {
    if (chain.order() == target) break;
    if (chain.extend(gf::matrix_action_on_domain(m, dom))) used.push_back(m);
  }
  if (chain.order() != target) {
    throw ConstructionError(spec.to_string() + ": candidate isometries generate order " +
                            chain.order().str() + ", expected " + target.str());
  }
  return PermGroup::from_chain(std::move(chain));
}

std::vector<Vec> projective_points(int d, int q) {
  const auto p1 = gf::SubspaceDomain::enumerate(DomainKind::P, 1, d, q);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < p1.size(); ++i) out.push_back(p1.basis(i)[0]);
  return out;
}

// Nonzero lambda with lambda^sqrt(q) = -lambda.
std::vector<gf::elem_t> trace_zero(int q) {
  const auto& F = gf::field(q);
  const int r = gf::sqrt_order(q);
  std::vector<gf::elem_t> out;
  for (int x = 1; x < q; ++x) {
    const auto l = static_cast<gf::elem_t>(x);
    if (F.pow(l, r) == F.neg(l)) out.push_back(l);
  }
  return out;
}

int gcd(int a, int b) { return std::gcd(a, b); }

bool is_orthogonal(Family f) {
  return f == Family::GOOnS1 || f == Family::GOOnN1 || f == Family::OmegaOnS1 ||
         f == Family::OmegaOnN1;
}

bool is_omega(Family f) { return f == Family::OmegaOnS1 || f == Family::OmegaOnN1; }

Sign orthogonal_sign(const FamilySpec& s) {
  return s.need('d') % 2 == 1 ? Sign::Circle : s.sign;
}

void check_envelope(const FamilySpec& s) {
  const int d = s.need('d'), q = s.need('q');
  for (const auto& e : classical_envelope()) {
    if (e.family != s.family) continue;
    if (d >= e.d_min && d <= e.d_max && std::find(e.qs.begin(), e.qs.end(), q) != e.qs.end()) {
      if (is_orthogonal(s.family) && d == 4 && q == 2 && s.sign == Sign::Plus) break;
      return;
    }
  }
  throw ConstructionError(s.to_string() + ": outside the constructible envelope");
}

}  // namespace

const std::vector<EnvelopeEntry>& classical_envelope() {
  // Ranges where the generating sets below are validated and the degrees stay
  // in the thousands. GO_4^+(2) is excluded: it is not generated by reflections.
  static const std::vector<EnvelopeEntry> table{
      {Family::LinearOnPk, 2, 6, {2, 3, 4, 5, 7, 8, 9}},
      {Family::SpOnSk, 4, 8, {2, 3, 4, 5}},
      {Family::SpOnGOCosets, 4, 8, {2}},
      {Family::GOOnS1, 3, 8, {2, 3, 4, 5}},
      {Family::GOOnN1, 3, 8, {2, 3, 4, 5}},
      {Family::OmegaOnS1, 5, 8, {2, 3, 4, 5}},
      {Family::OmegaOnN1, 5, 8, {2, 3, 4, 5}},
      {Family::UnitaryOnS1, 3, 4, {2, 3}},
      {Family::UnitaryOnN1, 3, 4, {2, 3}},
  };
  return table;
}

BigInt classical_image_order(const FamilySpec& s) {
  const int d = s.need('d'), q = s.need('q');
  switch (s.family) {
    case Family::LinearOnPk:
      return classical_order(Classical::SL, d, q) / gcd(d, q - 1);
    case Family::SpOnSk:
      return classical_order(Classical::Sp, d, q) / gcd(2, q - 1);
    case Family::GOOnS1:
    case Family::GOOnN1:
      return classical_order(Classical::GO, d, q, orthogonal_sign(s)) / gcd(2, q - 1);
    case Family::OmegaOnS1:
    case Family::OmegaOnN1: {
      const BigInt go = classical_order(Classical::GO, d, q, orthogonal_sign(s));
      if (q % 2 == 0) return go / 2;
      if (d % 2 == 1) return go / 4;
      // -1 lies in Omega iff 4 divides q^m - eps
      const BigInt qm = formulas::ipow(q, d / 2);
      const int e = s.sign == Sign::Minus ? -1 : 1;
      return (qm - e) % 4 == 0 ? go / 8 : go / 4;
    }
    case Family::UnitaryOnS1:
    case Family::UnitaryOnN1:
      return classical_order(Classical::SU, d, q) / gcd(d, q + 1);
    default:
      throw Error(s.to_string() + ": not a classical family");
  }
}

ConstructedAction sym_on_subsets(int m, int k, const BuildOptions& opts) {
  auto spec = make_spec(Family::SymSubsets);
  spec.m = m;
  spec.k = k;
  return on_subsets(spec, m, k, {transposition01(m), cycle_of(m, 0)}, formulas::factorial(m), opts);
}

ConstructedAction alt_on_subsets(int m, int k, const BuildOptions& opts) {
  auto spec = make_spec(Family::AltSubsets);
  spec.m = m;
  spec.k = k;
  if (m < 3) throw ConstructionError(spec.to_string() + ": need m >= 3");
  // A_m = <(0 1 2), (0 .. m-1)> for m odd, <(0 1 2), (1 .. m-1)> for m even
  std::vector<Permutation> gens{Permutation::from_cycles(m, {{0, 1, 2}}),
                                cycle_of(m, m % 2 == 1 ? 0 : 1)};
  return on_subsets(spec, m, k, std::move(gens), formulas::factorial(m) / 2, opts);
}

ConstructedAction sym_on_partitions(int a, int b, const BuildOptions& opts) {
  auto spec = make_spec(Family::SymPartitions);
  spec.a = a;
  spec.b = b;
  if (a < 2 || b < 2) throw ConstructionError(spec.to_string() + ": need a, b >= 2");
  // S_4 on the 3 partitions of type 2^2 has a kernel of order 4.
  if (a == 2 && b == 2) throw ConstructionError(spec.to_string() + ": action is not faithful");
  check_cap(spec, formulas::degree(spec), opts);
  const int m = a * b;
  std::vector<point_t> all(m);
  std::iota(all.begin(), all.end(), 0);
  std::vector<Partition> pts;
  Partition cur;
  partitions_rec(all, a, cur, pts);
  std::sort(pts.begin(), pts.end());
  const auto idx = index_of(pts);
  std::vector<Permutation> gens;
  for (const auto& s : {transposition01(m), cycle_of(m, 0)}) {
    gens.push_back(induced(pts, idx, [&](const Partition& p) {
      Partition out;
      for (const auto& blk : p) {
        std::vector<point_t> nb;
        for (point_t x : blk) nb.push_back(s(x));
        std::sort(nb.begin(), nb.end());
        out.push_back(std::move(nb));
      }
      std::sort(out.begin(), out.end());
      return out;
    }));
  }
  ConstructedAction act;
  act.spec = spec;
  act.group = PermGroup(pts.size(), std::move(gens));
  for (const auto& p : pts) {
    std::string l = "{";
    for (std::size_t i = 0; i < p.size(); ++i) l += (i ? "|" : "") + join(p[i], ',');
    act.labels.push_back(l + "}");
  }
  check_order(spec, act.group, formulas::factorial(m));
  return act;
}

ConstructedAction affine(int d, int q, AffinePart part, const BuildOptions& opts) {
  auto spec = make_spec(Family::Affine);
  spec.d = d;
  spec.q = q;
  spec.group = part;
  if (d < 1 || !gf::is_supported_order(q)) throw ConstructionError(spec.to_string() + ": unsupported parameters");
  check_cap(spec, formulas::ipow(q, d), opts);
  const auto& F = gf::field(q);
  const gf::elem_t w = F.primitive();
  const std::size_t n = ipow_size(q, d);

  std::vector<Matrix> linear;
  if (part == AffinePart::Full) {
    if (w != 1) {
      Vec diag(d, 1);
      diag[0] = w;
      linear.push_back(Matrix::diagonal(q, diag));
    }
  } else if (d >= 2 && w != 1) {
    Vec diag(d, 1);
    diag[0] = w;
    diag[1] = F.inv(w);
    linear.push_back(Matrix::diagonal(q, diag));
  }
  if (d >= 2) {
    linear.push_back(elementary(q, d, 0, 1, 1));
    // e_i -> e_{i+1}; one entry negated for even d so the determinant is 1
    Matrix c(q, d);
    for (int i = 0; i < d; ++i) c(i, (i + 1) % d) = 1;
    if (part == AffinePart::Special && d % 2 == 0) c(d - 1, 0) = F.neg(1);
    linear.push_back(c);
  }

  std::vector<Permutation> gens;
  for (int i = 0; i < d; ++i) {
    std::vector<point_t> img(n);
    const Vec e = gf::unit(d, i);
    for (std::size_t x = 0; x < n; ++x) {
      img[x] = static_cast<point_t>(gf::vector_index(q, gf::add(F, gf::vector_from_index(q, d, x), e)));
    }
    gens.emplace_back(std::move(img));
  }
  for (const auto& m : linear) gens.push_back(gf::matrix_action_on_vectors(m));

  ConstructedAction act;
  act.spec = spec;
  act.group = PermGroup(n, std::move(gens));
  act.matrices = linear;
  for (std::size_t x = 0; x < n; ++x) act.labels.push_back(vec_label(gf::vector_from_index(q, d, x)));
  const BigInt lin = classical_order(part == AffinePart::Full ? Classical::GL : Classical::SL, d, q);
  check_order(spec, act.group, formulas::ipow(q, d) * lin);
  return act;
}

ConstructedAction classical_action(const FamilySpec& spec, const BuildOptions& opts) {
  check_envelope(spec);
  const int d = spec.need('d'), q = spec.need('q');
  const BigInt predicted = formulas::degree(spec);
  check_cap(spec, predicted, opts);

  std::optional<gf::Form> form;
  DomainKind kind = DomainKind::S;
  int k = 1;
  int fq = q;  // field order of the matrices
  switch (spec.family) {
    case Family::LinearOnPk:
      kind = DomainKind::P;
      k = spec.need('k');
      break;
    case Family::SpOnSk:
      form = gf::make_form(FormKind::Symplectic, d, q);
      k = spec.need('k');
      break;
    case Family::GOOnS1:
    case Family::OmegaOnS1:
    case Family::GOOnN1:
    case Family::OmegaOnN1:
      form = gf::make_form(FormKind::Quadratic, d, q, orthogonal_sign(spec));
      if (spec.family == Family::GOOnN1 || spec.family == Family::OmegaOnN1) kind = DomainKind::N;
      break;
    case Family::UnitaryOnS1:
    case Family::UnitaryOnN1:
      fq = q * q;
      form = gf::make_form(FormKind::Hermitian, d, fq);
      if (spec.family == Family::UnitaryOnN1) kind = DomainKind::N;
      break;
    default:
      throw ConstructionError(spec.to_string() + ": not a classical family");
  }
  auto dom = std::make_shared<const gf::SubspaceDomain>(gf::SubspaceDomain::enumerate(
      kind, k, d, fq, form, kind == DomainKind::N ? spec.cls : gf::PointClass::Any));
  if (dom->size() != predicted) {
    throw ConstructionError(spec.to_string() + ": domain has " + std::to_string(dom->size()) +
                            " members, formula gives " + predicted.str());
  }

  std::vector<Matrix> candidates;
  BigInt target;
  switch (spec.family) {
    case Family::LinearOnPk:
      for (auto l : small_scalars(q))
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            if (i != j) candidates.push_back(elementary(q, d, i, j, l));
      target = classical_image_order(spec);
      break;
    case Family::SpOnSk:
      for (const auto& v : projective_points(d, q))
        for (auto l : small_scalars(q)) candidates.push_back(gf::transvection(*form, v, l));
      target = classical_image_order(spec);
      break;
    case Family::UnitaryOnS1:
    case Family::UnitaryOnN1:
      for (const auto& v : projective_points(d, fq)) {
        if (!gf::is_singular(*form, v)) continue;
        for (auto l : trace_zero(fq)) candidates.push_back(gf::transvection(*form, v, l));
      }
      // SU_3(2) is not generated by its transvections; it is small enough to
      // list outright
      if (d == 3 && fq == 4) {
        std::vector<gf::elem_t> e(9);
        for (int code = 0; code < (1 << 18); ++code) {
          for (int t = 0; t < 9; ++t) e[t] = static_cast<gf::elem_t>((code >> (2 * t)) & 3);
          Matrix m(4, 3, e);
          if ((m * m.frobenius().transpose()).is_identity() && m.determinant() == 1)
            candidates.push_back(std::move(m));
        }
      }
      target = classical_image_order(spec);
      break;
    default: {
      // orthogonal: all reflections generate GO; Omega is its derived subgroup
      for (const auto& v : projective_points(d, q)) {
        if (!gf::is_singular(*form, v)) candidates.push_back(gf::reflection(*form, v));
      }
      auto go = spec;
      go.family = kind == DomainKind::S ? Family::GOOnS1 : Family::GOOnN1;
      target = classical_image_order(go);
    }
  }

  ConstructedAction act;
  act.spec = spec;
  act.domain = dom;
  act.group = close_to_order(spec, *dom, candidates, target, act.matrices);
  if (is_omega(spec.family)) {
    act.group = derived_subgroup(act.group);
    check_order(spec, act.group, classical_image_order(spec));
  }
  for (std::size_t i = 0; i < dom->size(); ++i) act.labels.push_back(dom->label(i));
  return act;
}

ConstructedAction sp_on_go_cosets(int d, Sign sign, const BuildOptions& opts) {
  auto spec = make_spec(Family::SpOnGOCosets);
  spec.d = d;
  spec.q = 2;
  spec.sign = sign;
  check_envelope(spec);
  check_cap(spec, formulas::degree(spec), opts);
  const int q = 2;
  const auto sp = gf::make_form(FormKind::Symplectic, d, q);

  // Q_c(x) = sum c_i x_i^2 + sum_i x_{2i} x_{2i+1}; all of these polarize to sp.
  auto quadratic = [&](const Vec& c) {
    gf::Form f;
    f.kind = FormKind::Quadratic;
    f.d = d;
    f.q = q;
    f.coeff = Matrix(q, d);
    for (int i = 0; i < d; ++i) f.coeff(i, i) = c[i];
    for (int i = 0; i + 1 < d; i += 2) f.coeff(i, i + 1) = 1;
    f.gram = f.coeff + f.coeff.transpose();
    f.sign = gf::classify(f);
    return f;
  };
  std::vector<Vec> pts;
  for (std::size_t x = 0; x < ipow_size(q, d); ++x) {
    Vec c = gf::vector_from_index(q, d, x);
    if (quadratic(c).sign == sign) pts.push_back(std::move(c));
  }
  std::vector<gf::Form> forms;
  for (const auto& c : pts) forms.push_back(quadratic(c));
  const auto idx = index_of(pts);

  // Right action Q^g(x) = Q(x g^-1): the new diagonal is Q(e_i g^-1).
  auto act_on = [&](const Matrix& g) {
    const Matrix gi = g.inverse();
    std::vector<point_t> img(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
      Vec c(d);
      for (int i = 0; i < d; ++i) c[i] = gf::evaluate(forms[j], gf::unit(d, i) * gi);
      img[j] = idx.at(c);
    }
    return Permutation(std::move(img));
  };

  const BigInt target = classical_order(Classical::Sp, d, q);
  StabilizerChain chain(pts.size());
  ConstructedAction act;
  for (const auto& v : projective_points(d, q)) {
    if (chain.order() == target) break;
    const Matrix t = gf::transvection(sp, v, 1);
    if (chain.extend(act_on(t))) act.matrices.push_back(t);
  }
  act.spec = spec;
  act.group = PermGroup::from_chain(std::move(chain));
  for (const auto& c : pts) {
    std::string l = "Q";
    for (auto x : c) l += static_cast<char>('0' + x);
    act.labels.push_back(l);
  }
  check_order(spec, act.group, target);
  return act;
}

ConstructedAction wreath_product_action(const ConstructedAction& inner, int r, const BuildOptions& opts) {
  auto spec = make_spec(Family::WreathProduct);
  spec.r = r;
  spec.inner = std::make_shared<const FamilySpec>(inner.spec);
  if (r < 2) throw ConstructionError(spec.to_string() + ": need r >= 2");
  const std::size_t g = inner.n();
  check_cap(spec, boost::multiprecision::pow(BigInt(g), r), opts);
  std::size_t n = 1;
  for (int i = 0; i < r; ++i) n *= g;

  // coordinates of point x, first coordinate most significant
  auto coords = [&](std::size_t x) {
    std::vector<std::size_t> c(r);
    for (int i = r - 1; i >= 0; --i) {
      c[i] = x % g;
      x /= g;
    }
    return c;
  };
  auto point = [&](const std::vector<std::size_t>& c) {
    std::size_t x = 0;
    for (int i = 0; i < r; ++i) x = x * g + c[i];
    return static_cast<point_t>(x);
  };
  auto make = [&](auto f) {
    std::vector<point_t> img(n);
    for (std::size_t x = 0; x < n; ++x) img[x] = point(f(coords(x)));
    return Permutation(std::move(img));
  };

  std::vector<Permutation> gens;
  for (const auto& h : inner.group.generators()) {
    gens.push_back(make([&](std::vector<std::size_t> c) {
      c[0] = h(static_cast<point_t>(c[0]));
      return c;
    }));
  }
  gens.push_back(make([](std::vector<std::size_t> c) {
    std::swap(c[0], c[1]);
    return c;
  }));
  gens.push_back(make([&](const std::vector<std::size_t>& c) {
    std::vector<std::size_t> out(r);
    for (int i = 0; i < r; ++i) out[(i + 1) % r] = c[i];
    return out;
  }));

  ConstructedAction act;
  act.spec = spec;
  act.group = PermGroup(n, std::move(gens));
  for (std::size_t x = 0; x < n; ++x) {
    std::string l = "(";
    const auto c = coords(x);
    for (int i = 0; i < r; ++i) l += (i ? ";" : "") + inner.labels[c[i]];
    act.labels.push_back(l + ")");
  }
  check_order(spec, act.group,
              boost::multiprecision::pow(inner.group.order(), r) * formulas::factorial(r));
  return act;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<Permutation> parse_generator_file(const std::string& text) {
  std::istringstream in(text);
  std::string line, body;
  std::size_t lineno = 0, degree = 0;
  std::vector<Permutation> gens;
  bool have_checksum = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (have_checksum) {
      if (!line.empty()) throw ConfigError(lineno, "content after checksum line");
      continue;
    }
    if (line.rfind("checksum ", 0) == 0) {
      std::istringstream ls(line.substr(9));
      std::string algo, hex;
      ls >> algo >> hex;
      if (algo != "fnv1a64" || hex.size() != 16) throw ConfigError(lineno, "bad checksum line");
      std::uint64_t want = 0;
      auto [p, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), want, 16);
      if (ec != std::errc() || p != hex.data() + hex.size()) throw ConfigError(lineno, "bad checksum value");
      if (fnv1a64(body) != want) throw ConfigError(lineno, "checksum mismatch");
      have_checksum = true;
      continue;
    }
    body += line + "\n";
    if (lineno == 1) {
      auto [p, ec] = std::from_chars(line.data(), line.data() + line.size(), degree);
      if (ec != std::errc() || p != line.data() + line.size() || degree == 0) {
        throw ConfigError(lineno, "first line must be the degree");
      }
      continue;
    }
    if (line.size() < 2 || line.front() != '[' || line.back() != ']') {
      throw ConfigError(lineno, "expected an image list [..]");
    }
    std::vector<point_t> img;
    std::string_view rest(line.data() + 1, line.size() - 2);
    while (!rest.empty()) {
      point_t v = 0;
      auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
      if (ec != std::errc()) throw ConfigError(lineno, "bad point");
      img.push_back(v);
      rest.remove_prefix(static_cast<std::size_t>(p - rest.data()));
      if (!rest.empty()) {
        if (rest.front() != ',') throw ConfigError(lineno, "expected ','");
        rest.remove_prefix(1);
      }
    }
    if (img.size() != degree) throw ConfigError(lineno, "image list length differs from degree");
    try {
      gens.emplace_back(std::move(img));
    } catch (const Error& e) {
      throw ConfigError(lineno, e.what());
    }
  }
  if (!have_checksum) throw ConfigError(lineno, "missing checksum line");
  if (gens.empty()) throw ConfigError(lineno, "no generators");
  return gens;
}

ConstructedAction mathieu24() {
  ConstructedAction act;
  act.spec = make_spec(Family::Mathieu24);
  act.group = PermGroup(24, parse_generator_file(detail::kMathieu24Gens));
  for (int i = 0; i < 24; ++i) act.labels.push_back(std::to_string(i));
  check_order(act.spec, act.group, kM24Order);
  return act;
}

ConstructedAction build(const FamilySpec& spec, const BuildOptions& opts) {
  if (!is_constructible(spec.family)) {
    throw ConstructionError(spec.to_string() + ": formula-only family");
  }
  auto act = [&] {
    switch (spec.family) {
      case Family::SymSubsets: return sym_on_subsets(spec.need('m'), spec.need('k'), opts);
      case Family::AltSubsets: return alt_on_subsets(spec.need('m'), spec.need('k'), opts);
      case Family::SymPartitions: return sym_on_partitions(spec.need('a'), spec.need('b'), opts);
      case Family::Affine: return affine(spec.need('d'), spec.need('q'), spec.group, opts);
      case Family::SpOnGOCosets:
        if (spec.q.value_or(2) != 2) throw ConstructionError(spec.to_string() + ": only q = 2");
        return sp_on_go_cosets(spec.need('d'), spec.sign, opts);
      case Family::WreathProduct:
        if (!spec.inner) throw ConstructionError(spec.to_string() + ": needs an inner spec");
        return wreath_product_action(build(*spec.inner, opts), spec.need('r'), opts);
      case Family::Mathieu24: return mathieu24();
      default: return classical_action(spec, opts);
    }
  }();
  act.spec = spec;
  return act;
}

}  // namespace primbase
