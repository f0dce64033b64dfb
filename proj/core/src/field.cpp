#include "primbase/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "primbase/error.hpp"

namespace primbase::gf {

// Conway polynomials for the non-prime orders; t - 0 style placeholders for
// prime orders (arithmetic is then plain mod-p).
const char* const kReductionTable =
    "# q p f c_0 .. c_f\n"
    "2 2 1 0 1\n"
    "3 3 1 0 1\n"
    "4 2 2 1 1 1\n"
    "5 5 1 0 1\n"
    "7 7 1 0 1\n"
    "8 2 3 1 1 0 1\n"
    "9 3 2 2 2 1\n";

std::vector<FieldSpec> parse_reduction_table(const std::string& text) {
  std::vector<FieldSpec> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    FieldSpec s;
    if (!(ls >> s.q)) continue;
    if (!(ls >> s.p >> s.f) || s.f < 1) throw ConfigError(lineno, "bad field header");
    int c;
    while (ls >> c) s.modulus.push_back(c);
    if (static_cast<int>(s.modulus.size()) != s.f + 1 || s.modulus.back() != 1) {
      throw ConfigError(lineno, "modulus must be monic of degree f");
    }
    int q = 1;
    for (int i = 0; i < s.f; ++i) q *= s.p;
    if (q != s.q) throw ConfigError(lineno, "q != p^f");
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::vector<int> digits(int x, int p, int f) {
  std::vector<int> d(f);
  for (int i = 0; i < f; ++i) {
    d[i] = x % p;
    x /= p;
  }
  return d;
}

int undigits(const std::vector<int>& d, int p) {
  int x = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) x = x * p + d[i];
  return x;
}

}  // namespace

Field::Field(const FieldSpec& spec) : spec_(spec), q_(spec.q), p_(spec.p), f_(spec.f) {
  const int q = q_, p = p_, f = f_;
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  frob_.resize(q);
  square_.assign(q, false);

  for (int a = 0; a < q; ++a) {
    auto da = digits(a, p, f);
    std::vector<int> dn(f);
    for (int i = 0; i < f; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = static_cast<elem_t>(undigits(dn, p));
    for (int b = 0; b < q; ++b) {
      auto db = digits(b, p, f);
      std::vector<int> ds(f);
      for (int i = 0; i < f; ++i) ds[i] = (da[i] + db[i]) % p;
      add_[a * q + b] = static_cast<elem_t>(undigits(ds, p));

      // Schoolbook product, then reduce by the monic modulus from the top.
      std::vector<int> prod(2 * f - 1, 0);
      for (int i = 0; i < f; ++i) {
        for (int j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      }
      for (int k = 2 * f - 2; k >= f; --k) {
        const int c = prod[k];
        if (c == 0) continue;
        for (int i = 0; i <= f; ++i) {
          prod[k - f + i] = ((prod[k - f + i] - c * spec.modulus[i]) % p + p) % p;
        }
      }
      prod.resize(f);
      mul_[a * q + b] = static_cast<elem_t>(undigits(prod, p));
    }
  }
  for (int a = 1; a < q; ++a) {
    for (int b = 1; b < q; ++b) {
      if (mul_[a * q + b] == 1) inv_[a] = static_cast<elem_t>(b);
    }
  }
  if (!check_axioms()) throw Error("field tables for q=" + std::to_string(q) + " fail axioms");
  for (int a = 0; a < q; ++a) {
    elem_t x = 1;
    for (int i = 0; i < p; ++i) x = mul(x, static_cast<elem_t>(a));
    frob_[a] = x;
    square_[mul(static_cast<elem_t>(a), static_cast<elem_t>(a))] = true;
  }
  for (int g = 1; g < q; ++g) {
    if (pow(static_cast<elem_t>(g), q - 1) != 1) continue;
    int ord = 1;
    for (elem_t x = static_cast<elem_t>(g); x != 1; x = mul(x, static_cast<elem_t>(g))) ++ord;
    if (ord == q - 1) {
      primitive_ = static_cast<elem_t>(g);
      break;
    }
  }
}

elem_t Field::inv(elem_t a) const {
  if (a == 0) throw Error("inverse of zero");
  return inv_[a];
}

elem_t Field::pow(elem_t a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  elem_t r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool Field::check_axioms() const {
  const int q = q_;
  for (int a = 0; a < q; ++a) {
    if (add(a, 0) != a || mul(a, 1) != a || add(a, neg(a)) != 0) return false;
    if (a != 0 && mul(a, inv_[a]) != 1) return false;
    for (int b = 0; b < q; ++b) {
      if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a)) return false;
      if (a != 0 && b != 0 && mul(a, b) == 0) return false;
      for (int c = 0; c < q; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c))) return false;
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return false;
      }
    }
  }
  return true;
}

bool is_supported_order(int q) {
  return std::find(kSupportedOrders.begin(), kSupportedOrders.end(), q) != kSupportedOrders.end();
}

const Field& field(int q) {
  static std::once_flag once;
  static std::map<int, std::unique_ptr<Field>> fields;
  std::call_once(once, [] {
    for (const auto& spec : parse_reduction_table(kReductionTable)) {
      fields.emplace(spec.q, std::make_unique<Field>(spec));
    }
  });
  auto it = fields.find(q);
  if (it == fields.end()) throw Error("unsupported field order q=" + std::to_string(q));
  return *it->second;
}

}  // namespace primbase::gf
