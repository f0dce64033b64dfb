#include "primbase/formulas.hpp"

#include <cmath>
#include <limits>

#include "primbase/error.hpp"

namespace primbase::formulas {

namespace mp = boost::multiprecision;

BigInt factorial(int n) {
  if (n < 0) throw Error("factorial of a negative number");
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt ipow(long long base, int exp) {
  if (exp < 0) throw Error("negative exponent");
  return mp::pow(BigInt(base), static_cast<unsigned>(exp));
}

int floor_log2(const BigInt& x) {
  if (x < 1) throw Error("log of a non-positive number");
  return static_cast<int>(mp::msb(x));
}

int ceil_log2(const BigInt& x) {
  const int f = floor_log2(x);
  return (BigInt(1) << f) == x ? f : f + 1;
}

int ceil_log(const BigInt& x, int base) {
  if (base < 2) throw Error("log base must be at least 2");
  int e = 0;
  BigInt p = 1;
  while (p < x) {
    p *= base;
    ++e;
  }
  return e;
}

double log2(const BigInt& x) {
  if (x < 1) throw Error("log of a non-positive number");
  // Keep the top 60 bits so huge values do not overflow a double.
  const int shift = std::max(0, floor_log2(x) - 60);
  return std::log2(static_cast<double>(BigInt(x >> shift))) + shift;
}

HighFloat log2_hp(const BigInt& x) {
  if (x < 1) throw Error("log of a non-positive number");
  return mp::log(HighFloat(x)) / mp::log(HighFloat(2));
}

// ----------------------------------------------------------------- degrees

namespace {

void require(bool ok, const FamilySpec& s, const char* what) {
  if (!ok) throw Error(s.to_string() + ": " + what);
}

int eps(gf::Sign s) { return s == gf::Sign::Minus ? -1 : 1; }

// (-1)^i
int alt(int i) { return i % 2 == 0 ? 1 : -1; }

BigInt sp_totally_isotropic(int d, int k, int q) {
  const int m = d / 2;
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= ipow(q, 2 * (m - i)) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

BigInt orth_even_totally_singular(int d, int k, int q, int e) {
  const int m = d / 2;
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (ipow(q, m - i) - e) * (ipow(q, m - i - 1) + e);
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

BigInt unitary_totally_isotropic(int d, int k, int q) {
  BigInt num = 1, den = 1;
  for (int i = d - 2 * k + 1; i <= d; ++i) num *= ipow(q, i) - alt(i);
  for (int i = 1; i <= k; ++i) den *= ipow(q, 2 * i) - 1;
  return num / den;
}

// Witt index check and sign sanity for orthogonal specs.
void check_orthogonal(const FamilySpec& s, int d, int q) {
  require(d >= 3, s, "orthogonal families need d >= 3");
  if (d % 2 == 0) {
    require(s.sign == gf::Sign::Plus || s.sign == gf::Sign::Minus, s, "even d needs sign + or -");
  } else {
    require(q % 2 == 1, s, "odd d needs odd q");
    require(s.sign == gf::Sign::None || s.sign == gf::Sign::Circle, s, "odd d takes sign o");
  }
}

BigInt orth_nonsingular_points(const FamilySpec& s, int d, int q) {
  const int m = d / 2;
  if (q % 2 == 0) {
    require(s.cls == gf::PointClass::Any, s, "even q has a single class of nonsingular points");
    return ipow(q, m - 1) * (ipow(q, m) - eps(s.sign));
  }
  if (d % 2 == 0) {
    const BigInt all = ipow(q, m - 1) * (ipow(q, m) - eps(s.sign));
    if (s.cls == gf::PointClass::Any) return all;
    require(s.cls == gf::PointClass::Square || s.cls == gf::PointClass::Nonsquare, s,
            "even d: cls is square or nonsquare");
    return all / 2;
  }
  if (s.cls == gf::PointClass::Any) return ipow(q, 2 * m);
  require(s.cls == gf::PointClass::Plus || s.cls == gf::PointClass::Minus, s, "odd d: cls is + or -");
  const int e = s.cls == gf::PointClass::Minus ? -1 : 1;
  return ipow(q, m) * (ipow(q, m) + e) / 2;
}

}  // namespace

BigInt degree(const FamilySpec& s) {
  switch (s.family) {
    case Family::SymSubsets:
    case Family::AltSubsets: {
      const int m = s.need('m'), k = s.need('k');
      require(m >= 3 && k >= 1 && 2 * k <= m, s, "need m >= 3 and 1 <= k <= m/2");
      return binomial(m, k);
    }
    case Family::SymPartitions: {
      const int a = s.need('a'), b = s.need('b');
      require(a >= 2 && b >= 2, s, "need a, b >= 2");
      return factorial(a * b) / (mp::pow(factorial(a), b) * factorial(b));
    }
    case Family::Affine: {
      const int d = s.need('d'), q = s.need('q');
      require(d >= 1 && q >= 2, s, "need d >= 1, q >= 2");
      return ipow(q, d);
    }
    case Family::LinearOnPk: {
      const int d = s.need('d'), q = s.need('q'), k = s.need('k');
      require(d >= 2 && k >= 1 && k < d, s, "need 1 <= k < d");
      return gf::gaussian_binomial(d, k, q);
    }
    case Family::SpOnSk: {
      const int d = s.need('d'), q = s.need('q'), k = s.need('k');
      require(d >= 2 && d % 2 == 0 && k >= 1 && 2 * k <= d, s, "need d even, 1 <= k <= d/2");
      return sp_totally_isotropic(d, k, q);
    }
    case Family::SpOnGOCosets: {
      const int d = s.need('d');
      const int q = s.q.value_or(2);
      require(d >= 2 && d % 2 == 0 && q % 2 == 0, s, "need d even and q even");
      require(s.sign == gf::Sign::Plus || s.sign == gf::Sign::Minus, s, "need sign + or -");
      const BigInt qm = ipow(q, d / 2);
      return qm * (qm + eps(s.sign)) / 2;
    }
    case Family::GOOnS1:
    case Family::OmegaOnS1: {
      const int d = s.need('d'), q = s.need('q');
      check_orthogonal(s, d, q);
      if (d % 2 == 1) return (ipow(q, d - 1) - 1) / (q - 1);
      return orth_even_totally_singular(d, 1, q, eps(s.sign));
    }
    case Family::GOOnN1:
    case Family::OmegaOnN1: {
      const int d = s.need('d'), q = s.need('q');
      check_orthogonal(s, d, q);
      return orth_nonsingular_points(s, d, q);
    }
    case Family::UnitaryOnS1:
    case Family::UnitaryOnSk: {
      const int d = s.need('d'), q = s.need('q');
      const int k = s.family == Family::UnitaryOnS1 ? 1 : s.need('k');
      require(d >= 2 && k >= 1 && 2 * k <= d, s, "need 1 <= k <= d/2");
      return unitary_totally_isotropic(d, k, q);
    }
    case Family::UnitaryOnN1: {
      const int d = s.need('d'), q = s.need('q');
      require(d >= 2, s, "need d >= 2");
      return ipow(q, d - 1) * (ipow(q, d) - alt(d)) / (q + 1);
    }
    case Family::OrthogonalOnSk: {
      const int d = s.need('d'), q = s.need('q'), k = s.need('k');
      check_orthogonal(s, d, q);
      const int m = d / 2;
      const int witt = d % 2 == 1 ? m : (s.sign == gf::Sign::Plus ? m : m - 1);
      require(k >= 1 && k <= witt, s, "k exceeds the Witt index");
      if (d % 2 == 1) return sp_totally_isotropic(d - 1, k, q);
      return orth_even_totally_singular(d, k, q, eps(s.sign));
    }
    case Family::LinearOnPairs1: {
      const int d = s.need('d'), q = s.need('q'), k = s.need('k');
      require(k >= 1 && 2 * k < d, s, "need 1 <= k < d/2");
      BigInt num = 1, den = 1;
      for (int i = 1; i <= k; ++i) {
        num *= ipow(q, d - k + i) - 1;
        den *= ipow(q, i) - 1;
      }
      return ipow(q, k * (d - k)) * num / den;
    }
    case Family::LinearOnPairs2: {
      const int d = s.need('d'), q = s.need('q'), k = s.need('k');
      require(k >= 1 && 2 * k < d, s, "need 1 <= k < d/2");
      BigInt num = 1, den = 1;
      for (int i = d - 2 * k + 1; i <= d; ++i) num *= ipow(q, i) - 1;
      for (int i = 1; i <= k; ++i) den *= (ipow(q, i) - 1) * (ipow(q, i) - 1);
      return num / den;
    }
    case Family::Triality: {
      const int q = s.need('q');
      require(q >= 2, s, "need q >= 2");
      const int c = q % 2 == 1 ? 2 : 1;
      const BigInt qq = q;
      return (qq + 1) * (qq + 1) * (qq + 1) * (qq * qq + 1) * (qq * qq + 1) *
             ((ipow(q, 6) - 1) / (qq * qq - 1)) / c;
    }
    case Family::WreathProduct: {
      require(static_cast<bool>(s.inner), s, "needs an inner spec");
      const int r = s.need('r');
      require(r >= 2, s, "need r >= 2");
      return mp::pow(degree(*s.inner), r);
    }
    case Family::Mathieu24:
      return 24;
  }
  throw Error("unknown family");
}

// ----------------------------------------------------------------- orders

BigInt classical_order(Classical g, int d, int q, gf::Sign sign) {
  if (d < 1 || q < 2) throw Error("classical_order: need d >= 1, q >= 2");
  switch (g) {
    case Classical::GL:
    case Classical::SL: {
      BigInt r = ipow(q, d * (d - 1) / 2);
      for (int i = 1; i <= d; ++i) r *= ipow(q, i) - 1;
      return g == Classical::GL ? r : r / (q - 1);
    }
    case Classical::Sp: {
      if (d % 2) throw Error("Sp needs even d");
      const int m = d / 2;
      BigInt r = ipow(q, m * m);
      for (int i = 1; i <= m; ++i) r *= ipow(q, 2 * i) - 1;
      return r;
    }
    case Classical::GO: {
      const int m = d / 2;
      if (d % 2 == 1) {
        if (q % 2 == 0) throw Error("GO with odd d needs odd q");
        BigInt r = 2 * ipow(q, m * m);
        for (int i = 1; i <= m; ++i) r *= ipow(q, 2 * i) - 1;
        return r;
      }
      if (sign != gf::Sign::Plus && sign != gf::Sign::Minus) throw Error("GO with even d needs a sign");
      BigInt r = 2 * ipow(q, m * (m - 1)) * (ipow(q, m) - eps(sign));
      for (int i = 1; i < m; ++i) r *= ipow(q, 2 * i) - 1;
      return r;
    }
    case Classical::GU:
    case Classical::SU: {
      BigInt r = ipow(q, d * (d - 1) / 2);
      for (int i = 1; i <= d; ++i) r *= ipow(q, i) - alt(i);
      return g == Classical::GU ? r : r / (q + 1);
    }
  }
  throw Error("unknown classical group");
}

// ------------------------------------------------------ partition base size

std::optional<BzValue> bz(int a, int b) {
  if (a < 2 || b < 2) throw Error("bz needs a, b >= 2");
  if (a == 2) {
    if (b == 2) return std::nullopt;
    return BzValue{b == 3 ? 4 : 3, false};
  }
  if (b == 2) {
    if (a == 3) return std::nullopt;
    if (a == 4) return BzValue{5, false};
    return BzValue{ceil_log2(a + 3) + 1, false};
  }
  const bool exceptional = (a == 3 && (b == 6 || b == 7)) || (a == 4 && b == 7) ||
                           (a == 7 && b == 3) || b == a + 2;
  if (exceptional) return BzValue{4, true};
  return BzValue{ceil_log(a + 2, b) + 1, false};
}

// ------------------------------------------------------------------ bounds

double n_log_n(const BigInt& n) { return static_cast<double>(n) * log2(n); }
HighFloat n_log_n_hp(const BigInt& n) { return HighFloat(n) * log2_hp(n); }

double thm2(const BigInt& n) { return log2(n) / 2 + 6; }
double mrd(const BigInt& n) { return 2 + log2(n); }
double liebeck(const BigInt& n) { return 9 * log2(n); }
double nonstandard7() { return 7; }

double dk_plus_c(int d, int k, double c) {
  if (k < 1) throw Error("dk_plus_c needs k >= 1");
  return static_cast<double>(d) / k + c;
}

int bow10_wreath(int k, const BigInt& n, int b_inner) {
  if (k < 2 || n < 2) throw Error("bow10_wreath needs k >= 2 and n >= 2");
  const int num = ceil_log2(k);
  const int den = floor_log2(n);
  return (num + den - 1) / den + b_inner;
}

double largebase_hlm(const BigInt& order, const BigInt& n) {
  return 2 * log2(order) / log2(n) + 22;
}

std::pair<int, int> diagonal_bracket(int k, const BigInt& t_order) {
  if (k < 2 || t_order < 2) throw Error("diagonal_bracket needs k >= 2 and |T| >= 2");
  // ceil(log k / log|T|) is the least e with |T|^e >= k.
  const int e = ceil_log(k, static_cast<int>(std::min<BigInt>(t_order, k + 1)));
  return {e + 1, e + 2};
}

double bound(const std::string& name, const std::map<std::string, BigInt>& p) {
  auto get = [&](const char* key) -> const BigInt& {
    auto it = p.find(key);
    if (it == p.end()) throw Error("bound " + name + " needs parameter " + key);
    return it->second;
  };
  auto small = [&](const char* key) { return static_cast<int>(get(key)); };
  if (name == "thm2") return thm2(get("n"));
  if (name == "mrd") return mrd(get("n"));
  if (name == "liebeck") return liebeck(get("n"));
  if (name == "nonstandard7") return nonstandard7();
  if (name == "dk_plus_c") return dk_plus_c(small("d"), small("k"), static_cast<double>(get("c")));
  if (name == "bow10_wreath") return bow10_wreath(small("k"), get("n"), small("b_inner"));
  if (name == "largebase_hlm") return largebase_hlm(get("order"), get("n"));
  throw Error("unknown bound '" + name + "'");
}

// ----------------------------------------------------- inequality chains

double chain_f_partition(int a) {
  if (a < 2) throw Error("chain_f_partition needs a >= 2");
  const double log10fact = log2(factorial(10));
  return 0.5 * (4 * a * std::log2(4.0 / 3.0) - log10fact) + 6 - ceil_log(a + 2, 4) - 1;
}

long long chain_quadric(int d, int k) {
  if (k < 3 || 2 * k >= d) throw Error("chain_quadric needs 3 <= k < d/2");
  const long long kk = k;
  return -3 * kk * kk + 2 * kk * d - 2 * kk;
}

std::pair<int, long long> chain_quadric_min(int d) {
  std::optional<std::pair<int, long long>> best;
  for (int k = 3; 2 * k < d; ++k) {
    const long long v = chain_quadric(d, k);
    if (!best || v < best->second) best = std::pair{k, v};
  }
  if (!best) throw Error("chain_quadric_min: no k with 3 <= k < d/2");
  return *best;
}

double chain_diagonal(int k) {
  if (k < 3) throw Error("chain_diagonal needs k >= 3");
  const double l60 = std::log2(60.0);
  return 2 * std::log2(static_cast<double>(k)) - (k - 1) * l60 * l60 - 6 * l60;
}

double chain_product_margin(int k, double n) {
  if (k < 2 || n < 2) throw Error("chain_product_margin needs k >= 2, n >= 2");
  return (k - 2) * std::log2(n) - (k - 5);
}

double chain_largebase(int m, int r, int k) {
  if (m < 20 || r < 40 || k < 1 || 2 * k > m) {
    throw Error("chain_largebase needs m >= 20, r >= 40, 1 <= k <= m/2");
  }
  const double l = std::log2(static_cast<double>(m) / k);
  return r * k / 72.0 * l * l - std::log2(static_cast<double>(m)) -
         std::log2(static_cast<double>(r)) / m;
}

LargebaseDiffs chain_largebase_diffs(int m, int r, int k) {
  const double f = chain_largebase(m, r, k);
  LargebaseDiffs out;
  out.dm = chain_largebase(m + 1, r, k) - f;
  out.dr = chain_largebase(m, r + 1, k) - f;
  if (2 * (k + 1) <= m) out.dk = chain_largebase(m, r, k + 1) - f;
  return out;
}

double partition_thm2_margin(int a, int b) {
  const auto v = bz(a, b);
  if (!v) throw Error("partition_thm2_margin: bz not defined");
  FamilySpec s;
  s.family = Family::SymPartitions;
  s.a = a;
  s.b = b;
  return thm2(degree(s)) - v->value;
}

BigRational largebase_mu_bound(int m, int k, int r) {
  if (k < 1 || 2 * k > m || r < 1) throw Error("largebase_mu_bound needs 1 <= k <= m/2, r >= 1");
  const BigRational ratio(BigInt(3 * k * (m - k)), BigInt(m) * (m - 1));
  return ratio * BigRational(mp::pow(binomial(m, k), r));
}

bool factorial_lower_bound_holds(int x) {
  if (x < 1) throw Error("factorial_lower_bound_holds needs x >= 1");
  // x! >= (x/3)^x  <=>  x! 3^x >= x^x
  return factorial(x) * ipow(3, x) >= ipow(x, x);
}

bool binomial_lower_bound_holds(int m, int k) {
  if (k < 1 || k > m) throw Error("binomial_lower_bound_holds needs 1 <= k <= m");
  // C(m,k) >= (m/k)^k  <=>  C(m,k) k^k >= m^k
  return binomial(m, k) * ipow(k, k) >= ipow(m, k);
}

}  // namespace primbase::formulas
