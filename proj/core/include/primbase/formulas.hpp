#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "primbase/bigint.hpp"
#include "primbase/family_spec.hpp"

namespace primbase::formulas {

/// 50 decimal digits; used to re-check borderline real comparisons.
using HighFloat = boost::multiprecision::cpp_bin_float_50;

// ---------------------------------------------------------------- integers

BigInt factorial(int n);
BigInt binomial(int n, int k);
BigInt ipow(long long base, int exp);

/// floor(log2 x) and ceil(log2 x) for x >= 1, exact.
int floor_log2(const BigInt& x);
int ceil_log2(const BigInt& x);

/// Smallest e >= 0 with base^e >= x, exact.
int ceil_log(const BigInt& x, int base);

double log2(const BigInt& x);
HighFloat log2_hp(const BigInt& x);

// ----------------------------------------------------------------- degrees

/// Number of points of the action named by `spec`. Works for every family,
/// including the formula-only tags. Throws Error on invalid parameters.
///
/// SpOnSk with k=1 is Sp_d(q) on all points of PG(d-1,q), i.e. (q^d-1)/(q-1).
/// The symplectic P_1 degree is sometimes printed as (q^d-1)(q-1); that is
/// not the number of points.
BigInt degree(const FamilySpec& spec);

// ---------------------------------------------------------------- orders

enum class Classical { GL, SL, Sp, GO, GU, SU };

/// Orders of the full matrix groups. For GU/SU, q is the order of the fixed
/// field (matrices over GF(q^2)). GO needs sign + or - for even d and o for
/// odd d; it is the full isometry group of the quadratic form.
BigInt classical_order(Classical g, int d, int q, gf::Sign sign = gf::Sign::None);

// ------------------------------------------------------ partition base size

struct BzValue {
  int value = 0;
  bool upper_bound = false;  // value is only known to be an upper bound
};

/// Base size of S_{ab} on partitions into b blocks of size a. nullopt for
/// (2,2) and (3,2), where the value is not given by the closed form.
std::optional<BzValue> bz(int a, int b);

// ------------------------------------------------------------------ bounds

double n_log_n(const BigInt& n);
HighFloat n_log_n_hp(const BigInt& n);

double thm2(const BigInt& n);         // log n / 2 + 6
double mrd(const BigInt& n);          // 2 + log n
double liebeck(const BigInt& n);      // 9 log n
double nonstandard7();                // 7
double dk_plus_c(int d, int k, double c);
/// ceil(ceil(log k) / floor(log n)) + b_inner, for wreath products H wr S_k
/// in product action with H of degree n.
int bow10_wreath(int k, const BigInt& n, int b_inner);
/// 2 log|G| / log n + 22
double largebase_hlm(const BigInt& order, const BigInt& n);
/// Diagonal type bracket ceil(log k / log|T|) + {1, 2}.
std::pair<int, int> diagonal_bracket(int k, const BigInt& t_order);

/// Named dispatch over the functions above. Parameters by key: n, d, k, c,
/// b_inner, order, t_order. Throws Error on an unknown name or missing key.
double bound(const std::string& name, const std::map<std::string, BigInt>& params);

// ----------------------------------------------------- inequality chains

/// (4a log(4/3) - log 10!)/2 + 6 - ceil(log_4(a+2)) - 1
double chain_f_partition(int a);

/// -3k^2 + 2kd - 2k, for 3 <= k < d/2.
long long chain_quadric(int d, int k);
/// Minimum over 3 <= k < d/2 (smallest k on ties). Throws Error if empty.
std::pair<int, long long> chain_quadric_min(int d);

/// 2 log k - (k-1) log^2 60 - 6 log 60
double chain_diagonal(int k);

/// (k-2) log n - (k-5); nonnegative iff k - 5 <= (k-2) log n.
double chain_product_margin(int k, double n);

/// (rk/72) log^2(m/k) - log m - log(r)/m on m >= 20, r >= 40, 1 <= k <= m/2.
double chain_largebase(int m, int r, int k);

struct LargebaseDiffs {
  double dm = 0, dr = 0;
  std::optional<double> dk;  // absent when k+1 > m/2
};
/// Forward differences of chain_largebase in each variable.
LargebaseDiffs chain_largebase_diffs(int m, int r, int k);

/// log n / 2 + 6 - bz(a,b) with the exact degree of the partition action.
double partition_thm2_margin(int a, int b);

/// 3 k(m-k)/(m(m-1)) * C(m,k)^r, exactly.
BigRational largebase_mu_bound(int m, int k, int r);

/// x! >= (x/3)^x, checked exactly.
bool factorial_lower_bound_holds(int x);
/// C(m,k) >= (m/k)^k, checked exactly.
bool binomial_lower_bound_holds(int m, int k);

}  // namespace primbase::formulas
