#include "doctest.h"
#include "primbase/error.hpp"
#include "primbase/field.hpp"

using namespace primbase;
using namespace primbase::gf;

TEST_CASE("prime fields are integers mod p") {
  for (int p : {2, 3, 5, 7}) {
    const auto& F = field(p);
    for (int a = 0; a < p; ++a) {
      for (int b = 0; b < p; ++b) {
        CHECK(F.add(a, b) == (a + b) % p);
        CHECK(F.mul(a, b) == (a * b) % p);
      }
    }
  }
  CHECK(field(2).add(1, 1) == 0);
}

TEST_CASE("every supported field passes the axiom check") {
  for (int q : kSupportedOrders) {
    const auto& F = field(q);
    CHECK(F.order() == q);
    CHECK(F.check_axioms());
    for (int a = 1; a < q; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK_THROWS_AS(F.inv(0), Error);
  }
}

TEST_CASE("GF(9) associativity by brute force") {
  const auto& F = field(9);
  int bad = 0;
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      for (int c = 0; c < 9; ++c) {
        bad += F.mul(F.mul(a, b), c) != F.mul(a, F.mul(b, c));
        bad += F.add(F.add(a, b), c) != F.add(a, F.add(b, c));
      }
  CHECK(bad == 0);
}

TEST_CASE("multiplicative groups are cyclic of order q-1") {
  for (int q : kSupportedOrders) {
    const auto& F = field(q);
    const elem_t w = F.primitive();
    elem_t x = 1;
    int k = 0;
    do {
      x = F.mul(x, w);
      ++k;
    } while (x != 1);
    CHECK(k == q - 1);
    CHECK(F.pow(w, q - 1) == 1);
  }
  // GF(4): x * x^2 = 1 for the generator t.
  const auto& F4 = field(4);
  const elem_t t = 2;
  CHECK(F4.mul(t, F4.mul(t, t)) == 1);
}

TEST_CASE("frobenius is an automorphism of order f") {
  for (int q : kSupportedOrders) {
    const auto& F = field(q);
    for (int a = 0; a < q; ++a) {
      elem_t x = a;
      for (int i = 0; i < F.degree(); ++i) x = F.frobenius(x);
      CHECK(x == a);
      for (int b = 0; b < q; ++b) {
        CHECK(F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b)));
        CHECK(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
      }
    }
  }
}

TEST_CASE("squares") {
  // (q+1)/2 squares including 0 for odd q, everything for even q
  for (int q : kSupportedOrders) {
    const auto& F = field(q);
    int n = 0;
    for (int a = 0; a < q; ++a) n += F.is_square(a);
    CHECK(n == (q % 2 ? (q + 1) / 2 : q));
  }
}

TEST_CASE("unsupported orders and table parsing") {
  CHECK_THROWS_AS(field(6), Error);
  CHECK_THROWS_AS(field(16), Error);
  CHECK_FALSE(is_supported_order(11));
  CHECK(parse_reduction_table(kReductionTable).size() == kSupportedOrders.size());
  CHECK_THROWS_AS(parse_reduction_table("4 2 2 1 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_reduction_table("8 2 2 1 1 1\n"), ConfigError);
  // A reducible modulus produces zero divisors and is rejected.
  CHECK_THROWS_AS(Field(parse_reduction_table("4 2 2 1 0 1\n").front()), Error);
}
