#include <random>

#include "doctest.h"
#include "primbase/error.hpp"
#include "primbase/permutation.hpp"
#include "random_perm.hpp"

using namespace primbase;

TEST_CASE("compose applies the left factor first") {
  CHECK(compose(Permutation{1, 0, 2}, Permutation{1, 0, 2}) == Permutation{0, 1, 2});
  CHECK(compose(Permutation{1, 2, 0}, Permutation{1, 2, 0}) == Permutation{2, 0, 1});

  const Permutation p{2, 0, 3, 1};
  CHECK(compose(Permutation(4), p) == p);
  CHECK(compose(p, Permutation(4)) == p);

  // i -> q(p(i)), spelled out
  const Permutation q{3, 2, 1, 0};
  const auto pq = compose(p, q);
  for (point_t i = 0; i < 4; ++i) CHECK(pq(i) == q(p(i)));
}

TEST_CASE("compose rejects unequal degrees") {
  CHECK_THROWS_AS(compose(Permutation(3), Permutation(4)), DegreeMismatch);
}

TEST_CASE("constructor rejects non-bijections") {
  CHECK_THROWS_AS(Permutation({0, 0, 1}), Error);
  CHECK_THROWS_AS(Permutation({0, 3, 1}), Error);
}

TEST_CASE("inverse") {
  CHECK(inverse(Permutation{1, 2, 0}) == Permutation{2, 0, 1});
  CHECK(inverse(Permutation(5)) == Permutation(5));
  CHECK(inverse(Permutation{1, 0, 3, 2}) == Permutation{1, 0, 3, 2});
}

TEST_CASE("support and fixed points") {
  CHECK(support(Permutation(4)).empty());
  CHECK(support(Permutation{1, 0, 2}) == std::vector<point_t>{0, 1});
  CHECK(support(Permutation{1, 2, 0, 4, 3}) == std::vector<point_t>{0, 1, 2, 3, 4});
  CHECK(fixed_points(Permutation{1, 0, 2}) == std::vector<point_t>{2});
}

TEST_CASE("cycles, order and powers") {
  const auto p = Permutation::from_cycles(7, {{0, 1, 2}, {3, 4}});
  CHECK(p == Permutation{1, 2, 0, 4, 3, 5, 6});
  CHECK(p.cycle_string() == "(0,1,2)(3,4)");
  CHECK(Permutation(3).cycle_string() == "()");
  CHECK(p.to_string() == "[1,2,0,4,3,5,6]");
  CHECK(element_order(p) == 6);
  CHECK(power(p, 6).is_identity());
  CHECK(power(p, 3) == Permutation::from_cycles(7, {{3, 4}}));
  CHECK(power(p, -1) == inverse(p));

  // Smallest prime dividing 6 is 2, so the reduction is p^3.
  const auto r = reduce_to_prime_order(p);
  CHECK(r == power(p, 3));
  CHECK(element_order(r) == 2);
}

TEST_CASE("reduce_to_prime_order never loses fixed points") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    const auto p = testing::random_permutation(12, rng);
    if (p.is_identity()) continue;
    const auto r = reduce_to_prime_order(p);
    CHECK_FALSE(r.is_identity());
    CHECK(r.fixed_count() >= p.fixed_count());
    for (point_t x : fixed_points(p)) CHECK(r(x) == x);
  }
}

TEST_CASE("group axioms on random permutations") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 17;
    const auto p = testing::random_permutation(n, rng);
    const auto q = testing::random_permutation(n, rng);
    const auto r = testing::random_permutation(n, rng);
    CHECK(compose(compose(p, q), r) == compose(p, compose(q, r)));
    CHECK(compose(p, inverse(p)).is_identity());
    CHECK(compose(inverse(p), p).is_identity());
    CHECK(support(p).size() + fixed_points(p).size() == n);
    CHECK(p.support_size() + p.fixed_count() == n);
    CHECK(conjugate(p, q) == compose(compose(inverse(q), p), q));
    CHECK(commutator(p, q) == compose(compose(inverse(p), inverse(q)), compose(p, q)));
  }
}
