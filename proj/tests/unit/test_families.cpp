#include <algorithm>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "primbase/error.hpp"
#include "primbase/families.hpp"
#include "primbase/formulas.hpp"

using namespace primbase;

namespace {

ConstructedAction build_str(const char* s) { return build(parse_family_spec(s)); }

std::set<int> parse_set(const std::string& label) {
  std::set<int> out;
  std::istringstream in(label.substr(1, label.size() - 2));
  std::string tok;
  while (std::getline(in, tok, ',')) out.insert(std::stoi(tok));
  return out;
}

void check_basic(const ConstructedAction& a, const BigInt& order) {
  CHECK(a.group.order() == order);
  CHECK(a.labels.size() == a.n());
  CHECK(BigInt(a.n()) == formulas::degree(a.spec));
  CHECK(is_transitive(a.group));
  CHECK_NOTHROW(a.group.chain().verify());
}

}  // namespace

TEST_CASE("subset actions") {
  const auto s52 = build_str("SymSubsets m=5 k=2");
  check_basic(s52, 120);
  CHECK(s52.labels[0] == "{0,1}");
  CHECK(is_primitive(s52.group));
  const auto s63 = build_str("SymSubsets m=6 k=3");
  check_basic(s63, 720);
  // complementary 3-subsets form blocks
  CHECK_FALSE(is_primitive(s63.group));
  check_basic(build_str("AltSubsets m=6 k=2"), 360);
  check_basic(build_str("AltSubsets m=3 k=1"), 3);

  // the 3-cycle (0 1 2) on 3-subsets of 7 points moves 3*C(5,2) = 30 of them
  const auto a73 = build_str("AltSubsets m=7 k=3");
  check_basic(a73, 2520);
  std::vector<point_t> img(a73.n());
  for (std::size_t i = 0; i < a73.n(); ++i) {
    std::set<int> s;
    for (int x : parse_set(a73.labels[i])) s.insert(x < 3 ? (x + 1) % 3 : x);
    std::string l = "{";
    for (int x : s) l += (l.size() > 1 ? "," : "") + std::to_string(x);
    l += "}";
    img[i] = static_cast<point_t>(std::find(a73.labels.begin(), a73.labels.end(), l) - a73.labels.begin());
  }
  const Permutation c(img);
  CHECK(a73.group.contains(c));
  CHECK(c.support_size() == 30);
}

TEST_CASE("partition actions") {
  const auto p23 = build_str("SymPartitions a=2 b=3");
  check_basic(p23, 720);
  CHECK(p23.n() == 15);
  CHECK(p23.labels[0] == "{0,1|2,3|4,5}");
  CHECK(std::is_sorted(p23.labels.begin(), p23.labels.end()));
  const auto p42 = build_str("SymPartitions a=4 b=2");
  check_basic(p42, 40320);
  CHECK(p42.n() == 35);
  const auto p24 = build_str("SymPartitions a=2 b=4");
  check_basic(p24, 40320);
  CHECK(p24.n() == 105);
  CHECK(is_primitive(p23.group));
  CHECK_THROWS_AS(build_str("SymPartitions a=2 b=2"), ConstructionError);
}

TEST_CASE("affine groups") {
  check_basic(build_str("Affine d=3 q=2"), 1344);
  const auto a13 = build_str("Affine d=1 q=3");
  check_basic(a13, 6);
  CHECK(a13.n() == 3);
  check_basic(build_str("Affine d=2 q=4"), 16 * 180);
  check_basic(build_str("Affine d=2 q=3 group=sl"), 9 * 24);
  check_basic(build_str("Affine d=2 q=9"), 81 * 80 * 72);
  const auto a32 = build_str("Affine d=3 q=2");
  CHECK(a32.labels[3] == "(0,1,1)");
  CHECK(is_primitive(a32.group));
  // the linear part fixes the zero vector
  for (const auto& m : a32.matrices) CHECK(gf::matrix_action_on_vectors(m)(0) == 0);
}

TEST_CASE("linear groups on subspaces") {
  const auto l32 = build_str("LinearOnPk d=3 q=2 k=1");
  check_basic(l32, 168);
  CHECK(l32.n() == 7);
  check_basic(build_str("LinearOnPk d=4 q=2 k=1"), 20160);
  check_basic(build_str("LinearOnPk d=4 q=3 k=1"), 6065280);
  check_basic(build_str("LinearOnPk d=4 q=2 k=2"), 20160);
  // PSL_2(4) ~ A_5 on 5 points, PSL_2(9) ~ A_6 on 10 points
  check_basic(build_str("LinearOnPk d=2 q=4 k=1"), 60);
  check_basic(build_str("LinearOnPk d=2 q=9 k=1"), 360);
  // PSL_2(7) ~ PSL_3(2)
  check_basic(build_str("LinearOnPk d=2 q=7 k=1"), 168);
  CHECK(is_primitive(l32.group));

  // random membership (closure)
  std::mt19937_64 rng(5);
  const auto& gens = l32.group.generators();
  for (int t = 0; t < 20; ++t) {
    Permutation x(l32.n());
    for (int i = 0; i < 30; ++i) x = compose(x, gens[rng() % gens.size()]);
    CHECK(l32.group.contains(x));
  }
}

TEST_CASE("symplectic and orthogonal groups") {
  const auto sp6 = build_str("SpOnSk d=6 q=2 k=1");
  check_basic(sp6, 1451520);
  CHECK(sp6.n() == 63);
  check_basic(build_str("SpOnSk d=4 q=3 k=1"), 25920);
  check_basic(build_str("SpOnSk d=4 q=2 k=2"), 720);

  const auto go8 = build_str("GOOnS1 d=8 q=2 sign=-");
  check_basic(go8, 394813440);
  CHECK(go8.n() == 119);
  const auto om8 = build_str("OmegaOnS1 d=8 q=2 sign=-");
  check_basic(om8, 197406720);

  // GO_6^-(2) and its derived subgroup of index 2 (U_4(2))
  const auto go6 = build_str("GOOnS1 d=6 q=2 sign=-");
  check_basic(go6, 51840);
  const auto om6 = build_str("OmegaOnS1 d=6 q=2 sign=-");
  check_basic(om6, 25920);
  for (const auto& g : om6.group.generators()) CHECK(go6.group.contains(g));

  check_basic(build_str("GOOnS1 d=6 q=2 sign=+"), 40320);
  check_basic(build_str("GOOnN1 d=6 q=2 sign=+"), 40320);
  // PGO_5(3) = U_4(2).2
  check_basic(build_str("GOOnS1 d=5 q=3"), 51840);
  const auto np = build_str("GOOnN1 d=5 q=3 cls=+");
  const auto nm = build_str("GOOnN1 d=5 q=3 cls=-");
  check_basic(np, 51840);
  check_basic(nm, 51840);
  CHECK(np.n() == 45);
  CHECK(nm.n() == 36);
  check_basic(build_str("OmegaOnS1 d=5 q=3"), 25920);
  // Omega_6^+(3) ~ PSL_4(3), Omega_6^-(3) ~ PSU_4(3)
  check_basic(build_str("OmegaOnS1 d=6 q=3 sign=+"), 6065280);
  check_basic(build_str("OmegaOnS1 d=6 q=3 sign=-"), 3265920);
  CHECK_THROWS_AS(build_str("GOOnS1 d=4 q=2 sign=+"), ConstructionError);
}

TEST_CASE("unitary groups") {
  const auto u3 = build_str("UnitaryOnS1 d=3 q=2");
  check_basic(u3, 72);
  CHECK(u3.n() == 9);
  check_basic(build_str("UnitaryOnN1 d=3 q=2"), 72);
  check_basic(build_str("UnitaryOnS1 d=4 q=2"), 25920);
  check_basic(build_str("UnitaryOnS1 d=3 q=3"), 6048);
}

TEST_CASE("symplectic group on quadratic forms") {
  const auto p = build_str("SpOnGOCosets d=6 sign=+");
  const auto m = build_str("SpOnGOCosets d=6 sign=-");
  check_basic(p, 1451520);
  check_basic(m, 1451520);
  CHECK(p.n() == 36);
  CHECK(m.n() == 28);
  const auto s6 = build_str("SpOnGOCosets d=4 sign=-");
  check_basic(s6, 720);
  CHECK(s6.n() == 6);
  CHECK(is_primitive(p.group));
  CHECK(is_primitive(m.group));
}

TEST_CASE("wreath products") {
  const auto w = build_str("WreathProduct r=2 inner=(SymSubsets m=3 k=1)");
  check_basic(w, 72);
  CHECK(w.n() == 9);
  CHECK(w.labels[1] == "({0};{1})");
  const auto w52 = build_str("WreathProduct r=2 inner=(SymSubsets m=5 k=2)");
  check_basic(w52, 120 * 120 * 2);
  CHECK(w52.n() == 100);
  CHECK(is_primitive(w52.group));
  check_basic(build_str("WreathProduct r=3 inner=(SymSubsets m=3 k=1)"), 6 * 6 * 6 * 6);

  // (h, 1) with h of support mu(H) moves mu(H) * |Gamma| points
  const auto inner = build_str("SymSubsets m=5 k=2");
  for (const auto& g : inner.group.generators()) {
    std::vector<point_t> img(100);
    for (point_t x = 0; x < 100; ++x) img[x] = g(x / 10) * 10 + x % 10;
    const Permutation lifted(img);
    CHECK(w52.group.contains(lifted));
    CHECK(lifted.support_size() == g.support_size() * 10);
  }
}

TEST_CASE("mathieu group") {
  const auto m = mathieu24();
  check_basic(m, 244823040);
  CHECK(is_primitive(m.group));
  CHECK(m.group.generators().size() == 3);
}

TEST_CASE("generator file format") {
  const std::string body = "3\n[1,2,0]\n[1,0,2]\n";
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
  const auto gens = parse_generator_file(body + "checksum fnv1a64 " + hex + "\n");
  CHECK(gens.size() == 2);
  CHECK(gens[0] == Permutation{1, 2, 0});
  CHECK_THROWS_AS(parse_generator_file("3\n[1,2,0]\n[0,1,2]\nchecksum fnv1a64 " + std::string(hex)),
                  ConfigError);
  CHECK_THROWS_AS(parse_generator_file(body), ConfigError);
  CHECK_THROWS_AS(parse_generator_file("3\n[1,1,0]\nchecksum fnv1a64 0000000000000000\n"),
                  ConfigError);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("matrix actions are homomorphisms") {
  std::mt19937_64 rng(17);
  for (const char* s : {"LinearOnPk d=3 q=4 k=1", "SpOnSk d=4 q=3 k=1", "GOOnN1 d=6 q=2 sign=-",
                        "UnitaryOnS1 d=3 q=3", "GOOnN1 d=5 q=3 cls=-"}) {
    const auto a = build_str(s);
    REQUIRE(a.domain);
    REQUIRE(!a.matrices.empty());
    for (int t = 0; t < 100; ++t) {
      gf::Matrix x = a.matrices[rng() % a.matrices.size()];
      gf::Matrix y = a.matrices[rng() % a.matrices.size()];
      for (int i = 0; i < 3; ++i) x = x * a.matrices[rng() % a.matrices.size()];
      CHECK(gf::matrix_action_on_domain(x * y, *a.domain) ==
            compose(gf::matrix_action_on_domain(x, *a.domain),
                    gf::matrix_action_on_domain(y, *a.domain)));
    }
  }
}

TEST_CASE("construction errors") {
  BuildOptions small;
  small.degree_cap = 100;
  CHECK_THROWS_AS(build(parse_family_spec("SymSubsets m=12 k=3"), small), CapExceeded);
  CHECK_THROWS_AS(build_str("Triality q=2"), ConstructionError);
  CHECK_THROWS_AS(build_str("LinearOnPk d=9 q=2 k=1"), ConstructionError);
  CHECK_THROWS_AS(build_str("SymSubsets m=6 k=4"), ConstructionError);
  CHECK_THROWS_AS(build_str("SpOnGOCosets d=6 q=4 sign=+"), ConstructionError);
  const auto spec = parse_family_spec("SpOnGOCosets d=4 sign=-");
  CHECK(build(spec).spec == spec);
}
