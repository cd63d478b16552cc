#include "doctest.h"
#include "properties.hpp"

using namespace toricseq;

namespace {

DivisorClass cls(const SurfaceBasis& b, IntVec c) { return DivisorClass(b, std::move(c)); }

}  // namespace

TEST_SUITE("toricsystems") {
  TEST_CASE("validation examples") {
    CHECK(validate(p2_system()).valid);
    for (Int a = 0; a <= 5; ++a)
      for (Int s = -4; s <= 4; ++s) CHECK(validate(hirzebruch_system(a, s)).valid);
    const auto h = DivisorClass::h(SurfaceBasis::p2());
    const auto bad = validate(ToricSystem({h, h, 2 * h}));
    CHECK_FALSE(bad.valid);
    CHECK_FALSE(bad.diagnostic.empty());
  }

  TEST_CASE("sequences and systems") {
    const auto p2 = SurfaceBasis::p2();
    const ExceptionalSeq seq{{cls(p2, {0}), cls(p2, {1}), cls(p2, {2})}};
    CHECK(from_sequence(seq) == p2_system());
    const auto e = to_sequence(p2_system());
    CHECK(e.divisors == seq.divisors);

    const auto b1 = SurfaceBasis::p2(1);
    const ExceptionalSeq s1{{cls(b1, {0, 0}), cls(b1, {0, 1}), cls(b1, {1, 0}), cls(b1, {2, 0})}};
    const ToricSystem t1({cls(b1, {0, 1}), cls(b1, {1, -1}), cls(b1, {1, 0}), cls(b1, {1, -1})});
    CHECK(from_sequence(s1) == t1);
    CHECK(to_sequence(t1).divisors == s1.divisors);

    for (Int a = 0; a <= 3; ++a)
      for (Int s = -2; s <= 3; ++s) {
        const auto b = SurfaceBasis::hirzebruch(a);
        const ExceptionalSeq fs{{cls(b, {0, 0}), cls(b, {1, 0}), cls(b, {s + 1, 1}), cls(b, {s + 2, 1})}};
        CHECK(from_sequence(fs) == hirzebruch_system(a, s));
      }
    CHECK_THROWS_AS(from_sequence(ExceptionalSeq{{cls(p2, {0}), cls(p2, {1})}}), InvalidInput);
  }

  TEST_CASE("round trip through sequences on the golden corpus") {
    for (const auto& g : testing::golden_systems()) {
      CHECK_MESSAGE(validate(g.system).valid, g.name);
      CHECK(from_sequence(to_sequence(g.system)) == g.system);
      CHECK(validate(from_sequence(to_sequence(g.system))).valid);
    }
  }

  TEST_CASE("Gale duality examples") {
    const ToricSurface p2 = gale_dual(p2_system());
    CHECK(p2.rays() == std::vector<Vec2>{{1, 0}, {0, 1}, {-1, -1}});
    for (Int a = 0; a <= 3; ++a)
      for (Int s = -2; s <= 3; ++s) {
        const ToricSurface f = gale_dual(hirzebruch_system(a, s));
        const Int b = a + 2 * s;
        CHECK(canonical_form(f) == canonical_form(IntVec{0, b, 0, -b}));
        CHECK(f.rays()[0] == Vec2{1, 0});
        CHECK(f.rays()[1] == Vec2{0, 1});
      }
    const auto h = DivisorClass::h(SurfaceBasis::p2());
    CHECK_THROWS_AS(gale_dual(ToricSystem({h, h, 2 * h})), InvalidInput);
  }

  TEST_CASE("Gale dual self-intersections are chi(A_i) - 2 = A_i^2") {
    for (const auto& g : testing::golden_systems()) {
      const ToricSurface dual = gale_dual(g.system);
      REQUIRE(dual.size() == g.system.size());
      CHECK(dual.picard_rank() == g.system.basis().rank());
      for (size_t i = 0; i < g.system.size(); ++i) {
        CHECK(dual.self_intersection(i) == euler_char(g.system[i]) - 2);
        CHECK(dual.self_intersection(i) == intersect(g.system[i], g.system[i]));
      }
      CHECK(g.system.self_intersections() == dual.self_intersections());
    }
  }

  TEST_CASE("Gale duality commutes with rotation and intertwines reversal with reflection") {
    for (const auto& g : testing::golden_systems()) {
      const IntVec a = gale_dual(g.system).self_intersections();
      const size_t n = a.size();
      for (size_t k = 0; k < n; ++k) {
        const IntVec r = gale_dual(rotate(g.system, static_cast<Int>(k))).self_intersections();
        for (size_t i = 0; i < n; ++i) CHECK(r[i] == a[(i + k) % n]);
      }
      const IntVec rev = gale_dual(reverse(g.system)).self_intersections();
      CHECK(rev == IntVec(a.rbegin(), a.rend()));
    }
  }

  TEST_CASE("symmetries preserve validity") {
    CHECK(rotate(p2_system(), 1) == p2_system());
    for (const auto& g : testing::golden_systems()) {
      CHECK(validate(reverse(g.system)).valid);
      CHECK(validate(dual_system(g.system)).valid);
      for (Int k = -3; k <= 3; ++k) CHECK(validate(rotate(g.system, k)).valid);
      CHECK(reverse(reverse(g.system)) == g.system);
      CHECK(rotate(rotate(g.system, 2), -2) == g.system);
      const ToricSystem c = canonical_system(g.system);
      CHECK(canonical_system(reverse(rotate(g.system, 1))) == c);
    }
  }

  TEST_CASE("dual system is the system of the dual sequence") {
    for (const auto& g : testing::golden_systems()) {
      const auto e = to_sequence(g.system).divisors;
      const size_t n = e.size();
      std::vector<DivisorClass> dual_seq;
      for (size_t i = n; i-- > 0;) dual_seq.push_back(-e[i]);
      // Twisting by E_n makes the first term zero.
      for (auto& d : dual_seq) d += e[n - 1];
      CHECK(from_sequence(ExceptionalSeq{dual_seq}) == dual_system(g.system));
    }
  }

  TEST_CASE("JSON round trip") {
    const ToricSystem s = hirzebruch_system(2, -1);
    const auto j = to_json(s);
    CHECK(j.dump() == R"({"basis":{"kind":"Fa","a":2,"t":0},"classes":[[1,0],[-1,1],[1,0],[-1,1]]})");
    CHECK(system_from_json(j) == s);
  }
}
