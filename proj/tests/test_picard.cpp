#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "toricseq/picard.hpp"

using namespace toricseq;

namespace {

// Gram matrices written out from the intersection rules.
std::vector<IntVec> hand_gram(const SurfaceBasis& b) {
  const size_t r = static_cast<size_t>(b.rank());
  std::vector<IntVec> g(r, IntVec(r, 0));
  size_t first = 1;
  if (b.kind == BaseKind::kP2) {
    g[0][0] = 1;
  } else {
    g[0][1] = g[1][0] = 1;
    g[1][1] = b.a;
    first = 2;
  }
  for (size_t i = first; i < r; ++i) g[i][i] = -1;
  return g;
}

Int hand_intersect(const SurfaceBasis& b, const IntVec& x, const IntVec& y) {
  const auto g = hand_gram(b);
  Int s = 0;
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) s += x[i] * g[i][j] * y[j];
  return s;
}

IntVec random_coeffs(std::mt19937_64& rng, const SurfaceBasis& b, Int bound) {
  std::uniform_int_distribution<Int> dist(-bound, bound);
  IntVec c(static_cast<size_t>(b.rank()));
  for (auto& x : c) x = dist(rng);
  return c;
}

std::vector<SurfaceBasis> sample_bases() {
  std::vector<SurfaceBasis> out;
  for (Int t = 0; t <= 4; ++t) out.push_back(SurfaceBasis::p2(t));
  for (Int a = 0; a <= 4; ++a)
    for (Int t = 0; t <= 3; ++t) out.push_back(SurfaceBasis::hirzebruch(a, t));
  return out;
}

// All classes with coefficients in [-bound, bound].
std::vector<DivisorClass> box(const SurfaceBasis& b, Int bound) {
  std::vector<DivisorClass> out;
  const size_t r = static_cast<size_t>(b.rank());
  IntVec c(r, -bound);
  while (true) {
    out.emplace_back(b, c);
    size_t i = 0;
    while (i < r && c[i] == bound) c[i++] = -bound;
    if (i == r) break;
    ++c[i];
  }
  return out;
}

}  // namespace

TEST_SUITE("picard") {
  TEST_CASE("intersection numbers of the generators") {
    const auto p2 = SurfaceBasis::p2(2);
    CHECK(intersect(DivisorClass::h(p2), DivisorClass::h(p2)) == 1);
    CHECK(intersect(DivisorClass::r(p2, 1), DivisorClass::r(p2, 2)) == 0);
    CHECK(intersect(DivisorClass::r(p2, 2), DivisorClass::r(p2, 2)) == -1);
    CHECK(intersect(DivisorClass::h(p2), DivisorClass::r(p2, 1)) == 0);
    const auto fa = SurfaceBasis::hirzebruch(3, 1);
    CHECK(intersect(DivisorClass::p(fa), DivisorClass::q(fa)) == 1);
    CHECK(intersect(DivisorClass::p(fa), DivisorClass::p(fa)) == 0);
    CHECK(intersect(DivisorClass::q(fa), DivisorClass::q(fa)) == 3);
  }

  TEST_CASE("Gram matrix agrees with the hand-written form") {
    for (const auto& b : sample_bases()) CHECK(IntersectionForm::of(b).gram == hand_gram(b));
  }

  TEST_CASE("basis mismatch is rejected") {
    CHECK_THROWS_AS(intersect(DivisorClass::h(SurfaceBasis::p2(0)), DivisorClass::p(SurfaceBasis::hirzebruch(1, 0))),
                    InvalidInput);
    CHECK_THROWS_AS(DivisorClass::h(SurfaceBasis::p2(1)) + DivisorClass::h(SurfaceBasis::p2(0)), InvalidInput);
    CHECK_THROWS_AS(DivisorClass(SurfaceBasis::p2(1), {1, 2, 3}), InvalidInput);
  }

  TEST_CASE("canonical classes") {
    CHECK(canonical_class(SurfaceBasis::p2(0)) == DivisorClass(SurfaceBasis::p2(0), {-3}));
    CHECK(canonical_class(SurfaceBasis::p2(2)) == DivisorClass(SurfaceBasis::p2(2), {-3, 1, 1}));
    for (Int a = 0; a <= 4; ++a)
      CHECK(canonical_class(SurfaceBasis::hirzebruch(a, 0)) == DivisorClass(SurfaceBasis::hirzebruch(a, 0), {a - 2, -2}));
    // K^2 = 10 - rank
    for (const auto& b : sample_bases()) {
      const auto k = canonical_class(b);
      CHECK(intersect(k, k) == 10 - b.rank());
    }
  }

  TEST_CASE("Euler characteristic examples") {
    CHECK(euler_char(DivisorClass::zero(SurfaceBasis::p2(3))) == 1);
    CHECK(euler_char(DivisorClass::h(SurfaceBasis::p2(0))) == 3);
    for (Int a = 0; a <= 4; ++a) CHECK(euler_char(DivisorClass::p(SurfaceBasis::hirzebruch(a, 0))) == 2);
    // degree-d forms on the plane
    for (Int d = 0; d <= 6; ++d) CHECK(euler_char(DivisorClass(SurfaceBasis::p2(0), {d})) == (d + 1) * (d + 2) / 2);
  }

  TEST_CASE("symmetrization identities on random classes") {
    std::mt19937_64 rng(11);
    for (const auto& b : sample_bases()) {
      const DivisorClass k = canonical_class(b);
      for (int it = 0; it < 300; ++it) {
        const DivisorClass d(b, random_coeffs(rng, b, 5));
        CHECK(euler_char(d) + euler_char(-d) == 2 + intersect(d, d));
        CHECK(euler_char(d) - euler_char(-d) == -intersect(k, d));
      }
    }
  }

  TEST_CASE("intersect is symmetric, bilinear and matches the Gram oracle") {
    std::mt19937_64 rng(12);
    for (const auto& b : sample_bases())
      for (int it = 0; it < 100; ++it) {
        const DivisorClass x(b, random_coeffs(rng, b, 6)), y(b, random_coeffs(rng, b, 6)), z(b, random_coeffs(rng, b, 6));
        CHECK(intersect(x, y) == intersect(y, x));
        CHECK(intersect(x + y, z) == intersect(x, z) + intersect(y, z));
        CHECK(intersect(3 * x, y) == 3 * intersect(x, y));
        CHECK(intersect(x, y) == hand_intersect(b, x.coeffs(), y.coeffs()));
      }
  }

  TEST_CASE("signature has exactly one positive direction") {
    // Leading principal minors alternate in sign once a positive class comes first.
    for (const auto& b : sample_bases()) {
      auto g = IntersectionForm::of(b).gram;
      const size_t r = g.size();
      if (b.kind == BaseKind::kHirzebruch) {
        // New basis (kP + Q, P, R_1, ...).
        const Int k = 1;
        std::vector<IntVec> m(r, IntVec(r, 0));
        m[0][1] = 1;
        m[0][0] = k;
        m[1][0] = 1;
        for (size_t i = 2; i < r; ++i) m[i][i] = 1;
        std::vector<IntVec> h(r, IntVec(r, 0));
        for (size_t i = 0; i < r; ++i)
          for (size_t j = 0; j < r; ++j)
            for (size_t p = 0; p < r; ++p)
              for (size_t q = 0; q < r; ++q) h[i][j] += m[i][p] * g[p][q] * m[j][q];
        g = h;
      }
      REQUIRE(g[0][0] > 0);
      for (size_t n = 1; n <= r; ++n) {
        std::vector<IntVec> minor(n, IntVec(n));
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j) minor[i][j] = g[i][j];
        const Int det = oracle::det_bareiss(minor);
        CHECK(det != 0);
        CHECK((det > 0) == (n % 2 == 1));
      }
    }
  }

  TEST_CASE("first property of exceptional classes: chi(-D) = 0") {
    for (const auto& b : {SurfaceBasis::p2(2), SurfaceBasis::p2(3), SurfaceBasis::hirzebruch(0, 1),
                          SurfaceBasis::hirzebruch(1, 1), SurfaceBasis::hirzebruch(2, 1)}) {
      const DivisorClass k = canonical_class(b);
      size_t solutions = 0;
      for (const auto& d : box(b, 4)) {
        if (euler_char(-d) != 0) continue;
        ++solutions;
        CHECK(euler_char(d) == -intersect(k, d));
        CHECK(euler_char(d) == intersect(d, d) + 2);
      }
      CHECK(solutions > 0);
    }
  }

  TEST_CASE("second property of exceptional classes: three equivalent statements") {
    for (const auto& b : {SurfaceBasis::p2(1), SurfaceBasis::p2(2), SurfaceBasis::hirzebruch(0, 1),
                          SurfaceBasis::hirzebruch(2, 0), SurfaceBasis::hirzebruch(1, 1)}) {
      std::vector<DivisorClass> sols;
      for (const auto& d : box(b, 4))
        if (euler_char(-d) == 0) sols.push_back(d);
      size_t positive = 0;
      for (const auto& d : sols)
        for (const auto& e : sols) {
          const bool s1 = euler_char(-d - e) == 0;
          const bool s2 = intersect(e, d) == 1;
          const bool s3 = euler_char(d) + euler_char(e) == euler_char(d + e);
          CHECK(s1 == s2);
          CHECK(s2 == s3);
          positive += s2;
        }
      CHECK(positive > 0);
    }
  }

  TEST_CASE("pulling back preserves intersections") {
    std::mt19937_64 rng(13);
    for (const auto& b : sample_bases()) {
      const auto big = b.blown_up(2);
      for (int it = 0; it < 20; ++it) {
        const DivisorClass x(b, random_coeffs(rng, b, 4)), y(b, random_coeffs(rng, b, 4));
        CHECK(intersect(x.pulled_back(big), y.pulled_back(big)) == intersect(x, y));
        CHECK(euler_char(x.pulled_back(big)) == euler_char(x));
      }
    }
  }

  TEST_CASE("JSON layout and round trip") {
    const DivisorClass d(SurfaceBasis::hirzebruch(2, 1), {1, -2, 3});
    const auto j = to_json(d);
    CHECK(j.dump() == R"({"basis":{"kind":"Fa","a":2,"t":1},"coeffs":[1,-2,3]})");
    CHECK(divisor_from_json(j) == d);
    const DivisorClass h(SurfaceBasis::p2(2), {2, -1, -1});
    CHECK(to_json(h).dump() == R"({"basis":{"kind":"P2","t":2},"coeffs":[2,-1,-1]})");
    CHECK(divisor_from_json(to_json(h)) == h);
    CHECK(h.to_string() == "2H-R1-R2");
  }

  TEST_CASE("parse_basis") {
    CHECK(parse_basis("P2:3") == SurfaceBasis::p2(3));
    CHECK(parse_basis("P2") == SurfaceBasis::p2(0));
    CHECK(parse_basis("Fa:2:1") == SurfaceBasis::hirzebruch(2, 1));
    CHECK(parse_basis("Fa:2") == SurfaceBasis::hirzebruch(2, 0));
    CHECK_THROWS_AS(parse_basis("Q3"), InvalidInput);
  }

  TEST_CASE("overflow surfaces as an error") {
    const Int big = Int{1} << 40;
    const DivisorClass d(SurfaceBasis::p2(0), {big});
    CHECK_THROWS_AS(intersect(d, d), std::overflow_error);
  }
}
