#include <set>

#include "doctest.h"
#include "properties.hpp"

using namespace toricseq;

namespace {

ToricSystem sys(const SurfaceBasis& b, const std::vector<IntVec>& rows) {
  std::vector<DivisorClass> c;
  for (const auto& r : rows) c.emplace_back(b, r);
  return ToricSystem(std::move(c));
}

std::set<ToricSystem> canonical(const std::vector<AugmentedSystem>& list) {
  std::set<ToricSystem> out;
  for (const auto& a : list) out.insert(canonical_system(a.system));
  return out;
}

}  // namespace

TEST_SUITE("augmentation") {
  TEST_CASE("inserting into (H, H, H)") {
    const auto b1 = SurfaceBasis::p2(1);
    const ToricSystem once = augment(p2_system(), 0);
    CHECK(canonical_system(once) == canonical_system(sys(b1, {{1, -1}, {0, 1}, {1, -1}, {1, 0}})));

    const auto b2 = SurfaceBasis::p2(2);
    const std::set<ToricSystem> printed{
        canonical_system(sys(b2, {{1, -1, -1}, {0, 0, 1}, {0, 1, -1}, {1, -1, 0}, {1, 0, 0}})),
        canonical_system(sys(b2, {{1, -1, 0}, {0, 1, 0}, {1, -1, -1}, {0, 0, 1}, {1, 0, -1}}))};
    std::set<ToricSystem> got;
    for (size_t p = 0; p < once.size(); ++p) got.insert(canonical_system(augment(once, p)));
    CHECK(got == printed);
  }

  TEST_CASE("inserting into the F_a system") {
    for (Int a = 0; a <= 3; ++a)
      for (Int s = -1; s <= 2; ++s) {
        const auto b = SurfaceBasis::hirzebruch(a, 1);
        const ToricSystem got = augment(hirzebruch_system(a, s), 1);
        CHECK(canonical_system(got) ==
              canonical_system(sys(b, {{1, 0, -1}, {0, 0, 1}, {s, 1, -1}, {1, 0, 0}, {-(a + s), 1, 0}})));
      }
    CHECK_THROWS_AS(augment(p2_system(), 4), InvalidInput);
  }

  TEST_CASE("counts up to symmetry") {
    CHECK(enumerate_standard_augmentations(BlowupStructure::p2({{PointKind::kFresh}}), {}).size() == 1);
    CHECK(canonical(enumerate_standard_augmentations(BlowupStructure::p2({{PointKind::kFresh}, {PointKind::kFresh}}), {})).size() == 2);
    for (Int a = 0; a <= 3; ++a)
      for (Int s = -1; s <= 2; ++s) {
        // A base system fixed by the half-turn has only one insertion class.
        const ToricSystem base = hirzebruch_system(a, s);
        const size_t expected = rotate(base, 2) == base ? 1 : 2;
        CHECK_MESSAGE(enumerate_standard_augmentations(BlowupStructure::hirzebruch(a, {{PointKind::kFresh}}), {s, s}).size() == expected,
                      "a=" << a << " s=" << s);
      }
  }

  TEST_CASE("blow-up once systems") {
    const auto b1 = SurfaceBasis::p2(1), b2 = SurfaceBasis::p2(2);
    CHECK(blowup_once_system(BlowupStructure::p2({{PointKind::kFresh}})) == sys(b1, {{0, 1}, {1, -1}, {1, 0}, {1, -1}}));
    CHECK(blowup_once_system(BlowupStructure::p2({{PointKind::kFresh}, {PointKind::kFresh}})) ==
          sys(b2, {{0, 0, 1}, {0, 1, -1}, {1, -1, 0}, {1, 0, 0}, {1, -1, -1}}));
    CHECK_THROWS_AS(blowup_once_system(BlowupStructure::p2({{PointKind::kFresh}, {PointKind::kInfinitesimal, 0, 1}})),
                    InvalidInput);
    for (size_t t = 1; t <= 4; ++t) {
      const BlowupStructure st = BlowupStructure::p2(std::vector<BlowupStep>(t, {PointKind::kFresh}));
      const ToricSystem once = blowup_once_system(st);
      CHECK(validate(once).valid);
      // E = (0, R_t, ..., R_1, H, 2H)
      const auto e = to_sequence(once).divisors;
      const auto b = st.final_basis();
      CHECK(e[0].is_zero());
      for (size_t i = 1; i <= t; ++i) CHECK(e[i] == DivisorClass::r(b, static_cast<int>(t + 1 - i)));
      CHECK(e[t + 1] == DivisorClass::h(b));
      CHECK(e[t + 2] == 2 * DivisorClass::h(b));
      CHECK(canonical(enumerate_standard_augmentations(st, {})).count(canonical_system(once)) == 1);
    }
  }

  TEST_CASE("two-round displays") {
    const auto b2 = SurfaceBasis::p2(2);
    const BlowupStructure st = BlowupStructure::p2({{PointKind::kFresh}, {PointKind::kFresh}});
    CHECK(two_step_system(st, 1) == sys(b2, {{0, 1, 0}, {1, -1, 0}, {1, 0, -1}, {0, 0, 1}, {1, -1, -1}}));
    CHECK(two_step_system(BlowupStructure::hirzebruch(2), 0, 1) == hirzebruch_system(2, 1));
    CHECK_THROWS_AS(two_step_system(BlowupStructure::p2({{PointKind::kFresh}, {PointKind::kInfinitesimal, 0, 1}}), 2),
                    InvalidInput);
    for (size_t t = 1; t <= 3; ++t)
      for (size_t r = 0; r <= t; ++r) {
        const BlowupStructure p = BlowupStructure::p2(std::vector<BlowupStep>(t, {PointKind::kFresh}));
        const ToricSystem d = two_step_system(p, r);
        CHECK(validate(d).valid);
        CHECK_NOTHROW(gale_dual(d));
        CHECK(canonical(enumerate_standard_augmentations(p, {})).count(canonical_system(d)) == 1);
        for (Int a = 0; a <= 2; ++a) {
          const BlowupStructure f = BlowupStructure::hirzebruch(a, std::vector<BlowupStep>(t, {PointKind::kFresh}));
          for (Int s = -1; s <= a + 1; ++s) {
            const ToricSystem fd = two_step_system(f, r, s);
            CHECK(validate(fd).valid);
            CHECK_NOTHROW(gale_dual(fd));
            CHECK(canonical(enumerate_standard_augmentations(f, {s, s})).count(canonical_system(fd)) == 1);
          }
        }
      }
  }

  TEST_CASE("augmentation preserves the axioms on random chains") {
    const props::Tally t = props::augmentation_chains(1500, 51);
    CHECK_MESSAGE(t.failed == 0, t.report());
    CHECK(t.checked >= 1500);
  }

  TEST_CASE("sum of an augmented system is -K of the blow-up") {
    ToricSystem s = hirzebruch_system(1, 0);
    for (size_t k = 0; k < 5; ++k) {
      s = augment(s, (2 * k + 1) % s.size());
      DivisorClass total = DivisorClass::zero(s.basis());
      for (const auto& c : s.classes()) total += c;
      CHECK(total == -canonical_class(s.basis()));
    }
  }

  TEST_CASE("toric structures") {
    const BlowupStructure st = distinct_fixed_points(BaseKind::kP2, 0, 3);
    CHECK(st.toric());
    CHECK(st.surface().size() == 6);
    CHECK(canonical_form(st.surface()) == canonical_form(IntVec{-1, -1, -1, -1, -1, -1}));
    const auto steps = BlowupStructure::parse_steps("c0,c1");
    const BlowupStructure inf = BlowupStructure::p2(steps);
    CHECK(inf.abstract_steps()[1].kind == PointKind::kInfinitesimal);
    CHECK(inf.abstract_steps()[1].on == 1);
    CHECK(BlowupStructure::parse_steps("f,f,i1").size() == 3);
    CHECK_THROWS_AS(BlowupStructure::p2(BlowupStructure::parse_steps("f,i2")), InvalidInput);
    CHECK_THROWS_AS(BlowupStructure::parse_steps("x1"), InvalidInput);
    CHECK_THROWS_AS(distinct_fixed_points(BaseKind::kP2, 0, 4), InvalidInput);
  }

  TEST_CASE("exceptionality survives augmentation on toric models") {
    for (size_t t = 1; t <= 3; ++t) {
      const BlowupStructure st = distinct_fixed_points(BaseKind::kP2, 0, t);
      for (const auto& a : enumerate_standard_augmentations(st, {})) CHECK(check_exceptional(a.system, st.surface()).verdict);
    }
    for (Int a = 0; a <= 2; ++a) {
      const BlowupStructure st = distinct_fixed_points(BaseKind::kHirzebruch, a, 2);
      for (const auto& x : enumerate_standard_augmentations(st, SRange::standard(a)))
        CHECK(check_exceptional(x.system, st.surface()).verdict);
    }
  }
}
