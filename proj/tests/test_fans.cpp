#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace toricseq;

namespace {

Int sum(const IntVec& v) { return std::accumulate(v.begin(), v.end(), Int{0}); }

ToricSurface random_blowups(std::mt19937_64& rng, ToricSurface s, size_t count) {
  for (size_t k = 0; k < count; ++k) s = blow_up(s, std::uniform_int_distribution<size_t>(0, s.size() - 1)(rng));
  return s;
}

}  // namespace

TEST_SUITE("fans") {
  TEST_CASE("validation examples") {
    CHECK(validate_fan({{1, 0}, {0, 1}, {-1, -1}}).self_intersections() == IntVec{1, 1, 1});
    CHECK(validate_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}).self_intersections() == IntVec{0, 0, 0, 0});
    CHECK_THROWS_AS(validate_fan({{1, 0}, {1, 1}, {0, 1}}), InvalidInput);
    CHECK_THROWS_AS(validate_fan({{1, 0}, {0, 1}}), InvalidInput);
    CHECK_THROWS_AS(validate_fan({{2, 0}, {0, 1}, {-1, -1}}), InvalidInput);
    CHECK_THROWS_AS(validate_fan({{1, 0}, {1, 2}, {-1, -1}}), InvalidInput);
    // A fan that winds twice is rejected.
    CHECK_THROWS_AS(validate_fan({{1, 0}, {0, 1}, {-1, -1}, {1, 0}, {0, 1}, {-1, -1}}), InvalidInput);
  }

  TEST_CASE("clockwise input asks for the reverse order") {
    try {
      validate_fan({{1, 0}, {-1, -1}, {0, 1}});
      FAIL("accepted a clockwise fan");
    } catch (const InvalidInput& e) {
      CHECK(std::string(e.what()).find("reverse") != std::string::npos);
    }
  }

  TEST_CASE("self-intersections agree with the oracle") {
    for (const auto& s : enumerate_blowups(8, false))
      CHECK(s.self_intersections() == oracle::self_intersections(testing::plain_rays(s)));
  }

  TEST_CASE("blow-up examples") {
    const ToricSurface p2 = validate_fan({{1, 0}, {0, 1}, {-1, -1}});
    for (size_t c = 0; c < 3; ++c) CHECK(canonical_form(blow_up(p2, c)) == canonical_form(IntVec{0, 1, 0, -1}));
    const ToricSurface f0 = validate_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
    for (size_t c = 0; c < 4; ++c) CHECK(canonical_form(blow_up(f0, c)) == canonical_form(IntVec{0, 0, -1, -1, -1}));
    CHECK_THROWS_AS(blow_up(p2, 3), InvalidInput);
  }

  TEST_CASE("blow-up then blow-down is the identity, tracking included") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 200; ++it) {
      const ToricSurface base = it % 2 ? tracked_p2() : tracked_hirzebruch(it % 4);
      const ToricSurface s = random_blowups(rng, base, static_cast<size_t>(it % 5));
      const size_t cone = std::uniform_int_distribution<size_t>(0, s.size() - 1)(rng);
      const ToricSurface up = blow_up(s, cone);
      CHECK(up.self_intersection(cone + 1) == -1);
      CHECK(up.ray_classes()[cone + 1] == DivisorClass::r(up.basis(), static_cast<int>(up.basis().t)));
      CHECK(blow_down(up, cone + 1) == s);
    }
  }

  TEST_CASE("simultaneous blow-downs along the 8-ray chain") {
    const ToricSurface eight = surface_from_self_intersections({-3, -2, -1, -1, 0, -2, -2, -1});
    std::vector<size_t> minus_one;
    for (size_t i = 0; i < eight.size(); ++i)
      if (eight.self_intersection(i) == -1) minus_one.push_back(i);
    bool reached_six = false;
    for (size_t x = 0; x < minus_one.size(); ++x)
      for (size_t y = x + 1; y < minus_one.size(); ++y) {
        const size_t i = minus_one[x], j = minus_one[y];
        if ((i + 1) % eight.size() == j || (j + 1) % eight.size() == i) {
          CHECK_THROWS_AS(simultaneous_blow_down(eight, {i, j}), InvalidInput);
          continue;
        }
        const ToricSurface six = simultaneous_blow_down(eight, {i, j});
        if (canonical_form(six) != canonical_form(IntVec{-2, -1, 0, 0, -2, -1})) continue;
        reached_six = true;
        std::vector<size_t> next;
        for (size_t k = 0; k < six.size(); ++k)
          if (six.self_intersection(k) == -1) next.push_back(k);
        CHECK(canonical_form(simultaneous_blow_down(six, next)) == canonical_form(IntVec{0, 1, 0, -1}));
      }
    CHECK(reached_six);
    CHECK(simultaneous_blow_down(eight, {}) == eight);
    CHECK_THROWS_AS(simultaneous_blow_down(eight, {0}), InvalidInput);
  }

  TEST_CASE("blow-down chains") {
    CHECK(blow_down_chains(counterexample_surface(2), 2).empty());
    for (Int a = 0; a <= 4; ++a) {
      const auto chains = blow_down_chains(tracked_hirzebruch(a).without_tracking(), 2);
      REQUIRE_FALSE(chains.empty());
      CHECK(chains.front().rounds() == 0);
    }
    CHECK_FALSE(blow_down_chains(surface_from_self_intersections({-3, -2, -1, -1, 0, -2, -2, -1}), 2).empty());
  }

  TEST_CASE("nef anticanonical class") {
    CHECK(anticanonical_nef(surface_from_self_intersections({-1, -2, -2, -1, -2, -2, -1, -2, -2})));
    CHECK_FALSE(anticanonical_nef(counterexample_surface(2)));
    CHECK(anticanonical_nef(tracked_p2()));
  }

  TEST_CASE("canonical form examples and invariance") {
    CHECK(canonical_form(IntVec{0, -1, 0, 1}) == IntVec{-1, 0, 1, 0});
    CHECK(canonical_form(IntVec{1, 1, 1}) == IntVec{1, 1, 1});
    const IntVec six_b{-1, -1, -2, -1, -1, 0};
    CHECK(canonical_form(six_b) == canonical_form(IntVec(six_b.rbegin(), six_b.rend())));
    for (const auto& s : enumerate_blowups(8, false)) {
      const IntVec form = canonical_form(s);
      CHECK(form == oracle::min_dihedral(s.self_intersections()));
      for (size_t k = 0; k < s.size(); ++k) CHECK(canonical_form(s.rotated(k)) == form);
    }
  }

  TEST_CASE("the weak del Pezzo census") {
    const auto census = enumerate_weak_del_pezzo();
    CHECK(census.size() == 16);
    std::set<IntVec> forms;
    for (const auto& s : census) {
      forms.insert(canonical_form(s));
      for (Int a : s.self_intersections()) CHECK(a >= -2);
    }
    CHECK(forms.size() == 16);
    CHECK(forms.count(IntVec{-1, -1, -1, -1, -1, -1}) == 1);
    for (const auto& [name, cycle] : census_names()) CHECK_MESSAGE(forms.count(canonical_form(cycle)) == 1, name);
  }

  TEST_CASE("census against a direct cycle enumeration") {
    // Blow-downs only raise self-intersections, so every entry is at most 2
    // (P^2, F_0, F_1, F_2 bound them); [-2, 3] leaves a margin.
    std::set<std::vector<oracle::I>> forms;
    for (size_t n = 3; n <= 9; ++n) {
      std::vector<oracle::I> a(n, -2);
      while (true) {
        oracle::I total = 0;
        for (auto x : a) total += x;
        if (total == 12 - 3 * static_cast<oracle::I>(n) && !oracle::rays_from_cycle(a).empty())
          forms.insert(oracle::min_dihedral(a));
        size_t i = 0;
        while (i < n && a[i] == 3) a[i++] = -2;
        if (i == n) break;
        ++a[i];
      }
    }
    std::set<IntVec> census;
    for (const auto& s : enumerate_weak_del_pezzo()) census.insert(canonical_form(s));
    std::set<IntVec> oracle_forms(forms.begin(), forms.end());
    CHECK(oracle_forms == census);
  }

  TEST_CASE("census without the nef filter is larger and the parallel census equals the serial one") {
    const auto all = enumerate_blowups(9, false);
    CHECK(all.size() > 16);
    CHECK(enumerate_blowups(3, true).size() == 1);
    const auto serial = enumerate_blowups_serial(9, false);
    REQUIRE(all.size() == serial.size());
    for (size_t i = 0; i < all.size(); ++i) CHECK(canonical_form(all[i]) == canonical_form(serial[i]));
  }

  TEST_CASE("sum of self-intersections is 12 - 3n on generated fans") {
    for (const auto& s : enumerate_blowups(10, false))
      CHECK(sum(s.self_intersections()) == 12 - 3 * static_cast<Int>(s.size()));
    std::mt19937_64 rng(32);
    for (int it = 0; it < 500; ++it) {
      const ToricSurface s = random_blowups(rng, it % 2 ? tracked_p2() : tracked_hirzebruch(it % 6), static_cast<size_t>(it % 9));
      CHECK(sum(s.self_intersections()) == 12 - 3 * static_cast<Int>(s.size()));
    }
  }

  TEST_CASE("minimal-model property on the census") {
    for (const auto& s : enumerate_blowups(9, false)) {
      if (s.size() < 4) continue;
      const auto& a = s.self_intersections();
      const bool has_minus_one = std::find(a.begin(), a.end(), -1) != a.end();
      const bool hirzebruch = s.size() == 4 && ((a[0] + a[2] == 0 && a[1] == 0 && a[3] == 0) ||
                                                (a[1] + a[3] == 0 && a[0] == 0 && a[2] == 0));
      CHECK((has_minus_one || hirzebruch));
    }
  }

  TEST_CASE("minimal model chains replay to tracked surfaces with the same fan") {
    for (const auto& s : testing::census()) {
      const auto chains = minimal_model_chains(s);
      REQUIRE_FALSE(chains.empty());
      for (const auto& chain : chains) {
        const ToricSurface tracked = track_chain(chain);
        CHECK(canonical_form(tracked) == canonical_form(s));
        CHECK(tracked.tracked());
        // Ray classes sum to -K.
        DivisorClass total = DivisorClass::zero(tracked.basis());
        for (const auto& c : tracked.ray_classes()) total += c;
        CHECK(total == -canonical_class(tracked.basis()));
        for (size_t i = 0; i < tracked.size(); ++i)
          CHECK(intersect(tracked.ray_classes()[i], tracked.ray_classes()[i]) == tracked.self_intersection(i));
      }
    }
  }

  TEST_CASE("fan I/O") {
    const auto rays = parse_rays("1,0;0,1;-1,-1");
    CHECK(rays == std::vector<Vec2>{{1, 0}, {0, 1}, {-1, -1}});
    CHECK(to_json(validate_fan(rays)).at("rays").dump() == "[[1,0],[0,1],[-1,-1]]");
    CHECK(rays_from_json(to_json(validate_fan(rays))) == rays);
    CHECK_THROWS_AS(parse_rays("1,0;0"), InvalidInput);
  }
}
