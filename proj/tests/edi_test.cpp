#include <stdexcept>

#include <algorithm>
#include <random>

#include "doctest.h"
#include "qchow/edi.hpp"

using namespace qchow;

namespace {

EDITable seeded(int n, std::initializer_list<std::pair<int, int>> memberships) {
  EDITable t(n);
  for (auto [i, m] : memberships) t.add(i, m);
  return t;
}

// Reference count: every table, tested against the closure definition.
uint64_t brute_force_count(int n, const WittContext& w) {
  EDITable probe(n);
  const int d = probe.d();
  const int width = d + 1;
  uint64_t count = 0;
  uint64_t total = 1;
  for (int i = 0; i <= d; ++i) total <<= width;
  for (uint64_t code = 0; code < total; ++code) {
    EDITable t(n);
    uint64_t rest = code;
    for (int i = 0; i <= d; ++i) {
      t.set_mask(i, static_cast<uint32_t>(rest & ((1u << width) - 1)));
      rest >>= width;
    }
    PropagationResult r = propagate(t, w);
    if (r.ok() && r.table == t) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("table windows and membership plumbing") {
  EDITable t(5);
  CHECK(t.level_count() == 3);
  CHECK(t.level_min(0) == 3);
  CHECK(t.level_max(0) == 5);
  CHECK(t.level_min(2) == 1);
  CHECK(t.level_max(2) == 3);
  CHECK(t.add(1, 2));
  CHECK(!t.add(1, 2));
  CHECK(t.contains(1, 2));
  CHECK_THROWS_AS(t.add(1, 5), std::domain_error);
  CHECK_THROWS_AS(t.add(3, 1), std::domain_error);
}

TEST_CASE("tower rule pushes memberships one level up") {
  auto firings = scan_rule(RuleId::ClassicalTower, seeded(5, {{1, 2}}), {});
  REQUIRE(firings.size() == 1);
  CHECK(firings[0].added == std::vector<std::pair<int, int>>{{2, 2}, {2, 1}});
  CHECK(firings[0].clipped.empty());

  firings = scan_rule(RuleId::ClassicalTower, seeded(5, {{1, 3}}), {});
  REQUIRE(firings.size() == 1);
  CHECK(firings[0].added == std::vector<std::pair<int, int>>{{2, 3}, {2, 2}});

  // The top of the window clips.
  firings = scan_rule(RuleId::ClassicalTower, seeded(5, {{1, 4}}), {});
  REQUIRE(firings.size() == 1);
  CHECK(firings[0].added == std::vector<std::pair<int, int>>{{2, 3}});
  CHECK(firings[0].clipped == std::vector<std::pair<int, int>>{{2, 4}});

  CHECK(scan_rule(RuleId::ClassicalTower, EDITable(5), {}).empty());
}

TEST_CASE("level-2 parity rule") {
  auto firings = scan_rule(RuleId::Level2Parity, seeded(7, {{2, 3}}), {});
  REQUIRE(firings.size() == 1);
  CHECK(firings[0].added == std::vector<std::pair<int, int>>{{2, 4}});

  CHECK(scan_rule(RuleId::Level2Parity, seeded(7, {{2, 2}}), {}).empty());

  firings = scan_rule(RuleId::Level2Parity, seeded(5, {{2, 1}}), {});
  REQUIRE(firings.size() == 1);
  CHECK(firings[0].added == std::vector<std::pair<int, int>>{{2, 2}});
}

TEST_CASE("binomial shift rule") {
  // n=9, i=3, l=1, m=5: C(9,1) is odd, the only shift width is a=0, and the
  // lone exponent k=2 with k+l+a in the h-window has C(2,1) even, so the
  // hypothesis fires and adds 6.
  auto firings = scan_rule(RuleId::BinomialShift, seeded(9, {{3, 5}}), {});
  REQUIRE(firings.size() == 1);
  CHECK(firings[0].level == 3);
  CHECK(firings[0].l == 1);
  CHECK(firings[0].a == 0);
  CHECK(firings[0].added == std::vector<std::pair<int, int>>{{3, 6}});

  // An even binomial coefficient silences the hypothesis: n=7, i=2, m=3
  // leaves only l=1 and C(6,1) is even.
  CHECK(scan_rule(RuleId::BinomialShift, seeded(7, {{2, 3}}), {}).empty());
}

TEST_CASE("upper fill rule") {
  auto firings = scan_rule(RuleId::UpperFill, seeded(9, {{4, 1}}), {});
  REQUIRE(firings.size() == 1);
  CHECK(firings[0].l == 4);
  CHECK(firings[0].added == std::vector<std::pair<int, int>>{{4, 5}});

  // C(5,2) is even: no firing.
  CHECK(scan_rule(RuleId::UpperFill, seeded(7, {{2, 2}}), {}).empty());
}

TEST_CASE("anisotropic vanishing is a contradiction rule") {
  WittContext aniso{true, std::nullopt};
  auto firings = scan_rule(RuleId::AnisotropicVanishing, seeded(5, {{1, 3}}), aniso);
  REQUIRE(!firings.empty());
  CHECK(firings[0].contradiction);
  CHECK(firings[0].level == 1);
  CHECK(firings[0].m == 3);

  CHECK(scan_rule(RuleId::AnisotropicVanishing, seeded(5, {{1, 3}}), {}).empty());
}

TEST_CASE("witt descent and the excluded gaps") {
  WittContext w{true, 2};
  auto firings = scan_rule(RuleId::WittDescent, seeded(7, {{1, 4}}), w);
  REQUIRE(firings.size() == 1);
  CHECK(firings[0].added == std::vector<std::pair<int, int>>{{0, 5}});

  // n - m equal to i1 is excluded.
  CHECK(scan_rule(RuleId::WittDescent, seeded(7, {{1, 5}}), w).empty());
  // Levels at or above i1 are inert.
  CHECK(scan_rule(RuleId::WittDescent, seeded(7, {{2, 3}}), w).empty());
}

TEST_CASE("witt jump and lower bound") {
  WittContext w{true, 3};
  auto firings = scan_rule(RuleId::WittJump, seeded(9, {{2, 5}}), w);
  REQUIRE(firings.size() == 1);
  CHECK(firings[0].l == 1);
  CHECK(firings[0].added == std::vector<std::pair<int, int>>{{1, 6}});

  WittContext tight{true, 4};
  auto bound = scan_rule(RuleId::WittLowerBound, seeded(9, {{1, 7}}), tight);
  REQUIRE(!bound.empty());
  CHECK(bound[0].contradiction);
}

TEST_CASE("propagation closes the table and reports the trail") {
  WittContext aniso{true, std::nullopt};
  PropagationResult r = propagate(seeded(9, {{4, 1}}), aniso);
  REQUIRE(r.ok());
  CHECK(r.table.contains(4, 5));
  CHECK(replay_trail(seeded(9, {{4, 1}}), aniso, r));

  PropagationResult again = propagate(r.table, aniso);
  CHECK(again.ok());
  CHECK(again.table == r.table);
  CHECK(again.trail.empty());

  PropagationResult empty = propagate(EDITable(9), aniso);
  CHECK(empty.ok());
  CHECK(empty.table.empty());
}

TEST_CASE("seeded contradiction surfaces with its rule") {
  WittContext aniso{true, std::nullopt};
  PropagationResult r = propagate(seeded(5, {{1, 3}}), aniso);
  REQUIRE(!r.ok());
  CHECK(r.contradiction->rule == RuleId::AnisotropicVanishing);
  CHECK(r.contradiction->m == 3);
  CHECK(replay_trail(seeded(5, {{1, 3}}), aniso, r));
}

TEST_CASE("contradictions are monotone under enlargement") {
  WittContext aniso{true, std::nullopt};
  std::mt19937 rng(7);
  EDITable base = seeded(7, {{1, 4}});  // C(6,2) odd: contradicts anisotropy
  REQUIRE(!propagate(base, aniso).ok());
  for (int trial = 0; trial < 20; ++trial) {
    EDITable bigger = base;
    for (int i = 0; i <= bigger.d(); ++i) {
      for (int m = bigger.level_min(i); m <= bigger.level_max(i); ++m) {
        if (rng() % 3 == 0) bigger.add(i, m);
      }
    }
    CHECK(!propagate(bigger, aniso).ok());
  }
}

TEST_CASE("rule order does not change the closure") {
  std::mt19937 rng(21);
  WittContext w{true, 2};
  for (int trial = 0; trial < 10; ++trial) {
    EDITable t(8);
    for (int i = 0; i <= t.d(); ++i) {
      for (int m = t.level_min(i); m <= t.level_max(i); ++m) {
        if (rng() % 4 == 0) t.add(i, m);
      }
    }
    PropagationResult reference = propagate(t, w);
    for (int shuffle = 0; shuffle < 20; ++shuffle) {
      PropagateOptions opts;
      std::shuffle(opts.additive_order.begin(), opts.additive_order.end(), rng);
      PropagationResult alt = propagate(t, w, opts);
      CHECK(alt.ok() == reference.ok());
      if (alt.ok() && reference.ok()) CHECK(alt.table == reference.table);
    }
  }
}

TEST_CASE("tampered trails fail the replay") {
  PropagationResult r = propagate(seeded(9, {{4, 1}}), {});
  REQUIRE(!r.trail.empty());
  PropagationResult forged = r;
  forged.trail[0].m = forged.trail[0].m + 1;
  CHECK(!replay_trail(seeded(9, {{4, 1}}), {}, forged));

  PropagationResult padded = r;
  RuleFiring fake;
  fake.rule = RuleId::UpperFill;
  fake.level = 4;
  fake.m = 2;
  fake.l = 4;
  fake.added = {{4, 4}};
  padded.trail.push_back(fake);
  CHECK(!replay_trail(seeded(9, {{4, 1}}), {}, padded));
}

TEST_CASE("enumeration counts stay pinned") {
  auto count_for = [](int n, const WittContext& w) {
    return enumerate_admissible(n, w, {}, [](const EDITable&) { return true; });
  };
  CHECK(count_for(2, {}) == 8);
  CHECK(count_for(3, {}) == 8);
  CHECK(count_for(4, {}) == 37);
  CHECK(count_for(5, {}) == 36);
  CHECK(count_for(6, {}) == 192);
  CHECK(count_for(7, {}) == 163);
  CHECK(count_for(8, {}) == 833);

  WittContext aniso{true, std::nullopt};
  CHECK(count_for(4, aniso) == 24);
  CHECK(count_for(5, aniso) == 16);
  CHECK(count_for(6, aniso) == 122);
  CHECK(count_for(7, aniso) == 55);
  WittContext witt2{true, 2};
  CHECK(count_for(5, witt2) == 6);
  CHECK(count_for(6, witt2) == 54);
}

TEST_CASE("enumeration matches the definition on small dimensions") {
  for (int n = 2; n <= 6; ++n) {
    for (WittContext w : {WittContext{}, WittContext{true, std::nullopt}, WittContext{true, 2}}) {
      std::vector<EDITable> emitted;
      uint64_t count = enumerate_admissible(n, w, {}, [&](const EDITable& t) {
        emitted.push_back(t);
        return true;
      });
      CHECK(count == emitted.size());
      CHECK(count == brute_force_count(n, w));
      // Lexicographic emission, and every table is its own closure.
      for (size_t k = 0; k < emitted.size(); ++k) {
        if (k > 0) {
          std::vector<std::vector<int>> prev, cur;
          for (int i = 0; i <= emitted[k].d(); ++i) {
            prev.push_back(emitted[k - 1].members(i));
            cur.push_back(emitted[k].members(i));
          }
          CHECK(prev < cur);
        }
        PropagationResult r = propagate(emitted[k], w);
        CHECK(r.ok());
        CHECK(r.table == emitted[k]);
      }
      if (!emitted.empty()) CHECK(emitted.front().empty());
    }
  }
}

TEST_CASE("level filters restrict the stream") {
  uint64_t count = enumerate_admissible(9, {}, {{4, {1, 5}}}, [](const EDITable& t) {
    CHECK(t.contains(4, 1));
    CHECK(t.contains(4, 5));
    return true;
  });
  CHECK(count > 0);
}

TEST_CASE("the enumeration bound refuses large dimensions") {
  CHECK_THROWS_AS(enumerate_admissible(15, {}, {}, [](const EDITable&) { return true; }),
                  std::domain_error);
  CHECK_THROWS_AS(validate_witt(WittContext{false, 2}, 3), std::domain_error);
  CHECK_THROWS_AS(validate_witt(WittContext{true, 9}, 3), std::domain_error);
}
