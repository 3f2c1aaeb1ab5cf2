#include <stdexcept>

#include "doctest.h"
#include "qchow/families.hpp"

using namespace qchow;

namespace {
const QuadricContext n5(5);
const BasisClass one = BasisClass::h(0);
const BasisClass h1 = BasisClass::h(1);
const BasisClass h2 = BasisClass::h(2);

Cycle mono(std::initializer_list<BasisClass> factors) {
  return Cycle::monomial(Monomial::of(factors));
}
}  // namespace

TEST_CASE("rho specializes to the plain isotropic classes at i=0") {
  CHECK(rho(n5, 0, 2) == Cycle::from_basis(BasisClass::l(2)));
  CHECK(rho(n5, 1, 1) == add(mono({one, BasisClass::l(1)}), mono({BasisClass::l(1), one})));
  Cycle r20 = rho(n5, 2, 0);
  CHECK(r20.size() == 6);
  CHECK(r20 == sym(mono({one, h1, BasisClass::l(0)})));
  CHECK_THROWS_AS(rho(n5, 3, 0), std::domain_error);
}

TEST_CASE("delta instances expand as stated") {
  Cycle d10 = delta_cycle(n5, 1, 0);
  Cycle expected = Cycle::zero(2);
  for (int m = 0; m <= 2; ++m) {
    BasisClass hm = m == 0 ? one : BasisClass::h(m);
    expected = add(expected, add(mono({hm, BasisClass::l(m)}), mono({BasisClass::l(m), hm})));
  }
  CHECK(d10 == expected);

  CHECK(delta_cycle(n5, 2, 1) ==
        add(sym(mono({one, h1, BasisClass::l(1)})), sym(mono({one, h2, BasisClass::l(2)}))));
  CHECK(delta_cycle(n5, 2, 0) ==
        add(sym(mono({one, h1, BasisClass::l(0)})), sym(mono({h1, h2, BasisClass::l(2)}))));
  CHECK_THROWS_AS(delta_cycle(n5, 1, 1), std::domain_error);
}

TEST_CASE("diagonal class per middle-square parity") {
  CHECK(diagonal_class(n5) == delta_cycle(n5, 1, 0));

  QuadricContext n4(4);
  Cycle hd = h_power_cycle(n4, 2);
  CHECK(diagonal_class(n4) == add(delta_cycle(n4, 1, 0), external(hd, hd)));

  QuadricContext n6(6);
  CHECK(diagonal_class(n6) == delta_cycle(n6, 1, 0));
}

TEST_CASE("diagonal acts as the identity correspondence") {
  for (int n : {4, 5, 6}) {
    QuadricContext ctx(n);
    Cycle diag = diagonal_class(ctx);
    for (int j = 0; j <= ctx.d; ++j) {
      Cycle x = Cycle::from_basis(BasisClass::l(j));
      CHECK(corr_action(diag, x, ctx) == x);
    }
    if (ctx.even()) {
      Cycle x = Cycle::from_basis(BasisClass::l_prime(ctx.d));
      CHECK(corr_action(diag, x, ctx) == x);
    }
  }
}

TEST_CASE("primordial cycle shapes") {
  PrimordialSpec narrow{2, {}};
  CHECK(primordial(n5, narrow) ==
        add(mono({one, BasisClass::l(1)}), mono({BasisClass::l(1), one})));

  PrimordialSpec wide{1, {{1, true}, {2, false}}};
  Cycle pi = primordial(n5, wide);
  Cycle expected = add(add(mono({one, BasisClass::l(0)}), mono({BasisClass::l(0), one})),
                       add(mono({h1, BasisClass::l(1)}), mono({BasisClass::l(1), h1})));
  CHECK(pi == expected);
  CHECK(permute_pushforward(Permutation({1, 0}), pi) == pi);

  CHECK_THROWS_AS(primordial(n5, PrimordialSpec{0, {}}), std::domain_error);
  CHECK_THROWS_AS(primordial(n5, PrimordialSpec{1, {}}), std::domain_error);
  CHECK_THROWS_AS(primordial(n5, PrimordialSpec{2, {{2, true}}}), std::domain_error);
}

TEST_CASE("delta recursion and alternating form at small n") {
  for (int n : {4, 5, 6, 7}) {
    QuadricContext ctx(n);
    for (int i = 2; i <= ctx.d; ++i) {
      for (int j = 0; j + 2 <= i; ++j) {
        Cycle rhs = subgroup_sum(
            Permutation::rotation(i + 1),
            external(delta_cycle(ctx, i - 1, j), Cycle::from_basis(BasisClass::h(i - 1))));
        CHECK(delta_cycle(ctx, i, j) == rhs);
      }
      std::vector<BasisClass> head;
      for (int k = 0; k + 2 <= i; ++k) head.push_back(BasisClass::h(k));
      Cycle seed = external(Cycle::monomial(Monomial::of(head)), delta_cycle(ctx, 1, 0));
      CHECK(delta_cycle(ctx, i, i - 1) == alternating_sum(seed));
    }
  }
}

TEST_CASE("middle conventions produce the same delta cycles") {
  for (int n : {4, 6, 8}) {
    QuadricContext a(n, Orientation::ld, Orientation::ld);
    QuadricContext b(n, Orientation::ld, Orientation::ldprime);
    for (int i = 1; i <= a.d; ++i) {
      for (int j = 0; j < i; ++j) {
        CHECK(delta_cycle(a, i, j) == delta_cycle(b, i, j));
      }
    }
  }
}
