#include "qchow/steenrod.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "qchow/families.hpp"

namespace qchow {

Cycle steenrod_basis(BasisClass b, int l, const QuadricContext& ctx) {
  validate(b, ctx);
  if (l < 0) throw std::domain_error("negative Steenrod degree");
  if (l == 0) return Cycle::from_basis(b);
  switch (b.kind()) {
    case ClassKind::Hyperplane: {
      int k = b.index();
      if (!binom_parity(k, l)) return Cycle::zero(1);
      return h_power_cycle(ctx, k + l);
    }
    case ClassKind::Isotropic:
    case ClassKind::IsotropicPrime: {
      int j = (b.kind() == ClassKind::IsotropicPrime) ? ctx.d : b.index();
      if (j - l < 0) return Cycle::zero(1);
      if (!binom_parity(ctx.n + 1 - j, l)) return Cycle::zero(1);
      return Cycle::from_basis(BasisClass::l(j - l));
    }
  }
  return Cycle::zero(1);
}

namespace {

// Total-operation expansion on one monomial: distribute the degree across
// the factors and multiply the per-factor images.
void total_expand(const Monomial& m, int slot, int remaining,
                  std::vector<BasisClass>& factors, const QuadricContext& ctx,
                  MonomialAccumulator& acc) {
  const int r = m.arity();
  if (slot == r) {
    if (remaining == 0) acc.push(Monomial::of(factors));
    return;
  }
  for (int l = 0; l <= remaining; ++l) {
    Cycle img = steenrod_basis(m.factor(slot), l, ctx);
    for (const Monomial& t : img.support()) {
      factors[slot] = t.factor(0);
      total_expand(m, slot + 1, remaining - l, factors, ctx, acc);
    }
  }
}

}  // namespace

Cycle steenrod_factor(const Cycle& x, const SteenrodQuery& q, const QuadricContext& ctx) {
  if (q.degree < 0) throw std::domain_error("negative Steenrod degree");
  const int r = x.arity();
  MonomialAccumulator acc;
  if (q.slot) {
    int slot = *q.slot;
    if (slot < 0 || slot >= r) {
      throw std::invalid_argument("Steenrod target slot out of range: " +
                                  std::to_string(slot));
    }
    for (const Monomial& m : x.support()) {
      Cycle img = steenrod_basis(m.factor(slot), q.degree, ctx);
      for (const Monomial& t : img.support()) {
        Monomial out = m;
        out.set_factor(slot, t.factor(0));
        acc.push(out);
      }
    }
  } else {
    std::vector<BasisClass> factors(r);
    for (const Monomial& m : x.support()) {
      total_expand(m, 0, q.degree, factors, ctx, acc);
    }
  }
  return Cycle::from_monomials(r, acc.take());
}

Cycle rho_steenrod_pullback(const QuadricContext& ctx, int i, int j, int l) {
  if (i < 2 || i > ctx.d || l < 1 || l > i - 1 || j < l || j > ctx.d) {
    throw std::domain_error("rho pullback indices out of range");
  }
  Cycle image = steenrod_factor(rho(ctx, i, j), SteenrodQuery{l, 0}, ctx);
  return diagonal_pullback(SlotMap::merge_first_two(i + 1), image, ctx);
}

Cycle rho_steenrod_closed_form(const QuadricContext& ctx, int i, int j, int l) {
  if (i < 2 || i > ctx.d || l < 1 || l > i - 1 || j < l || j > ctx.d) {
    throw std::domain_error("rho pullback indices out of range");
  }
  Cycle result = Cycle::zero(i);

  auto sym_h_block = [&](int skip_a, int skip_b, std::optional<int> with_l) {
    // sym over the h^t, t = 0..i-1 with up to two exponents skipped, the
    // isotropic tail appended last.
    std::vector<BasisClass> factors;
    for (int t = 0; t < i; ++t) {
      if (t == skip_a || t == skip_b) continue;
      factors.push_back(BasisClass::h(t));
    }
    if (with_l) factors.push_back(ctx.isotropic(*with_l));
    return sym(Cycle::monomial(Monomial::of(factors)));
  };

  // Both h-factors of the pulled-apart slot recombine: h^{k+l+s} up front.
  for (int k = l; k <= i - 1; ++k) {
    if (!binom_parity(k, l)) continue;
    for (int s = 0; s <= i - 1; ++s) {
      if (s == k) continue;
      Cycle head = h_power_cycle(ctx, k + l + s);
      if (head.is_zero()) continue;
      result = add(result, external(head, sym_h_block(s, k, j)));
    }
  }
  // The isotropic factor swallowed h^{k+l}.
  for (int k = l; k <= i - 1; ++k) {
    if (!binom_parity(k, l)) continue;
    if (j - k - l < 0) continue;
    Cycle head = Cycle::from_basis(BasisClass::l(j - k - l));
    result = add(result, external(head, sym_h_block(k, -1, std::nullopt)));
  }
  // The Steenrod image of the isotropic factor met h^s.
  for (int s = 0; s <= i - 1; ++s) {
    if (!binom_parity(ctx.n + 1 - j, l)) continue;
    if (j - l - s < 0) continue;
    Cycle head = Cycle::from_basis(BasisClass::l(j - l - s));
    result = add(result, external(head, sym_h_block(s, -1, std::nullopt)));
  }
  return result;
}

}  // namespace qchow
