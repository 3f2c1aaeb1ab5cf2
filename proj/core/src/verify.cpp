#include "qchow/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <stdexcept>

#include "qchow/edi.hpp"
#include "qchow/families.hpp"
#include "qchow/grassmannian.hpp"
#include "qchow/steenrod.hpp"

namespace qchow {

namespace {

std::vector<BasisClass> basis_of(const QuadricContext& ctx) {
  std::vector<BasisClass> out;
  int h_top = ctx.even() ? ctx.d - 1 : ctx.d;
  for (int k = 0; k <= h_top; ++k) out.push_back(BasisClass::h(k));
  for (int j = 0; j <= ctx.d; ++j) out.push_back(BasisClass::l(j));
  if (ctx.even()) out.push_back(BasisClass::l_prime(ctx.d));
  return out;
}

Cycle sym_h_monomial(int i) {
  // sym(h^0 x ... x h^{i-1}); the arity-i unit when i factors are requested.
  std::vector<BasisClass> factors;
  for (int k = 0; k < i; ++k) factors.push_back(BasisClass::h(k));
  return sym(Cycle::monomial(Monomial::of(factors)));
}

std::string diff_witness(const QuadricContext& ctx, const std::string& label,
                         const Cycle& got, const Cycle& want) {
  return label + ": got " + to_string(got, ctx) + " | want " + to_string(want, ctx);
}

// Every coefficient vector of the primordial family for a given i1.
std::vector<PrimordialSpec> primordial_specs(const QuadricContext& ctx, int i1) {
  int lo = i1;
  int hi = ctx.d - i1 + 1;
  int width = std::max(0, hi - lo + 1);
  std::vector<PrimordialSpec> out;
  for (uint32_t bits = 0; bits < (1u << width); ++bits) {
    PrimordialSpec spec;
    spec.i1 = i1;
    for (int k = 0; k < width; ++k) spec.coeffs[lo + k] = (bits >> k) & 1u;
    out.push_back(std::move(spec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// quadric ring
// ---------------------------------------------------------------------------

FamilyResult ring_commutative(const QuadricContext& ctx) {
  FamilyResult r;
  auto basis = basis_of(ctx);
  for (BasisClass a : basis) {
    for (BasisClass b : basis) {
      ++r.cases;
      Cycle xy = mul(Cycle::from_basis(a), Cycle::from_basis(b), ctx);
      Cycle yx = mul(Cycle::from_basis(b), Cycle::from_basis(a), ctx);
      if (xy != yx) {
        r.fail("product of " + class_name(a, ctx) + " and " + class_name(b, ctx) +
               " is not symmetric");
      }
    }
  }
  return r;
}

FamilyResult ring_associative(const QuadricContext& ctx) {
  FamilyResult r;
  auto basis = basis_of(ctx);
  for (BasisClass a : basis) {
    Cycle ca = Cycle::from_basis(a);
    for (BasisClass b : basis) {
      Cycle ab = mul(ca, Cycle::from_basis(b), ctx);
      for (BasisClass c : basis) {
        ++r.cases;
        Cycle cc = Cycle::from_basis(c);
        Cycle left = mul(ab, cc, ctx);
        Cycle right = mul(ca, mul(Cycle::from_basis(b), cc, ctx), ctx);
        if (left != right) {
          r.fail("associativity fails on " + class_name(a, ctx) + ", " +
                 class_name(b, ctx) + ", " + class_name(c, ctx));
        }
      }
    }
  }
  return r;
}

FamilyResult ring_grading(const QuadricContext& ctx) {
  FamilyResult r;
  auto basis = basis_of(ctx);
  for (BasisClass a : basis) {
    for (BasisClass b : basis) {
      ++r.cases;
      BasisProduct p = mul_basis(a, b, ctx);
      for (int t = 0; t < p.count; ++t) {
        if (codim(p.term[t], ctx) != codim(a, ctx) + codim(b, ctx)) {
          r.fail("graded degree broken on " + class_name(a, ctx) + " * " +
                 class_name(b, ctx));
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// cycles on powers
// ---------------------------------------------------------------------------

std::vector<Monomial> all_monomials(const QuadricContext& ctx, int r) {
  std::vector<Monomial> out;
  auto basis = basis_of(ctx);
  std::vector<BasisClass> factors(r);
  auto rec = [&](auto&& self, int slot) -> void {
    if (slot == r) {
      out.push_back(Monomial::of(factors));
      return;
    }
    for (BasisClass b : basis) {
      factors[slot] = b;
      self(self, slot + 1);
    }
  };
  rec(rec, 0);
  return out;
}

FamilyResult permute_ring_morphism(const QuadricContext& ctx) {
  FamilyResult r;
  for (int arity = 2; arity <= 3; ++arity) {
    std::vector<Permutation> perms;
    std::vector<int> img(arity);
    std::iota(img.begin(), img.end(), 0);
    do {
      perms.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));

    auto monomials = all_monomials(ctx, arity);
    for (const Monomial& a : monomials) {
      Cycle x = Cycle::monomial(a);
      for (const Monomial& b : monomials) {
        Cycle y = Cycle::monomial(b);
        Cycle xy = mul(x, y, ctx);
        for (const Permutation& s : perms) {
          ++r.cases;
          Cycle left = permute_pushforward(s, xy);
          Cycle right = mul(permute_pushforward(s, x), permute_pushforward(s, y), ctx);
          if (left != right) {
            r.fail(diff_witness(ctx, "pushforward is not multiplicative", left, right));
            return r;
          }
        }
      }
    }
  }
  return r;
}

FamilyResult projection_formula(const QuadricContext& ctx) {
  FamilyResult r;
  for (int arity = 2; arity <= 3; ++arity) {
    std::vector<std::vector<int>> drops;
    for (int s = 0; s < arity; ++s) drops.push_back({s});
    if (arity == 3) drops.insert(drops.end(), {{0, 1}, {0, 2}, {1, 2}});
    auto xs = all_monomials(ctx, arity);
    for (const auto& drop : drops) {
      int kept = arity - static_cast<int>(drop.size());
      auto ys = all_monomials(ctx, kept);
      for (const Monomial& ym : ys) {
        // p^*(y): the monomial with [X] inserted at the dropped slots.
        std::vector<BasisClass> lifted(arity, BasisClass::h(0));
        int w = 0;
        for (int slot = 0; slot < arity; ++slot) {
          if (std::find(drop.begin(), drop.end(), slot) == drop.end()) {
            lifted[slot] = ym.factor(w++);
          }
        }
        Cycle y = Cycle::monomial(ym);
        Cycle y_up = Cycle::monomial(Monomial::of(lifted));
        for (const Monomial& xm : xs) {
          ++r.cases;
          Cycle x = Cycle::monomial(xm);
          Cycle left = projection_pushforward(drop, mul(y_up, x, ctx));
          Cycle right = mul(y, projection_pushforward(drop, x), ctx);
          if (left != right) {
            r.fail(diff_witness(ctx, "projection formula", left, right));
            return r;
          }
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// the Delta family and the diagonal
// ---------------------------------------------------------------------------

FamilyResult diagonal_identity(const QuadricContext& ctx) {
  FamilyResult r;
  std::vector<QuadricContext> variants{ctx};
  if (ctx.even()) {
    QuadricContext alt = ctx;
    alt.delta_middle = ctx.effective_delta_middle() == Orientation::ld
                           ? Orientation::ldprime
                           : Orientation::ld;
    variants.push_back(alt);
  }
  for (const QuadricContext& c : variants) {
    Cycle diag = diagonal_class(c);
    for (BasisClass b : basis_of(c)) {
      ++r.cases;
      Cycle x = Cycle::from_basis(b);
      Cycle image = corr_action(diag, x, c);
      if (image != x) {
        r.fail("diagonal does not fix " + class_name(b, c) + " (delta middle " +
               to_string(c.effective_delta_middle()) + "): got " + to_string(image, c));
      }
    }
  }
  return r;
}

FamilyResult delta_recursion(const QuadricContext& ctx) {
  FamilyResult r;
  for (int i = 2; i <= ctx.d; ++i) {
    for (int j = 0; j <= i - 2; ++j) {
      ++r.cases;
      Cycle lhs = delta_cycle(ctx, i, j);
      Cycle step = external(delta_cycle(ctx, i - 1, j),
                            Cycle::from_basis(BasisClass::h(i - 1)));
      Cycle rhs = subgroup_sum(Permutation::rotation(i + 1), step);
      if (lhs != rhs) {
        r.fail(diff_witness(ctx, "cyclic recursion i=" + std::to_string(i) +
                                     " j=" + std::to_string(j),
                            lhs, rhs));
      }
    }
  }
  return r;
}

FamilyResult delta_alternating(const QuadricContext& ctx) {
  FamilyResult r;
  for (int i = 2; i <= ctx.d; ++i) {
    ++r.cases;
    Cycle lhs = delta_cycle(ctx, i, i - 1);
    std::vector<BasisClass> head;
    for (int k = 0; k <= i - 2; ++k) head.push_back(BasisClass::h(k));
    Cycle seed = external(Cycle::monomial(Monomial::of(head)), delta_cycle(ctx, 1, 0));
    Cycle rhs = alternating_sum(seed);
    if (lhs != rhs) {
      r.fail(diff_witness(ctx, "alternating form i=" + std::to_string(i), lhs, rhs));
    }
  }
  return r;
}

FamilyResult delta_convention_invariance(const QuadricContext& ctx) {
  FamilyResult r;
  if (!ctx.even()) return r;
  QuadricContext a = ctx, b = ctx;
  a.delta_middle = Orientation::ld;
  b.delta_middle = Orientation::ldprime;
  for (int i = 1; i <= ctx.d; ++i) {
    for (int j = 0; j <= i - 1; ++j) {
      ++r.cases;
      if (delta_cycle(a, i, j) != delta_cycle(b, i, j)) {
        r.fail("middle conventions disagree at i=" + std::to_string(i) +
               " j=" + std::to_string(j));
      }
    }
  }
  return r;
}

FamilyResult rho_action(const QuadricContext& ctx) {
  FamilyResult r;
  for (int i = 1; i <= ctx.d; ++i) {
    Cycle expected_hit = sym_h_monomial(i);
    for (int j = 0; j <= ctx.d; ++j) {
      Cycle correspondence = rho(ctx, i, j);
      // Grading sanity on the defining cycle itself.
      for (const Monomial& m : correspondence.support()) {
        if (m.codim(ctx) != ctx.n - j + i * (i - 1) / 2) {
          r.fail("rho codimension off at i=" + std::to_string(i) +
                 " j=" + std::to_string(j));
        }
      }
      for (int m = 0; m <= ctx.d; ++m) {
        ++r.cases;
        Cycle image = corr_action(correspondence, h_power_cycle(ctx, m), ctx);
        Cycle want = (m == j) ? expected_hit : Cycle::zero(i);
        if (image != want) {
          r.fail(diff_witness(ctx, "rho action i=" + std::to_string(i) +
                                   " j=" + std::to_string(j) + " m=" + std::to_string(m),
                              image, want));
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Steenrod operations
// ---------------------------------------------------------------------------

Cycle total_steenrod(const Cycle& x, const QuadricContext& ctx) {
  Cycle out = Cycle::zero(x.arity());
  for (int l = 0; l <= ctx.n + 1; ++l) {
    out = add(out, steenrod_factor(x, SteenrodQuery{l, std::nullopt}, ctx));
  }
  return out;
}

FamilyResult steenrod_zero_op(const QuadricContext& ctx) {
  FamilyResult r;
  for (BasisClass b : basis_of(ctx)) {
    ++r.cases;
    if (steenrod_basis(b, 0, ctx) != Cycle::from_basis(b)) {
      r.fail("S^0 moves " + class_name(b, ctx));
    }
  }
  Cycle probe = diagonal_class(ctx);
  ++r.cases;
  if (steenrod_factor(probe, SteenrodQuery{0, std::nullopt}, ctx) != probe) {
    r.fail("total S^0 moves the diagonal class");
  }
  return r;
}

FamilyResult steenrod_vanishing(const QuadricContext& ctx) {
  FamilyResult r;
  for (BasisClass b : basis_of(ctx)) {
    int c = codim(b, ctx);
    for (int l = c + 1; l <= ctx.n + 2; ++l) {
      ++r.cases;
      if (!steenrod_basis(b, l, ctx).is_zero()) {
        r.fail("S^" + std::to_string(l) + " does not kill " + class_name(b, ctx));
      }
    }
  }
  return r;
}

FamilyResult steenrod_top_squaring(const QuadricContext& ctx) {
  FamilyResult r;
  for (BasisClass b : basis_of(ctx)) {
    ++r.cases;
    Cycle x = Cycle::from_basis(b);
    Cycle top = steenrod_basis(b, codim(b, ctx), ctx);
    Cycle square = mul(x, x, ctx);
    if (top != square) {
      r.fail(diff_witness(ctx, "top operation on " + class_name(b, ctx), top, square));
    }
  }
  return r;
}

FamilyResult steenrod_cartan(const QuadricContext& ctx) {
  FamilyResult r;
  auto basis = basis_of(ctx);
  std::vector<Cycle> totals;
  totals.reserve(basis.size());
  for (BasisClass b : basis) totals.push_back(total_steenrod(Cycle::from_basis(b), ctx));
  for (size_t ia = 0; ia < basis.size(); ++ia) {
    for (size_t ib = 0; ib < basis.size(); ++ib) {
      ++r.cases;
      Cycle product = mul(Cycle::from_basis(basis[ia]), Cycle::from_basis(basis[ib]), ctx);
      Cycle lhs = total_steenrod(product, ctx);
      Cycle rhs = mul(totals[ia], totals[ib], ctx);
      if (lhs != rhs) {
        r.fail(diff_witness(ctx, "Cartan rule on " + class_name(basis[ia], ctx) + " * " +
                                     class_name(basis[ib], ctx),
                            lhs, rhs));
      }
    }
  }
  return r;
}

FamilyResult rho_steenrod_closed(const QuadricContext& ctx) {
  FamilyResult r;
  for (int i = 2; i <= ctx.d; ++i) {
    for (int l = 1; l <= i - 1; ++l) {
      for (int j = l; j <= ctx.d; ++j) {
        ++r.cases;
        Cycle direct = rho_steenrod_pullback(ctx, i, j, l);
        Cycle closed = rho_steenrod_closed_form(ctx, i, j, l);
        if (direct != closed) {
          r.fail(diff_witness(ctx, "closed form i=" + std::to_string(i) +
                                   " j=" + std::to_string(j) + " l=" + std::to_string(l),
                              direct, closed));
        }
      }
    }
  }
  return r;
}

FamilyResult steenrod_high_collapse(const QuadricContext& ctx) {
  FamilyResult r;
  for (int i = 1; i <= ctx.d; ++i) {
    Cycle tail = sym_h_monomial(i);
    for (int l = i; l <= ctx.d; ++l) {
      for (int j = 0; j <= ctx.d; ++j) {
        ++r.cases;
        Cycle lhs = steenrod_factor(rho(ctx, i, j), SteenrodQuery{l, 0}, ctx);
        int m = ctx.n - i - j;
        Cycle rhs = Cycle::zero(i + 1);
        if (j - l >= 0 && binom_parity(m + i + 1, l)) {
          rhs = external(Cycle::from_basis(BasisClass::l(j - l)), tail);
        }
        if (lhs != rhs) {
          r.fail(diff_witness(ctx, "high-degree collapse i=" + std::to_string(i) +
                                   " j=" + std::to_string(j) + " l=" + std::to_string(l),
                              lhs, rhs));
        }
      }
    }
  }
  return r;
}

FamilyResult cyclic_orbit_rebuild(const QuadricContext& ctx) {
  FamilyResult r;
  for (int i = 1; i <= ctx.d; ++i) {
    Cycle tail = sym_h_monomial(i);
    for (int j = 0; j <= ctx.d; ++j) {
      ++r.cases;
      Cycle seed = external(Cycle::from_basis(ctx.isotropic(j)), tail);
      Cycle rebuilt = subgroup_sum(Permutation::rotation(i + 1), seed);
      Cycle want = rho(ctx, i, j);
      if (rebuilt != want) {
        r.fail(diff_witness(ctx, "orbit rebuild i=" + std::to_string(i) +
                                 " j=" + std::to_string(j),
                            rebuilt, want));
      }
    }
  }
  return r;
}

// The two collapse steps used when a slot-Steenrod image is translated and
// re-symmetrized: partial symmetrization first, full cyclic orbit second.
FamilyResult repetition_collapse_chain(const QuadricContext& ctx) {
  FamilyResult r;
  const int n = ctx.n;
  const int d = ctx.d;
  for (int i = 2; i <= d; ++i) {
    for (int l = 1; l <= i - 1; ++l) {
      for (int m = n - i - d; m <= n - i - l; ++m) {
        if (!binom_parity(m + i + 1, l)) continue;
        int j = n - i - m;

        auto shifted_cycle = [&](int a) {
          Cycle out = Cycle::zero(i + 1);
          for (int k = l; k <= i - 1; ++k) {
            if (!binom_parity(k, l)) continue;
            Cycle head = h_power_cycle(ctx, k + l + a);
            if (head.is_zero()) continue;
            std::vector<BasisClass> rest;
            for (int s = 0; s <= i - 1; ++s) {
              if (s != k) rest.push_back(BasisClass::h(s));
            }
            rest.push_back(ctx.isotropic(j));
            out = add(out, external(head, sym(Cycle::monomial(Monomial::of(rest)))));
          }
          if (j - l - a >= 0) {
            out = add(out, external(Cycle::from_basis(BasisClass::l(j - l - a)),
                                    sym_h_monomial(i)));
          }
          return out;
        };

        ++r.cases;
        Cycle lifted = external(rho_steenrod_pullback(ctx, i, j, l), Cycle::unit(1));
        Cycle partial = subgroup_sum(Permutation::rotation_from(i + 1, 1), lifted);
        Cycle expected = shifted_cycle(0);
        if (partial != expected) {
          r.fail(diff_witness(ctx, "partial symmetrization i=" + std::to_string(i) +
                                   " l=" + std::to_string(l) + " m=" + std::to_string(m),
                              partial, expected));
        }

        for (int a = 0; a <= n - i - m - l; ++a) {
          bool admissible = true;
          for (int k = l; k <= i - 1 && admissible; ++k) {
            int shift = k + l + a;
            if (shift >= i && shift <= d && binom_parity(k, l)) admissible = false;
          }
          if (!admissible) continue;
          ++r.cases;
          Cycle collapsed = subgroup_sum(Permutation::rotation(i + 1), shifted_cycle(a));
          Cycle want = rho(ctx, i, j - l - a);
          if (collapsed != want) {
            r.fail(diff_witness(ctx, "orbit collapse i=" + std::to_string(i) +
                                     " l=" + std::to_string(l) + " m=" + std::to_string(m) +
                                     " a=" + std::to_string(a),
                                collapsed, want));
          }
        }
      }
    }
  }
  return r;
}

FamilyResult level2_neighbor_identity(const QuadricContext& ctx) {
  FamilyResult r;
  if (ctx.d < 2) return r;
  Cycle one_h = external(Cycle::unit(1), h_power_cycle(ctx, 1));
  for (int j = 2; j <= ctx.d; ++j) {
    int m = ctx.n - 2 - j;
    if (m % 2 == 0) continue;
    ++r.cases;
    Cycle lhs = rho_steenrod_pullback(ctx, 2, j - 1, 1);
    Cycle rhs = mul(one_h, rho_steenrod_pullback(ctx, 2, j, 1), ctx);
    if (lhs != rhs) {
      r.fail(diff_witness(ctx, "neighbor identity j=" + std::to_string(j), lhs, rhs));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// the 1-primordial composition
// ---------------------------------------------------------------------------

FamilyResult primordial_symmetric(const QuadricContext& ctx) {
  FamilyResult r;
  Permutation swap({1, 0});
  for (int i1 = 1; i1 <= ctx.d; ++i1) {
    for (const PrimordialSpec& spec : primordial_specs(ctx, i1)) {
      ++r.cases;
      Cycle pi = primordial(ctx, spec);
      if (permute_pushforward(swap, pi) != pi) {
        r.fail("primordial cycle not swap-symmetric at i1=" + std::to_string(i1));
      }
    }
  }
  return r;
}

FamilyResult primordial_composition(const QuadricContext& ctx) {
  FamilyResult r;
  std::vector<QuadricContext> variants{ctx};
  if (ctx.even()) {
    QuadricContext alt = ctx;
    alt.orientation = ctx.orientation == Orientation::ld ? Orientation::ldprime
                                                         : Orientation::ld;
    variants.push_back(alt);
  }
  for (const QuadricContext& c : variants) {
    const int d = c.d;
    for (int i1 = 2; i1 <= d; ++i1) {
      for (const PrimordialSpec& spec : primordial_specs(c, i1)) {
        Cycle pi = primordial(c, spec);
        for (int i = 1; i < i1; ++i) {
          Cycle gamma = mul(external(Cycle::unit(1), h_power_cycle(c, i1 - i)), pi, c);
          for (int j = 0; j <= d; ++j) {
            int gap = j + i;
            if (gap == i1 || (gap >= 2 * i1 && gap <= d + 1)) continue;
            ++r.cases;
            Cycle got = corr_compose(gamma, 1, rho(c, i, j), c);
            Cycle want = external(Cycle::unit(1), rho(c, i - 1, j));
            if (got != want) {
              bool up_to_noness = equal_mod_nonessential(got, want, c);
              r.fail("composition i1=" + std::to_string(i1) + " i=" + std::to_string(i) +
                     " j=" + std::to_string(j) + " (orientation " +
                     to_string(c.orientation) + ", equal mod nonessential: " +
                     (up_to_noness ? "yes" : "no") + "): got " + to_string(got, c));
            }
          }
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// grassmannian degree pairing
// ---------------------------------------------------------------------------

FamilyResult grassmann_degree_pairing(const QuadricContext& ctx) {
  FamilyResult r;
  const int d = ctx.d;
  long positive_full_length = 0;
  std::vector<int> idx;
  auto rec = [&](auto&& self, int next_min) -> void {
    if (!idx.empty()) {
      ++r.cases;
      bool got = degree_z_product(ZProduct(idx, ctx), ctx);
      bool want = false;
      if (static_cast<int>(idx.size()) == d + 1) {
        want = true;
        for (int a = 0; a <= d; ++a) want = want && idx[a] == a;
      }
      if (got != want) {
        r.fail("degree pairing wrong on an index list of length " +
               std::to_string(idx.size()));
      }
      if (got && static_cast<int>(idx.size()) == d + 1) ++positive_full_length;
    }
    if (static_cast<int>(idx.size()) == d + 1) return;
    for (int a = next_min; a <= d; ++a) {
      idx.push_back(a);
      self(self, a);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  if (positive_full_length != 1) {
    r.fail("expected exactly one positive evaluation among full-length lists, found " +
           std::to_string(positive_full_length));
  }
  r.extra["full_length_hits"] = positive_full_length;
  return r;
}

// ---------------------------------------------------------------------------
// EDI rule engine
// ---------------------------------------------------------------------------

std::vector<std::pair<WittContext, EDITable>> edi_probes(const QuadricContext& ctx,
                                                         int trials) {
  std::mt19937 rng(0x9e3779b9u ^ static_cast<uint32_t>(ctx.n));
  std::vector<WittContext> witts;
  witts.push_back({});
  witts.push_back({true, std::nullopt});
  if (ctx.d + 1 >= 2) witts.push_back({true, 2});
  if (ctx.d >= 3) witts.push_back({true, ctx.d});

  std::vector<std::pair<WittContext, EDITable>> out;
  for (const WittContext& w : witts) {
    for (int t = 0; t < trials; ++t) {
      EDITable table(ctx.n);
      for (int i = 0; i <= table.d(); ++i) {
        for (int m = table.level_min(i); m <= table.level_max(i); ++m) {
          if (rng() % 5 == 0) table.add(i, m);
        }
      }
      out.emplace_back(w, std::move(table));
    }
  }
  return out;
}

FamilyResult edi_closure_idempotent(const QuadricContext& ctx) {
  FamilyResult r;
  for (const auto& [w, seed] : edi_probes(ctx, 8)) {
    ++r.cases;
    PropagationResult first = propagate(seed, w);
    if (!first.ok()) continue;  // contradictions have no fixed point to re-run
    PropagationResult second = propagate(first.table, w);
    if (!second.ok() || second.table != first.table || !second.trail.empty()) {
      r.fail("closure is not idempotent at n=" + std::to_string(ctx.n));
    }
  }
  return r;
}

FamilyResult edi_order_independent(const QuadricContext& ctx) {
  FamilyResult r;
  std::mt19937 rng(0x51ed2705u ^ static_cast<uint32_t>(ctx.n));
  for (const auto& [w, seed] : edi_probes(ctx, 3)) {
    PropagationResult reference = propagate(seed, w);
    for (int shuffle = 0; shuffle < 20; ++shuffle) {
      ++r.cases;
      PropagateOptions opts;
      std::shuffle(opts.additive_order.begin(), opts.additive_order.end(), rng);
      PropagationResult alt = propagate(seed, w, opts);
      if (alt.ok() != reference.ok() ||
          (alt.ok() && !(alt.table == reference.table))) {
        r.fail("rule order changes the closure at n=" + std::to_string(ctx.n));
      }
    }
  }
  return r;
}

FamilyResult edi_trail_replay(const QuadricContext& ctx) {
  FamilyResult r;
  for (const auto& [w, seed] : edi_probes(ctx, 8)) {
    ++r.cases;
    PropagationResult result = propagate(seed, w);
    if (!replay_trail(seed, w, result)) {
      r.fail("audit trail does not replay at n=" + std::to_string(ctx.n));
    }
  }
  return r;
}

// Each level-2 parity firing is backed by the corresponding cycle identity.
FamilyResult edi_level2_crosscheck(const QuadricContext& ctx) {
  FamilyResult r;
  if (ctx.d < 2) return r;
  EDITable table(ctx.n);
  for (int m = table.level_min(2); m <= table.level_max(2); ++m) table.add(2, m);
  for (const RuleFiring& f : scan_rule(RuleId::Level2Parity, table, {})) {
    ++r.cases;
    int j = ctx.n - 2 - f.m;
    Cycle lhs = rho_steenrod_pullback(ctx, 2, j - 1, 1);
    Cycle rhs = mul(external(Cycle::unit(1), h_power_cycle(ctx, 1)),
                    rho_steenrod_pullback(ctx, 2, j, 1), ctx);
    if (lhs != rhs) {
      r.fail("level-2 firing at m=" + std::to_string(f.m) +
             " has no backing cycle identity");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

const std::vector<VerifyFamily>& registry() {
  static const std::vector<VerifyFamily> families = {
      {"ring-commutative", 14, ring_commutative},
      {"ring-associative", 14, ring_associative},
      {"ring-grading", 14, ring_grading},
      {"permute-ring-morphism", 8, permute_ring_morphism},
      {"projection-formula", 8, projection_formula},
      {"diagonal-identity", 14, diagonal_identity},
      {"delta-recursion", 12, delta_recursion},
      {"delta-alternating", 12, delta_alternating},
      {"delta-convention-invariance", 12, delta_convention_invariance},
      {"rho-action", 14, rho_action},
      {"steenrod-zero-op", 14, steenrod_zero_op},
      {"steenrod-vanishing", 14, steenrod_vanishing},
      {"steenrod-top-squaring", 14, steenrod_top_squaring},
      {"steenrod-cartan", 12, steenrod_cartan},
      {"rho-steenrod-closed-form", 12, rho_steenrod_closed},
      {"steenrod-high-collapse", 12, steenrod_high_collapse},
      {"cyclic-orbit-rebuild", 12, cyclic_orbit_rebuild},
      {"repetition-collapse-chain", 10, repetition_collapse_chain},
      {"level2-neighbor-identity", 12, level2_neighbor_identity},
      {"primordial-symmetric", 14, primordial_symmetric},
      {"primordial-composition", 12, primordial_composition},
      {"grassmann-degree-pairing", 13, grassmann_degree_pairing},
      {"edi-closure-idempotent", 12, edi_closure_idempotent},
      {"edi-order-independent", 10, edi_order_independent},
      {"edi-trail-replay", 12, edi_trail_replay},
      {"edi-level2-crosscheck", 12, edi_level2_crosscheck},
  };
  return families;
}

}  // namespace

const std::vector<VerifyFamily>& verify_families() { return registry(); }

Report run_verify(const VerifyOptions& opts) {
  if (opts.n_max > opts.bound) {
    throw std::domain_error("requested n exceeds the configured bound " +
                            std::to_string(opts.bound));
  }
  if (opts.n_min < 1 || opts.n_min > opts.n_max) {
    throw std::domain_error("empty or invalid dimension range");
  }
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.n = opts.n_max;
  report.conventions.orientation = opts.orientation;
  report.conventions.delta_middle = opts.delta_middle.value_or(opts.orientation);
  for (int n = opts.n_min; n <= opts.n_max; ++n) {
    QuadricContext ctx(n, opts.orientation, opts.delta_middle);
    for (const VerifyFamily& family : registry()) {
      if (n > family.max_n) continue;
      if (!opts.filter.empty() && family.name.find(opts.filter) == std::string::npos) {
        continue;
      }
      FamilyResult result = family.run(ctx);
      CheckEntry entry;
      entry.name = family.name;
      entry.params = result.extra;
      entry.params["n"] = static_cast<long>(n);
      entry.params["cases"] = result.cases;
      entry.pass = result.pass;
      entry.witness = result.witness;
      report.checks.push_back(std::move(entry));
    }
  }
  report.timing_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return report;
}

}  // namespace qchow
