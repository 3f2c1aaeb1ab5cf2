#pragma once

// Test-only reference models, kept independent of the engine's own ring
// table: an integral Chow model of the split quadric driven purely by the
// step rules h*h^k and h*l_j, and plain Pascal-triangle binomials.

#include <cstdint>
#include <map>
#include <vector>

#include "qchow/cycle.hpp"
#include "qchow/ring.hpp"

namespace qchow::testsupport {

using ZElt = std::map<BasisClass, long long>;

inline void z_accumulate(ZElt& out, BasisClass b, long long coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = out.try_emplace(b, 0);
  it->second += coeff;
  if (it->second == 0) out.erase(it);
}

// One multiplication by h in the integral model.
inline ZElt z_mul_by_h(const ZElt& x, const QuadricContext& ctx) {
  const int d = ctx.d;
  ZElt out;
  for (const auto& [b, coeff] : x) {
    switch (b.kind()) {
      case ClassKind::Hyperplane: {
        int k = b.index();
        if (k + 1 <= d - 1) {
          z_accumulate(out, BasisClass::h(k + 1), coeff);
        } else if (k + 1 == d) {
          if (ctx.even()) {
            z_accumulate(out, BasisClass::l(d), coeff);
            z_accumulate(out, BasisClass::l_prime(d), coeff);
          } else {
            z_accumulate(out, BasisClass::h(d), coeff);
          }
        } else {
          // h^{k+1} with k+1 > d equals 2 l_{n-k-1}.
          z_accumulate(out, BasisClass::l(ctx.n - k - 1), 2 * coeff);
        }
        break;
      }
      case ClassKind::Isotropic:
        if (b.index() >= 1) z_accumulate(out, BasisClass::l(b.index() - 1), coeff);
        break;
      case ClassKind::IsotropicPrime:
        z_accumulate(out, BasisClass::l(d - 1), coeff);
        break;
    }
  }
  return out;
}

inline ZElt z_mul_basis(BasisClass a, BasisClass b, const QuadricContext& ctx) {
  if (a.kind() != ClassKind::Hyperplane && b.kind() == ClassKind::Hyperplane) {
    std::swap(a, b);
  }
  if (a.kind() == ClassKind::Hyperplane) {
    ZElt acc{{b, 1}};
    for (int step = 0; step < a.index(); ++step) acc = z_mul_by_h(acc, ctx);
    return acc;
  }
  // Isotropic against isotropic: zero below the middle; the middle table
  // pairs same with same exactly when d is even.
  if (!ctx.even()) return {};
  bool a_middle = a.kind() == ClassKind::IsotropicPrime || a.index() == ctx.d;
  bool b_middle = b.kind() == ClassKind::IsotropicPrime || b.index() == ctx.d;
  if (!a_middle || !b_middle) return {};
  bool same = a.kind() == b.kind();
  bool d_even = ctx.d % 2 == 0;
  if (same == d_even) return {{BasisClass::l(0), 1}};
  return {};
}

inline Cycle z_reduce_mod2(const ZElt& x) {
  std::vector<Monomial> monomials;
  for (const auto& [b, coeff] : x) {
    if (coeff % 2 != 0) monomials.push_back(Monomial::of({b}));
  }
  return Cycle::from_monomials(1, std::move(monomials));
}

// Pascal-triangle binomial coefficients; the rows stay within uint64 up to
// a = 64.
inline uint64_t binom_exact(int a, int b) {
  if (b < 0 || b > a) return 0;
  std::vector<uint64_t> row{1};
  for (int i = 1; i <= a; ++i) {
    std::vector<uint64_t> next(i + 1, 1);
    for (int k = 1; k < i; ++k) next[k] = row[k - 1] + row[k];
    row = std::move(next);
  }
  return row[b];
}

}  // namespace qchow::testsupport
