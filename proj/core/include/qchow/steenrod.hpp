#pragma once

#include <cstdint>
#include <optional>

#include "qchow/cycle.hpp"

namespace qchow {

// C(a, b) mod 2 by the bit-subset criterion.
inline bool binom_parity(uint64_t a, uint64_t b) { return (a & b) == b; }

// One Steenrod request: operation degree plus an optional 0-based target
// slot; no slot means the total operation across all factors.
struct SteenrodQuery {
  int degree = 0;
  std::optional<int> slot;
};

// S^l on a single basis class, expanded in the canonical basis:
// S^l(h^k) = C(k,l) h^{k+l} and S^l(l_j) = C(n+1-j,l) l_{j-l}, with the
// second middle class following the l_d formula.  S^0 is the identity.
Cycle steenrod_basis(BasisClass b, int l, const QuadricContext& ctx);

// Slot-targeted operation S^l x Id x ... (or the degree-l piece of the
// total operation when no slot is given).
Cycle steenrod_factor(const Cycle& x, const SteenrodQuery& q, const QuadricContext& ctx);

// The pulled-back slot-1 Steenrod image of rho:
//   delta^* (S^l x Id^{x i}) (rho_{i,j}),  1 <= l <= i-1, l <= j <= d.
Cycle rho_steenrod_pullback(const QuadricContext& ctx, int i, int j, int l);

// The same cycle assembled directly from its three-sum expansion.
Cycle rho_steenrod_closed_form(const QuadricContext& ctx, int i, int j, int l);

}  // namespace qchow
