#pragma once

#include <map>

#include "qchow/cycle.hpp"

namespace qchow {

// Shape data of the minimal rational symmetric cycle on X^2 attached to an
// anisotropic quadric with first Witt index i1.  The coefficient keys must
// fill exactly the range i1 .. d-i1+1 (possibly empty).
struct PrimordialSpec {
  int i1 = 1;
  std::map<int, bool> coeffs;
};

// Full symmetrization of h^0 x h^1 x ... x h^{i-1} x l_j on X^{i+1}.
Cycle rho(const QuadricContext& ctx, int i, int j);

// The always-rational symmetric cycles generalizing the diagonal:
// sym((x_k h^k) x l_j) + sum_{m=i}^{d} sym((x_{k != j} h^k) x h^m x l_m).
Cycle delta_cycle(const QuadricContext& ctx, int i, int j);

// Class of the diagonal in Ch(X^2): the i=1, j=0 member of the Delta
// family, corrected by h^d x h^d when the middle square is nonzero.
Cycle diagonal_class(const QuadricContext& ctx);

// The 1-primordial cycle 1 x l_{i1-1} + l_{i1-1} x 1 + sum over the chosen
// coefficients of h^k x l_{k+i1-1} + its swap.
Cycle primordial(const QuadricContext& ctx, const PrimordialSpec& spec);

}  // namespace qchow
