#pragma once

#include <vector>

#include "qchow/ring.hpp"

namespace qchow {

// Product of elementary degree classes on the maximal isotropic
// grassmannian: index a encodes the class of codimension n-d-a.  Indices are
// canonicalized to nondecreasing order on construction.
struct ZProduct {
  std::vector<int> indices;

  ZProduct(std::vector<int> idx, const QuadricContext& ctx);
};

// Degree of the product: 1 exactly when the indices run through 0..d once
// each, 0 otherwise.
bool degree_z_product(const ZProduct& p, const QuadricContext& ctx);

}  // namespace qchow
