#include "qchow/grassmannian.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qchow {

ZProduct::ZProduct(std::vector<int> idx, const QuadricContext& ctx)
    : indices(std::move(idx)) {
  if (indices.empty() || static_cast<int>(indices.size()) > ctx.d + 1) {
    throw std::domain_error("z-product length must be between 1 and d+1");
  }
  for (int a : indices) {
    if (a < 0 || a > ctx.d) {
      throw std::domain_error("z-product index out of range: " + std::to_string(a));
    }
  }
  std::sort(indices.begin(), indices.end());
}

bool degree_z_product(const ZProduct& p, const QuadricContext& ctx) {
  if (static_cast<int>(p.indices.size()) != ctx.d + 1) return false;
  for (int a = 0; a <= ctx.d; ++a) {
    if (p.indices[a] != a) return false;
  }
  return true;
}

}  // namespace qchow
