#include "qchow/families.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qchow {

namespace {
void require_range(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what + ": index out of range");
}
}  // namespace

Cycle rho(const QuadricContext& ctx, int i, int j) {
  require_range(i >= 0 && i <= ctx.d && j >= 0 && j <= ctx.d, "rho");
  std::vector<BasisClass> factors;
  factors.reserve(i + 1);
  for (int k = 0; k < i; ++k) factors.push_back(BasisClass::h(k));
  factors.push_back(ctx.isotropic(j));
  return sym(Cycle::monomial(Monomial::of(factors)));
}

Cycle delta_cycle(const QuadricContext& ctx, int i, int j) {
  require_range(i >= 1 && i <= ctx.d && j >= 0 && j <= i - 1, "delta");
  std::vector<BasisClass> factors;
  for (int k = 0; k < i; ++k) factors.push_back(BasisClass::h(k));
  factors.push_back(ctx.isotropic(j));
  Cycle result = sym(Cycle::monomial(Monomial::of(factors)));

  for (int m = i; m <= ctx.d; ++m) {
    Cycle base(1);
    bool first = true;
    for (int k = 0; k < i; ++k) {
      if (k == j) continue;
      Cycle f = Cycle::from_basis(BasisClass::h(k));
      base = first ? f : external(base, f);
      first = false;
    }
    Cycle hm = h_power_cycle(ctx, m);
    base = first ? hm : external(base, hm);
    BasisClass lm = (m == ctx.d) ? ctx.delta_middle_class() : BasisClass::l(m);
    base = external(base, Cycle::from_basis(lm));
    result = add(result, sym(base));
  }
  return result;
}

Cycle diagonal_class(const QuadricContext& ctx) {
  Cycle result = delta_cycle(ctx, 1, 0);
  if (ctx.middle_square_nonzero()) {
    Cycle hd = h_power_cycle(ctx, ctx.d);
    result = add(result, external(hd, hd));
  }
  return result;
}

Cycle primordial(const QuadricContext& ctx, const PrimordialSpec& spec) {
  require_range(spec.i1 >= 1 && spec.i1 <= ctx.d, "primordial");
  const int lo = spec.i1;
  const int hi = ctx.d - spec.i1 + 1;
  int expected = hi >= lo ? hi - lo + 1 : 0;
  if (static_cast<int>(spec.coeffs.size()) != expected) {
    throw std::domain_error("primordial coefficients must fill the range " +
                            std::to_string(lo) + ".." + std::to_string(hi));
  }
  for (const auto& [k, unused] : spec.coeffs) {
    if (k < lo || k > hi) {
      throw std::domain_error("primordial coefficient index out of range: " +
                              std::to_string(k));
    }
  }

  Cycle one = Cycle::unit(1);
  Cycle edge = Cycle::from_basis(ctx.isotropic(spec.i1 - 1));
  Cycle result = add(external(one, edge), external(edge, one));
  for (const auto& [k, on] : spec.coeffs) {
    if (!on) continue;
    Cycle hk = h_power_cycle(ctx, k);
    Cycle lk = Cycle::from_basis(ctx.isotropic(k + spec.i1 - 1));
    result = add(result, add(external(hk, lk), external(lk, hk)));
  }
  return result;
}

}  // namespace qchow
