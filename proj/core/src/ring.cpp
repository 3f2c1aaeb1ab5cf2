#include "qchow/ring.hpp"

#include <stdexcept>
#include <string>

namespace qchow {

namespace {
uint8_t encode(ClassKind kind, int index) {
  if (index < 0 || index > 0x3f) {
    throw std::domain_error("basis class index out of representable range: " +
                            std::to_string(index));
  }
  return static_cast<uint8_t>((static_cast<uint8_t>(kind) << 6) | index);
}
}  // namespace

BasisClass BasisClass::h(int k) { return BasisClass(encode(ClassKind::Hyperplane, k)); }
BasisClass BasisClass::l(int j) { return BasisClass(encode(ClassKind::Isotropic, j)); }
BasisClass BasisClass::l_prime(int d) { return BasisClass(encode(ClassKind::IsotropicPrime, d)); }

QuadricContext::QuadricContext(int dim, Orientation orient,
                               std::optional<Orientation> delta)
    : n(dim), d(dim / 2), orientation(orient), delta_middle(delta) {
  if (dim < 1 || dim > 60) {
    throw std::domain_error("quadric dimension out of supported range: " +
                            std::to_string(dim));
  }
}

BasisClass QuadricContext::isotropic(int j) const {
  if (j < 0 || j > d) {
    throw std::domain_error("isotropic index out of range: " + std::to_string(j));
  }
  if (even() && j == d && orientation == Orientation::ldprime) {
    return BasisClass::l_prime(d);
  }
  return BasisClass::l(j);
}

BasisClass QuadricContext::alternate_middle() const {
  if (!even()) throw std::domain_error("no second middle class on an odd quadric");
  return orientation == Orientation::ldprime ? BasisClass::l(d)
                                             : BasisClass::l_prime(d);
}

BasisClass QuadricContext::delta_middle_class() const {
  if (!even()) return BasisClass::l(d);
  return effective_delta_middle() == Orientation::ldprime ? BasisClass::l_prime(d)
                                                          : BasisClass::l(d);
}

bool is_valid(BasisClass b, const QuadricContext& ctx) {
  switch (b.kind()) {
    case ClassKind::Hyperplane:
      return b.index() <= (ctx.even() ? ctx.d - 1 : ctx.d);
    case ClassKind::Isotropic:
      return b.index() <= ctx.d;
    case ClassKind::IsotropicPrime:
      return ctx.even() && b.index() == ctx.d;
  }
  return false;
}

void validate(BasisClass b, const QuadricContext& ctx) {
  if (!is_valid(b, ctx)) {
    throw std::domain_error("class " + class_name(b, ctx) +
                            " is not a basis class for n=" + std::to_string(ctx.n));
  }
}

BasisProduct h_power(const QuadricContext& ctx, int m) {
  if (m < 0) throw std::domain_error("negative hyperplane power");
  if (m > ctx.d) return BasisProduct::zero();
  if (ctx.even() && m == ctx.d) {
    return BasisProduct::of(BasisClass::l(ctx.d), BasisClass::l_prime(ctx.d));
  }
  return BasisProduct::of(BasisClass::h(m));
}

BasisProduct mul_basis(BasisClass a, BasisClass b, const QuadricContext& ctx) {
  validate(a, ctx);
  validate(b, ctx);
  if (b < a) std::swap(a, b);  // H-kind first

  if (a.kind() == ClassKind::Hyperplane) {
    if (b.kind() == ClassKind::Hyperplane) {
      return h_power(ctx, a.index() + b.index());
    }
    // h^a against an isotropic-kind class: shift the dimension down.
    if (a.index() == 0) return BasisProduct::of(b);
    int j = (b.kind() == ClassKind::IsotropicPrime) ? ctx.d : b.index();
    if (j < a.index()) return BasisProduct::zero();
    return BasisProduct::of(BasisClass::l(j - a.index()));
  }

  // Two isotropic-kind classes: everything dies except the middle pairings
  // on an even quadric.
  if (!ctx.even()) return BasisProduct::zero();
  if (a.kind() == ClassKind::Isotropic && a.index() < ctx.d) return BasisProduct::zero();
  if (b.kind() == ClassKind::Isotropic && b.index() < ctx.d) return BasisProduct::zero();
  bool same_class = a.kind() == b.kind();
  if (same_class == ctx.middle_square_nonzero()) {
    return BasisProduct::of(BasisClass::l(0));
  }
  return BasisProduct::zero();
}

int codim(BasisClass b, const QuadricContext& ctx) {
  switch (b.kind()) {
    case ClassKind::Hyperplane:
      return b.index();
    case ClassKind::Isotropic:
      return ctx.n - b.index();
    case ClassKind::IsotropicPrime:
      return ctx.d;
  }
  return 0;
}

std::string class_name(BasisClass b, const QuadricContext& ctx) {
  switch (b.kind()) {
    case ClassKind::Hyperplane:
      if (b.index() == 0) return "1";
      return "h^" + std::to_string(b.index());
    case ClassKind::Isotropic:
      if (ctx.even() && b.index() == ctx.d && ctx.orientation == Orientation::ldprime) {
        return "lp";
      }
      return "l_" + std::to_string(b.index());
    case ClassKind::IsotropicPrime:
      if (ctx.orientation == Orientation::ldprime) {
        return "l_" + std::to_string(b.index());
      }
      return "lp";
  }
  return "?";
}

}  // namespace qchow
