#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace qchow {

// Which of the two middle-dimensional classes of an even-dimensional split
// quadric plays the role of l_d.  For odd dimensions the choice is vacuous.
enum class Orientation : uint8_t { ld, ldprime };

inline const char* to_string(Orientation o) {
  return o == Orientation::ld ? "ld" : "ldprime";
}

enum class ClassKind : uint8_t {
  Hyperplane = 0,      // h^k, codimension k
  Isotropic = 1,       // l_j, dimension j
  IsotropicPrime = 2,  // the second middle class on an even quadric
};

// One canonical basis element of the mod-2 Chow ring of a split quadric.
// Encoded in a single byte so that monomials stay trivially comparable.
class BasisClass {
 public:
  BasisClass() : code_(0) {}

  static BasisClass h(int k);
  static BasisClass l(int j);
  static BasisClass l_prime(int d);
  static BasisClass from_code(uint8_t code) { return BasisClass(code); }

  ClassKind kind() const { return static_cast<ClassKind>(code_ >> 6); }
  int index() const { return code_ & 0x3f; }
  uint8_t code() const { return code_; }

  bool is_unit() const { return code_ == 0; }
  bool is_point() const { return kind() == ClassKind::Isotropic && index() == 0; }

  auto operator<=>(const BasisClass&) const = default;

 private:
  explicit BasisClass(uint8_t code) : code_(code) {}
  uint8_t code_;
};

// The ambient split quadric: dimension n, d = floor(n/2), plus the two
// middle-class conventions that are only meaningful for even n.
struct QuadricContext {
  int n = 1;
  int d = 0;
  Orientation orientation = Orientation::ld;
  // Convention used for the middle isotropic factor of the Delta family;
  // defaults to the global orientation when unset.
  std::optional<Orientation> delta_middle;

  QuadricContext() = default;
  explicit QuadricContext(int dim, Orientation orient = Orientation::ld,
                          std::optional<Orientation> delta = std::nullopt);

  bool even() const { return n % 2 == 0; }
  bool middle_square_nonzero() const { return n % 4 == 0; }
  Orientation effective_delta_middle() const {
    return delta_middle.value_or(orientation);
  }

  // The class the calculus calls l_j.  For j = d on an even quadric this is
  // resolved through the orientation; for odd n it is always the plain l_j.
  BasisClass isotropic(int j) const;
  // The middle class opposite to isotropic(d); even n only.
  BasisClass alternate_middle() const;
  // Middle class used by the Delta family at the top of its m-sum.
  BasisClass delta_middle_class() const;
};

// Mod-2 sum of at most two basis classes; the value type of single products.
struct BasisProduct {
  std::array<BasisClass, 2> term{};
  int count = 0;

  static BasisProduct zero() { return {}; }
  static BasisProduct of(BasisClass a) { return {{a, BasisClass()}, 1}; }
  static BasisProduct of(BasisClass a, BasisClass b) { return {{a, b}, 2}; }
};

bool is_valid(BasisClass b, const QuadricContext& ctx);
void validate(BasisClass b, const QuadricContext& ctx);

// h^m expanded in the canonical basis: zero above d, and on an even quadric
// the power h^d is the sum of the two middle classes.
BasisProduct h_power(const QuadricContext& ctx, int m);

// Product of two basis classes in Ch(X_K), expanded in the canonical basis.
BasisProduct mul_basis(BasisClass a, BasisClass b, const QuadricContext& ctx);

int codim(BasisClass b, const QuadricContext& ctx);

// Pushforward to the base point: keeps only the class of a rational point.
inline bool point_pushforward(BasisClass b) { return b.is_point(); }

// Context-aware name: the designated middle class prints as l_d, the other
// one as lp.
std::string class_name(BasisClass b, const QuadricContext& ctx);

}  // namespace qchow
