#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qchow/ring.hpp"

namespace qchow {

// Hard cap on the number of quadric factors a monomial can carry.  Large
// enough for every identity the engine verifies; expressions that would
// exceed it are rejected with a domain error.
inline constexpr int kMaxArity = 16;

// An external product of basis classes, one per factor of X^r.
class Monomial {
 public:
  Monomial() : len_(0) { codes_.fill(0); }

  static Monomial of(std::span<const BasisClass> factors);
  static Monomial of(std::initializer_list<BasisClass> factors);

  int arity() const { return len_; }
  BasisClass factor(int slot) const { return BasisClass::from_code(codes_[slot]); }
  void set_factor(int slot, BasisClass b) { codes_[slot] = b.code(); }

  int codim(const QuadricContext& ctx) const;
  bool all_points() const;

  auto operator<=>(const Monomial&) const = default;

 private:
  uint8_t len_;
  std::array<uint8_t, kMaxArity> codes_;
};

// Accumulates monomials mod 2.  Entries are buffered and compacted by
// sort-and-cancel, so pushing the same monomial twice is a no-op.
class MonomialAccumulator {
 public:
  void push(const Monomial& m);
  std::vector<Monomial> take();

 private:
  void compact();
  std::vector<Monomial> buffer_;
  size_t compact_threshold_ = 1u << 22;
};

// A mod-2 formal sum of arity-r monomials, kept sorted and duplicate-free.
class Cycle {
 public:
  explicit Cycle(int arity);

  static Cycle zero(int arity) { return Cycle(arity); }
  static Cycle unit(int arity);
  static Cycle monomial(const Monomial& m);
  static Cycle from_basis(BasisClass b);
  static Cycle from_product(const BasisProduct& p);
  static Cycle from_monomials(int arity, std::vector<Monomial> monomials);

  int arity() const { return arity_; }
  bool is_zero() const { return support_.empty(); }
  size_t size() const { return support_.size(); }
  const std::vector<Monomial>& support() const { return support_; }

  bool operator==(const Cycle&) const = default;

 private:
  int arity_;
  std::vector<Monomial> support_;
};

// h^m on X, expanded in the canonical basis (possibly zero or two terms).
Cycle h_power_cycle(const QuadricContext& ctx, int m);

// A permutation of the r slots, stored as 0-based images.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int r);
  // k -> k+1 cyclically.
  static Permutation rotation(int r);
  // Rotation of the slots in [first, r), fixing everything below.
  static Permutation rotation_from(int r, int first);

  int size() const { return static_cast<int>(images_.size()); }
  int image(int slot) const { return images_[slot]; }
  bool is_identity() const;
  bool is_even() const;
  Permutation after(const Permutation& first) const;  // this ∘ first

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

// Generalized diagonal X^s -> X^r given by slot k of X^r pulling from slot
// image[k] of X^s; image must be surjective onto 0..s-1.
struct SlotMap {
  std::vector<int> image;
  int target_arity = 0;

  static SlotMap merge_first_two(int source_arity);
  void validate_surjective() const;
};

// -- group law and ring structure ------------------------------------------

Cycle add(const Cycle& x, const Cycle& y);
Cycle mul(const Cycle& x, const Cycle& y, const QuadricContext& ctx);
Cycle external(const Cycle& x, const Cycle& y);

// -- symmetry operations ----------------------------------------------------

Cycle permute_pushforward(const Permutation& s, const Cycle& x);
// Sum over every permutation of the slots.
Cycle sym(const Cycle& x);
// Sum over the cyclic group generated by one permutation.
Cycle subgroup_sum(const Permutation& generator, const Cycle& x);
// Sum over the even permutations only.
Cycle alternating_sum(const Cycle& x);

// -- pullbacks and pushforwards ---------------------------------------------

Cycle diagonal_pullback(const SlotMap& f, const Cycle& x, const QuadricContext& ctx);
// Pushforward along the projection forgetting the given 0-based slots.
Cycle projection_pushforward(const std::vector<int>& drop, const Cycle& x);
bool degree(const Cycle& x);

// -- correspondences ----------------------------------------------------------

// alpha ⊂ X^{1+i} viewed as a correspondence X ⇝ X^i acting on x.
Cycle corr_action(const Cycle& alpha, const Cycle& x, const QuadricContext& ctx);
// alpha: X^a ⇝ X^b composed with beta: X^b ⇝ X^c (middle = b).
Cycle corr_compose(const Cycle& alpha, int middle, const Cycle& beta,
                   const QuadricContext& ctx);

// True iff x and y differ by a sum of external products of hyperplane powers.
bool equal_mod_nonessential(const Cycle& x, const Cycle& y, const QuadricContext& ctx);

std::string to_string(const Monomial& m, const QuadricContext& ctx);
std::string to_string(const Cycle& x, const QuadricContext& ctx);

}  // namespace qchow
