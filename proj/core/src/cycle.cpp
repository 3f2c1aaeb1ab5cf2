#include "qchow/cycle.hpp"

#include <algorithm>
#include <bitset>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qchow {

namespace {

std::vector<Monomial> sort_and_cancel(std::vector<Monomial> ms) {
  std::sort(ms.begin(), ms.end());
  std::vector<Monomial> out;
  out.reserve(ms.size());
  for (size_t i = 0; i < ms.size();) {
    size_t j = i;
    while (j < ms.size() && ms[j] == ms[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(ms[i]);
    i = j;
  }
  return out;
}

void require_same_arity(const Cycle& x, const Cycle& y, const char* op) {
  if (x.arity() != y.arity()) {
    throw std::invalid_argument(std::string(op) + ": arity mismatch (" +
                                std::to_string(x.arity()) + " vs " +
                                std::to_string(y.arity()) + ")");
  }
}

// Parity vector over all 256 basis-class codes; used to fold products of
// several factors landing in one slot of a diagonal pullback.
using SlotSum = std::bitset<256>;

SlotSum slot_mul(const SlotSum& acc, BasisClass b, const QuadricContext& ctx) {
  SlotSum out;
  for (int code = 0; code < 256; ++code) {
    if (!acc.test(code)) continue;
    BasisProduct p = mul_basis(BasisClass::from_code(static_cast<uint8_t>(code)), b, ctx);
    for (int t = 0; t < p.count; ++t) out.flip(p.term[t].code());
  }
  return out;
}

}  // namespace

Monomial Monomial::of(std::span<const BasisClass> factors) {
  if (factors.empty() || factors.size() > kMaxArity) {
    throw std::domain_error("monomial arity out of range: " +
                            std::to_string(factors.size()));
  }
  Monomial m;
  m.len_ = static_cast<uint8_t>(factors.size());
  for (size_t k = 0; k < factors.size(); ++k) m.codes_[k] = factors[k].code();
  return m;
}

Monomial Monomial::of(std::initializer_list<BasisClass> factors) {
  return of(std::span<const BasisClass>(factors.begin(), factors.size()));
}

int Monomial::codim(const QuadricContext& ctx) const {
  int total = 0;
  for (int k = 0; k < len_; ++k) total += qchow::codim(factor(k), ctx);
  return total;
}

bool Monomial::all_points() const {
  for (int k = 0; k < len_; ++k) {
    if (!factor(k).is_point()) return false;
  }
  return true;
}

void MonomialAccumulator::push(const Monomial& m) {
  buffer_.push_back(m);
  if (buffer_.size() >= compact_threshold_) compact();
}

void MonomialAccumulator::compact() { buffer_ = sort_and_cancel(std::move(buffer_)); }

std::vector<Monomial> MonomialAccumulator::take() {
  compact();
  return std::move(buffer_);
}

Cycle::Cycle(int arity) : arity_(arity) {
  if (arity < 1 || arity > kMaxArity) {
    throw std::domain_error("cycle arity out of range: " + std::to_string(arity));
  }
}

Cycle Cycle::unit(int arity) {
  std::vector<BasisClass> ones(arity, BasisClass::h(0));
  return Cycle::monomial(Monomial::of(ones));
}

Cycle Cycle::monomial(const Monomial& m) {
  Cycle c(m.arity());
  c.support_.push_back(m);
  return c;
}

Cycle Cycle::from_basis(BasisClass b) { return Cycle::monomial(Monomial::of({b})); }

Cycle Cycle::from_product(const BasisProduct& p) {
  Cycle c(1);
  std::vector<Monomial> ms;
  for (int t = 0; t < p.count; ++t) ms.push_back(Monomial::of({p.term[t]}));
  return from_monomials(1, std::move(ms));
}

Cycle Cycle::from_monomials(int arity, std::vector<Monomial> monomials) {
  Cycle c(arity);
  for (const Monomial& m : monomials) {
    if (m.arity() != arity) {
      throw std::invalid_argument("monomial arity does not match cycle arity");
    }
  }
  c.support_ = sort_and_cancel(std::move(monomials));
  return c;
}

Cycle h_power_cycle(const QuadricContext& ctx, int m) {
  return Cycle::from_product(h_power(ctx, m));
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v]) {
      throw std::invalid_argument("invalid permutation image list");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(int r) {
  std::vector<int> img(r);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::rotation(int r) { return rotation_from(r, 0); }

Permutation Permutation::rotation_from(int r, int first) {
  std::vector<int> img(r);
  std::iota(img.begin(), img.end(), 0);
  for (int k = first; k < r; ++k) img[k] = (k + 1 - first) % (r - first) + first;
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (int k = 0; k < size(); ++k) {
    if (images_[k] != k) return false;
  }
  return true;
}

bool Permutation::is_even() const {
  int inversions = 0;
  for (int a = 0; a < size(); ++a) {
    for (int b = a + 1; b < size(); ++b) {
      if (images_[a] > images_[b]) ++inversions;
    }
  }
  return inversions % 2 == 0;
}

Permutation Permutation::after(const Permutation& first) const {
  if (size() != first.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> img(size());
  for (int k = 0; k < size(); ++k) img[k] = images_[first.images_[k]];
  return Permutation(std::move(img));
}

SlotMap SlotMap::merge_first_two(int source_arity) {
  SlotMap f;
  f.target_arity = source_arity - 1;
  f.image.resize(source_arity);
  f.image[0] = 0;
  for (int k = 1; k < source_arity; ++k) f.image[k] = k - 1;
  return f;
}

void SlotMap::validate_surjective() const {
  if (target_arity < 1) throw std::invalid_argument("slot map needs a positive target");
  std::vector<bool> hit(target_arity, false);
  for (int v : image) {
    if (v < 0 || v >= target_arity) throw std::invalid_argument("slot map image out of range");
    hit[v] = true;
  }
  for (bool h : hit) {
    if (!h) throw std::invalid_argument("slot map is not surjective");
  }
}

Cycle add(const Cycle& x, const Cycle& y) {
  require_same_arity(x, y, "add");
  std::vector<Monomial> merged;
  merged.reserve(x.size() + y.size());
  std::set_symmetric_difference(x.support().begin(), x.support().end(),
                                y.support().begin(), y.support().end(),
                                std::back_inserter(merged));
  return Cycle::from_monomials(x.arity(), std::move(merged));
}

Cycle mul(const Cycle& x, const Cycle& y, const QuadricContext& ctx) {
  require_same_arity(x, y, "mul");
  const int r = x.arity();
  MonomialAccumulator acc;
  std::array<BasisProduct, kMaxArity> per_slot;
  for (const Monomial& a : x.support()) {
    for (const Monomial& b : y.support()) {
      bool dead = false;
      for (int k = 0; k < r && !dead; ++k) {
        per_slot[k] = mul_basis(a.factor(k), b.factor(k), ctx);
        dead = per_slot[k].count == 0;
      }
      if (dead) continue;
      // Expand the choice of term in every slot that produced a two-term sum.
      Monomial out = a;
      auto expand = [&](auto&& self, int slot) -> void {
        if (slot == r) {
          acc.push(out);
          return;
        }
        for (int t = 0; t < per_slot[slot].count; ++t) {
          out.set_factor(slot, per_slot[slot].term[t]);
          self(self, slot + 1);
        }
      };
      expand(expand, 0);
    }
  }
  return Cycle::from_monomials(r, acc.take());
}

Cycle external(const Cycle& x, const Cycle& y) {
  const int r = x.arity() + y.arity();
  std::vector<Monomial> out;
  out.reserve(x.size() * y.size());
  std::vector<BasisClass> factors(r);
  for (const Monomial& a : x.support()) {
    for (int k = 0; k < x.arity(); ++k) factors[k] = a.factor(k);
    for (const Monomial& b : y.support()) {
      for (int k = 0; k < y.arity(); ++k) factors[x.arity() + k] = b.factor(k);
      out.push_back(Monomial::of(factors));
    }
  }
  return Cycle::from_monomials(r, std::move(out));
}

namespace {
Monomial apply_permutation(const Permutation& s, const Monomial& m) {
  Monomial out = m;
  for (int k = 0; k < m.arity(); ++k) out.set_factor(s.image(k), m.factor(k));
  return out;
}
}  // namespace

Cycle permute_pushforward(const Permutation& s, const Cycle& x) {
  if (s.size() != x.arity()) {
    throw std::invalid_argument("permutation size does not match cycle arity");
  }
  std::vector<Monomial> out;
  out.reserve(x.size());
  for (const Monomial& m : x.support()) out.push_back(apply_permutation(s, m));
  return Cycle::from_monomials(x.arity(), std::move(out));
}

namespace {
Cycle permutation_group_sum(const Cycle& x, bool even_only) {
  const int r = x.arity();
  if (r > 10) {
    throw std::domain_error("symmetrization over more than 10 factors is not supported");
  }
  std::vector<int> img(r);
  std::iota(img.begin(), img.end(), 0);
  MonomialAccumulator acc;
  do {
    Permutation s{std::vector<int>(img)};
    if (even_only && !s.is_even()) continue;
    for (const Monomial& m : x.support()) acc.push(apply_permutation(s, m));
  } while (std::next_permutation(img.begin(), img.end()));
  return Cycle::from_monomials(r, acc.take());
}
}  // namespace

Cycle sym(const Cycle& x) { return permutation_group_sum(x, false); }

Cycle alternating_sum(const Cycle& x) { return permutation_group_sum(x, true); }

Cycle subgroup_sum(const Permutation& generator, const Cycle& x) {
  if (generator.size() != x.arity()) {
    throw std::invalid_argument("generator size does not match cycle arity");
  }
  // The sum runs over the whole cyclic group, so a cycle fixed by the
  // generator is still counted once per group element.
  int order = 1;
  for (Permutation p = generator; !p.is_identity(); p = p.after(generator)) ++order;
  MonomialAccumulator acc;
  Cycle current = x;
  for (int r = 0; r < order; ++r) {
    for (const Monomial& m : current.support()) acc.push(m);
    current = permute_pushforward(generator, current);
  }
  return Cycle::from_monomials(x.arity(), acc.take());
}

Cycle diagonal_pullback(const SlotMap& f, const Cycle& x, const QuadricContext& ctx) {
  if (static_cast<int>(f.image.size()) != x.arity()) {
    throw std::invalid_argument("slot map size does not match cycle arity");
  }
  f.validate_surjective();
  const int s = f.target_arity;
  MonomialAccumulator acc;
  std::vector<SlotSum> sums(s);
  for (const Monomial& m : x.support()) {
    for (int t = 0; t < s; ++t) {
      sums[t].reset();
      sums[t].set(BasisClass::h(0).code());
    }
    for (int k = 0; k < x.arity(); ++k) {
      sums[f.image[k]] = slot_mul(sums[f.image[k]], m.factor(k), ctx);
    }
    bool dead = false;
    for (int t = 0; t < s && !dead; ++t) dead = sums[t].none();
    if (dead) continue;
    std::vector<BasisClass> factors(s);
    auto expand = [&](auto&& self, int slot) -> void {
      if (slot == s) {
        acc.push(Monomial::of(factors));
        return;
      }
      for (int code = 0; code < 256; ++code) {
        if (!sums[slot].test(code)) continue;
        factors[slot] = BasisClass::from_code(static_cast<uint8_t>(code));
        self(self, slot + 1);
      }
    };
    expand(expand, 0);
  }
  return Cycle::from_monomials(s, acc.take());
}

Cycle projection_pushforward(const std::vector<int>& drop, const Cycle& x) {
  const int r = x.arity();
  std::vector<bool> dropped(r, false);
  for (int slot : drop) {
    if (slot < 0 || slot >= r) throw std::invalid_argument("dropped slot out of range");
    if (dropped[slot]) throw std::invalid_argument("duplicate dropped slot");
    dropped[slot] = true;
  }
  const int kept = r - static_cast<int>(drop.size());
  if (drop.empty()) throw std::invalid_argument("projection must drop at least one slot");
  if (kept == 0) {
    throw std::invalid_argument("projection cannot drop every factor; use degree");
  }
  std::vector<Monomial> out;
  std::vector<BasisClass> factors(kept);
  for (const Monomial& m : x.support()) {
    bool survives = true;
    int w = 0;
    for (int k = 0; k < r && survives; ++k) {
      if (dropped[k]) {
        survives = m.factor(k).is_point();
      } else {
        factors[w++] = m.factor(k);
      }
    }
    if (survives) out.push_back(Monomial::of(factors));
  }
  return Cycle::from_monomials(kept, std::move(out));
}

bool degree(const Cycle& x) {
  bool deg = false;
  for (const Monomial& m : x.support()) {
    if (m.all_points()) deg = !deg;
  }
  return deg;
}

Cycle corr_action(const Cycle& alpha, const Cycle& x, const QuadricContext& ctx) {
  if (alpha.arity() < 2) throw std::invalid_argument("correspondence needs arity >= 2");
  if (x.arity() != 1) throw std::invalid_argument("corr_action acts on arity-1 cycles");
  Cycle lifted = external(x, Cycle::unit(alpha.arity() - 1));
  return projection_pushforward({0}, mul(alpha, lifted, ctx));
}

Cycle corr_compose(const Cycle& alpha, int middle, const Cycle& beta,
                   const QuadricContext& ctx) {
  if (middle < 1) throw std::invalid_argument("composition needs a positive middle arity");
  const int a = alpha.arity() - middle;
  const int c = beta.arity() - middle;
  if (a < 1 || c < 1) {
    throw std::invalid_argument("inconsistent arity split for correspondence composition");
  }
  Cycle alpha_up = external(alpha, Cycle::unit(c));
  Cycle beta_up = external(Cycle::unit(a), beta);
  std::vector<int> drop(middle);
  std::iota(drop.begin(), drop.end(), a);
  return projection_pushforward(drop, mul(alpha_up, beta_up, ctx));
}

bool equal_mod_nonessential(const Cycle& x, const Cycle& y, const QuadricContext& ctx) {
  require_same_arity(x, y, "equal_mod_nonessential");
  Cycle diff = add(x, y);
  if (diff.is_zero()) return true;
  // Group the difference by per-slot codimension; within one multidegree the
  // nonessential subspace is spanned by the single expanded product of
  // hyperplane powers, so each group must match that expansion exactly.
  std::map<std::vector<int>, std::vector<Monomial>> groups;
  for (const Monomial& m : diff.support()) {
    std::vector<int> key(m.arity());
    for (int k = 0; k < m.arity(); ++k) key[k] = codim(m.factor(k), ctx);
    groups[key].push_back(m);
  }
  for (const auto& [key, members] : groups) {
    // Codimension above d has no hyperplane power; the expansion comes out
    // empty and the comparison fails as it should.
    Cycle expected = h_power_cycle(ctx, key[0]);
    for (size_t k = 1; k < key.size(); ++k) {
      expected = external(expected, h_power_cycle(ctx, key[k]));
    }
    if (expected.support() != members) return false;
  }
  return true;
}

std::string to_string(const Monomial& m, const QuadricContext& ctx) {
  std::string out;
  for (int k = 0; k < m.arity(); ++k) {
    if (k > 0) out += " x ";
    out += class_name(m.factor(k), ctx);
  }
  return out;
}

std::string to_string(const Cycle& x, const QuadricContext& ctx) {
  if (x.is_zero()) return "0";
  std::string out;
  for (size_t i = 0; i < x.support().size(); ++i) {
    if (i > 0) out += " + ";
    out += to_string(x.support()[i], ctx);
  }
  return out;
}

}  // namespace qchow
