#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qchow {

// Candidate invariant table: for each grassmannian index i in 0..d, the set
// of values m (inside the legal window n-i-d .. n-i) whose elementary class
// is assumed rational.  Stored as one bitmask per level.
class EDITable {
 public:
  explicit EDITable(int n);

  int n() const { return n_; }
  int d() const { return d_; }
  int level_count() const { return d_ + 1; }
  int level_min(int i) const { return n_ - i - d_; }
  int level_max(int i) const { return n_ - i; }
  bool in_range(int i, int m) const;

  bool contains(int i, int m) const;
  // Returns true when the membership is new; throws on out-of-range input.
  bool add(int i, int m);
  std::vector<int> members(int i) const;
  bool empty() const;

  uint32_t mask(int i) const { return levels_[i]; }
  void set_mask(int i, uint32_t mask);

  bool operator==(const EDITable&) const = default;

 private:
  int n_;
  int d_;
  std::vector<uint32_t> levels_;
};

// Field-side hypotheses the Witt rules are allowed to use.
struct WittContext {
  bool anisotropic = false;
  std::optional<int> i1;
};

void validate_witt(const WittContext& w, int d);

enum class RuleId {
  ClassicalTower,         // membership at level i forces m, m-1 at level i+1
  Level2Parity,           // odd m at level 2 forces m+1 at level 2
  BinomialShift,          // slot-Steenrod shift within one level
  UpperFill,              // high Steenrod operations fill the whole upper tail
  WittDescent,            // composition against the 1-primordial cycle
  WittJump,               // iterated descent across the excluded gaps
  AnisotropicVanishing,   // contradiction: level-1 membership forces isotropy
  WittLowerBound,         // contradiction: n-m < i1
};

const char* rule_name(RuleId id);
std::optional<RuleId> rule_from_name(const std::string& name);
std::vector<RuleId> default_additive_order();

struct RuleFiring {
  RuleId rule;
  int level = 0;
  int m = 0;
  std::optional<int> l;
  std::optional<int> a;
  std::vector<std::pair<int, int>> added;    // newly established (level, m)
  std::vector<std::pair<int, int>> clipped;  // implied but outside the legal window
  bool contradiction = false;
};

// The memberships a single hypothesis implies, independent of table state.
struct RuleImplication {
  std::vector<std::pair<int, int>> in_range;
  std::vector<std::pair<int, int>> clipped;
};
RuleImplication rule_implications(RuleId rule, int n, const WittContext& w,
                                  int level, int m, std::optional<int> l,
                                  std::optional<int> a);

// All firings the rule would make against the current table (hypotheses in
// canonical order: level, then m, then l, then a ascending); additions are
// reported whether or not they are already present.
std::vector<RuleFiring> scan_rule(RuleId rule, const EDITable& t, const WittContext& w);

struct PropagateOptions {
  std::vector<RuleId> additive_order = default_additive_order();
};

struct PropagationResult {
  EDITable table;
  std::vector<RuleFiring> trail;
  std::optional<RuleFiring> contradiction;
  int rounds = 0;
  bool ok() const { return !contradiction.has_value(); }
};

// Least fixed point of the additive rules, with the contradiction rules
// checked after every round.
PropagationResult propagate(EDITable t, const WittContext& w,
                            const PropagateOptions& opts = {});

// Re-derives every recorded firing from the seed; true when the whole trail
// checks out and reproduces the result table.
bool replay_trail(const EDITable& seed, const WittContext& w,
                  const PropagationResult& result);

// Emission filter: required memberships at one level.
struct LevelFilter {
  int level = 0;
  std::vector<int> required;
};

// Streams every rule-closed, contradiction-free table in lexicographic
// order (level by level, members compared as sorted lists).  The callback
// may return false to stop early.  Returns the number of tables emitted.
uint64_t enumerate_admissible(int n, const WittContext& w,
                              const std::vector<LevelFilter>& filters,
                              const std::function<bool(const EDITable&)>& emit,
                              int bound = 14);

}  // namespace qchow
