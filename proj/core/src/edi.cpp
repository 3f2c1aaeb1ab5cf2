#include "qchow/edi.hpp"

#include <algorithm>
#include <stdexcept>

#include "qchow/steenrod.hpp"

namespace qchow {

EDITable::EDITable(int n) : n_(n), d_(n / 2) {
  if (n < 1 || n > 60) {
    throw std::domain_error("table dimension out of range: " + std::to_string(n));
  }
  levels_.assign(d_ + 1, 0);
}

bool EDITable::in_range(int i, int m) const {
  return i >= 0 && i <= d_ && m >= level_min(i) && m <= level_max(i);
}

bool EDITable::contains(int i, int m) const {
  if (!in_range(i, m)) return false;
  return (levels_[i] >> (m - level_min(i))) & 1u;
}

bool EDITable::add(int i, int m) {
  if (!in_range(i, m)) {
    throw std::domain_error("membership (" + std::to_string(i) + ", " +
                            std::to_string(m) + ") outside the legal window");
  }
  uint32_t bit = 1u << (m - level_min(i));
  bool fresh = (levels_[i] & bit) == 0;
  levels_[i] |= bit;
  return fresh;
}

std::vector<int> EDITable::members(int i) const {
  std::vector<int> out;
  for (int m = level_min(i); m <= level_max(i); ++m) {
    if (contains(i, m)) out.push_back(m);
  }
  return out;
}

bool EDITable::empty() const {
  for (uint32_t mask : levels_) {
    if (mask) return false;
  }
  return true;
}

void EDITable::set_mask(int i, uint32_t mask) {
  if (i < 0 || i > d_) throw std::domain_error("level out of range");
  if (mask >> (d_ + 1)) throw std::domain_error("mask wider than the legal window");
  levels_[i] = mask;
}

void validate_witt(const WittContext& w, int d) {
  if (w.i1) {
    if (!w.anisotropic) {
      throw std::domain_error("a first Witt index requires the anisotropic hypothesis");
    }
    if (*w.i1 < 1 || *w.i1 > d + 1) {
      throw std::domain_error("first Witt index out of range: " + std::to_string(*w.i1));
    }
  }
}

const char* rule_name(RuleId id) {
  switch (id) {
    case RuleId::ClassicalTower: return "classical-tower";
    case RuleId::Level2Parity: return "level2-parity";
    case RuleId::BinomialShift: return "binomial-shift";
    case RuleId::UpperFill: return "upper-fill";
    case RuleId::WittDescent: return "witt-descent";
    case RuleId::WittJump: return "witt-jump";
    case RuleId::AnisotropicVanishing: return "anisotropic-vanishing";
    case RuleId::WittLowerBound: return "witt-lower-bound";
  }
  return "?";
}

std::optional<RuleId> rule_from_name(const std::string& name) {
  for (RuleId id : {RuleId::ClassicalTower, RuleId::Level2Parity, RuleId::BinomialShift,
                    RuleId::UpperFill, RuleId::WittDescent, RuleId::WittJump,
                    RuleId::AnisotropicVanishing, RuleId::WittLowerBound}) {
    if (name == rule_name(id)) return id;
  }
  return std::nullopt;
}

std::vector<RuleId> default_additive_order() {
  return {RuleId::ClassicalTower, RuleId::Level2Parity, RuleId::BinomialShift,
          RuleId::UpperFill,      RuleId::WittDescent,  RuleId::WittJump};
}

namespace {

// n - m must avoid {i1} and the interval [2*i1, d+1] for the descent rule.
bool descent_excluded(int gap, int i1, int d) {
  return gap == i1 || (gap >= 2 * i1 && gap <= d + 1);
}

// The per-hypothesis side conditions, shared by scanning and replay.
bool hypothesis_holds(RuleId rule, int n, const WittContext& w, int level, int m,
                      std::optional<int> l, std::optional<int> a) {
  const int d = n / 2;
  switch (rule) {
    case RuleId::ClassicalTower:
      return level >= 0 && level < d && m >= n - level - d && m <= n - level;
    case RuleId::Level2Parity:
      return d >= 2 && level == 2 && m % 2 != 0 && m >= n - 2 - d && m <= n - 4;
    case RuleId::BinomialShift: {
      if (!l || !a) return false;
      if (level < 2 || level > d) return false;
      if (*l < 1 || *l > level - 1) return false;
      if (m < n - level - d || m > n - level - *l) return false;
      if (!binom_parity(m + level + 1, *l)) return false;
      if (*a < 0 || *a > n - level - m - *l) return false;
      for (int k = *l; k <= level - 1; ++k) {
        int shifted = k + *l + *a;
        if (shifted >= level && shifted <= d && binom_parity(k, *l)) return false;
      }
      return true;
    }
    case RuleId::UpperFill:
      return l && level >= 2 && level <= d && *l >= level && *l <= d &&
             m >= n - level - d && m <= n - level - *l && binom_parity(m + level + 1, *l);
    case RuleId::WittDescent:
      return w.anisotropic && w.i1 && level >= 1 && level <= d && *w.i1 > level &&
             m >= n - level - d && m <= n - level &&
             !descent_excluded(n - m, *w.i1, d);
    case RuleId::WittJump: {
      if (!(w.anisotropic && w.i1 && l)) return false;
      if (level < 1 || level > d || *w.i1 <= level) return false;
      if (*l < 1 || *l >= level) return false;
      if (m < n - level - d || m > n - level) return false;
      return n - m == *w.i1 + *l || n - m == d + 1 + *l;
    }
    case RuleId::AnisotropicVanishing:
      return w.anisotropic && l && d >= 1 && level == 1 && *l >= 1 && *l <= d &&
             m >= n - 1 - d && m <= n - 1 - *l && binom_parity(m + 2, *l);
    case RuleId::WittLowerBound:
      return w.anisotropic && w.i1 && level >= 1 && level <= d && *w.i1 > level &&
             m >= n - level - d && m <= n - level && n - m < *w.i1;
  }
  return false;
}

}  // namespace

RuleImplication rule_implications(RuleId rule, int n, const WittContext& w,
                                  int level, int m, std::optional<int> l,
                                  std::optional<int> a) {
  if (!hypothesis_holds(rule, n, w, level, m, l, a)) {
    throw std::domain_error(std::string("hypothesis of rule ") + rule_name(rule) +
                            " does not hold");
  }
  EDITable probe(n);  // for range queries only
  RuleImplication out;
  auto emit = [&](int lvl, int mm) {
    if (probe.in_range(lvl, mm)) {
      out.in_range.emplace_back(lvl, mm);
    } else {
      out.clipped.emplace_back(lvl, mm);
    }
  };
  switch (rule) {
    case RuleId::ClassicalTower:
      emit(level + 1, m);
      emit(level + 1, m - 1);
      break;
    case RuleId::Level2Parity:
      emit(2, m + 1);
      break;
    case RuleId::BinomialShift:
      emit(level, m + *l + *a);
      break;
    case RuleId::UpperFill:
      for (int mm = m + *l; mm <= n - level; ++mm) emit(level, mm);
      break;
    case RuleId::WittDescent:
      emit(level - 1, m + 1);
      break;
    case RuleId::WittJump:
      emit(level - *l, m + *l);
      break;
    case RuleId::AnisotropicVanishing:
    case RuleId::WittLowerBound:
      break;  // contradiction rules add nothing
  }
  return out;
}

namespace {

// Enumerate the hypothesis tuples of one rule in canonical order.
void for_each_hypothesis(
    RuleId rule, int n, const WittContext& w,
    const std::function<void(int level, int m, std::optional<int> l, std::optional<int> a)>& fn) {
  const int d = n / 2;
  switch (rule) {
    case RuleId::ClassicalTower:
      for (int i = 0; i < d; ++i) {
        for (int m = n - i - d; m <= n - i; ++m) fn(i, m, std::nullopt, std::nullopt);
      }
      break;
    case RuleId::Level2Parity:
      if (d >= 2) {
        for (int m = n - 2 - d; m <= n - 4; ++m) {
          if (m % 2 != 0) fn(2, m, std::nullopt, std::nullopt);
        }
      }
      break;
    case RuleId::BinomialShift:
      for (int i = 2; i <= d; ++i) {
        for (int m = n - i - d; m <= n - i - 1; ++m) {
          for (int l = 1; l <= i - 1; ++l) {
            if (m > n - i - l || !binom_parity(m + i + 1, l)) continue;
            for (int a = 0; a <= n - i - m - l; ++a) {
              if (hypothesis_holds(rule, n, w, i, m, l, a)) fn(i, m, l, a);
            }
          }
        }
      }
      break;
    case RuleId::UpperFill:
      for (int i = 2; i <= d; ++i) {
        for (int m = n - i - d; m <= n - i; ++m) {
          for (int l = i; l <= d; ++l) {
            if (hypothesis_holds(rule, n, w, i, m, l, std::nullopt)) fn(i, m, l, std::nullopt);
          }
        }
      }
      break;
    case RuleId::WittDescent:
      if (w.anisotropic && w.i1) {
        for (int i = 1; i <= d && i < *w.i1; ++i) {
          for (int m = n - i - d; m <= n - i; ++m) {
            if (hypothesis_holds(rule, n, w, i, m, std::nullopt, std::nullopt)) {
              fn(i, m, std::nullopt, std::nullopt);
            }
          }
        }
      }
      break;
    case RuleId::WittJump:
      if (w.anisotropic && w.i1) {
        for (int i = 1; i <= d && i < *w.i1; ++i) {
          for (int m = n - i - d; m <= n - i; ++m) {
            for (int l = 1; l < i; ++l) {
              if (hypothesis_holds(rule, n, w, i, m, l, std::nullopt)) fn(i, m, l, std::nullopt);
            }
          }
        }
      }
      break;
    case RuleId::AnisotropicVanishing:
      if (w.anisotropic && d >= 1) {
        for (int m = n - 1 - d; m <= n - 1; ++m) {
          for (int l = 1; l <= d; ++l) {
            if (hypothesis_holds(rule, n, w, 1, m, l, std::nullopt)) fn(1, m, l, std::nullopt);
          }
        }
      }
      break;
    case RuleId::WittLowerBound:
      if (w.anisotropic && w.i1) {
        for (int i = 1; i <= d && i < *w.i1; ++i) {
          for (int m = n - i - d; m <= n - i; ++m) {
            if (hypothesis_holds(rule, n, w, i, m, std::nullopt, std::nullopt)) {
              fn(i, m, std::nullopt, std::nullopt);
            }
          }
        }
      }
      break;
  }
}

bool is_contradiction_rule(RuleId rule) {
  return rule == RuleId::AnisotropicVanishing || rule == RuleId::WittLowerBound;
}

}  // namespace

std::vector<RuleFiring> scan_rule(RuleId rule, const EDITable& t, const WittContext& w) {
  validate_witt(w, t.d());
  std::vector<RuleFiring> firings;
  for_each_hypothesis(rule, t.n(), w,
                      [&](int level, int m, std::optional<int> l, std::optional<int> a) {
                        if (!t.contains(level, m)) return;
                        RuleFiring f;
                        f.rule = rule;
                        f.level = level;
                        f.m = m;
                        f.l = l;
                        f.a = a;
                        if (is_contradiction_rule(rule)) {
                          f.contradiction = true;
                        } else {
                          RuleImplication imp =
                              rule_implications(rule, t.n(), w, level, m, l, a);
                          f.added = std::move(imp.in_range);
                          f.clipped = std::move(imp.clipped);
                        }
                        firings.push_back(std::move(f));
                      });
  return firings;
}

PropagationResult propagate(EDITable t, const WittContext& w, const PropagateOptions& opts) {
  validate_witt(w, t.d());
  PropagationResult result{t, {}, std::nullopt, 0};
  bool changed = true;
  while (changed) {
    changed = false;
    ++result.rounds;
    for (RuleId rule : opts.additive_order) {
      if (is_contradiction_rule(rule)) {
        throw std::invalid_argument("contradiction rules cannot be ordered as additive");
      }
      for_each_hypothesis(
          rule, result.table.n(), w,
          [&](int level, int m, std::optional<int> l, std::optional<int> a) {
            if (!result.table.contains(level, m)) return;
            RuleImplication imp = rule_implications(rule, result.table.n(), w, level, m, l, a);
            RuleFiring f;
            f.rule = rule;
            f.level = level;
            f.m = m;
            f.l = l;
            f.a = a;
            for (auto [lvl, mm] : imp.in_range) {
              if (result.table.add(lvl, mm)) f.added.emplace_back(lvl, mm);
            }
            if (!f.added.empty()) {
              f.clipped = std::move(imp.clipped);
              result.trail.push_back(std::move(f));
              changed = true;
            }
          });
    }
    for (RuleId rule : {RuleId::AnisotropicVanishing, RuleId::WittLowerBound}) {
      if (result.contradiction) break;
      for_each_hypothesis(rule, result.table.n(), w,
                          [&](int level, int m, std::optional<int> l, std::optional<int> a) {
                            if (result.contradiction || !result.table.contains(level, m)) return;
                            RuleFiring f;
                            f.rule = rule;
                            f.level = level;
                            f.m = m;
                            f.l = l;
                            f.a = a;
                            f.contradiction = true;
                            result.contradiction = std::move(f);
                          });
    }
    if (result.contradiction) break;
  }
  return result;
}

bool replay_trail(const EDITable& seed, const WittContext& w,
                  const PropagationResult& result) {
  EDITable replica = seed;
  for (const RuleFiring& f : result.trail) {
    if (f.contradiction) return false;
    if (!replica.contains(f.level, f.m)) return false;
    RuleImplication imp;
    try {
      imp = rule_implications(f.rule, replica.n(), w, f.level, f.m, f.l, f.a);
    } catch (const std::domain_error&) {
      return false;  // recorded hypothesis no longer re-verifies
    }
    for (auto [lvl, mm] : f.added) {
      if (std::find(imp.in_range.begin(), imp.in_range.end(), std::make_pair(lvl, mm)) ==
          imp.in_range.end()) {
        return false;
      }
      if (!replica.in_range(lvl, mm)) return false;
      replica.add(lvl, mm);
    }
    for (auto [lvl, mm] : f.clipped) {
      if (std::find(imp.clipped.begin(), imp.clipped.end(), std::make_pair(lvl, mm)) ==
          imp.clipped.end()) {
        return false;
      }
    }
  }
  if (result.contradiction) {
    const RuleFiring& f = *result.contradiction;
    if (!f.contradiction || !replica.contains(f.level, f.m)) return false;
    if (!is_contradiction_rule(f.rule)) return false;
    try {
      rule_implications(f.rule, replica.n(), w, f.level, f.m, f.l, f.a);
    } catch (const std::domain_error&) {
      return false;
    }
  }
  return replica == result.table;
}

namespace {

struct LevelTables {
  // implied[bit] -> mask of same-level consequences
  std::vector<uint32_t> intra;
  // classical consequences one level up (defined for i < d)
  std::vector<uint32_t> next;
  // descent consequences one level down
  std::vector<uint32_t> prev;
  // jump consequences further down: (target level, target bit)
  std::vector<std::vector<std::pair<int, int>>> jumps;
  uint32_t forbidden = 0;
};

}  // namespace

uint64_t enumerate_admissible(int n, const WittContext& w,
                              const std::vector<LevelFilter>& filters,
                              const std::function<bool(const EDITable&)>& emit,
                              int bound) {
  if (n > bound) {
    throw std::domain_error("dimension " + std::to_string(n) +
                            " exceeds the enumeration bound " + std::to_string(bound));
  }
  EDITable probe(n);
  const int d = probe.d();
  validate_witt(w, d);
  const int width = d + 1;

  std::vector<LevelTables> tables(width);
  for (int i = 0; i <= d; ++i) {
    tables[i].intra.assign(width, 0);
    tables[i].next.assign(width, 0);
    tables[i].prev.assign(width, 0);
    tables[i].jumps.assign(width, {});
  }
  auto bit_of = [&](int level, int m) { return m - probe.level_min(level); };

  for (RuleId rule : default_additive_order()) {
    for_each_hypothesis(rule, n, w,
                        [&](int level, int m, std::optional<int> l, std::optional<int> a) {
                          RuleImplication imp = rule_implications(rule, n, w, level, m, l, a);
                          int src = bit_of(level, m);
                          for (auto [lvl, mm] : imp.in_range) {
                            int dst = bit_of(lvl, mm);
                            if (lvl == level) {
                              tables[level].intra[src] |= 1u << dst;
                            } else if (lvl == level + 1) {
                              tables[level].next[src] |= 1u << dst;
                            } else if (lvl == level - 1) {
                              tables[level].prev[src] |= 1u << dst;
                            } else {
                              tables[level].jumps[src].emplace_back(lvl, dst);
                            }
                          }
                        });
  }
  for (RuleId rule : {RuleId::AnisotropicVanishing, RuleId::WittLowerBound}) {
    for_each_hypothesis(rule, n, w,
                        [&](int level, int m, std::optional<int>, std::optional<int>) {
                          tables[level].forbidden |= 1u << bit_of(level, m);
                        });
  }

  std::vector<uint32_t> filter_masks(width, 0);
  for (const LevelFilter& f : filters) {
    if (f.level < 0 || f.level > d) throw std::domain_error("filter level out of range");
    for (int m : f.required) {
      if (!probe.in_range(f.level, m)) {
        throw std::domain_error("filter membership outside the legal window");
      }
      filter_masks[f.level] |= 1u << bit_of(f.level, m);
    }
  }

  // All masks in lexicographic order of their sorted member lists.
  std::vector<uint32_t> lex_order(1u << width);
  for (uint32_t m = 0; m < lex_order.size(); ++m) lex_order[m] = m;
  std::vector<std::vector<int>> as_members(1u << width);
  for (uint32_t m = 0; m < as_members.size(); ++m) {
    for (int b = 0; b < width; ++b) {
      if ((m >> b) & 1u) as_members[m].push_back(b);
    }
  }
  std::sort(lex_order.begin(), lex_order.end(),
            [&](uint32_t a, uint32_t b) { return as_members[a] < as_members[b]; });

  // Per-level candidates: internally closed, contradiction-free, filter-compatible.
  std::vector<std::vector<uint32_t>> candidates(width);
  for (int i = 0; i <= d; ++i) {
    for (uint32_t mask : lex_order) {
      if (mask & tables[i].forbidden) continue;
      if ((mask & filter_masks[i]) != filter_masks[i]) continue;
      bool closed = true;
      for (int b = 0; b < width && closed; ++b) {
        if ((mask >> b) & 1u) closed = (tables[i].intra[b] & ~mask) == 0;
      }
      if (closed) candidates[i].push_back(mask);
    }
  }

  std::vector<uint32_t> chosen(width, 0);
  uint64_t count = 0;
  bool stop = false;

  auto dfs = [&](auto&& self, int level) -> void {
    if (stop) return;
    if (level > d) {
      EDITable out(n);
      for (int i = 0; i <= d; ++i) out.set_mask(i, chosen[i]);
      ++count;
      if (!emit(out)) stop = true;
      return;
    }
    for (uint32_t mask : candidates[level]) {
      if (stop) return;
      bool ok = true;
      if (level > 0) {
        for (int b = 0; b < width && ok; ++b) {
          if ((chosen[level - 1] >> b) & 1u) {
            ok = (tables[level - 1].next[b] & ~mask) == 0;
          }
        }
      }
      for (int b = 0; b < width && ok; ++b) {
        if (!((mask >> b) & 1u)) continue;
        if (level > 0 && (tables[level].prev[b] & ~chosen[level - 1]) != 0) ok = false;
        for (auto [lvl, dst] : tables[level].jumps[b]) {
          if (!ok) break;
          ok = ((chosen[lvl] >> dst) & 1u) != 0;
        }
      }
      if (!ok) continue;
      chosen[level] = mask;
      self(self, level + 1);
    }
    chosen[level] = 0;
  };
  dfs(dfs, 0);
  return count;
}

}  // namespace qchow
