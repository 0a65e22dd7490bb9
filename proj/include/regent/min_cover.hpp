#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "regent/cover.hpp"
#include "regent/error.hpp"
#include "regent/point_set.hpp"

namespace regent {

enum class LogBase { natural, two };

inline double log_in_base(double x, LogBase base) {
  return base == LogBase::natural ? std::log(x) : std::log2(x);
}

inline const char* to_string(LogBase base) { return base == LogBase::natural ? "e" : "2"; }

/// Exact minimal-subcover answer: the count, a witness (lexicographically
/// least index set of that size, over the member list as given), and the
/// covered target.
struct MinCoverResult {
  int count = 0;
  std::vector<int> witness;
  PointSet target;

  bool verify(const std::vector<PointSet>& members) const {
    PointSet u = PointSet::empty_set(target.width());
    for (int i : witness) u = u | members[static_cast<std::size_t>(i)];
    return static_cast<int>(witness.size()) == count && target.subset_of(u);
  }
};

/// M = log N in the configured base; zero exactly when one member suffices.
inline double m_value(const MinCoverResult& r, LogBase base = LogBase::natural) {
  return log_in_base(static_cast<double>(r.count), base);
}

inline double m_value(std::int64_t count, LogBase base = LogBase::natural) {
  return log_in_base(static_cast<double>(count), base);
}

namespace detail {

// Lower bound: greedily pick uncovered elements no single member covers two
// of; each needs its own member. `together[e]` is the union of all members
// containing e.
inline int disjoint_witness_bound(const std::vector<std::uint64_t>& together, std::uint64_t uncovered) {
  int bound = 0;
  std::uint64_t forbidden = 0;
  for (std::uint64_t b = uncovered; b;) {
    std::uint64_t low = b & (~b + 1);
    int e = std::countr_zero(low);
    b &= b - 1;
    if (low & forbidden) continue;
    ++bound;
    forbidden |= together[static_cast<std::size_t>(e)];
  }
  return bound;
}

struct CoverSearch {
  const std::vector<std::uint64_t>& members;  // already intersected with target
  const std::vector<std::uint64_t>& together;
  int best;

  void descend(std::uint64_t uncovered, int chosen) {
    if (uncovered == 0) {
      best = std::min(best, chosen);
      return;
    }
    if (chosen + disjoint_witness_bound(together, uncovered) >= best) return;
    // Branch on the uncovered element with the fewest candidate members;
    // every one of them must appear in some branch.
    int branch_elem = -1;
    int branch_count = std::numeric_limits<int>::max();
    for (std::uint64_t b = uncovered; b; b &= b - 1) {
      int e = std::countr_zero(b);
      int c = 0;
      for (std::uint64_t m : members) {
        if ((m >> e) & 1u) ++c;
      }
      if (c < branch_count) {
        branch_count = c;
        branch_elem = e;
      }
    }
    std::vector<int> candidates;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if ((members[i] >> branch_elem) & 1u) candidates.push_back(static_cast<int>(i));
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      return std::popcount(members[static_cast<std::size_t>(a)] & uncovered) >
             std::popcount(members[static_cast<std::size_t>(b)] & uncovered);
    });
    for (int i : candidates) {
      descend(uncovered & ~members[static_cast<std::size_t>(i)], chosen + 1);
    }
  }
};

// First size-k index set, in lexicographic order, whose members cover the
// target. Exists because k is the exact optimum.
struct LexWitnessSearch {
  const std::vector<std::uint64_t>& members;
  const std::vector<std::uint64_t>& together;
  std::vector<std::uint64_t> suffix_union;  // union of members[i..]
  std::vector<int> chosen;

  explicit LexWitnessSearch(const std::vector<std::uint64_t>& m, const std::vector<std::uint64_t>& t)
      : members(m), together(t) {
    suffix_union.assign(members.size() + 1, 0);
    for (std::size_t i = members.size(); i-- > 0;) suffix_union[i] = suffix_union[i + 1] | members[i];
  }

  bool descend(std::size_t start, std::uint64_t uncovered, int slots) {
    if (uncovered == 0) return true;
    if (slots == 0) return false;
    if ((uncovered & ~suffix_union[start]) != 0) return false;
    if (disjoint_witness_bound(together, uncovered) > slots) return false;
    for (std::size_t i = start; i < members.size(); ++i) {
      // In a minimum-size witness every member covers something the others
      // miss, so skipping non-contributing members loses nothing.
      if ((members[i] & uncovered) == 0) continue;
      chosen.push_back(static_cast<int>(i));
      if (descend(i + 1, uncovered & ~members[i], slots - 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

inline void check_min_cover_inputs(const std::vector<PointSet>& members, const PointSet& target) {
  if (target.empty()) fail(ErrorKind::empty_target, "minimal subcover of the empty target");
  PointSet u = PointSet::empty_set(target.width());
  for (const PointSet& m : members) {
    if (m.width() != target.width()) fail(ErrorKind::width_mismatch, "member over wrong universe");
    u = u | m;
  }
  if (!target.subset_of(u)) {
    fail(ErrorKind::uncoverable, "target points " + (target - u).to_string() + " are covered by no member");
  }
}

}  // namespace detail

/// Exact minimum number of members covering `target`, by branch and bound:
/// greedy upper bound, disjoint-witness lower bound, branching on the
/// scarcest uncovered element. The witness is forced to the
/// lexicographically least index set by a deterministic post-pass.
inline MinCoverResult min_subcover(const std::vector<PointSet>& members, const PointSet& target) {
  detail::check_min_cover_inputs(members, target);
  const std::size_t n = members.size();
  std::vector<std::uint64_t> reduced(n);
  for (std::size_t i = 0; i < n; ++i) reduced[i] = members[i].bits() & target.bits();

  std::vector<std::uint64_t> together(static_cast<std::size_t>(target.width()), 0);
  for (std::uint64_t m : reduced) {
    for (std::uint64_t b = m; b; b &= b - 1) together[static_cast<std::size_t>(std::countr_zero(b))] |= m;
  }

  // Greedy upper bound.
  int greedy = 0;
  for (std::uint64_t uncovered = target.bits(); uncovered;) {
    std::size_t pick = 0;
    int gain = -1;
    for (std::size_t i = 0; i < n; ++i) {
      int g = std::popcount(reduced[i] & uncovered);
      if (g > gain) {
        gain = g;
        pick = i;
      }
    }
    uncovered &= ~reduced[pick];
    ++greedy;
  }

  detail::CoverSearch search{reduced, together, greedy};
  search.descend(target.bits(), 0);

  detail::LexWitnessSearch lex(reduced, together);
  bool found = lex.descend(0, target.bits(), search.best);
  if (!found) fail(ErrorKind::uncoverable, "internal: optimal witness not reconstructible");

  MinCoverResult result;
  result.count = search.best;
  result.witness = lex.chosen;
  result.target = target;
  return result;
}

inline MinCoverResult min_subcover(const Cover& u, const PointSet& target) {
  return min_subcover(u.canonical(), target);
}

/// Ground-truth oracle: scan subfamilies in increasing size, lexicographic
/// within a size. Kept deliberately independent of the branch-and-bound
/// path.
inline MinCoverResult brute_force_min_subcover(const std::vector<PointSet>& members, const PointSet& target) {
  detail::check_min_cover_inputs(members, target);
  const int n = static_cast<int>(members.size());
  if (n > 20) fail(ErrorKind::too_large, "brute-force oracle capped at 20 members");
  std::vector<std::uint64_t> reduced(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) reduced[static_cast<std::size_t>(i)] = members[static_cast<std::size_t>(i)].bits() & target.bits();

  for (int size = 1; size <= n; ++size) {
    std::vector<int> combo(static_cast<std::size_t>(size));
    std::iota(combo.begin(), combo.end(), 0);
    for (;;) {
      std::uint64_t u = 0;
      for (int i : combo) u |= reduced[static_cast<std::size_t>(i)];
      if ((target.bits() & ~u) == 0) {
        MinCoverResult result;
        result.count = size;
        result.witness = combo;
        result.target = target;
        return result;
      }
      // next combination
      int pos = size - 1;
      while (pos >= 0 && combo[static_cast<std::size_t>(pos)] == n - size + pos) --pos;
      if (pos < 0) break;
      ++combo[static_cast<std::size_t>(pos)];
      for (int j = pos + 1; j < size; ++j) combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  fail(ErrorKind::uncoverable, "internal: full family does not cover target");
}

inline MinCoverResult brute_force_min_subcover(const Cover& u, const PointSet& target) {
  return brute_force_min_subcover(u.canonical(), target);
}

/// N over the whole universe (the cover's own space).
inline MinCoverResult min_subcover_whole(const Cover& u) {
  return min_subcover(u, PointSet::full_set(u.space()->point_count()));
}

}  // namespace regent
