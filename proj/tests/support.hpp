#pragma once

// Shared oracles for the test suites. Everything here recomputes results by
// definition-chasing enumeration, independently of the library's
// implementation paths.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "regent/cover.hpp"
#include "regent/finite_space.hpp"
#include "regent/point_set.hpp"
#include "regent/r_map.hpp"

namespace testsupport {

using regent::Cover;
using regent::FiniteSpace;
using regent::PointSet;
using regent::RMap;
using regent::SpacePtr;

/// Interior by definition: points having an open neighbourhood inside A.
inline PointSet interior_oracle(const FiniteSpace& space, const PointSet& a) {
  PointSet out = PointSet::empty_set(space.point_count());
  for (int x = 0; x < space.point_count(); ++x) {
    for (const PointSet& u : space.opens()) {
      if (u.contains(x) && u.subset_of(a)) {
        out.add(x);
        break;
      }
    }
  }
  return out;
}

/// Closure by definition: intersection of all closed supersets.
inline PointSet closure_oracle(const FiniteSpace& space, const PointSet& a) {
  PointSet acc = PointSet::full_set(space.point_count());
  for (const PointSet& u : space.opens()) {
    const PointSet closed = u.complement();
    if (a.subset_of(closed)) acc = acc & closed;
  }
  return acc;
}

/// Regular opens by scanning every subset of the universe.
inline std::vector<PointSet> regular_opens_oracle(const FiniteSpace& space) {
  std::vector<PointSet> out;
  const int n = space.point_count();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    PointSet a = PointSet::from_bits(n, bits);
    if (space.is_open(a) && interior_oracle(space, closure_oracle(space, a)) == a) out.push_back(a);
  }
  std::sort(out.begin(), out.end(), regent::PointSetLexLess{});
  return out;
}

/// Literal m-fold join of preimage covers, with preimages iterated
/// member-by-member rather than through the recurrence.
inline Cover literal_iterated_join(const RMap& f, const Cover& u, int m) {
  std::vector<Cover> stages;
  Cover stage = u;
  stages.push_back(stage);
  for (int i = 1; i < m; ++i) {
    stage = regent::preimage_cover(f, stage);
    stages.push_back(stage);
  }
  Cover acc = stages[0];
  for (int i = 1; i < m; ++i) acc = regent::join(acc, stages[static_cast<std::size_t>(i)]);
  return acc;
}

/// Every canonical regular open cover of the space: subsets of the
/// catalogue that cover, reduced to antichains and deduplicated. Usable
/// only for small catalogues.
inline std::vector<Cover> all_canonical_regular_covers(const SpacePtr& space) {
  const auto& cat = space->regular_opens();
  std::vector<PointSet> members;
  for (const PointSet& r : cat) {
    if (!r.empty()) members.push_back(r);
  }
  const int k = static_cast<int>(members.size());
  std::map<std::vector<std::uint64_t>, Cover> seen;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << k); ++bits) {
    PointSet covered = PointSet::empty_set(space->point_count());
    std::vector<PointSet> family;
    for (int i = 0; i < k; ++i) {
      if ((bits >> i) & 1u) {
        family.push_back(members[static_cast<std::size_t>(i)]);
        covered = covered | members[static_cast<std::size_t>(i)];
      }
    }
    if (!covered.is_full()) continue;
    Cover c = regent::make_cover(space, std::move(family));
    seen.emplace(c.key(), std::move(c));
  }
  std::vector<Cover> out;
  out.reserve(seen.size());
  for (auto& [key, cover] : seen) out.push_back(std::move(cover));
  return out;
}

}  // namespace testsupport
