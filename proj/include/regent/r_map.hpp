#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regent/error.hpp"
#include "regent/finite_space.hpp"
#include "regent/point_set.hpp"

namespace regent {

/// A total self-map on a finite space, carrying its R-map verification
/// status: `verified` holds when the preimage of every catalogued regular
/// open is regular open; otherwise `failing_regular` names a counterexample.
struct RMap {
  SpacePtr space;
  std::vector<int> table;
  bool verified = false;
  std::optional<PointSet> failing_regular;

  int operator()(int x) const { return table[static_cast<std::size_t>(x)]; }

  PointSet preimage(const PointSet& a) const {
    const int n = space->point_count();
    if (a.width() != n) fail(ErrorKind::width_mismatch, "preimage of set over wrong universe");
    PointSet out = PointSet::empty_set(n);
    for (int x = 0; x < n; ++x) {
      if (a.contains(table[static_cast<std::size_t>(x)])) out.add(x);
    }
    return out;
  }

  PointSet image(const PointSet& k) const {
    const int n = space->point_count();
    if (k.width() != n) fail(ErrorKind::width_mismatch, "image of set over wrong universe");
    PointSet out = PointSet::empty_set(n);
    k.for_each([&](int x) { out.add(table[static_cast<std::size_t>(x)]); });
    return out;
  }

  bool is_bijective() const {
    PointSet seen = PointSet::empty_set(space->point_count());
    for (int v : table) seen.add(v);
    return seen.is_full();
  }
};

/// Runs the R-map check and returns the map regardless of the verdict;
/// inspect `verified`. Use check_r_map when failure should be an error.
inline RMap try_r_map(SpacePtr space, std::vector<int> table) {
  const int n = space->point_count();
  if (static_cast<int>(table.size()) != n) fail(ErrorKind::bad_index, "map table size does not match point count");
  for (int v : table) {
    if (v < 0 || v >= n) fail(ErrorKind::bad_index, "map value out of range");
  }
  RMap f{std::move(space), std::move(table), true, std::nullopt};
  for (const PointSet& r : f.space->regular_opens()) {
    if (!f.space->is_regular_open(f.preimage(r))) {
      f.verified = false;
      f.failing_regular = r;
      break;
    }
  }
  return f;
}

inline RMap check_r_map(SpacePtr space, std::vector<int> table) {
  RMap f = try_r_map(std::move(space), std::move(table));
  if (!f.verified) {
    fail(ErrorKind::not_r_map, "preimage of regular open " + f.failing_regular->to_string() + " is not regular open");
  }
  return f;
}

inline bool is_invariant(const RMap& f, const PointSet& k) { return f.image(k).subset_of(k); }

/// Smallest f-invariant superset of S: S together with its forward orbit.
inline PointSet orbit_closure(const RMap& f, const PointSet& s) {
  PointSet acc = s;
  for (;;) {
    PointSet next = acc | f.image(acc);
    if (next == acc) return acc;
    acc = next;
  }
}

/// All nonempty invariant subsets, by exhaustive scan. In a finite space
/// every subset is nearly compact relative to the whole space, so
/// invariance is the only filter; the full universe is always a member.
inline std::vector<PointSet> invariant_sets(const RMap& f) {
  const int n = f.space->point_count();
  if (n > size_caps().max_enumeration_points)
    fail(ErrorKind::too_large, "invariant-set enumeration capped at " + std::to_string(size_caps().max_enumeration_points) + " points");
  // Invariance of K is a per-point condition: K must contain f(x) for each
  // of its points, i.e. K is a union of forward orbits.
  std::vector<PointSet> out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t bits = 1; bits < total; ++bits) {
    PointSet k = PointSet::from_bits(n, bits);
    if (is_invariant(f, k)) out.push_back(k);
  }
  std::sort(out.begin(), out.end(), PointSetLexLess{});
  return out;
}

struct RestrictedMap {
  Subspace sub;
  RMap map;  // self-map of sub.space; verified reflects the subspace check
};

/// Restriction f|_K to an invariant nonempty K, reindexed into the trace
/// topology. The R-map check is re-run there; status is reported, never
/// assumed.
inline RestrictedMap restrict_map(const RMap& f, const PointSet& k) {
  if (!is_invariant(f, k)) fail(ErrorKind::not_invariant, "set " + k.to_string() + " is not invariant");
  Subspace sub = subspace(f.space, k);
  const int m = static_cast<int>(sub.to_parent.size());
  std::vector<int> parent_to_sub(static_cast<std::size_t>(f.space->point_count()), -1);
  for (int i = 0; i < m; ++i) parent_to_sub[static_cast<std::size_t>(sub.to_parent[static_cast<std::size_t>(i)])] = i;
  std::vector<int> table(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    table[static_cast<std::size_t>(i)] = parent_to_sub[static_cast<std::size_t>(f(sub.parent_index(i)))];
  }
  RMap g = try_r_map(sub.space, std::move(table));
  return RestrictedMap{std::move(sub), std::move(g)};
}

/// Inverse of a bijective map. Being an R-map is an assumption on the
/// inverse, not a consequence, so the check is re-run and failure rejected.
inline RMap inverse_map(const RMap& f) {
  if (!f.is_bijective()) fail(ErrorKind::not_bijective, "map is not a bijection");
  const int n = f.space->point_count();
  std::vector<int> inv(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) inv[static_cast<std::size_t>(f(x))] = x;
  return check_r_map(f.space, std::move(inv));
}

inline RMap try_inverse_map(const RMap& f) {
  if (!f.is_bijective()) fail(ErrorKind::not_bijective, "map is not a bijection");
  const int n = f.space->point_count();
  std::vector<int> inv(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) inv[static_cast<std::size_t>(f(x))] = x;
  return try_r_map(f.space, std::move(inv));
}

}  // namespace regent
