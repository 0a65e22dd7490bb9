#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regent/cover.hpp"
#include "regent/error.hpp"
#include "regent/finite_space.hpp"
#include "regent/point_set.hpp"
#include "regent/r_map.hpp"
#include "regent/rng.hpp"

namespace regent {

// ---------------------------------------------------------------------------
// Named fixtures
// ---------------------------------------------------------------------------

/// All subsets open.
inline SpacePtr discrete_space(int n) {
  std::vector<PointSet> nbhds;
  for (int i = 0; i < n; ++i) nbhds.push_back(PointSet::singleton(n, i));
  return make_space_from_min_nbhds(nbhds);
}

/// Two points, one open point: opens are {}, {1}, {0,1}.
inline SpacePtr sierpinski_space() {
  return make_space(2, {PointSet::empty_set(2), PointSet::of(2, {1}), PointSet::full_set(2)});
}

/// Digital-line segment on n points: odd points are open, even points have
/// the three-point neighbourhood clipped to the segment.
inline SpacePtr khalimsky_space(int n) {
  std::vector<PointSet> nbhds;
  for (int x = 0; x < n; ++x) {
    PointSet u = PointSet::empty_set(n);
    if (x % 2 == 1) {
      u.add(x);
    } else {
      if (x > 0) u.add(x - 1);
      u.add(x);
      if (x + 1 < n) u.add(x + 1);
    }
    nbhds.push_back(u);
  }
  return make_space_from_min_nbhds(nbhds);
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

/// Random finite topology: a random preorder's Alexandrov topology. Each
/// ordered pair gets an edge with probability ~1/3; minimal neighbourhoods
/// are forward-reachability sets.
inline SpacePtr random_space(Rng& rng, int n) {
  if (n > 10) fail(ErrorKind::too_large, "random spaces capped at 10 points");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    for (int j = 0; j < n; ++j) {
      if (i != j && rng.chance(1, 3)) adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    }
  }
  // Transitive closure.
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] && adj[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
          adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
      }
    }
  }
  std::vector<PointSet> nbhds;
  for (int i = 0; i < n; ++i) {
    PointSet u = PointSet::empty_set(n);
    for (int j = 0; j < n; ++j) {
      if (adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) u.add(j);
    }
    nbhds.push_back(u);
  }
  return make_space_from_min_nbhds(nbhds);
}

inline std::vector<int> random_table(Rng& rng, int n) {
  std::vector<int> table(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) table[static_cast<std::size_t>(i)] = rng.below_int(n);
  return table;
}

inline std::vector<int> random_permutation(Rng& rng, int n) {
  std::vector<int> table(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) table[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = rng.below_int(i + 1);
    std::swap(table[static_cast<std::size_t>(i)], table[static_cast<std::size_t>(j)]);
  }
  return table;
}

struct RMapDraw {
  std::optional<RMap> map;  // empty when every attempt failed verification
  int attempts = 0;
};

/// Rejection-samples tables until the R-map check accepts, up to a bounded
/// number of attempts. Giving up is reported, not fatal.
inline RMapDraw gen_r_map(Rng& rng, const SpacePtr& space, bool bijective = false, int max_attempts = 400) {
  const int n = space->point_count();
  RMapDraw draw;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    ++draw.attempts;
    RMap f = try_r_map(space, bijective ? random_permutation(rng, n) : random_table(rng, n));
    if (f.verified) {
      draw.map = std::move(f);
      return draw;
    }
  }
  return draw;
}

/// Random regular open cover: each catalogue member joins with probability
/// 1/2, then further members are added in random order until the union is
/// the whole space. The catalogue always contains the universe, so this
/// terminates.
inline Cover random_regular_cover(Rng& rng, const SpacePtr& space) {
  const auto& cat = space->regular_opens();
  std::vector<PointSet> members;
  PointSet covered = PointSet::empty_set(space->point_count());
  for (const PointSet& r : cat) {
    if (!r.empty() && rng.chance(1, 2)) {
      members.push_back(r);
      covered = covered | r;
    }
  }
  std::vector<int> order = random_permutation(rng, static_cast<int>(cat.size()));
  for (int idx : order) {
    if (covered.is_full()) break;
    const PointSet& r = cat[static_cast<std::size_t>(idx)];
    if (!r.empty() && !(r - covered).empty()) {
      members.push_back(r);
      covered = covered | r;
    }
  }
  if (!covered.is_full()) members.push_back(PointSet::full_set(space->point_count()));
  return make_cover(space, std::move(members));
}

/// Random open cover (members need not be regular).
inline Cover random_open_cover(Rng& rng, const SpacePtr& space) {
  const auto& opens = space->opens();
  std::vector<PointSet> members;
  PointSet covered = PointSet::empty_set(space->point_count());
  for (const PointSet& u : opens) {
    if (!u.empty() && rng.chance(1, 2)) {
      members.push_back(u);
      covered = covered | u;
    }
  }
  std::vector<int> order = random_permutation(rng, static_cast<int>(opens.size()));
  for (int idx : order) {
    if (covered.is_full()) break;
    const PointSet& u = opens[static_cast<std::size_t>(idx)];
    if (!u.empty() && !(u - covered).empty()) {
      members.push_back(u);
      covered = covered | u;
    }
  }
  if (!covered.is_full()) members.push_back(PointSet::full_set(space->point_count()));
  return make_cover(space, std::move(members));
}

/// Random nonempty invariant set: the orbit closure of a random seed set.
inline PointSet random_invariant_set(Rng& rng, const RMap& f) {
  const int n = f.space->point_count();
  PointSet seed = PointSet::empty_set(n);
  seed.add(rng.below_int(n));
  for (int i = 0; i < n; ++i) {
    if (rng.chance(1, 4)) seed.add(i);
  }
  return orbit_closure(f, seed);
}

// ---------------------------------------------------------------------------
// Declarative instance descriptions (replayable from a seed)
// ---------------------------------------------------------------------------

enum class SpaceKind { random_preorder, discrete, sierpinski, khalimsky };
enum class MapPolicy { any, bijective };

inline const char* to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::random_preorder: return "random-preorder";
    case SpaceKind::discrete: return "discrete";
    case SpaceKind::sierpinski: return "sierpinski";
    case SpaceKind::khalimsky: return "khalimsky";
  }
  return "?";
}

inline const char* to_string(MapPolicy p) { return p == MapPolicy::any ? "any" : "bijective"; }

struct InstanceSpec {
  std::uint64_t seed = 1;
  int points = 4;
  SpaceKind kind = SpaceKind::random_preorder;
  MapPolicy policy = MapPolicy::any;

  std::string to_string() const {
    return std::string(regent::to_string(kind)) + "(n=" + std::to_string(points) +
           ", seed=" + std::to_string(seed) + ", maps=" + regent::to_string(policy) + ")";
  }
};

inline SpacePtr gen_space(const InstanceSpec& spec) {
  switch (spec.kind) {
    case SpaceKind::discrete: return discrete_space(spec.points);
    case SpaceKind::sierpinski: return sierpinski_space();
    case SpaceKind::khalimsky: return khalimsky_space(spec.points);
    case SpaceKind::random_preorder: {
      Rng rng(mix64(spec.seed, 0x5ACE5ACE5ACE5ACEull));
      return random_space(rng, spec.points);
    }
  }
  fail(ErrorKind::bad_index, "unknown space kind");
}

}  // namespace regent
