#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "regent/cover.hpp"
#include "regent/generators.hpp"
#include "regent/nearly_compact.hpp"
#include "regent/r_map.hpp"
#include "regent/rng.hpp"

using regent::Error;
using regent::ErrorKind;
using regent::PointSet;
using regent::RMap;
using regent::SpacePtr;

namespace {
PointSet ps(int width, std::initializer_list<int> idx) { return PointSet::of(width, idx); }
}  // namespace

TEST_CASE("r-map verification against the catalogue", "[r_map]") {
  SpacePtr d3 = regent::discrete_space(3);
  CHECK(regent::try_r_map(d3, {2, 0, 1}).verified);
  CHECK(regent::try_r_map(d3, {0, 0, 0}).verified);

  SpacePtr kh = regent::khalimsky_space(5);
  CHECK(regent::try_r_map(kh, {2, 2, 2, 2, 2}).verified);
  CHECK(regent::try_r_map(kh, {0, 0, 0, 0, 0}).verified);

  RMap bad = regent::try_r_map(kh, {2, 2, 0, 2, 2});
  REQUIRE_FALSE(bad.verified);
  CHECK(*bad.failing_regular == ps(5, {0, 1}));
  CHECK_FALSE(kh->is_regular_open(bad.preimage(*bad.failing_regular)));
  CHECK_THROWS_AS(regent::check_r_map(kh, {2, 2, 0, 2, 2}), Error);

  CHECK_THROWS_AS(regent::try_r_map(d3, {0, 1}), Error);
  CHECK_THROWS_AS(regent::try_r_map(d3, {0, 1, 3}), Error);
}

TEST_CASE("images and invariance", "[r_map]") {
  SpacePtr d3 = regent::discrete_space(3);
  RMap f = regent::check_r_map(d3, {1, 0, 2});
  CHECK(f.image(ps(3, {0, 1})) == ps(3, {0, 1}));
  CHECK(regent::is_invariant(f, ps(3, {0, 1})));
  CHECK(regent::is_invariant(f, PointSet::full_set(3)));
  CHECK_FALSE(regent::is_invariant(f, ps(3, {0})));
  CHECK(f.image(ps(3, {0})) == ps(3, {1}));
}

TEST_CASE("invariant families by exhaustive scan", "[r_map]") {
  SpacePtr d3 = regent::discrete_space(3);
  RMap f = regent::check_r_map(d3, {1, 0, 2});
  CHECK(regent::invariant_sets(f) == std::vector<PointSet>{ps(3, {0, 1}), ps(3, {0, 1, 2}), ps(3, {2})});

  RMap id = regent::check_r_map(d3, {0, 1, 2});
  CHECK(regent::invariant_sets(id).size() == 7);

  RMap cycle = regent::check_r_map(d3, {1, 2, 0});
  CHECK(regent::invariant_sets(cycle) == std::vector<PointSet>{ps(3, {0, 1, 2})});

  // The whole space always belongs.
  regent::Rng rng(9);
  for (int i = 0; i < 15; ++i) {
    SpacePtr space = regent::random_space(rng, 2 + static_cast<int>(rng.below(5)));
    auto draw = regent::gen_r_map(rng, space);
    if (!draw.map) continue;
    auto family = regent::invariant_sets(*draw.map);
    CHECK(std::find(family.begin(), family.end(), PointSet::full_set(space->point_count())) != family.end());
    // Orbit closures are invariant, and members are their own closures.
    for (const PointSet& k : family) {
      CHECK(regent::orbit_closure(*draw.map, k) == k);
    }
    PointSet seed = PointSet::singleton(space->point_count(), rng.below_int(space->point_count()));
    CHECK(std::find(family.begin(), family.end(), regent::orbit_closure(*draw.map, seed)) != family.end());
  }
}

TEST_CASE("restriction to invariant sets", "[r_map]") {
  SpacePtr d3 = regent::discrete_space(3);
  RMap f = regent::check_r_map(d3, {1, 0, 2});
  auto rm = regent::restrict_map(f, ps(3, {0, 1}));
  CHECK(rm.map.table == std::vector<int>{1, 0});
  CHECK(rm.map.verified);

  auto whole = regent::restrict_map(f, PointSet::full_set(3));
  CHECK(whole.map.table == f.table);

  try {
    regent::restrict_map(f, ps(3, {0}));
    FAIL("expected NotInvariant");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_invariant);
  }
}

TEST_CASE("inverse maps", "[r_map]") {
  SpacePtr d3 = regent::discrete_space(3);
  RMap swap = regent::check_r_map(d3, {1, 0, 2});
  CHECK(regent::inverse_map(swap).table == swap.table);

  RMap cycle = regent::check_r_map(d3, {1, 2, 0});
  CHECK(regent::inverse_map(cycle).table == std::vector<int>{2, 0, 1});

  RMap constant = regent::check_r_map(d3, {0, 0, 0});
  CHECK_THROWS_AS(regent::inverse_map(constant), Error);
}

TEST_CASE("restriction and inversion commute where defined", "[r_map]") {
  regent::Rng rng(77);
  for (int i = 0; i < 25; ++i) {
    SpacePtr space = regent::random_space(rng, 2 + static_cast<int>(rng.below(5)));
    auto draw = regent::gen_r_map(rng, space, /*bijective=*/true);
    if (!draw.map) continue;
    RMap finv = regent::try_inverse_map(*draw.map);
    if (!finv.verified) continue;
    PointSet k = regent::random_invariant_set(rng, *draw.map);
    auto a = regent::restrict_map(finv, k);
    auto down = regent::restrict_map(*draw.map, k);
    if (!down.map.is_bijective()) continue;
    auto b = regent::try_inverse_map(down.map);
    CHECK(a.map.table == b.table);
  }
}

TEST_CASE("images against regular covers stay certifiable", "[r_map]") {
  regent::Rng rng(78);
  for (int i = 0; i < 25; ++i) {
    SpacePtr space = regent::random_space(rng, 2 + static_cast<int>(rng.below(5)));
    auto draw = regent::gen_r_map(rng, space);
    if (!draw.map) continue;
    const int n = space->point_count();
    PointSet a = PointSet::from_bits(n, 1 + rng.below((std::uint64_t{1} << n) - 1));
    auto cover = regent::random_open_cover(rng, space);
    auto cert = regent::nearly_compact_certificate_from(space, cover, draw.map->image(a));
    CHECK(cert.verify());
  }
}

TEST_CASE("pullbacks of regular covers stay regular for verified maps", "[r_map]") {
  regent::Rng rng(79);
  for (int i = 0; i < 25; ++i) {
    SpacePtr space = regent::random_space(rng, 2 + static_cast<int>(rng.below(7)));
    auto draw = regent::gen_r_map(rng, space);
    if (!draw.map) continue;
    for (const PointSet& r : space->regular_opens()) {
      CHECK(space->is_regular_open(draw.map->preimage(r)));
    }
    auto u = regent::random_regular_cover(rng, space);
    CHECK(regent::pullback(*draw.map, u).regular());
  }
}
