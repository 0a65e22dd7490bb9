#include <catch2/catch_amalgamated.hpp>

#include <thread>
#include <vector>

#include "regent/finite_space.hpp"
#include "regent/generators.hpp"
#include "regent/nearly_compact.hpp"
#include "regent/rng.hpp"
#include "support.hpp"

using regent::Error;
using regent::ErrorKind;
using regent::FiniteSpace;
using regent::PointSet;
using regent::SpacePtr;

namespace {
PointSet ps(int width, std::initializer_list<int> idx) { return PointSet::of(width, idx); }
}  // namespace

TEST_CASE("open families are validated, never completed", "[finite_space]") {
  // Sierpinski and the discrete plane pass.
  CHECK_NOTHROW(FiniteSpace(2, {ps(2, {}), ps(2, {1}), ps(2, {0, 1})}));
  CHECK_NOTHROW(FiniteSpace(2, {ps(2, {}), ps(2, {0}), ps(2, {1}), ps(2, {0, 1})}));

  // Universe missing.
  try {
    FiniteSpace(2, {ps(2, {}), ps(2, {1})});
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_a_topology);
  }
  // Union missing.
  CHECK_THROWS_AS(FiniteSpace(3, {ps(3, {}), ps(3, {0}), ps(3, {1}), ps(3, {0, 1, 2})}), Error);
  // Intersection missing.
  CHECK_THROWS_AS(FiniteSpace(3, {ps(3, {}), ps(3, {0, 1}), ps(3, {1, 2}), ps(3, {0, 1, 2})}), Error);
  // Out-of-universe member.
  CHECK_THROWS_AS(FiniteSpace(2, {ps(3, {}), ps(3, {0, 1, 2})}), Error);
  // Size caps.
  CHECK_THROWS_AS(regent::discrete_space(21), Error);
}

TEST_CASE("interior and closure on the named fixtures", "[finite_space]") {
  SpacePtr sier = regent::sierpinski_space();
  CHECK(sier->closure(ps(2, {1})) == ps(2, {0, 1}));
  CHECK(sier->interior(ps(2, {0})) == ps(2, {}));

  SpacePtr kh = regent::khalimsky_space(5);
  CHECK(kh->closure(ps(5, {1})) == ps(5, {0, 1, 2}));
  CHECK(kh->interior(kh->closure(ps(5, {1}))) == ps(5, {0, 1}));
  CHECK(kh->interior(ps(5, {})) == ps(5, {}));
  CHECK(kh->closure(ps(5, {})) == ps(5, {}));
}

TEST_CASE("operators agree with definition-chasing oracles", "[finite_space]") {
  std::vector<SpacePtr> spaces = {regent::sierpinski_space(), regent::khalimsky_space(5), regent::discrete_space(3),
                                  regent::khalimsky_space(10)};
  regent::Rng rng(11);
  for (int i = 0; i < 6; ++i) spaces.push_back(regent::random_space(rng, 2 + static_cast<int>(rng.below(6))));
  for (int i = 0; i < 2; ++i) spaces.push_back(regent::random_space(rng, 10));

  for (const SpacePtr& space : spaces) {
    const int n = space->point_count();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      PointSet a = PointSet::from_bits(n, bits);
      PointSet in = space->interior(a);
      PointSet cl = space->closure(a);
      CHECK(in == testsupport::interior_oracle(*space, a));
      CHECK(cl == testsupport::closure_oracle(*space, a));
      CHECK(in.subset_of(a));
      CHECK(a.subset_of(cl));
      CHECK(space->interior(in) == in);
      CHECK(space->closure(cl) == cl);
    }
  }
}

TEST_CASE("regular-open catalogues", "[finite_space]") {
  CHECK(regent::sierpinski_space()->regular_opens() == std::vector<PointSet>{ps(2, {}), ps(2, {0, 1})});
  CHECK(regent::discrete_space(3)->regular_opens().size() == 8);
  CHECK(regent::khalimsky_space(5)->regular_opens() ==
        std::vector<PointSet>{ps(5, {}), ps(5, {0, 1}), ps(5, {0, 1, 2, 3, 4}), ps(5, {3, 4})});

  // The image catalogue equals the full-subset scan, and is closed under
  // intersection; int(cl(.)) of every open is a member.
  regent::Rng rng(23);
  std::vector<SpacePtr> spaces = {regent::khalimsky_space(5), regent::sierpinski_space()};
  for (int i = 0; i < 6; ++i) spaces.push_back(regent::random_space(rng, 2 + static_cast<int>(rng.below(6))));
  for (const SpacePtr& space : spaces) {
    CHECK(space->regular_opens() == testsupport::regular_opens_oracle(*space));
    for (const PointSet& a : space->regular_opens()) {
      CHECK(space->is_regular_open(a));
      for (const PointSet& b : space->regular_opens()) {
        CHECK(space->is_regular_open(a & b));
      }
    }
    for (const PointSet& u : space->opens()) {
      CHECK(space->in_catalogue(space->interior(space->closure(u))));
    }
  }
}

TEST_CASE("hausdorff means discrete among finite spaces", "[finite_space]") {
  CHECK(regent::is_hausdorff(*regent::discrete_space(3)).holds);

  auto sier = regent::is_hausdorff(*regent::sierpinski_space());
  REQUIRE_FALSE(sier.holds);
  CHECK(sier.witness->point_pair == std::make_pair(0, 1));

  auto kh = regent::is_hausdorff(*regent::khalimsky_space(5));
  REQUIRE_FALSE(kh.holds);
  CHECK(kh.witness->point_pair == std::make_pair(0, 1));
  // Witness re-check: the minimal neighbourhoods genuinely meet.
  auto [x, y] = *kh.witness->point_pair;
  CHECK(regent::khalimsky_space(5)->min_nbhd(x).intersects(regent::khalimsky_space(5)->min_nbhd(y)));

  regent::Rng rng(5);
  for (int i = 0; i < 12; ++i) {
    SpacePtr space = regent::random_space(rng, 2 + static_cast<int>(rng.below(5)));
    CHECK(regent::is_hausdorff(*space).holds == space->is_discrete());
  }
}

TEST_CASE("r-space predicate with re-verified witnesses", "[finite_space]") {
  CHECK(regent::is_r_space(*regent::discrete_space(4)).holds);
  CHECK(regent::is_r_space(*regent::sierpinski_space()).holds);

  SpacePtr kh = regent::khalimsky_space(5);
  auto verdict = regent::is_r_space(*kh);
  REQUIRE_FALSE(verdict.holds);
  REQUIRE(verdict.witness->sets.size() == 2);
  CHECK(verdict.witness->sets[0] == ps(5, {0, 1}));
  CHECK(verdict.witness->sets[1] == ps(5, {3, 4}));
  const PointSet u = verdict.witness->sets[0] | verdict.witness->sets[1];
  CHECK(kh->interior(kh->closure(u)) != u);
  CHECK(kh->interior(kh->closure(u)) == PointSet::full_set(5));
}

TEST_CASE("minimal regular neighbourhoods", "[finite_space]") {
  CHECK(regent::discrete_space(3)->min_regular_nbhd(1) == ps(3, {1}));
  SpacePtr kh = regent::khalimsky_space(5);
  CHECK(kh->min_regular_nbhd(2) == PointSet::full_set(5));
  CHECK(kh->min_regular_nbhd(0) == ps(5, {0, 1}));
  for (int x = 0; x < 5; ++x) {
    CHECK(kh->is_regular_open(kh->min_regular_nbhd(x)));
    CHECK(kh->min_regular_nbhd(x).contains(x));
  }
}

TEST_CASE("near-compactness certificates", "[finite_space]") {
  SpacePtr kh = regent::khalimsky_space(5);
  auto cert = regent::nearly_compact_certificate(kh, ps(5, {2}));
  CHECK(cert.verify());
  REQUIRE(cert.subfamily.size() == 1);
  CHECK(cert.subfamily[0] == PointSet::full_set(5));

  CHECK(regent::nearly_compact_certificate(kh, ps(5, {})).subfamily.empty());
  CHECK(regent::nearly_compact_certificate(kh, PointSet::full_set(5)).verify());
}

TEST_CASE("subspaces carry the trace topology", "[finite_space]") {
  SpacePtr d3 = regent::discrete_space(3);
  auto sub = regent::subspace(d3, ps(3, {0, 2}));
  CHECK(sub.space->point_count() == 2);
  CHECK(sub.space->is_discrete());
  CHECK(sub.to_parent == std::vector<int>{0, 2});

  SpacePtr kh = regent::khalimsky_space(5);
  auto khsub = regent::subspace(kh, ps(5, {0, 1, 2}));
  CHECK(khsub.space->opens() == std::vector<PointSet>{ps(3, {}), ps(3, {0, 1}), ps(3, {0, 1, 2}), ps(3, {1}), ps(3, {1, 2})});

  auto whole = regent::subspace(kh, PointSet::full_set(5));
  CHECK(whole.space->opens() == kh->opens());
  CHECK(whole.to_parent == std::vector<int>{0, 1, 2, 3, 4});

  CHECK_THROWS_AS(regent::subspace(kh, ps(5, {})), Error);

  // Nested restriction agrees with restricting once to the intersection.
  regent::Rng rng(37);
  for (int i = 0; i < 20; ++i) {
    SpacePtr space = regent::random_space(rng, 3 + static_cast<int>(rng.below(5)));
    const int n = space->point_count();
    PointSet k1 = PointSet::from_bits(n, 1 + rng.below((std::uint64_t{1} << n) - 1));
    PointSet k2 = PointSet::from_bits(n, 1 + rng.below((std::uint64_t{1} << n) - 1));
    if ((k1 & k2).empty()) continue;
    auto sub1 = regent::subspace(space, k1);
    auto nested = regent::subspace(sub1.space, sub1.trace(k2));
    auto direct = regent::subspace(space, k1 & k2);
    CHECK(nested.space->opens() == direct.space->opens());
  }
}

TEST_CASE("immutable values answer identically from concurrent readers", "[finite_space]") {
  SpacePtr kh = regent::khalimsky_space(5);
  auto query = [&kh] {
    std::vector<PointSet> out;
    for (std::uint64_t bits = 0; bits < 32; ++bits) {
      PointSet a = PointSet::from_bits(5, bits);
      out.push_back(kh->interior(kh->closure(a)));
    }
    return out;
  };
  const std::vector<PointSet> expected = query();
  std::vector<std::vector<PointSet>> answers(4);
  std::vector<std::thread> readers;
  for (int t = 0; t < 4; ++t) {
    readers.emplace_back([&, t] { answers[static_cast<std::size_t>(t)] = query(); });
  }
  for (auto& t : readers) t.join();
  for (const auto& a : answers) CHECK(a == expected);
}

TEST_CASE("minimal-neighbourhood presentations generate the family", "[finite_space]") {
  SpacePtr kh = regent::khalimsky_space(5);
  CHECK(kh->opens().size() == 13);
  CHECK(kh->min_nbhd(0) == ps(5, {0, 1}));
  CHECK(kh->min_nbhd(2) == ps(5, {1, 2, 3}));
  // A neighbourhood missing its own point is rejected.
  CHECK_THROWS_AS(regent::make_space_from_min_nbhds({ps(2, {1}), ps(2, {1})}), Error);

  // Generated families survive the full axiom scan of the public
  // constructor (the generator itself is allowed to skip it).
  regent::Rng rng(53);
  for (int i = 0; i < 10; ++i) {
    SpacePtr space = regent::random_space(rng, 2 + static_cast<int>(rng.below(6)));
    CHECK_NOTHROW(FiniteSpace(space->point_count(), space->opens()));
  }
  CHECK_NOTHROW(FiniteSpace(5, kh->opens()));
}
