#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "regent/point_set.hpp"
#include "regent/rng.hpp"

using regent::Error;
using regent::ErrorKind;
using regent::PointSet;

TEST_CASE("basic set algebra is exact", "[point_set]") {
  PointSet a = PointSet::of(5, {0, 2, 4});
  PointSet b = PointSet::of(5, {1, 2});
  CHECK((a | b) == PointSet::of(5, {0, 1, 2, 4}));
  CHECK((a & b) == PointSet::of(5, {2}));
  CHECK((a - b) == PointSet::of(5, {0, 4}));
  CHECK(a.complement() == PointSet::of(5, {1, 3}));
  CHECK(a.count() == 3);
  CHECK_FALSE(a.subset_of(b));
  CHECK(PointSet::of(5, {2}).subset_of(a));
  CHECK(a.intersects(b));
  CHECK(a.indices() == std::vector<int>{0, 2, 4});
}

TEST_CASE("width and index violations are rejected", "[point_set]") {
  PointSet a = PointSet::of(3, {0});
  PointSet b = PointSet::of(4, {0});
  CHECK_THROWS_AS(a | b, Error);
  CHECK_THROWS_AS(a.subset_of(b), Error);
  CHECK_THROWS_AS(PointSet::of(3, {3}), Error);
  CHECK_THROWS_AS(PointSet::from_bits(3, 0b1000), Error);
  try {
    a.add(7);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::bad_index);
  }
}

TEST_CASE("lexicographic order matches index sequences", "[point_set]") {
  // Frozen small cases.
  CHECK(PointSet::lex_less(PointSet::of(3, {}), PointSet::of(3, {0})));
  CHECK(PointSet::lex_less(PointSet::of(3, {0}), PointSet::of(3, {0, 1})));
  CHECK(PointSet::lex_less(PointSet::of(3, {0, 1}), PointSet::of(3, {0, 2})));
  CHECK(PointSet::lex_less(PointSet::of(3, {0, 2}), PointSet::of(3, {1})));
  CHECK_FALSE(PointSet::lex_less(PointSet::of(3, {1}), PointSet::of(3, {0, 1})));
  CHECK_FALSE(PointSet::lex_less(PointSet::of(3, {1}), PointSet::of(3, {1})));

  // Against the definition, over random pairs.
  regent::Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const int width = 1 + static_cast<int>(rng.below(10));
    PointSet a = PointSet::from_bits(width, rng.below(std::uint64_t{1} << width));
    PointSet b = PointSet::from_bits(width, rng.below(std::uint64_t{1} << width));
    const auto ia = a.indices();
    const auto ib = b.indices();
    const bool expected = std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
    CHECK(PointSet::lex_less(a, b) == expected);
  }
}

TEST_CASE("ordering sorts families canonically", "[point_set]") {
  std::vector<PointSet> family = {PointSet::of(3, {1}), PointSet::of(3, {0, 1, 2}), PointSet::of(3, {}),
                                  PointSet::of(3, {0, 2})};
  std::sort(family.begin(), family.end(), regent::PointSetLexLess{});
  CHECK(family == std::vector<PointSet>{PointSet::of(3, {}), PointSet::of(3, {0, 1, 2}), PointSet::of(3, {0, 2}),
                                        PointSet::of(3, {1})});
  CHECK(family[1].to_string() == "{0,1,2}");
}
