#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "regent/error.hpp"
#include "regent/point_set.hpp"

namespace regent {

/// A finite topological space given by an explicit family of open sets.
///
/// The family is validated on construction: it must contain the empty set
/// and the full universe and be closed under pairwise union and pairwise
/// intersection (which, for a finite family, yields all topology axioms).
/// Nothing is silently completed; a missing union or intersection is
/// rejected with a witness in the message.
///
/// Construction also precomputes:
///   - minimal open neighbourhoods m(x) = smallest open set containing x,
///   - the regular-open catalogue { int(cl(U)) : U open }, deduplicated,
///   - minimal regular-open neighbourhoods r(x).
///
/// Instances are immutable after construction and safe to share across
/// threads.
class FiniteSpace {
 public:
  FiniteSpace(int n, std::vector<PointSet> opens, std::vector<std::string> names = {})
      : FiniteSpace(n, std::move(opens), std::move(names), true) {}

  /// Builds the space generated by per-point minimal neighbourhoods (the
  /// preorder presentation of a finite topology): the opens are exactly the
  /// unions of minimal neighbourhoods, plus the empty set.
  static FiniteSpace from_min_nbhds(const std::vector<PointSet>& nbhds, std::vector<std::string> names = {}) {
    const int n = static_cast<int>(nbhds.size());
    if (n < 1) fail(ErrorKind::bad_index, "empty presentation");
    for (int x = 0; x < n; ++x) {
      if (nbhds[x].width() != n) fail(ErrorKind::bad_index, "neighbourhood over wrong universe");
      if (!nbhds[x].contains(x))
        fail(ErrorKind::not_a_topology, "minimal neighbourhood of point " + std::to_string(x) + " does not contain it");
    }
    // Union-closure of the generators. Every open is a union of minimal
    // neighbourhoods, so this reaches the full family.
    const SizeCaps& caps = size_caps();
    std::unordered_set<std::uint64_t> seen;
    std::vector<PointSet> family;
    auto push = [&](const PointSet& s) {
      if (seen.insert(s.bits()).second) {
        family.push_back(s);
        if (static_cast<int>(family.size()) > caps.max_opens)
          fail(ErrorKind::too_large, "generated open family exceeds cap " + std::to_string(caps.max_opens));
        return true;
      }
      return false;
    };
    push(PointSet::empty_set(n));
    for (const PointSet& u : nbhds) push(u);
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (std::size_t j = 0; j < family.size(); ++j) {
        push(family[i] | family[j]);
      }
    }
    // The union closure of minimal neighbourhoods is the family of all
    // up-sets of the generated preorder, which is intersection-closed, so
    // the axiom scan can be skipped.
    return FiniteSpace(n, std::move(family), std::move(names), false);
  }

  int point_count() const { return n_; }
  PointSet universe() const { return PointSet::full_set(n_); }
  const std::vector<PointSet>& opens() const { return opens_; }
  const std::vector<std::string>& names() const { return names_; }

  bool is_open(const PointSet& a) const {
    check_width(a);
    return open_bits_.count(a.bits()) != 0;
  }

  /// Largest open subset of A. A point is interior exactly when its minimal
  /// open neighbourhood fits inside A, which keeps this linear in the point
  /// count rather than in the family size.
  PointSet interior(const PointSet& a) const {
    check_width(a);
    PointSet acc = PointSet::empty_set(n_);
    a.for_each([&](int x) {
      if (min_nbhds_[static_cast<std::size_t>(x)].subset_of(a)) acc.add(x);
    });
    return acc;
  }

  /// Smallest closed superset of A, computed as the complement of the
  /// interior of the complement.
  PointSet closure(const PointSet& a) const { return interior(a.complement()).complement(); }

  bool is_regular_open(const PointSet& a) const {
    check_width(a);
    return is_open(a) && interior(closure(a)) == a;
  }

  /// The regular-open catalogue, sorted canonically. Contains the empty set
  /// and the universe.
  const std::vector<PointSet>& regular_opens() const { return catalogue_; }

  bool in_catalogue(const PointSet& a) const {
    check_width(a);
    return catalogue_bits_.count(a.bits()) != 0;
  }

  /// Smallest open set containing x.
  const PointSet& min_nbhd(int x) const {
    if (x < 0 || x >= n_) fail(ErrorKind::bad_index, "point out of range");
    return min_nbhds_[static_cast<std::size_t>(x)];
  }

  /// r(x): the intersection of all regular opens containing x. Finite
  /// intersections of regular opens are regular open, so r(x) is the
  /// smallest regular open containing x.
  const PointSet& min_regular_nbhd(int x) const {
    if (x < 0 || x >= n_) fail(ErrorKind::bad_index, "point out of range");
    return min_regular_[static_cast<std::size_t>(x)];
  }

  bool is_discrete() const {
    // The open-family cap keeps any discrete space at 12 points or fewer.
    return n_ <= 12 && opens_.size() == (std::size_t{1} << n_);
  }

  bool same_space(const FiniteSpace& o) const {
    return this == &o || (n_ == o.n_ && opens_ == o.opens_);
  }

 private:
  FiniteSpace(int n, std::vector<PointSet> opens, std::vector<std::string> names, bool validate)
      : n_(n), names_(std::move(names)) {
    const SizeCaps& caps = size_caps();
    if (n < 1) fail(ErrorKind::bad_index, "space needs at least one point");
    if (n > caps.max_points)
      fail(ErrorKind::too_large, "point count " + std::to_string(n) + " exceeds cap " + std::to_string(caps.max_points));
    if (!names_.empty() && static_cast<int>(names_.size()) != n)
      fail(ErrorKind::bad_index, "label count does not match point count");

    for (const PointSet& u : opens) {
      if (u.width() != n) fail(ErrorKind::bad_index, "open set over wrong universe");
    }
    std::sort(opens.begin(), opens.end(), PointSetLexLess{});
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    opens_ = std::move(opens);
    if (static_cast<int>(opens_.size()) > caps.max_opens)
      fail(ErrorKind::too_large, "open family size " + std::to_string(opens_.size()) + " exceeds cap " + std::to_string(caps.max_opens));

    for (const PointSet& u : opens_) open_bits_.insert(u.bits());
    if (validate) validate_axioms();
    build_min_nbhds();
    build_regular_catalogue();
  }

  void check_width(const PointSet& a) const {
    if (a.width() != n_) fail(ErrorKind::width_mismatch, "set over wrong universe");
  }

  void validate_axioms() const {
    if (open_bits_.count(0) == 0) fail(ErrorKind::not_a_topology, "empty set missing from open family");
    if (open_bits_.count(PointSet::full_set(n_).bits()) == 0)
      fail(ErrorKind::not_a_topology, "full universe missing from open family");
    for (std::size_t i = 0; i < opens_.size(); ++i) {
      for (std::size_t j = i + 1; j < opens_.size(); ++j) {
        const PointSet u = opens_[i] | opens_[j];
        if (open_bits_.count(u.bits()) == 0)
          fail(ErrorKind::not_a_topology,
               "union " + u.to_string() + " of " + opens_[i].to_string() + " and " + opens_[j].to_string() + " is not open");
        const PointSet v = opens_[i] & opens_[j];
        if (open_bits_.count(v.bits()) == 0)
          fail(ErrorKind::not_a_topology,
               "intersection " + v.to_string() + " of " + opens_[i].to_string() + " and " + opens_[j].to_string() + " is not open");
      }
    }
  }

  void build_min_nbhds() {
    min_nbhds_.reserve(static_cast<std::size_t>(n_));
    for (int x = 0; x < n_; ++x) {
      PointSet acc = PointSet::full_set(n_);
      for (const PointSet& u : opens_) {
        if (u.contains(x)) acc = acc & u;
      }
      min_nbhds_.push_back(acc);
    }
  }

  void build_regular_catalogue() {
    std::unordered_set<std::uint64_t> seen;
    for (const PointSet& u : opens_) {
      PointSet r = interior(closure(u));
      if (seen.insert(r.bits()).second) catalogue_.push_back(r);
    }
    std::sort(catalogue_.begin(), catalogue_.end(), PointSetLexLess{});
    for (const PointSet& r : catalogue_) catalogue_bits_.insert(r.bits());
    min_regular_.reserve(static_cast<std::size_t>(n_));
    for (int x = 0; x < n_; ++x) {
      PointSet acc = PointSet::full_set(n_);
      for (const PointSet& r : catalogue_) {
        if (r.contains(x)) acc = acc & r;
      }
      min_regular_.push_back(acc);
    }
  }

  int n_;
  std::vector<PointSet> opens_;
  std::vector<std::string> names_;
  std::unordered_set<std::uint64_t> open_bits_;
  std::vector<PointSet> catalogue_;
  std::unordered_set<std::uint64_t> catalogue_bits_;
  std::vector<PointSet> min_nbhds_;
  std::vector<PointSet> min_regular_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

inline SpacePtr make_space(int n, std::vector<PointSet> opens, std::vector<std::string> names = {}) {
  return std::make_shared<const FiniteSpace>(n, std::move(opens), std::move(names));
}

inline SpacePtr make_space_from_min_nbhds(const std::vector<PointSet>& nbhds, std::vector<std::string> names = {}) {
  return std::make_shared<const FiniteSpace>(FiniteSpace::from_min_nbhds(nbhds, std::move(names)));
}

/// Outcome of a space-level predicate together with a re-checkable witness.
struct SpaceWitness {
  std::string predicate;
  std::optional<std::pair<int, int>> point_pair;  // for separation predicates
  std::vector<PointSet> sets;                     // for set-level predicates
};

struct PredicateResult {
  bool holds = false;
  std::optional<SpaceWitness> witness;
};

/// Every pair of distinct points has disjoint open neighbourhoods. A finite
/// space is Hausdorff exactly when it is discrete: minimal neighbourhoods
/// are then forced down to singletons.
inline PredicateResult is_hausdorff(const FiniteSpace& space) {
  const int n = space.point_count();
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (space.min_nbhd(x).intersects(space.min_nbhd(y))) {
        return {false, SpaceWitness{"hausdorff", std::make_pair(x, y), {space.min_nbhd(x), space.min_nbhd(y)}}};
      }
    }
  }
  return {true, std::nullopt};
}

/// Unions of regular opens stay regular open. Pairwise closure suffices:
/// finite unions reduce to iterated pairwise unions.
inline PredicateResult is_r_space(const FiniteSpace& space) {
  const auto& cat = space.regular_opens();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    for (std::size_t j = i + 1; j < cat.size(); ++j) {
      const PointSet u = cat[i] | cat[j];
      if (space.interior(space.closure(u)) != u) {
        return {false, SpaceWitness{"r-space", std::nullopt, {cat[i], cat[j]}}};
      }
    }
  }
  return {true, std::nullopt};
}

/// The trace topology on a nonempty subset K, with the index embedding back
/// into the parent space.
struct Subspace {
  SpacePtr space;               // the subspace as a space of its own
  PointSet region;              // K inside the parent universe
  std::vector<int> to_parent;   // subspace index -> parent index

  int parent_index(int sub) const { return to_parent[static_cast<std::size_t>(sub)]; }

  /// Reindex a parent-universe set into the subspace (drops points outside K).
  PointSet trace(const PointSet& parent_set) const {
    PointSet out = PointSet::empty_set(static_cast<int>(to_parent.size()));
    for (std::size_t i = 0; i < to_parent.size(); ++i) {
      if (parent_set.contains(to_parent[i])) out.add(static_cast<int>(i));
    }
    return out;
  }

  /// Embed a subspace set back into the parent universe.
  PointSet lift(const PointSet& sub_set) const {
    PointSet out = PointSet::empty_set(region.width());
    sub_set.for_each([&](int i) { out.add(to_parent[static_cast<std::size_t>(i)]); });
    return out;
  }
};

inline Subspace subspace(const SpacePtr& space, const PointSet& k) {
  if (k.width() != space->point_count()) fail(ErrorKind::width_mismatch, "subspace region over wrong universe");
  if (k.empty()) fail(ErrorKind::empty_subspace, "subspace region is empty");
  Subspace sub;
  sub.region = k;
  k.for_each([&](int i) { sub.to_parent.push_back(i); });
  const int m = static_cast<int>(sub.to_parent.size());
  std::vector<PointSet> traces;
  traces.reserve(space->opens().size());
  for (const PointSet& u : space->opens()) {
    PointSet t = PointSet::empty_set(m);
    for (int i = 0; i < m; ++i) {
      if (u.contains(sub.to_parent[static_cast<std::size_t>(i)])) t.add(i);
    }
    traces.push_back(t);
  }
  std::vector<std::string> names;
  if (!space->names().empty()) {
    for (int p : sub.to_parent) names.push_back(space->names()[static_cast<std::size_t>(p)]);
  }
  sub.space = make_space(m, std::move(traces), std::move(names));
  return sub;
}

}  // namespace regent
