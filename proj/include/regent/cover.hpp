#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "regent/error.hpp"
#include "regent/finite_space.hpp"
#include "regent/point_set.hpp"
#include "regent/r_map.hpp"

namespace regent {

namespace detail {

/// Canonical form of a member list: drop empty sets, duplicates and members
/// contained in another member; sort the rest. Minimal-subcover counts are
/// insensitive to this reduction (a dropped member can always be replaced by
/// a member dominating it).
inline std::vector<PointSet> canonicalize_members(std::vector<PointSet> members) {
  std::sort(members.begin(), members.end(), PointSetLexLess{});
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<PointSet> out;
  out.reserve(members.size());
  for (const PointSet& a : members) {
    if (a.empty()) continue;
    bool dominated = false;
    for (const PointSet& b : members) {
      if (a != b && a.subset_of(b)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(a);
  }
  return out;
}

}  // namespace detail

/// A cover of a finite space: a family of point sets whose union is the
/// whole universe. Keeps the member list as given (`raw`) next to the
/// canonical antichain form used by counting; `regular` records whether all
/// raw members are regular open.
class Cover {
 public:
  Cover() = default;

  const SpacePtr& space() const { return space_; }
  const std::vector<PointSet>& raw() const { return raw_; }
  const std::vector<PointSet>& canonical() const { return canonical_; }
  bool regular() const { return regular_; }
  bool members_open() const { return members_open_; }

  /// Stable identity of the canonical form, usable as a hash key.
  std::vector<std::uint64_t> key() const {
    std::vector<std::uint64_t> k;
    k.reserve(canonical_.size());
    for (const PointSet& a : canonical_) k.push_back(a.bits());
    return k;
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < canonical_.size(); ++i) {
      if (i) out += ",";
      out += canonical_[i].to_string();
    }
    return out + "}";
  }

  friend Cover make_cover(SpacePtr space, std::vector<PointSet> sets);
  friend Cover make_raw_cover(SpacePtr space, std::vector<PointSet> sets);

 private:
  Cover(SpacePtr space, std::vector<PointSet> raw, bool members_open)
      : space_(std::move(space)), raw_(std::move(raw)), members_open_(members_open) {
    PointSet u = PointSet::empty_set(space_->point_count());
    for (const PointSet& a : raw_) {
      if (a.width() != space_->point_count()) fail(ErrorKind::width_mismatch, "cover member over wrong universe");
      u = u | a;
    }
    if (!u.is_full()) fail(ErrorKind::not_a_cover, "members leave " + u.complement().to_string() + " uncovered");
    canonical_ = detail::canonicalize_members(raw_);
    regular_ = true;
    for (const PointSet& a : raw_) {
      if (!space_->is_regular_open(a)) {
        regular_ = false;
        break;
      }
    }
  }

  SpacePtr space_;
  std::vector<PointSet> raw_;
  std::vector<PointSet> canonical_;
  bool regular_ = false;
  bool members_open_ = true;
};

/// Validated cover with open members.
inline Cover make_cover(SpacePtr space, std::vector<PointSet> sets) {
  for (const PointSet& a : sets) {
    if (a.width() == space->point_count() && !space->is_open(a))
      fail(ErrorKind::not_open_member, "cover member " + a.to_string() + " is not open");
  }
  return Cover(std::move(space), std::move(sets), true);
}

/// Cover by arbitrary point sets (no openness requirement); used as input
/// to the raw minimal-subcover machinery.
inline Cover make_raw_cover(SpacePtr space, std::vector<PointSet> sets) {
  return Cover(std::move(space), std::move(sets), false);
}

inline void require_same_space(const Cover& u, const Cover& v) {
  if (!u.space()->same_space(*v.space())) fail(ErrorKind::space_mismatch, "covers over different spaces");
}

/// Join: all pairwise intersections. Computed on canonical members (the
/// result's canonical form is unchanged by that choice).
inline Cover join(const Cover& u, const Cover& v) {
  require_same_space(u, v);
  std::vector<PointSet> members;
  members.reserve(u.canonical().size() * v.canonical().size());
  for (const PointSet& a : u.canonical()) {
    for (const PointSet& b : v.canonical()) members.push_back(a & b);
  }
  if (u.members_open() && v.members_open()) return make_cover(u.space(), std::move(members));
  return make_raw_cover(u.space(), std::move(members));
}

/// True when V refines U (written U < V): every member of V lies inside
/// some member of U. Canonical forms decide this; domination-dropped
/// members never change the verdict.
inline bool refines(const Cover& u, const Cover& v) {
  require_same_space(u, v);
  for (const PointSet& b : v.canonical()) {
    bool inside = false;
    for (const PointSet& a : u.canonical()) {
      if (b.subset_of(a)) {
        inside = true;
        break;
      }
    }
    if (!inside) return false;
  }
  return true;
}

/// Member-wise preimage under any total map; no verification demanded.
/// The preimage of a cover under a total map is a cover.
inline Cover preimage_cover(const RMap& f, const Cover& u) {
  if (!f.space->same_space(*u.space())) fail(ErrorKind::space_mismatch, "map and cover over different spaces");
  std::vector<PointSet> members;
  members.reserve(u.canonical().size());
  for (const PointSet& a : u.canonical()) members.push_back(f.preimage(a));
  if (u.members_open()) return make_cover(u.space(), std::move(members));
  return make_raw_cover(u.space(), std::move(members));
}

/// Pullback of a regular cover along a verified R-map.
inline Cover pullback(const RMap& f, const Cover& u) {
  if (!f.verified) fail(ErrorKind::not_r_map, "pullback requires a verified R-map");
  if (!u.regular()) fail(ErrorKind::not_regular_cover, "pullback requires a regular open cover");
  return preimage_cover(f, u);
}

/// Trace of a cover on a nonempty K, reindexed into the subspace. Traces of
/// opens are open there; whether each trace stays regular open is reported,
/// not required.
struct RestrictedCover {
  Subspace sub;
  Cover cover;
  std::vector<bool> trace_regular;  // per raw member of the original cover
};

inline RestrictedCover restrict_cover(const Cover& u, const PointSet& k) {
  Subspace sub = subspace(u.space(), k);
  std::vector<PointSet> traces;
  std::vector<bool> regular_flags;
  traces.reserve(u.raw().size());
  for (const PointSet& a : u.raw()) {
    PointSet t = sub.trace(a);
    regular_flags.push_back(sub.space->is_regular_open(t));
    traces.push_back(t);
  }
  Cover c = u.members_open() ? make_cover(sub.space, std::move(traces)) : make_raw_cover(sub.space, std::move(traces));
  return RestrictedCover{std::move(sub), std::move(c), std::move(regular_flags)};
}

/// The m-fold join of preimages U v f^-1(U) v ... v f^-(m-1)(U), computed by
/// the recurrence C_1 = U, C_{k+1} = U v f^-1(C_k).
inline Cover iterated_join(const RMap& f, const Cover& u, int m) {
  if (m < 1) fail(ErrorKind::bad_index, "iterated join needs m >= 1");
  if (!f.verified) fail(ErrorKind::not_r_map, "iterated join requires a verified R-map");
  if (!u.regular()) fail(ErrorKind::not_regular_cover, "iterated join requires a regular open cover");
  Cover c = u;
  for (int k = 1; k < m; ++k) c = join(u, pullback(f, c));
  return c;
}

/// Same recurrence with no R-map or regularity requirement; the purely
/// combinatorial engine behind restriction-side computations.
inline Cover iterated_join_raw(const RMap& f, const Cover& u, int m) {
  if (m < 1) fail(ErrorKind::bad_index, "iterated join needs m >= 1");
  Cover c = u;
  for (int k = 1; k < m; ++k) c = join(u, preimage_cover(f, c));
  return c;
}

/// The cover by minimal regular neighbourhoods { r(x) : x in X }. Every
/// regular open cover of the space is refined by it, making it the single
/// cover realising suprema over regular covers. The raw member list keeps
/// each r(x) even when another member dominates it.
inline Cover finest_regular_cover(const SpacePtr& space) {
  std::vector<PointSet> members;
  for (int x = 0; x < space->point_count(); ++x) {
    const PointSet& r = space->min_regular_nbhd(x);
    if (std::find(members.begin(), members.end(), r) == members.end()) members.push_back(r);
  }
  std::sort(members.begin(), members.end(), PointSetLexLess{});
  return make_cover(SpacePtr(space), std::move(members));
}

}  // namespace regent
