#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "regent/cover.hpp"
#include "regent/error.hpp"
#include "regent/finite_space.hpp"
#include "regent/min_cover.hpp"
#include "regent/point_set.hpp"
#include "regent/r_map.hpp"

namespace regent {

/// Product of two finite spaces. Points are flattened row-major
/// (left-major): flat(x, y) = x * |T| + y. The product topology is the
/// Alexandrov product: generated by the boxes of minimal neighbourhoods,
/// equivalently all unions of open boxes.
struct ProductSpace {
  SpacePtr left;
  SpacePtr right;
  SpacePtr product;

  int flat(int x, int y) const { return x * right->point_count() + y; }
  std::pair<int, int> unflat(int p) const {
    const int nt = right->point_count();
    return {p / nt, p % nt};
  }

  PointSet box(const PointSet& a, const PointSet& b) const {
    if (a.width() != left->point_count() || b.width() != right->point_count())
      fail(ErrorKind::width_mismatch, "box factors over wrong universes");
    PointSet out = PointSet::empty_set(product->point_count());
    a.for_each([&](int x) { b.for_each([&](int y) { out.add(flat(x, y)); }); });
    return out;
  }

  PointSet project_left(const PointSet& k) const {
    PointSet out = PointSet::empty_set(left->point_count());
    k.for_each([&](int p) { out.add(unflat(p).first); });
    return out;
  }

  PointSet project_right(const PointSet& k) const {
    PointSet out = PointSet::empty_set(right->point_count());
    k.for_each([&](int p) { out.add(unflat(p).second); });
    return out;
  }
};

inline ProductSpace product_space(SpacePtr s, SpacePtr t) {
  const long long points = static_cast<long long>(s->point_count()) * t->point_count();
  if (points > size_caps().max_points)
    fail(ErrorKind::too_large, "product has " + std::to_string(points) + " points, cap is " + std::to_string(size_caps().max_points));
  ProductSpace prod;
  prod.left = std::move(s);
  prod.right = std::move(t);
  const int nt = prod.right->point_count();
  const int n = prod.left->point_count() * nt;
  std::vector<PointSet> nbhds;
  nbhds.reserve(static_cast<std::size_t>(n));
  for (int x = 0; x < prod.left->point_count(); ++x) {
    for (int y = 0; y < nt; ++y) {
      PointSet box = PointSet::empty_set(n);
      prod.left->min_nbhd(x).for_each([&](int a) {
        prod.right->min_nbhd(y).for_each([&](int b) { box.add(a * nt + b); });
      });
      nbhds.push_back(box);
    }
  }
  prod.product = make_space_from_min_nbhds(nbhds);
  return prod;
}

/// (f x h)(x, y) = (f(x), h(y)). The R-map check is re-run on the product;
/// a failed verdict is surfaced through the returned status rather than
/// thrown, so callers can report it.
inline RMap product_map(const ProductSpace& prod, const RMap& f, const RMap& h) {
  if (!f.space->same_space(*prod.left) || !h.space->same_space(*prod.right))
    fail(ErrorKind::space_mismatch, "factor maps do not match product factors");
  const int nt = prod.right->point_count();
  const int n = prod.product->point_count();
  std::vector<int> table(static_cast<std::size_t>(n));
  for (int x = 0; x < prod.left->point_count(); ++x) {
    for (int y = 0; y < nt; ++y) {
      table[static_cast<std::size_t>(prod.flat(x, y))] = prod.flat(f(x), h(y));
    }
  }
  return try_r_map(prod.product, std::move(table));
}

/// The box cover { A x B : A in U, B in V }.
inline Cover product_cover(const ProductSpace& prod, const Cover& u, const Cover& v) {
  if (!u.space()->same_space(*prod.left) || !v.space()->same_space(*prod.right))
    fail(ErrorKind::space_mismatch, "factor covers do not match product factors");
  std::vector<PointSet> members;
  members.reserve(u.canonical().size() * v.canonical().size());
  for (const PointSet& a : u.canonical()) {
    for (const PointSet& b : v.canonical()) members.push_back(prod.box(a, b));
  }
  return make_cover(prod.product, std::move(members));
}

/// Coordinate images of a subset of the product.
inline std::pair<PointSet, PointSet> projections(const ProductSpace& prod, const PointSet& k) {
  if (k.width() != prod.product->point_count()) fail(ErrorKind::width_mismatch, "set over wrong product universe");
  return {prod.project_left(k), prod.project_right(k)};
}

/// Given a regular open cover W of the product, construct regular open
/// covers U of the left factor and V of the right factor with W refined by
/// U x V. Follows the two-stage extraction: a per-point fibre subcover on
/// the right, an intersection of the chosen left neighbourhoods, a subcover
/// on the left, then intersection-of-witnesses neighbourhoods back on the
/// right.
inline std::pair<Cover, Cover> common_refinement_boxes(const ProductSpace& prod, const Cover& w) {
  if (!w.space()->same_space(*prod.product)) fail(ErrorKind::space_mismatch, "cover over wrong product space");
  if (!w.regular()) fail(ErrorKind::not_regular_cover, "common refinement requires a regular open cover");
  const FiniteSpace& s = *prod.left;
  const FiniteSpace& t = *prod.right;
  const int ns = s.point_count();
  const int nt = t.point_count();

  // Per-pair regular-open boxes: for each (x, y), take the first member
  // containing the point and the largest catalogue box through (x, y)
  // inside it. At least the box of int(cl(.))-saturated minimal
  // neighbourhoods qualifies: the minimal open box sits inside the member,
  // and int(cl(.)) keeps that containment since the member equals its own
  // int(cl(.)).
  std::vector<std::vector<PointSet>> u_pair(static_cast<std::size_t>(ns),
                                            std::vector<PointSet>(static_cast<std::size_t>(nt)));
  std::vector<std::vector<PointSet>> v_pair = u_pair;
  for (int x = 0; x < ns; ++x) {
    for (int y = 0; y < nt; ++y) {
      const PointSet* member = nullptr;
      for (const PointSet& a : w.canonical()) {
        if (a.contains(prod.flat(x, y))) {
          member = &a;
          break;
        }
      }
      bool found = false;
      int best_size = -1;
      for (const PointSet& p : s.regular_opens()) {
        if (!p.contains(x)) continue;
        for (const PointSet& q : t.regular_opens()) {
          if (!q.contains(y)) continue;
          if (!prod.box(p, q).subset_of(*member)) continue;
          if (p.count() + q.count() > best_size) {
            best_size = p.count() + q.count();
            u_pair[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = p;
            v_pair[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = q;
            found = true;
          }
        }
      }
      if (!found)
        fail(ErrorKind::not_regular_cover,
             "no regular box through (" + std::to_string(x) + "," + std::to_string(y) + ") fits inside a member");
    }
  }

  // Stage 1: per left point, a finite subcover of the right factor by the
  // fibre neighbourhoods; the matching left piece is the intersection of
  // the chosen left factors.
  std::vector<std::vector<int>> chosen_ys(static_cast<std::size_t>(ns));
  std::vector<PointSet> u_of_x(static_cast<std::size_t>(ns), PointSet());
  for (int x = 0; x < ns; ++x) {
    chosen_ys[static_cast<std::size_t>(x)] =
        min_subcover(v_pair[static_cast<std::size_t>(x)], PointSet::full_set(nt)).witness;
    PointSet acc = PointSet::full_set(ns);
    for (int y : chosen_ys[static_cast<std::size_t>(x)]) {
      acc = acc & u_pair[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    }
    u_of_x[static_cast<std::size_t>(x)] = acc;
  }

  // Stage 2: finite subcover of the left factor by { U(x) }.
  MinCoverResult left_sub = min_subcover(u_of_x, PointSet::full_set(ns));

  // Stage 3: collection of the chosen fibre neighbourhoods; for each right
  // point, intersect the collection members containing it. The collection
  // covers the right factor, so each intersection is over a nonempty list.
  std::vector<PointSet> collection;
  for (int x : left_sub.witness) {
    for (int y : chosen_ys[static_cast<std::size_t>(x)]) {
      collection.push_back(v_pair[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
    }
  }
  std::vector<PointSet> v_of_y(static_cast<std::size_t>(nt), PointSet());
  for (int y = 0; y < nt; ++y) {
    PointSet acc = PointSet::full_set(nt);
    for (const PointSet& c : collection) {
      if (c.contains(y)) acc = acc & c;
    }
    v_of_y[static_cast<std::size_t>(y)] = acc;
  }

  // Stage 4: finite subcover of the right factor by { V(y) }.
  MinCoverResult right_sub = min_subcover(v_of_y, PointSet::full_set(nt));

  std::vector<PointSet> u_members;
  for (int x : left_sub.witness) u_members.push_back(u_of_x[static_cast<std::size_t>(x)]);
  std::vector<PointSet> v_members;
  for (int y : right_sub.witness) v_members.push_back(v_of_y[static_cast<std::size_t>(y)]);
  Cover u_cover = make_cover(prod.left, std::move(u_members));
  Cover v_cover = make_cover(prod.right, std::move(v_members));
  if (!refines(w, product_cover(prod, u_cover, v_cover)))
    fail(ErrorKind::not_regular_cover, "internal: constructed box cover does not refine the input");
  return {std::move(u_cover), std::move(v_cover)};
}

}  // namespace regent
