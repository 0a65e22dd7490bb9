#pragma once

#include <utility>
#include <vector>

#include "regent/cover.hpp"
#include "regent/finite_space.hpp"
#include "regent/min_cover.hpp"
#include "regent/point_set.hpp"

namespace regent {

/// An explicit finite subfamily of regular opens covering a target set.
/// Finite spaces always admit one; the value of the certificate is that it
/// can be re-checked independently.
struct NearlyCompactCertificate {
  PointSet target;
  std::vector<PointSet> subfamily;

  bool verify() const {
    PointSet u = PointSet::empty_set(target.width());
    for (const PointSet& a : subfamily) u = u | a;
    return target.subset_of(u);
  }
};

/// Certificate for Y against the finest regular cover { r(x) }: a minimal
/// subfamily covering Y, empty when Y is.
inline NearlyCompactCertificate nearly_compact_certificate(const SpacePtr& space, const PointSet& y) {
  NearlyCompactCertificate cert;
  cert.target = y;
  if (y.empty()) return cert;
  Cover finest = finest_regular_cover(space);
  MinCoverResult r = min_subcover(finest.raw(), y);
  for (int i : r.witness) cert.subfamily.push_back(finest.raw()[static_cast<std::size_t>(i)]);
  return cert;
}

/// Certificate for Y from an arbitrary open cover of the space: a finite
/// subfamily whose int(cl(.)) enlargements cover Y. This is the relative
/// near-compactness condition itself, made constructive.
inline NearlyCompactCertificate nearly_compact_certificate_from(const SpacePtr& space, const Cover& opens,
                                                                const PointSet& y) {
  NearlyCompactCertificate cert;
  cert.target = y;
  if (y.empty()) return cert;
  std::vector<PointSet> enlarged;
  enlarged.reserve(opens.raw().size());
  for (const PointSet& u : opens.raw()) enlarged.push_back(space->interior(space->closure(u)));
  MinCoverResult r = min_subcover(enlarged, y);
  for (int i : r.witness) cert.subfamily.push_back(enlarged[static_cast<std::size_t>(i)]);
  return cert;
}

}  // namespace regent
