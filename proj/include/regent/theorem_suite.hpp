#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "regent/cover.hpp"
#include "regent/entropy.hpp"
#include "regent/error.hpp"
#include "regent/finite_space.hpp"
#include "regent/generators.hpp"
#include "regent/min_cover.hpp"
#include "regent/nearly_compact.hpp"
#include "regent/point_set.hpp"
#include "regent/product.hpp"
#include "regent/r_map.hpp"
#include "regent/rng.hpp"

namespace regent {

/// Tolerance for the few comparisons that must happen in the log domain;
/// everything countable is compared as exact integers instead.
inline constexpr double kLogSlack = 1e-9;

struct SuiteConfig {
  std::uint64_t seed = 1;
  int instances = 0;  // 0 = per-check default (200, or 100 for product checks)
  std::map<std::string, int> instance_overrides;
  std::vector<std::string> theorems;  // empty = all registered checks
  int max_points = 6;
  int product_max_points = 4;
  int m_depth = 5;
  int threads = 0;  // worker threads for instance verification; 0 = all cores
};

struct SuiteFailure {
  std::uint64_t seed = 0;
  std::string instance;
  std::string detail;
};

struct TheoremOutcome {
  std::string id;
  int tried = 0;
  int applicable = 0;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  std::map<std::string, int> counters;  // named evidence tallies
  std::vector<SuiteFailure> failures;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<TheoremOutcome> results;
  bool all_passed = true;
};

namespace suite_detail {

/// Per-instance harness handed to each check body. A body either runs its
/// assertions (reporting the first violation) or declares the instance
/// outside the theorem's hypotheses.
class Trial {
 public:
  Trial(std::uint64_t seed, std::string instance) : seed_(seed), instance_(std::move(instance)) {}

  void skip(const std::string& why) {
    skipped_ = true;
    skip_reason_ = why;
  }

  void require(bool condition, const std::string& detail) {
    if (!condition && !violation_) violation_ = detail;
  }

  void count(const std::string& key) { ++counts_[key]; }

  void set_instance(std::string instance) { instance_ = std::move(instance); }

  bool skipped() const { return skipped_; }
  const std::optional<std::string>& violation() const { return violation_; }
  const std::map<std::string, int>& counts() const { return counts_; }
  std::uint64_t seed() const { return seed_; }
  const std::string& instance() const { return instance_; }

 private:
  std::uint64_t seed_;
  std::string instance_;
  bool skipped_ = false;
  std::string skip_reason_;
  std::optional<std::string> violation_;
  std::map<std::string, int> counts_;
};

struct DrawnSystem {
  InstanceSpec spec;
  SpacePtr space;
  std::optional<RMap> map;
};

/// Deterministic instance mix: mostly random preorder topologies, with
/// discrete spaces and the digital-line fixture folded in so that both the
/// Hausdorff-gated and the deliberately non-Hausdorff branches see traffic.
inline DrawnSystem draw_system(Rng& rng, std::uint64_t seed, int index, const SuiteConfig& cfg, MapPolicy policy,
                               bool discrete_only = false) {
  DrawnSystem sys;
  sys.spec.seed = seed;
  sys.spec.policy = policy;
  if (discrete_only) {
    sys.spec.kind = SpaceKind::discrete;
    sys.spec.points = 2 + rng.below_int(std::min(3, cfg.max_points - 1));
  } else if (index % 5 == 4) {
    sys.spec.kind = SpaceKind::discrete;
    sys.spec.points = 2 + rng.below_int(std::min(3, cfg.max_points - 1));
  } else if (index % 7 == 6) {
    sys.spec.kind = SpaceKind::khalimsky;
    sys.spec.points = std::min(5, cfg.max_points);
  } else {
    sys.spec.kind = SpaceKind::random_preorder;
    sys.spec.points = 2 + rng.below_int(std::max(1, cfg.max_points - 1));
  }
  sys.space = gen_space(sys.spec);
  RMapDraw draw = gen_r_map(rng, sys.space, policy == MapPolicy::bijective);
  if (draw.map) sys.map = std::move(draw.map);
  return sys;
}

using CheckBody = std::function<void(Trial&, Rng&, const SuiteConfig&, int index)>;

struct CheckDef {
  std::string id;
  int default_instances;
  CheckBody body;
};

inline std::string ints_to_string(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

// --- individual checks ------------------------------------------------------

/// Counting laws for a cover against an invariant target: positivity,
/// refinement monotonicity, join submultiplicativity, and the preimage
/// bound with its equality case when the target maps onto itself.
inline void check_count_laws(Trial& t, Rng& rng, const SuiteConfig& cfg, int index, bool whole_space) {
  DrawnSystem sys = draw_system(rng, t.seed(), index, cfg, index % 2 ? MapPolicy::bijective : MapPolicy::any);
  t.set_instance(sys.spec.to_string());
  if (!sys.map) {
    t.skip("no verified map found");
    return;
  }
  const RMap& f = *sys.map;
  const PointSet k = whole_space ? PointSet::full_set(sys.space->point_count()) : random_invariant_set(rng, f);
  Cover u = random_regular_cover(rng, sys.space);
  Cover v = random_regular_cover(rng, sys.space);

  const int nu = min_subcover(u, k).count;
  const int nv = min_subcover(v, k).count;
  t.require(nu >= 1, "count must be a positive integer");

  Cover w = join(u, v);
  const int nw = min_subcover(w, k).count;
  t.require(refines(u, w), "a join must refine both operands");
  t.require(nu <= nw, "refinement must not decrease the count: " + std::to_string(nu) + " > " + std::to_string(nw));
  if (refines(u, v)) {
    t.count("refining-pairs");
    t.require(nu <= nv, "refinement monotonicity failed on drawn pair");
  }
  t.require(nw <= nu * nv,
            "join bound violated: " + std::to_string(nw) + " > " + std::to_string(nu) + "*" + std::to_string(nv));

  Cover pre = pullback(f, u);
  const int np = min_subcover(pre, k).count;
  t.require(np <= nu, "preimage count exceeds original: " + std::to_string(np) + " > " + std::to_string(nu));
  if (f.image(k) == k) {
    t.count("equality-cases");
    t.require(np == nu, "preimage equality failed although the target maps onto itself: " + std::to_string(np) +
                            " != " + std::to_string(nu));
  }
}

/// Entropy counts are monotone across nested invariant sets, per depth.
inline void check_monotone_nested(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  DrawnSystem sys = draw_system(rng, t.seed(), index, cfg, index % 2 ? MapPolicy::bijective : MapPolicy::any);
  t.set_instance(sys.spec.to_string());
  if (!sys.map) {
    t.skip("no verified map found");
    return;
  }
  const RMap& f = *sys.map;
  std::vector<PointSet> family = invariant_sets(f);
  const PointSet k2 = family[rng.below(family.size())];
  std::vector<PointSet> inside;
  for (const PointSet& k : family) {
    if (k.subset_of(k2)) inside.push_back(k);
  }
  const PointSet k1 = inside[rng.below(inside.size())];
  if (k1 != k2) t.count("proper-nesting");

  Cover u = random_regular_cover(rng, sys.space);
  std::vector<std::int64_t> n1 = n_sequence(f, u, k1, cfg.m_depth);
  std::vector<std::int64_t> n2 = n_sequence(f, u, k2, cfg.m_depth);
  for (int m = 0; m < cfg.m_depth; ++m) {
    t.require(n1[static_cast<std::size_t>(m)] <= n2[static_cast<std::size_t>(m)],
              "nested count monotonicity failed at depth " + std::to_string(m + 1) + ": " +
                  ints_to_string(n1) + " vs " + ints_to_string(n2));
  }
  EntropyReport r1 = entropy_on_K(f, k1);
  EntropyReport r2 = entropy_on_K(f, k2);
  t.require(r1.value <= r2.value + kLogSlack, "entropy monotonicity failed");
  t.require(r1.exact && r2.exact, "finite instances must certify exactly");
}

/// Forward and backward iterated joins count identically for bijections
/// whose restriction and inverse restriction both verify; the two full
/// entropies coincide (at exactly zero here).
inline void check_inverse_entropy(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  DrawnSystem sys = draw_system(rng, t.seed(), index, cfg, MapPolicy::bijective);
  t.set_instance(sys.spec.to_string());
  if (!sys.map) {
    t.skip("no verified bijective map found");
    return;
  }
  const RMap& f = *sys.map;
  RMap finv = try_inverse_map(f);
  if (!finv.verified) {
    t.skip("inverse fails the R-map check: witness " + finv.failing_regular->to_string());
    return;
  }
  const PointSet k = random_invariant_set(rng, f);
  RestrictedMap down = restrict_map(f, k);
  RestrictedMap down_inv = restrict_map(finv, k);
  if (!down.map.verified || !down_inv.map.verified) {
    t.skip("restriction to " + k.to_string() + " fails the R-map check");
    return;
  }
  t.require(f.image(k) == k, "bijective map must carry the invariant set onto itself");

  Cover u = random_regular_cover(rng, sys.space);
  // Forward joins arise as preimage joins of the inverse map.
  std::vector<std::int64_t> backward = n_sequence_raw(f, u, k, cfg.m_depth);
  std::vector<std::int64_t> forward = n_sequence_raw(finv, u, k, cfg.m_depth);
  for (int m = 0; m < cfg.m_depth; ++m) {
    t.require(backward[static_cast<std::size_t>(m)] == forward[static_cast<std::size_t>(m)],
              "forward/backward counts differ at depth " + std::to_string(m + 1) + ": " + ints_to_string(forward) +
                  " vs " + ints_to_string(backward));
  }

  EntropyReport ef = entropy_N(f, invariant_sets(f));
  EntropyReport eb = entropy_N(finv, invariant_sets(finv));
  t.require(ef.exact && ef.value == 0.0, "entropy of the map must certify exactly zero");
  t.require(eb.exact && eb.value == 0.0, "entropy of the inverse must certify exactly zero");
}

/// The sequence N(C_m) is submultiplicative, hence log-subadditive; this is
/// what makes the per-cover limit exist.
inline void check_subadditivity(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  DrawnSystem sys = draw_system(rng, t.seed(), index, cfg, index % 2 ? MapPolicy::bijective : MapPolicy::any);
  t.set_instance(sys.spec.to_string());
  if (!sys.map) {
    t.skip("no verified map found");
    return;
  }
  const RMap& f = *sys.map;
  const PointSet k = random_invariant_set(rng, f);
  Cover u = random_regular_cover(rng, sys.space);
  const int depth = 8;
  std::vector<std::int64_t> ns = n_sequence(f, u, k, depth);
  for (int m = 1; m <= depth; ++m) {
    for (int j = 1; m + j <= depth; ++j) {
      t.require(ns[static_cast<std::size_t>(m + j - 1)] <= ns[static_cast<std::size_t>(m - 1)] * ns[static_cast<std::size_t>(j - 1)],
                "submultiplicativity failed at " + std::to_string(m) + "+" + std::to_string(j) + ": " + ints_to_string(ns));
    }
    t.require(m == 1 || ns[static_cast<std::size_t>(m - 1)] >= ns[static_cast<std::size_t>(m - 2)],
              "refining joins must not decrease counts: " + ints_to_string(ns));
  }
}

/// Restriction identity: counting the trace cover on the subspace equals
/// counting against the subset upstairs, depth by depth. Purely
/// combinatorial, so trace regularity is reported but not required.
inline void check_restriction_counts(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  DrawnSystem sys = draw_system(rng, t.seed(), index, cfg, index % 2 ? MapPolicy::bijective : MapPolicy::any);
  t.set_instance(sys.spec.to_string());
  if (!sys.map) {
    t.skip("no verified map found");
    return;
  }
  const RMap& f = *sys.map;
  const PointSet k = random_invariant_set(rng, f);
  Cover u = random_regular_cover(rng, sys.space);
  RestrictedMap rm = restrict_map(f, k);
  RestrictedCover rc = restrict_cover(u, k);
  if (!rm.map.verified) t.count("restricted-map-unverified");
  for (bool flag : rc.trace_regular) {
    if (!flag) {
      t.count("irregular-traces");
      break;
    }
  }
  const PointSet sub_full = PointSet::full_set(rm.sub.space->point_count());
  std::vector<std::int64_t> below = n_sequence_raw(rm.map, rc.cover, sub_full, cfg.m_depth);
  std::vector<std::int64_t> above = n_sequence_raw(f, u, k, cfg.m_depth);
  for (int m = 0; m < cfg.m_depth; ++m) {
    t.require(below[static_cast<std::size_t>(m)] == above[static_cast<std::size_t>(m)],
              "restriction counts differ at depth " + std::to_string(m + 1) + ": subspace " + ints_to_string(below) +
                  " vs ambient " + ints_to_string(above));
  }
}

/// The two entropy notions coincide: the supremum over invariant sets is
/// attained at the whole space and matches the whole-space computation,
/// certificates included.
inline void check_coincidence(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  DrawnSystem sys = draw_system(rng, t.seed(), index, cfg, index % 2 ? MapPolicy::bijective : MapPolicy::any);
  t.set_instance(sys.spec.to_string());
  if (!sys.map) {
    t.skip("no verified map found");
    return;
  }
  const RMap& f = *sys.map;
  EntropyReport whole = entropy_n(f);
  EntropyReport family = entropy_N(f, invariant_sets(f));
  t.require(whole.value == family.value, "entropy notions disagree");
  t.require(whole.exact && family.exact, "both notions must certify exactly");
  t.require(whole.cycle.has_value() && family.cycle.has_value(), "finite certificates must be cycles");
  t.require(whole.cycle->preperiod == family.cycle->preperiod && whole.cycle->period == family.cycle->period,
            "certificates disagree");
  t.require(whole.a_seq == family.a_seq, "count sequences disagree");
}

/// Separation lemmas on Hausdorff R-spaces: a point off a set separates
/// from it by disjoint regular opens, embeds in the complement through a
/// regular open, and the set itself is regular closed. Only discrete
/// spaces qualify among finite ones; everything else is skipped.
inline void check_hausdorff_separation(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  DrawnSystem sys = draw_system(rng, t.seed(), index, cfg, MapPolicy::any);
  t.set_instance(sys.spec.to_string());
  if (!is_hausdorff(*sys.space).holds || !is_r_space(*sys.space).holds) {
    t.skip("space is not Hausdorff + R (finite case: not discrete)");
    return;
  }
  const int n = sys.space->point_count();
  PointSet a = PointSet::empty_set(n);
  for (int i = 0; i < n; ++i) {
    if (rng.chance(1, 2)) a.add(i);
  }
  if (a.empty()) a.add(rng.below_int(n));
  if (a.is_full()) a.remove(rng.below_int(n));
  const PointSet outside = a.complement();
  const int p = outside.indices()[rng.below(static_cast<std::uint64_t>(outside.count()))];

  const auto& cat = sys.space->regular_opens();
  bool separated = false;
  for (const PointSet& g : cat) {
    if (!g.contains(p)) continue;
    for (const PointSet& h : cat) {
      if (a.subset_of(h) && !g.intersects(h)) {
        separated = true;
        break;
      }
    }
    if (separated) break;
  }
  t.require(separated, "no disjoint regular opens separate point " + std::to_string(p) + " from " + a.to_string());

  bool embedded = false;
  for (const PointSet& g : cat) {
    if (g.contains(p) && g.subset_of(a.complement())) {
      embedded = true;
      break;
    }
  }
  t.require(embedded, "no regular open fits between the point and the complement");

  t.require(sys.space->closure(sys.space->interior(a)) == a, "set is not regular closed: " + a.to_string());
}

/// On Hausdorff R-spaces the entropy of a restriction matches both the
/// relative entropy on the set and the full entropy.
inline void check_restriction_entropy(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  DrawnSystem sys = draw_system(rng, t.seed(), index, cfg, MapPolicy::any);
  t.set_instance(sys.spec.to_string());
  if (!is_hausdorff(*sys.space).holds || !is_r_space(*sys.space).holds) {
    t.skip("space is not Hausdorff + R (finite case: not discrete)");
    return;
  }
  if (!sys.map) {
    t.skip("no verified map found");
    return;
  }
  const RMap& f = *sys.map;
  const PointSet k = random_invariant_set(rng, f);
  RestrictedMap rm = restrict_map(f, k);
  if (!rm.map.verified) {
    t.skip("restricted map fails the R-map check");
    return;
  }
  EntropyReport on_k = entropy_on_K(f, k);
  EntropyReport sub = entropy_n(rm.map);
  EntropyReport full = entropy_N(f, invariant_sets(f));
  t.require(on_k.exact && sub.exact && full.exact, "all three computations must certify exactly");
  t.require(on_k.value == sub.value, "relative entropy differs from restricted entropy");
  t.require(full.value == sub.value, "full entropy differs from restricted entropy");
  // On discrete spaces the two sides are the same computation in different
  // coordinates: same count sequence, same stabilisation point.
  t.require(on_k.a_seq == sub.a_seq, "count sequences differ between the relative and restricted computations");
  t.require(on_k.cycle && sub.cycle && on_k.cycle->preperiod == sub.cycle->preperiod &&
                on_k.cycle->period == sub.cycle->period,
            "stabilisation certificates differ between the relative and restricted computations");
}

/// Images of arbitrary sets stay nearly compact relative to the space:
/// every open cover certifies a finite enlarged subfamily over the image.
inline void check_image_nearly_compact(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  DrawnSystem sys = draw_system(rng, t.seed(), index, cfg, MapPolicy::any);
  t.set_instance(sys.spec.to_string());
  if (!sys.map) {
    t.skip("no verified map found");
    return;
  }
  const RMap& f = *sys.map;
  const int n = sys.space->point_count();
  PointSet a = PointSet::empty_set(n);
  for (int i = 0; i < n; ++i) {
    if (rng.chance(1, 2)) a.add(i);
  }
  if (a.empty()) a.add(rng.below_int(n));
  const PointSet image = f.image(a);
  Cover opens = random_open_cover(rng, sys.space);
  NearlyCompactCertificate cert = nearly_compact_certificate_from(sys.space, opens, image);
  t.require(cert.verify(), "image certificate fails to cover " + image.to_string());
  NearlyCompactCertificate finest = nearly_compact_certificate(sys.space, image);
  t.require(finest.verify(), "finest-cover certificate fails to cover " + image.to_string());
}

struct ProductInstance {
  InstanceSpec left_spec, right_spec;
  ProductSpace prod;
  std::optional<RMap> f, h;
  std::string describe() const {
    return "product[" + left_spec.to_string() + " x " + right_spec.to_string() + "]";
  }
};

inline std::optional<ProductInstance> draw_product(Trial& t, Rng& rng, const SuiteConfig& cfg, int index,
                                                   bool discrete_only) {
  ProductInstance inst;
  SuiteConfig factor_cfg = cfg;
  factor_cfg.max_points = cfg.product_max_points;
  DrawnSystem left = draw_system(rng, t.seed(), discrete_only ? 0 : index, factor_cfg,
                                 index % 2 ? MapPolicy::bijective : MapPolicy::any, discrete_only);
  DrawnSystem right = draw_system(rng, t.seed(), discrete_only ? 0 : index + 1, factor_cfg,
                                  index % 2 ? MapPolicy::bijective : MapPolicy::any, discrete_only);
  inst.left_spec = left.spec;
  inst.right_spec = right.spec;
  t.set_instance(inst.describe());
  if (!left.map || !right.map) {
    t.skip("no verified factor maps found");
    return std::nullopt;
  }
  try {
    inst.prod = product_space(left.space, right.space);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::too_large) {
      t.skip(std::string("product exceeds size caps: ") + e.what());
      return std::nullopt;
    }
    throw;
  }
  inst.f = std::move(left.map);
  inst.h = std::move(right.map);
  return inst;
}

/// Box covers count submultiplicatively across a product.
inline void check_product_cover_bound(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  std::optional<ProductInstance> inst = draw_product(t, rng, cfg, index, false);
  if (!inst) return;
  Cover u = random_regular_cover(rng, inst->prod.left);
  Cover v = random_regular_cover(rng, inst->prod.right);
  Cover box = product_cover(inst->prod, u, v);
  t.require(box.regular(), "box cover of regular covers must be regular");
  const int nu = min_subcover_whole(u).count;
  const int nv = min_subcover_whole(v).count;
  const int nb = min_subcover_whole(box).count;
  t.require(nb <= nu * nv, "product bound violated: " + std::to_string(nb) + " > " + std::to_string(nu) + "*" + std::to_string(nv));
}

/// Projections of an invariant set are invariant and the set sits inside
/// the box of its projections; the product map itself must verify.
inline void check_product_projections(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  std::optional<ProductInstance> inst = draw_product(t, rng, cfg, index, false);
  if (!inst) return;
  RMap fh = product_map(inst->prod, *inst->f, *inst->h);
  t.require(fh.verified, "finding: product of verified maps fails the R-map check, witness " +
                             (fh.failing_regular ? fh.failing_regular->to_string() : std::string("?")));
  if (!fh.verified) return;
  const PointSet k = random_invariant_set(rng, fh);
  auto [kx, ky] = projections(inst->prod, k);
  t.require(is_invariant(*inst->f, kx), "left projection is not invariant");
  t.require(is_invariant(*inst->h, ky), "right projection is not invariant");
  t.require(k.subset_of(inst->prod.box(kx, ky)), "set escapes the box of its projections");
}

/// Every regular cover of a product is refined by a box cover built from
/// factor covers; the construction re-verifies itself via refines(). The
/// product also stays nearly compact: the certificate machinery produces a
/// finite subfamily of the drawn cover for the whole product.
inline void check_product_common_refinement(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  std::optional<ProductInstance> inst = draw_product(t, rng, cfg, index, false);
  if (!inst) return;
  Cover w = random_regular_cover(rng, inst->prod.product);
  auto [u, v] = common_refinement_boxes(inst->prod, w);
  t.require(u.regular() && v.regular(), "extracted factor covers must be regular");
  t.require(refines(w, product_cover(inst->prod, u, v)), "box cover does not refine the input");

  NearlyCompactCertificate cert =
      nearly_compact_certificate_from(inst->prod.product, w, PointSet::full_set(inst->prod.product->point_count()));
  t.require(cert.verify(), "product near-compactness certificate failed");
}

/// Product entropy bound for the whole-space notion, with the integer
/// count chain behind it checked at every depth.
inline void check_product_entropy_whole(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  std::optional<ProductInstance> inst = draw_product(t, rng, cfg, index, false);
  if (!inst) return;
  RMap fh = product_map(inst->prod, *inst->f, *inst->h);
  t.require(fh.verified, "finding: product map fails the R-map check");
  if (!fh.verified) return;
  const int depth = std::min(cfg.m_depth, 4);
  Cover c = random_regular_cover(rng, inst->prod.product);
  auto [u, v] = common_refinement_boxes(inst->prod, c);
  Cover box = product_cover(inst->prod, u, v);

  const PointSet full_prod = PointSet::full_set(inst->prod.product->point_count());
  std::vector<std::int64_t> nc = n_sequence(fh, c, full_prod, depth);
  std::vector<std::int64_t> nb = n_sequence(fh, box, full_prod, depth);
  std::vector<std::int64_t> nu = n_sequence(*inst->f, u, PointSet::full_set(inst->prod.left->point_count()), depth);
  std::vector<std::int64_t> nv = n_sequence(*inst->h, v, PointSet::full_set(inst->prod.right->point_count()), depth);
  for (int m = 0; m < depth; ++m) {
    t.require(nc[static_cast<std::size_t>(m)] <= nb[static_cast<std::size_t>(m)],
              "refinement chain broke at depth " + std::to_string(m + 1) + ": " + ints_to_string(nc) + " vs " + ints_to_string(nb));
    t.require(nb[static_cast<std::size_t>(m)] <= nu[static_cast<std::size_t>(m)] * nv[static_cast<std::size_t>(m)],
              "factor bound broke at depth " + std::to_string(m + 1) + ": " + ints_to_string(nb) + " vs " +
                  ints_to_string(nu) + "*" + ints_to_string(nv));
  }

  EntropyReport ep = entropy_n(fh);
  EntropyReport ef = entropy_n(*inst->f);
  EntropyReport eh = entropy_n(*inst->h);
  t.require(ep.exact && ef.exact && eh.exact, "all three entropies must certify exactly");
  t.require(ep.value <= ef.value + eh.value + kLogSlack, "product entropy exceeds the sum of factor entropies");
}

/// Product entropy bound for the invariant-family notion on Hausdorff
/// R-space factors, asserting the projection / box / restriction chain
/// stepwise.
inline void check_product_entropy_invariant(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  std::optional<ProductInstance> inst = draw_product(t, rng, cfg, index, true);
  if (!inst) return;
  if (!is_hausdorff(*inst->prod.left).holds || !is_r_space(*inst->prod.product).holds) {
    t.skip("factors are not Hausdorff R-spaces");
    return;
  }
  RMap fh = product_map(inst->prod, *inst->f, *inst->h);
  t.require(fh.verified, "finding: product map fails the R-map check");
  if (!fh.verified) return;
  const int depth = std::min(cfg.m_depth, 4);

  const PointSet k = random_invariant_set(rng, fh);
  auto [kx, ky] = projections(inst->prod, k);
  const PointSet box_k = inst->prod.box(kx, ky);
  t.require(k.subset_of(box_k), "set escapes the box of its projections");
  t.require(is_invariant(fh, box_k), "projection box is not invariant");

  Cover w = random_regular_cover(rng, inst->prod.product);
  std::vector<std::int64_t> on_k = n_sequence(fh, w, k, depth);
  std::vector<std::int64_t> on_box = n_sequence(fh, w, box_k, depth);
  for (int m = 0; m < depth; ++m) {
    t.require(on_k[static_cast<std::size_t>(m)] <= on_box[static_cast<std::size_t>(m)],
              "target monotonicity broke at depth " + std::to_string(m + 1));
  }

  // Restriction identity over the projection box.
  RestrictedMap rm = restrict_map(fh, box_k);
  RestrictedCover rc = restrict_cover(w, box_k);
  std::vector<std::int64_t> below =
      n_sequence_raw(rm.map, rc.cover, PointSet::full_set(rm.sub.space->point_count()), depth);
  for (int m = 0; m < depth; ++m) {
    t.require(below[static_cast<std::size_t>(m)] == on_box[static_cast<std::size_t>(m)],
              "restriction identity broke at depth " + std::to_string(m + 1));
  }

  EntropyReport ep = entropy_N(fh, invariant_sets(fh));
  EntropyReport ef = entropy_N(*inst->f, invariant_sets(*inst->f));
  EntropyReport eh = entropy_N(*inst->h, invariant_sets(*inst->h));
  t.require(ep.exact && ef.exact && eh.exact, "all three entropies must certify exactly");
  t.require(ep.value <= ef.value + eh.value + kLogSlack, "product entropy exceeds the sum of factor entropies");
}

/// Finite systems always stabilise: exact zero with a cover cycle found
/// within the regular-open catalogue size.
inline void check_zero_entropy_certificate(Trial& t, Rng& rng, const SuiteConfig& cfg, int index) {
  DrawnSystem sys = draw_system(rng, t.seed(), index, cfg, index % 2 ? MapPolicy::bijective : MapPolicy::any);
  t.set_instance(sys.spec.to_string());
  if (!sys.map) {
    t.skip("no verified map found");
    return;
  }
  const RMap& f = *sys.map;
  Cover u = random_regular_cover(rng, sys.space);
  const PointSet k = random_invariant_set(rng, f);
  EntropyReport rel = entropy_rel_cover(f, u, k);
  EntropyReport whole = entropy_n(f);
  const int catalogue = static_cast<int>(sys.space->regular_opens().size());
  for (const EntropyReport* r : {&rel, &whole}) {
    t.require(r->exact && r->value == 0.0, "finite instance did not certify exact zero");
    t.require(r->cycle.has_value(), "finite instance did not produce a cycle certificate");
    if (r->cycle) {
      t.require(r->cycle->preperiod + r->cycle->period <= catalogue,
                "cycle detection needed " + std::to_string(r->cycle->preperiod + r->cycle->period) +
                    " steps, catalogue has " + std::to_string(catalogue));
    }
  }
}

inline const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs = [] {
    std::vector<CheckDef> v;
    v.push_back({"cover-count-laws-rel", 200,
                 [](Trial& t, Rng& r, const SuiteConfig& c, int i) { check_count_laws(t, r, c, i, false); }});
    v.push_back({"cover-count-laws-whole", 200,
                 [](Trial& t, Rng& r, const SuiteConfig& c, int i) { check_count_laws(t, r, c, i, true); }});
    v.push_back({"entropy-coincidence", 200, check_coincidence});
    v.push_back({"entropy-monotone-nested", 200, check_monotone_nested});
    v.push_back({"hausdorff-separation", 200, check_hausdorff_separation});
    v.push_back({"image-nearly-compact", 200, check_image_nearly_compact});
    v.push_back({"inverse-entropy", 200, check_inverse_entropy});
    v.push_back({"join-subadditivity", 200, check_subadditivity});
    v.push_back({"product-common-refinement", 100, check_product_common_refinement});
    v.push_back({"product-cover-bound", 100, check_product_cover_bound});
    v.push_back({"product-entropy-invariant", 100, check_product_entropy_invariant});
    v.push_back({"product-entropy-whole", 100, check_product_entropy_whole});
    v.push_back({"product-projections", 100, check_product_projections});
    v.push_back({"restriction-count-equality", 200, check_restriction_counts});
    v.push_back({"restriction-entropy-equality", 200, check_restriction_entropy});
    v.push_back({"zero-entropy-certificate", 200, check_zero_entropy_certificate});
    std::sort(v.begin(), v.end(), [](const CheckDef& a, const CheckDef& b) { return a.id < b.id; });
    return v;
  }();
  return defs;
}

}  // namespace suite_detail

inline std::vector<std::string> suite_check_ids() {
  std::vector<std::string> ids;
  for (const auto& def : suite_detail::registry()) ids.push_back(def.id);
  return ids;
}

/// Runs every selected check over seeded instances. Instances are
/// independent, so they are verified in parallel; each worker writes into
/// its own index slot and the outcome is assembled in instance order, so
/// the report does not depend on the thread count. Failures are data, not
/// exceptions; the report distinguishes instances whose hypotheses were
/// unmet (skipped) from instances checked.
inline SuiteReport run_suite(const SuiteConfig& config) {
  SuiteReport report;
  report.config = config;
  unsigned worker_count = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                             : std::max(1u, std::thread::hardware_concurrency());
  for (const auto& def : suite_detail::registry()) {
    if (!config.theorems.empty() &&
        std::find(config.theorems.begin(), config.theorems.end(), def.id) == config.theorems.end()) {
      continue;
    }
    TheoremOutcome outcome;
    outcome.id = def.id;
    int count = config.instances > 0 ? config.instances : def.default_instances;
    if (auto it = config.instance_overrides.find(def.id); it != config.instance_overrides.end()) count = it->second;

    std::vector<suite_detail::Trial> trials;
    trials.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      const std::uint64_t seed = mix64(config.seed, mix64(hash_label(def.id), static_cast<std::uint64_t>(i)));
      trials.emplace_back(seed, "instance " + std::to_string(i));
    }
    auto run_range = [&](int begin, int end) {
      for (int i = begin; i < end; ++i) {
        suite_detail::Trial& trial = trials[static_cast<std::size_t>(i)];
        Rng rng(trial.seed());
        try {
          def.body(trial, rng, config, i);
        } catch (const Error& e) {
          trial.require(false, std::string("unexpected error: ") + e.what());
        }
      }
    };
    const unsigned workers = std::min<unsigned>(worker_count, static_cast<unsigned>(std::max(count, 1)));
    if (workers <= 1) {
      run_range(0, count);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) {
        const int begin = static_cast<int>(static_cast<long long>(count) * w / workers);
        const int end = static_cast<int>(static_cast<long long>(count) * (w + 1) / workers);
        pool.emplace_back(run_range, begin, end);
      }
      for (std::thread& t : pool) t.join();
    }

    for (const suite_detail::Trial& trial : trials) {
      ++outcome.tried;
      if (trial.skipped()) {
        ++outcome.skipped;
      } else {
        ++outcome.applicable;
        if (trial.violation()) {
          ++outcome.failed;
          outcome.failures.push_back(SuiteFailure{trial.seed(), trial.instance(), *trial.violation()});
        } else {
          ++outcome.passed;
        }
      }
      for (const auto& [key, value] : trial.counts()) outcome.counters[key] += value;
    }
    if (outcome.failed > 0) report.all_passed = false;
    report.results.push_back(std::move(outcome));
  }
  return report;
}

}  // namespace regent
