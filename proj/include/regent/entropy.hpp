#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
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

/// Stabilisation certificate for the canonical cover sequence
/// C_1 = U, C_{k+1} = U v f^-1(C_k): the sequence repeats from index
/// `preperiod` with the given period (always 1 here: the sequence is a
/// refining chain of canonical covers, and mutually refining canonical
/// covers are equal).
struct CycleInfo {
  int preperiod = 0;
  int period = 0;
};

/// Full account of one entropy computation. `a_seq[m-1]` is
/// log N(join of the first m preimage covers) against the target set;
/// subadditivity makes a_m/m converge to inf a_m/m. `value` is the limit;
/// `exact` marks a machine-checkable certificate (cover cycle, geometric
/// growth or the empty-family convention) rather than a finite-stage
/// estimate.
struct EntropyReport {
  std::vector<double> a_seq;
  double fekete_inf = 0.0;
  std::optional<CycleInfo> cycle;
  double value = 0.0;
  bool exact = false;
  LogBase log_base = LogBase::natural;
  std::string certificate;  // "cover-cycle" | "geometric-growth" | "fekete-estimate" | "empty-family"
};

struct EntropyOptions {
  int m_max = 12;
  LogBase base = LogBase::natural;
};

namespace detail {

inline void check_entropy_inputs(const RMap& f, const Cover& u, const PointSet& k) {
  if (!f.space->same_space(*u.space())) fail(ErrorKind::space_mismatch, "map and cover over different spaces");
  if (!f.verified) fail(ErrorKind::not_r_map, "entropy requires a verified R-map");
  if (!u.regular()) fail(ErrorKind::not_regular_cover, "entropy requires a regular open cover");
  if (k.empty()) fail(ErrorKind::empty_target, "entropy over an empty set");
  if (!is_invariant(f, k)) fail(ErrorKind::not_invariant, "entropy target " + k.to_string() + " is not invariant");
}

/// The canonical cover sequence up to (and including) its first repeat.
/// Independent of any target set, so one chain serves every invariant set.
struct CoverChain {
  std::vector<Cover> covers;  // C_1 .. C_detect
  std::optional<CycleInfo> cycle;
};

inline CoverChain compute_cover_chain(const RMap& f, const Cover& u, int m_max) {
  CoverChain chain;
  const int hard_cap = std::max(m_max, static_cast<int>(f.space->regular_opens().size()) + 2);
  std::map<std::vector<std::uint64_t>, int> seen;
  Cover c = u;
  for (int m = 1; m <= hard_cap; ++m) {
    if (m > 1) c = join(u, preimage_cover(f, c));
    auto [it, fresh] = seen.emplace(c.key(), m);
    chain.covers.push_back(c);
    if (!fresh) {
      chain.cycle = CycleInfo{it->second, m - it->second};
      break;
    }
  }
  return chain;
}

inline EntropyReport report_from_chain(const CoverChain& chain, const PointSet& k, const EntropyOptions& opts) {
  EntropyReport report;
  report.log_base = opts.base;
  report.cycle = chain.cycle;
  for (const Cover& c : chain.covers) {
    report.a_seq.push_back(m_value(min_subcover(c, k).count, opts.base));
  }
  report.fekete_inf = report.a_seq[0];
  for (std::size_t i = 0; i < report.a_seq.size(); ++i) {
    report.fekete_inf = std::min(report.fekete_inf, report.a_seq[i] / static_cast<double>(i + 1));
  }
  if (report.cycle) {
    // Counts over the cycle are bounded, so (1/m) log N -> 0.
    report.value = 0.0;
    report.exact = true;
    report.certificate = "cover-cycle";
  } else {
    report.value = report.fekete_inf;
    report.exact = false;
    report.certificate = "fekete-estimate";
  }
  return report;
}

}  // namespace detail

/// Integer counts N(C_m) for m = 1..m_max along the preimage-join
/// recurrence, with no regularity or verification demands. This is the
/// combinatorial engine shared by entropy proper and by restriction-side
/// computations, where traces need not stay regular open.
inline std::vector<std::int64_t> n_sequence_raw(const RMap& f, const Cover& u, const PointSet& k, int m_max) {
  if (m_max < 1) fail(ErrorKind::bad_index, "m_max must be >= 1");
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(m_max));
  Cover c = u;
  for (int m = 1; m <= m_max; ++m) {
    if (m > 1) c = join(u, preimage_cover(f, c));
    out.push_back(min_subcover(c, k).count);
  }
  return out;
}

/// Integer counts for the verified setting (regular cover, R-map).
inline std::vector<std::int64_t> n_sequence(const RMap& f, const Cover& u, const PointSet& k, int m_max) {
  detail::check_entropy_inputs(f, u, k);
  return n_sequence_raw(f, u, k, m_max);
}

/// a_m = log N(C_m), m = 1..m_max. Nondecreasing in m, subadditive.
inline std::vector<double> m_sequence(const RMap& f, const Cover& u, const PointSet& k, int m_max,
                                      LogBase base = LogBase::natural) {
  std::vector<std::int64_t> ns = n_sequence(f, u, k, m_max);
  std::vector<double> out;
  out.reserve(ns.size());
  for (std::int64_t n : ns) out.push_back(m_value(n, base));
  return out;
}

/// Entropy of f on K relative to the cover U. The canonical cover sequence
/// lives in a finite refining chain, so it stabilises; detection is
/// guaranteed within |regular-open catalogue| steps, after which the counts
/// are bounded and the limit of a_m/m is exactly zero.
inline EntropyReport entropy_rel_cover(const RMap& f, const Cover& u, const PointSet& k,
                                       const EntropyOptions& opts = {}) {
  detail::check_entropy_inputs(f, u, k);
  return detail::report_from_chain(detail::compute_cover_chain(f, u, opts.m_max), k, opts);
}

/// Entropy of f on an invariant set K: the supremum over regular open
/// covers, realised by the finest regular cover { r(x) } (every regular
/// cover is refined by it, and refinement is monotone through joins and
/// counts).
inline EntropyReport entropy_on_K(const RMap& f, const PointSet& k, const EntropyOptions& opts = {}) {
  return entropy_rel_cover(f, finest_regular_cover(f.space), k, opts);
}

/// Entropy over a family of invariant sets: the supremum of per-member
/// entropies, with the convention that an empty family yields exactly zero.
/// Ties prefer the inclusion-largest member, so on finite spaces the
/// returned report is the whole-space one.
inline EntropyReport entropy_N(const RMap& f, const std::vector<PointSet>& invariant_family,
                               const EntropyOptions& opts = {}) {
  if (invariant_family.empty()) {
    EntropyReport report;
    report.log_base = opts.base;
    report.value = 0.0;
    report.exact = true;
    report.certificate = "empty-family";
    return report;
  }
  // One chain serves the whole family: the canonical cover sequence of the
  // finest regular cover does not depend on the target set.
  Cover finest = finest_regular_cover(f.space);
  detail::CoverChain chain = detail::compute_cover_chain(f, finest, opts.m_max);
  std::optional<EntropyReport> best;
  std::optional<PointSet> best_k;
  for (const PointSet& k : invariant_family) {
    detail::check_entropy_inputs(f, finest, k);
    EntropyReport r = detail::report_from_chain(chain, k, opts);
    const bool better = !best || r.value > best->value ||
                        (r.value == best->value && k.count() > best_k->count()) ||
                        (r.value == best->value && k.count() == best_k->count() && PointSet::lex_less(k, *best_k));
    if (better) {
      best = std::move(r);
      best_k = k;
    }
  }
  return *best;
}

/// Entropy of the whole nearly compact space: the supremum over regular
/// open covers of X, realised by the finest regular cover.
inline EntropyReport entropy_n(const RMap& f, const EntropyOptions& opts = {}) {
  return entropy_on_K(f, PointSet::full_set(f.space->point_count()), opts);
}

}  // namespace regent
