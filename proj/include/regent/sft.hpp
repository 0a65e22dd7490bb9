#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "regent/entropy.hpp"
#include "regent/error.hpp"
#include "regent/min_cover.hpp"

namespace regent {

using BigInt = boost::multiprecision::cpp_int;

/// A subshift of finite type over a finite alphabet, presented by a 0/1
/// transition matrix (or by forbidden two-letter words compiled into one).
///
/// The presentation is pruned until every symbol has an outgoing and an
/// incoming transition; in a finite graph that guarantees every remaining
/// symbol lies on a bi-infinite walk, so admissible words of the pruned
/// graph are exactly the finite factors of the shift space.
///
/// Cylinders on one coordinate are clopen, hence regular open; the shift
/// map pulls clopens back to clopens, so it is an R-map, and the space is
/// compact, hence nearly compact. The depth-m join of shifted one-cylinder
/// covers is the depth-m cylinder partition, whose minimal subcover is the
/// full set of admissible length-m words.
struct SftSystem {
  int alphabet = 0;                      // symbols surviving pruning
  std::vector<std::vector<int>> matrix;  // pruned transition matrix
  std::vector<int> symbol_names;         // pruned index -> original symbol
  std::string description;
};

namespace detail {

inline constexpr int sft_alphabet_cap = 64;

inline SftSystem prune_sft(int k, std::vector<std::vector<int>> matrix, std::string description) {
  std::vector<int> alive(static_cast<std::size_t>(k), 1);
  for (;;) {
    bool changed = false;
    for (int i = 0; i < k; ++i) {
      if (!alive[static_cast<std::size_t>(i)]) continue;
      bool has_out = false, has_in = false;
      for (int j = 0; j < k; ++j) {
        if (!alive[static_cast<std::size_t>(j)]) continue;
        if (matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) has_out = true;
        if (matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) has_in = true;
      }
      if (!has_out || !has_in) {
        alive[static_cast<std::size_t>(i)] = 0;
        changed = true;
      }
    }
    if (!changed) break;
  }
  SftSystem sft;
  sft.description = std::move(description);
  for (int i = 0; i < k; ++i) {
    if (alive[static_cast<std::size_t>(i)]) sft.symbol_names.push_back(i);
  }
  sft.alphabet = static_cast<int>(sft.symbol_names.size());
  if (sft.alphabet == 0) fail(ErrorKind::empty_shift, "no symbol admits a bi-infinite walk");
  sft.matrix.assign(static_cast<std::size_t>(sft.alphabet), std::vector<int>(static_cast<std::size_t>(sft.alphabet), 0));
  for (int a = 0; a < sft.alphabet; ++a) {
    for (int b = 0; b < sft.alphabet; ++b) {
      sft.matrix[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          matrix[static_cast<std::size_t>(sft.symbol_names[static_cast<std::size_t>(a)])]
                [static_cast<std::size_t>(sft.symbol_names[static_cast<std::size_t>(b)])];
    }
  }
  return sft;
}

/// log of a positive big integer, accurate to double precision: take the
/// top 63 bits exactly and add the discarded power of two.
inline double big_log(const BigInt& value, LogBase base) {
  if (value <= 0) fail(ErrorKind::bad_index, "log of a non-positive count");
  const long bits = static_cast<long>(boost::multiprecision::msb(value)) + 1;
  if (bits <= 62) {
    return log_in_base(static_cast<double>(value.convert_to<std::uint64_t>()), base);
  }
  const long shift = bits - 62;
  const BigInt top = value >> shift;
  const double ln = std::log(static_cast<double>(top.convert_to<std::uint64_t>())) + static_cast<double>(shift) * std::log(2.0);
  return base == LogBase::natural ? ln : ln / std::log(2.0);
}

}  // namespace detail

inline SftSystem build_sft(int k, std::vector<std::vector<int>> matrix, std::string description = "") {
  if (k < 1) fail(ErrorKind::bad_index, "alphabet must have at least one symbol");
  if (k > detail::sft_alphabet_cap) fail(ErrorKind::too_large, "alphabet capped at " + std::to_string(detail::sft_alphabet_cap));
  if (static_cast<int>(matrix.size()) != k) fail(ErrorKind::bad_index, "matrix row count differs from alphabet");
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != k) fail(ErrorKind::bad_index, "matrix is not square");
    for (int v : row) {
      if (v != 0 && v != 1) fail(ErrorKind::bad_index, "transition entries must be 0 or 1");
    }
  }
  return detail::prune_sft(k, std::move(matrix), std::move(description));
}

/// Compiles forbidden two-letter words over digit symbols. The alphabet
/// size defaults to one past the largest digit mentioned.
inline SftSystem build_sft_from_forbidden(const std::vector<std::string>& forbidden, int alphabet = 0,
                                          std::string description = "") {
  int k = alphabet;
  std::vector<std::pair<int, int>> words;
  for (const std::string& w : forbidden) {
    if (w.size() != 2) fail(ErrorKind::parse_error, "forbidden words must have length 2, got \"" + w + "\"");
    for (char c : w) {
      if (c < '0' || c > '9') fail(ErrorKind::parse_error, "forbidden-word symbols must be digits");
    }
    int a = w[0] - '0', b = w[1] - '0';
    words.emplace_back(a, b);
    k = std::max(k, std::max(a, b) + 1);
  }
  if (k < 1) fail(ErrorKind::bad_index, "alphabet must have at least one symbol");
  std::vector<std::vector<int>> matrix(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 1));
  for (auto [a, b] : words) matrix[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 0;
  return detail::prune_sft(k, std::move(matrix), std::move(description));
}

/// Number of admissible length-m words, exactly. Realises the minimal
/// subcover count of the depth-m cylinder cover: cylinders partition the
/// space, so no proper subfamily covers.
inline BigInt count_words(const SftSystem& sft, int m) {
  if (m < 1) fail(ErrorKind::bad_index, "word length must be >= 1");
  const int k = sft.alphabet;
  std::vector<BigInt> v(static_cast<std::size_t>(k), BigInt(1));
  for (int step = 1; step < m; ++step) {
    std::vector<BigInt> next(static_cast<std::size_t>(k), BigInt(0));
    for (int a = 0; a < k; ++a) {
      BigInt acc = 0;
      for (int b = 0; b < k; ++b) {
        if (sft.matrix[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) acc += v[static_cast<std::size_t>(b)];
      }
      next[static_cast<std::size_t>(a)] = std::move(acc);
    }
    v = std::move(next);
  }
  BigInt total = 0;
  for (const BigInt& x : v) total += x;
  return total;
}

/// Independent entropy oracle: log of the spectral radius of the pruned
/// transition matrix. Strongly connected components are isolated first,
/// then each block gets power iteration with Collatz-Wielandt enclosure on
/// block + I (primitive, so the bounds close onto the Perron root).
inline double spectral_entropy(const SftSystem& sft, double tolerance = 1e-9, int max_iterations = 200000) {
  const int k = sft.alphabet;

  // Tarjan-style SCC by iterative DFS.
  std::vector<int> comp(static_cast<std::size_t>(k), -1);
  {
    int counter = 0, comp_count = 0;
    std::vector<int> index(static_cast<std::size_t>(k), -1), low(static_cast<std::size_t>(k), 0);
    std::vector<int> stack, on_stack(static_cast<std::size_t>(k), 0);
    struct Frame {
      int v;
      int next;
    };
    for (int root = 0; root < k; ++root) {
      if (index[static_cast<std::size_t>(root)] != -1) continue;
      std::vector<Frame> frames{{root, 0}};
      index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
      stack.push_back(root);
      on_stack[static_cast<std::size_t>(root)] = 1;
      while (!frames.empty()) {
        Frame& fr = frames.back();
        if (fr.next < k) {
          const int w = fr.next++;
          if (!sft.matrix[static_cast<std::size_t>(fr.v)][static_cast<std::size_t>(w)]) continue;
          if (index[static_cast<std::size_t>(w)] == -1) {
            index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
            stack.push_back(w);
            on_stack[static_cast<std::size_t>(w)] = 1;
            frames.push_back({w, 0});
          } else if (on_stack[static_cast<std::size_t>(w)]) {
            low[static_cast<std::size_t>(fr.v)] = std::min(low[static_cast<std::size_t>(fr.v)], index[static_cast<std::size_t>(w)]);
          }
        } else {
          const int v = fr.v;
          frames.pop_back();
          if (!frames.empty()) {
            low[static_cast<std::size_t>(frames.back().v)] = std::min(low[static_cast<std::size_t>(frames.back().v)], low[static_cast<std::size_t>(v)]);
          }
          if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
            for (;;) {
              const int w = stack.back();
              stack.pop_back();
              on_stack[static_cast<std::size_t>(w)] = 0;
              comp[static_cast<std::size_t>(w)] = comp_count;
              if (w == v) break;
            }
            ++comp_count;
          }
        }
      }
    }
  }

  double rho = 0.0;
  const int comp_count = 1 + *std::max_element(comp.begin(), comp.end());
  for (int c = 0; c < comp_count; ++c) {
    std::vector<int> nodes;
    for (int i = 0; i < k; ++i) {
      if (comp[static_cast<std::size_t>(i)] == c) nodes.push_back(i);
    }
    const int m = static_cast<int>(nodes.size());
    if (m == 1) {
      const int i = nodes[0];
      // Singleton component: spectral radius is 1 with a self-loop, else 0.
      rho = std::max(rho, sft.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] ? 1.0 : 0.0);
      continue;
    }
    std::vector<double> v(static_cast<std::size_t>(m), 1.0), next(static_cast<std::size_t>(m), 0.0);
    double block_rho = 0.0;
    bool converged = false;
    for (int iter = 0; iter < max_iterations; ++iter) {
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0, norm = 0.0;
      for (int a = 0; a < m; ++a) {
        double acc = v[static_cast<std::size_t>(a)];  // + I shift keeps the block primitive
        for (int b = 0; b < m; ++b) {
          if (sft.matrix[static_cast<std::size_t>(nodes[static_cast<std::size_t>(a)])][static_cast<std::size_t>(nodes[static_cast<std::size_t>(b)])])
            acc += v[static_cast<std::size_t>(b)];
        }
        next[static_cast<std::size_t>(a)] = acc;
        const double ratio = acc / v[static_cast<std::size_t>(a)];
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        norm = std::max(norm, acc);
      }
      for (int a = 0; a < m; ++a) v[static_cast<std::size_t>(a)] = next[static_cast<std::size_t>(a)] / norm;
      if (hi - lo <= tolerance) {
        block_rho = 0.5 * (hi + lo) - 1.0;
        converged = true;
        break;
      }
    }
    if (!converged) fail(ErrorKind::non_convergence, "power iteration did not reach tolerance");
    rho = std::max(rho, block_rho);
  }
  if (rho < 1.0) rho = 1.0;  // pruning guarantees a cycle
  return std::log(rho);
}

/// Entropy report from exact word counts: a_m = log count(m). The value is
/// exact when the growth is exactly geometric (count(m) = count(1)^m for
/// every computed m, as in a full shift); otherwise it is the Fekete
/// infimum reached at m_max.
inline EntropyReport sft_entropy(const SftSystem& sft, int m_max, LogBase base = LogBase::natural) {
  if (m_max < 2) fail(ErrorKind::bad_index, "m_max must be >= 2");
  EntropyReport report;
  report.log_base = base;
  std::vector<BigInt> counts;
  counts.reserve(static_cast<std::size_t>(m_max));
  for (int m = 1; m <= m_max; ++m) counts.push_back(count_words(sft, m));

  bool geometric = true;
  BigInt power = counts[0];
  for (int m = 2; m <= m_max; ++m) {
    power *= counts[0];
    if (counts[static_cast<std::size_t>(m - 1)] != power) {
      geometric = false;
      break;
    }
  }

  const double per_symbol = detail::big_log(counts[0], base);
  for (int m = 1; m <= m_max; ++m) {
    // For exactly geometric growth a_m is m times the per-symbol log, kept
    // in that form so a_m and m * value agree bit for bit.
    report.a_seq.push_back(geometric ? per_symbol * static_cast<double>(m)
                                     : detail::big_log(counts[static_cast<std::size_t>(m - 1)], base));
  }
  report.fekete_inf = report.a_seq[0];
  for (int m = 1; m <= m_max; ++m) {
    report.fekete_inf = std::min(report.fekete_inf, report.a_seq[static_cast<std::size_t>(m - 1)] / static_cast<double>(m));
  }
  if (geometric) {
    report.value = per_symbol;
    report.exact = true;
    report.certificate = "geometric-growth";
  } else {
    report.value = report.fekete_inf;
    report.exact = false;
    report.certificate = "fekete-estimate";
  }
  return report;
}

/// Product shift on symbol pairs; transitions are the tensor product, so
/// admissible words multiply exactly.
inline SftSystem sft_product(const SftSystem& a, const SftSystem& b) {
  const long long k = static_cast<long long>(a.alphabet) * b.alphabet;
  if (k > detail::sft_alphabet_cap)
    fail(ErrorKind::too_large, "product alphabet " + std::to_string(k) + " exceeds cap " + std::to_string(detail::sft_alphabet_cap));
  const int ka = a.alphabet, kb = b.alphabet;
  std::vector<std::vector<int>> matrix(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
  for (int i1 = 0; i1 < ka; ++i1) {
    for (int j1 = 0; j1 < kb; ++j1) {
      for (int i2 = 0; i2 < ka; ++i2) {
        for (int j2 = 0; j2 < kb; ++j2) {
          matrix[static_cast<std::size_t>(i1 * kb + j1)][static_cast<std::size_t>(i2 * kb + j2)] =
              a.matrix[static_cast<std::size_t>(i1)][static_cast<std::size_t>(i2)] &
              b.matrix[static_cast<std::size_t>(j1)][static_cast<std::size_t>(j2)];
        }
      }
    }
  }
  return build_sft(static_cast<int>(k), std::move(matrix),
                   "(" + a.description + ") x (" + b.description + ")");
}

}  // namespace regent
