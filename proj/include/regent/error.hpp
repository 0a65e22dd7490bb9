#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace regent {

// Failure classes surfaced by the library. Each carries a human-readable
// message; callers that care about the class test `kind`.
enum class ErrorKind {
  bad_index,
  width_mismatch,
  not_a_topology,
  not_a_cover,
  not_open_member,
  not_regular_cover,
  space_mismatch,
  not_r_map,
  not_bijective,
  not_invariant,
  empty_subspace,
  empty_target,
  uncoverable,
  too_large,
  empty_shift,
  non_convergence,
  parse_error,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::bad_index: return "BadIndex";
    case ErrorKind::width_mismatch: return "WidthMismatch";
    case ErrorKind::not_a_topology: return "NotATopology";
    case ErrorKind::not_a_cover: return "NotACover";
    case ErrorKind::not_open_member: return "NotOpenMember";
    case ErrorKind::not_regular_cover: return "NotRegularCover";
    case ErrorKind::space_mismatch: return "SpaceMismatch";
    case ErrorKind::not_r_map: return "NotRMap";
    case ErrorKind::not_bijective: return "NotBijective";
    case ErrorKind::not_invariant: return "NotInvariant";
    case ErrorKind::empty_subspace: return "EmptySubspace";
    case ErrorKind::empty_target: return "EmptyTarget";
    case ErrorKind::uncoverable: return "Uncoverable";
    case ErrorKind::too_large: return "TooLarge";
    case ErrorKind::empty_shift: return "EmptyShift";
    case ErrorKind::non_convergence: return "NonConvergence";
    case ErrorKind::parse_error: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

// Hard limits for the exact engines. The point cap may be raised (up to the
// 64-bit word width) through the REGENT_SIZE_CAP environment variable.
struct SizeCaps {
  int max_points = 20;
  int max_opens = 4096;
  int max_enumeration_points = 20;  // ceiling for 2^n subset scans
};

namespace detail {
inline SizeCaps read_caps_from_env() {
  SizeCaps caps;
  if (const char* env = std::getenv("REGENT_SIZE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) {
      caps.max_points = static_cast<int>(v < 64 ? v : 64);
      caps.max_enumeration_points = caps.max_points < 20 ? caps.max_points : 20;
    }
  }
  return caps;
}
}  // namespace detail

inline const SizeCaps& size_caps() {
  static const SizeCaps caps = detail::read_caps_from_env();
  return caps;
}

}  // namespace regent
