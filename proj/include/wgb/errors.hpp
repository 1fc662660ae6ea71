#pragma once

#include <stdexcept>
#include <string>

namespace wgb {

/// Bad user input: malformed partition, out-of-range index, wrong weight.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A mathematical invariant failed. Indicates a bug, never bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

/// A computation would exceed the configured size limits.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace wgb

namespace wgb {

/// Size guards for the expensive kernels. Process-wide, set once by the
/// front end before any work starts.
struct Limits {
  long max_terms = 5'000'000;     ///< terms in a single element
  long max_matrix_dim = 200'000;  ///< unknowns or basis vectors in one system
};

inline Limits& limits() {
  static Limits l;
  return l;
}

inline void guard(long size, long cap, const std::string& what) {
  if (size > cap)
    throw ResourceLimitError(what + " exceeds limit (" + std::to_string(size) + " > " +
                             std::to_string(cap) + ")");
}

}  // namespace wgb
