#pragma once

#include "wgb/rational.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

namespace wgb {

/// Matrix unit e_ij packed in one byte: (i-1)*16 + (j-1). Supports N <= 16.
using UnitCode = unsigned char;
constexpr int kMaxN = 16;

inline UnitCode unit_code(int i, int j) { return static_cast<UnitCode>((i - 1) * 16 + (j - 1)); }
inline int unit_i(UnitCode c) { return c / 16 + 1; }
inline int unit_j(UnitCode c) { return c % 16 + 1; }

/// Word of unit codes. Doubles as hash key.
using Mono = std::string;
using Terms = std::unordered_map<Mono, Rational>;

/// A named total order on matrix units together with the memo table for
/// straightening in that order. The memo is an internal cache guarded by a
/// mutex; observable behaviour is pure.
struct Ordering {
  std::string name;
  int N = 0;
  std::array<int, 256> rank{};

  mutable std::mutex mu;
  mutable std::unordered_map<std::string, std::shared_ptr<const Terms>> memo;

  bool same_as(const Ordering& o) const { return this == &o || (name == o.name && N == o.N && rank == o.rank); }
  bool le(UnitCode a, UnitCode b) const { return rank[a] <= rank[b]; }
};

using OrderPtr = std::shared_ptr<const Ordering>;

}  // namespace wgb
