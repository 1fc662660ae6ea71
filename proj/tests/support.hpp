#pragma once

#include "wgb/pbw.hpp"

#include <random>
#include <vector>

namespace wgb::testing {

inline PbwElt E(const OrderPtr& o, int i, int j) { return PbwElt::unit(o, i, j); }
inline PbwElt W(const OrderPtr& o, std::vector<Factor> f) { return PbwElt::word(o, f); }
inline PbwElt C(const OrderPtr& o, const Rational& c) { return PbwElt::scalar(o, c); }

inline Rational R(long a, long b = 1) { return make_rational(a, b); }

/// Random element with up to `terms` words of length <= `len` and small integer coefficients.
inline PbwElt random_element(std::mt19937_64& rng, const OrderPtr& o, int N, int terms, int len) {
  std::uniform_int_distribution<int> unit(1, N), length(0, len), coeff(-3, 3);
  PbwElt u(o);
  for (int t = 0; t < terms; ++t) {
    std::vector<Factor> w;
    for (int k = length(rng); k > 0; --k) w.push_back({unit(rng), unit(rng)});
    u += PbwElt::word(o, w, coeff(rng));
  }
  return u;
}

}  // namespace wgb::testing
