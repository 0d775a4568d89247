#pragma once

// Dense univariate polynomials in y over F_{p^n}; the commutative subalgebra
// K[y] of A_1 where the twisting maps act.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gfpn.hpp"

namespace weylk {

/// Coefficient of y^i at index i; no trailing zeros (zero is empty).
using YPoly = std::vector<Coef>;

namespace ypoly {

inline void trim(YPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline YPoly add(const Field& F, const YPoly& a, const YPoly& b) {
  YPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = F.add(out[i], b[i]);
  trim(out);
  return out;
}

inline YPoly mul(const Field& F, const YPoly& a, const YPoly& b) {
  if (a.empty() || b.empty()) return {};
  YPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

/// a^p = sum a_i^p y^{ip}.
inline YPoly frobenius(const Field& F, const YPoly& a) {
  if (a.empty()) return {};
  const std::size_t p = F.characteristic();
  YPoly out((a.size() - 1) * p + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i * p] = F.pow(a[i], p);
  return out;
}

/// a^e as prod_i (a^{p^i})^{e_i} over the base-p digits e_i of e, each
/// a^{p^i} obtained by Frobenius.
inline YPoly pow(const Field& F, const YPoly& a, std::uint64_t e) {
  YPoly result{1};
  YPoly frob = a;
  const std::uint64_t p = F.characteristic();
  while (e) {
    const std::uint64_t digit = e % p;
    e /= p;
    if (digit) {
      YPoly acc{1};
      YPoly base = frob;
      std::uint64_t d = digit;
      while (d) {
        if (d & 1) acc = mul(F, acc, base);
        d >>= 1;
        if (d) base = mul(F, base, base);
      }
      result = mul(F, result, acc);
    }
    if (e) frob = frobenius(F, frob);
  }
  return result;
}

/// Formal derivative.
inline YPoly derivative(const Field& F, const YPoly& a) {
  YPoly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(F.scale(static_cast<long long>(i), a[i]));
  trim(out);
  return out;
}

}  // namespace ypoly
}  // namespace weylk
