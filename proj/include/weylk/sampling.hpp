#pragma once

// Element generators for property scans: exhaustive enumeration of a
// total-degree window when it is small, seeded random sampling otherwise.

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "weyl_poly.hpp"

namespace weylk {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;
inline constexpr std::uint64_t kExhaustiveCeiling = std::uint64_t{1} << 20;

struct ScanConfig {
  enum class Mode { exhaustive, randomized };

  std::uint32_t max_total_degree = 2;
  Mode mode = Mode::exhaustive;
  std::size_t samples = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t exhaustive_ceiling = kExhaustiveCeiling;

  static ScanConfig exhaustive(std::uint32_t degree) { return {degree, Mode::exhaustive, 0, kDefaultSeed}; }
  static ScanConfig randomized(std::uint32_t degree, std::size_t samples, std::uint64_t seed = kDefaultSeed) {
    return {degree, Mode::randomized, samples, seed};
  }
};

/// Exponent pairs (m, n) with m + n <= degree, ascending.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> monomials_up_to(std::uint32_t degree) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t m = 0; m <= degree; ++m)
    for (std::uint32_t n = 0; m + n <= degree; ++n) out.emplace_back(m, n);
  return out;
}

/// |F|^(number of monomials), saturating at uint64 max.
inline std::uint64_t enumeration_size(const Field& F, std::uint32_t degree) {
  const std::size_t count = monomials_up_to(degree).size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < count; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / F.order()) return std::numeric_limits<std::uint64_t>::max();
    total *= F.order();
  }
  return total;
}

/// Exhaustive when the window has at most `ceiling` elements, else random.
inline ScanConfig automatic_config(const Field& F, std::uint32_t degree, std::size_t samples,
                                   std::uint64_t seed = kDefaultSeed, std::uint64_t ceiling = kExhaustiveCeiling) {
  ScanConfig cfg = enumeration_size(F, degree) <= ceiling ? ScanConfig::exhaustive(degree)
                                                          : ScanConfig::randomized(degree, samples, seed);
  cfg.seed = seed;
  cfg.samples = samples;
  cfg.exhaustive_ceiling = ceiling;
  return cfg;
}

/// Calls fn on every polynomial of total degree <= degree (including zero).
template <typename Fn>
void for_each_poly(const Field& F, std::uint32_t degree, Fn&& fn) {
  const auto monos = monomials_up_to(degree);
  std::vector<Coef> digits(monos.size(), 0);
  while (true) {
    std::vector<Term> raw;
    for (std::size_t i = 0; i < monos.size(); ++i)
      if (digits[i]) raw.push_back({monos[i].first, monos[i].second, digits[i]});
    fn(WeylPoly::from_terms(F, std::move(raw)));
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == F.order()) digits[i++] = 0;
    if (i == digits.size()) return;
  }
}

/// Uniform random element of the degree window.
template <typename Rng>
WeylPoly random_poly(const Field& F, std::uint32_t degree, Rng& rng) {
  std::uniform_int_distribution<Coef> dist(0, F.order() - 1);
  std::vector<Term> raw;
  for (auto [m, n] : monomials_up_to(degree))
    if (Coef c = dist(rng)) raw.push_back({m, n, c});
  return WeylPoly::from_terms(F, std::move(raw));
}

/// Random element with at most `max_terms` nonzero terms in the window.
template <typename Rng>
WeylPoly random_sparse_poly(const Field& F, std::uint32_t degree, std::size_t max_terms, Rng& rng) {
  const auto monos = monomials_up_to(degree);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<std::size_t> count(1, max_terms);
  std::uniform_int_distribution<Coef> dist(1, F.order() - 1);
  std::vector<Term> raw;
  for (std::size_t i = count(rng); i-- > 0;) {
    auto [m, n] = monos[pick(rng)];
    raw.push_back({m, n, dist(rng)});
  }
  return WeylPoly::from_terms(F, std::move(raw));
}

/// Materializes the scan set described by cfg.
inline std::vector<WeylPoly> scan_elements(const Field& F, const ScanConfig& cfg) {
  std::vector<WeylPoly> out;
  if (cfg.mode == ScanConfig::Mode::exhaustive) {
    if (enumeration_size(F, cfg.max_total_degree) > cfg.exhaustive_ceiling)
      throw std::invalid_argument("exhaustive scan exceeds the enumeration ceiling");
    for_each_poly(F, cfg.max_total_degree, [&](WeylPoly f) { out.push_back(std::move(f)); });
  } else {
    std::mt19937_64 rng(cfg.seed);
    out.reserve(cfg.samples);
    for (std::size_t i = 0; i < cfg.samples; ++i) out.push_back(random_poly(F, cfg.max_total_degree, rng));
  }
  return out;
}

}  // namespace weylk
