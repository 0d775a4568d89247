#pragma once

// Structure predicates of A_1^k with recorded witnesses: commuter, nuclei,
// center, power-associativity and a proper two-sided ideal.

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "sampling.hpp"
#include "twist.hpp"
#include "weyl_poly.hpp"

namespace weylk {

/// One scanned candidate: whether it passed, and if not, what killed it.
struct ScanRecord {
  WeylPoly candidate;
  bool member = false;
  std::string witness;
};

/// Every exponent of every term divisible by p.
inline bool in_commuter_structural(const WeylPoly& f) { return in_p_power_subalgebra(f); }

struct CommuterVerdict {
  bool member = false;
  std::optional<WeylPoly> witness;  // g with [f, g]_* != 0
};

namespace detail {

inline std::vector<WeylPoly> commuter_probes(const Field& F, const ScanConfig& cfg, std::size_t extra) {
  std::vector<WeylPoly> probes{WeylPoly::x(F), WeylPoly::y(F)};
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t i = 0; i < extra; ++i) probes.push_back(random_poly(F, cfg.max_total_degree, rng));
  return probes;
}

inline CommuterVerdict commuter_against(const TwistParams& k, const WeylPoly& f, const std::vector<WeylPoly>& probes) {
  const bool structural = in_commuter_structural(f);
  for (const auto& g : probes) {
    if (!star_commutator(k, f, g).is_zero()) {
      if (structural)
        throw invariant_violation("commuter: " + render(f) + " is in K[x^p,y^p] but fails to commute with " +
                                  render(g));
      return {false, g};
    }
  }
  // x and y are always probed and generate the algebra, so commuting with
  // both is already membership.
  if (!structural) throw invariant_violation("commuter: " + render(f) + " commutes with x and y but is not in K[x^p,y^p]");
  return {true, std::nullopt};
}

}  // namespace detail

/// Commuter membership: the structural test, cross-checked against
/// [f, g]_* = 0 for g = x, y and cfg-driven random probes.
inline CommuterVerdict in_commuter(const TwistParams& k, const WeylPoly& f, const ScanConfig& cfg = {},
                                   std::size_t random_probes = 8) {
  if (!(k.field() == f.field())) throw field_mismatch();
  return detail::commuter_against(k, f, detail::commuter_probes(f.field(), cfg, random_probes));
}

/// in_commuter over every element of the scan set.
inline std::vector<ScanRecord> commuter_scan(const TwistParams& k, const ScanConfig& cfg, std::size_t random_probes = 8) {
  const auto probes = detail::commuter_probes(k.field(), cfg, random_probes);
  std::vector<ScanRecord> out;
  for (auto& f : scan_elements(k.field(), cfg)) {
    auto v = detail::commuter_against(k, f, probes);
    std::string w = v.witness ? "[f, " + render(*v.witness) + "]_* != 0" : "";
    out.push_back({std::move(f), v.member, std::move(w)});
  }
  return out;
}

enum class NucleusSide { left, middle, right };

inline const char* to_string(NucleusSide s) {
  switch (s) {
    case NucleusSide::left: return "left";
    case NucleusSide::middle: return "middle";
    case NucleusSide::right: return "right";
  }
  return "?";
}

struct NucleusScan {
  /// k = 0: the algebra is associative and every element is in the nucleus.
  bool everything = false;
  std::vector<ScanRecord> records;

  std::vector<WeylPoly> members() const {
    std::vector<WeylPoly> out;
    for (const auto& r : records)
      if (r.member) out.push_back(r.candidate);
    return out;
  }
};

namespace detail {

/// Places c in the scanned slot of the triple (a, b) -> (a, b, c) etc.
inline bool nucleus_triple_vanishes(const TwistParams& k, NucleusSide side, const WeylPoly& c, const WeylPoly& a,
                                    const WeylPoly& b) {
  switch (side) {
    case NucleusSide::left: return associator_vanishes_iff(k, c, a, b);
    case NucleusSide::middle: return associator_vanishes_iff(k, a, c, b);
    case NucleusSide::right: return associator_vanishes_iff(k, a, b, c);
  }
  return false;
}

inline std::string triple_text(NucleusSide side, const WeylPoly& a, const WeylPoly& b) {
  switch (side) {
    case NucleusSide::left: return "(c, " + render(a) + ", " + render(b) + ")_* != 0";
    case NucleusSide::middle: return "(" + render(a) + ", c, " + render(b) + ")_* != 0";
    case NucleusSide::right: return "(" + render(a) + ", " + render(b) + ", c)_* != 0";
  }
  return {};
}

}  // namespace detail

/// Scans for nonzero nucleus elements. Two cheap probes per side run first:
///   right  (1,1,c), (y,1,c)     left  (c,1,1), (c,1,y)     middle  (y,c,1), (1,c,y)
/// and survivors are tested against all pairs from a degree-1 window.
inline NucleusScan nucleus_scan(const TwistParams& k, NucleusSide side, const ScanConfig& cfg) {
  NucleusScan out;
  if (k.is_zero()) {
    out.everything = true;
    return out;
  }
  const Field& F = k.field();
  const WeylPoly one = WeylPoly::one(F);
  const WeylPoly y = WeylPoly::y(F);
  std::vector<std::pair<WeylPoly, WeylPoly>> probes;
  switch (side) {
    case NucleusSide::right: probes = {{one, one}, {y, one}}; break;
    case NucleusSide::left: probes = {{one, one}, {one, y}}; break;
    case NucleusSide::middle: probes = {{y, one}, {one, y}}; break;
  }
  std::vector<WeylPoly> pair_pool;
  for_each_poly(F, 1, [&](WeylPoly f) {
    if (!f.is_zero()) pair_pool.push_back(std::move(f));
  });

  for (auto& c : scan_elements(F, cfg)) {
    if (c.is_zero()) continue;
    ScanRecord rec{c, true, {}};
    for (const auto& [a, b] : probes) {
      if (!detail::nucleus_triple_vanishes(k, side, c, a, b)) {
        rec.member = false;
        rec.witness = detail::triple_text(side, a, b);
        break;
      }
    }
    for (std::size_t i = 0; rec.member && i < pair_pool.size(); ++i)
      for (std::size_t j = 0; rec.member && j < pair_pool.size(); ++j)
        if (!detail::nucleus_triple_vanishes(k, side, c, pair_pool[i], pair_pool[j])) {
          rec.member = false;
          rec.witness = detail::triple_text(side, pair_pool[i], pair_pool[j]);
        }
    out.records.push_back(std::move(rec));
  }
  return out;
}

struct CenterDescriptor {
  enum class Kind { zero, p_power_subalgebra };
  Kind kind = Kind::zero;
  std::size_t scanned = 0;

  std::string text() const { return kind == Kind::zero ? "{0}" : "K[x^p, y^p]"; }
};

/// Z = C ∩ N_l ∩ N_m ∩ N_r, returned symbolically and validated on the
/// scanned elements.
inline CenterDescriptor center_of(const TwistParams& k, const ScanConfig& cfg) {
  CenterDescriptor d;
  const auto commuter = commuter_scan(k, cfg);
  d.scanned = commuter.size();
  if (k.is_zero()) {
    d.kind = CenterDescriptor::Kind::p_power_subalgebra;
    return d;  // commuter_scan already cross-checked structure against behavior
  }
  std::vector<std::vector<ScanRecord>> nuclei;
  for (auto side : {NucleusSide::left, NucleusSide::middle, NucleusSide::right})
    nuclei.push_back(nucleus_scan(k, side, cfg).records);
  for (const auto& rec : commuter) {
    if (!rec.member || rec.candidate.is_zero()) continue;
    bool in_all = true;
    for (const auto& records : nuclei)
      for (const auto& r : records)
        if (r.candidate == rec.candidate && !r.member) in_all = false;
    if (in_all) throw invariant_violation("center: nonzero central element " + render(rec.candidate) + " for k != 0");
  }
  d.kind = CenterDescriptor::Kind::zero;
  return d;
}

/// For k != 0, the element yx together with (yx, yx, yx)_* != 0.
inline std::optional<std::pair<WeylPoly, WeylPoly>> power_assoc_witness(const TwistParams& k) {
  if (k.is_zero()) return std::nullopt;
  const WeylPoly a = WeylPoly::monomial(k.field(), 1, 1);
  WeylPoly assoc = star_associator(k, a, a, a);
  if (assoc.is_zero()) throw invariant_violation("power-assoc: (yx, yx, yx)_* vanished for k = " + render(k));
  return std::pair{a, std::move(assoc)};
}

struct NonsimpleWitness {
  WeylPoly generator;
  std::uint32_t bound = 0;
  std::size_t checked = 0;
};

/// x^p generates a proper nonzero two-sided ideal: it is central, and every
/// nonzero q * x^p = alpha_k(q) x^p has total degree >= p, so 1 is never
/// reached. Validated on the scan set.
inline NonsimpleWitness nonsimple_witness(const TwistParams& k, const ScanConfig& cfg) {
  const Field& F = k.field();
  const std::uint32_t p = F.characteristic();
  NonsimpleWitness w{WeylPoly::monomial(F, 0, p), p, 0};
  for (const auto& q : scan_elements(F, cfg)) {
    if (q.is_zero()) continue;
    const WeylPoly prod = yau_mul(k, q, w.generator);
    if (!(prod == alpha_apply(k, q) * w.generator))
      throw invariant_violation("nonsimple: q * x^p != alpha(q) x^p for q = " + render(q));
    if (total_degree(prod) < static_cast<long long>(p))
      throw invariant_violation("nonsimple: degree of q * x^p below p for q = " + render(q));
    if (!(prod == yau_mul(k, w.generator, q)))
      throw invariant_violation("nonsimple: x^p fails to commute with " + render(q));
    ++w.checked;
  }
  return w;
}

}  // namespace weylk
