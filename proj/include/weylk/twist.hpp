#pragma once

// The twisting maps alpha_k of A_1 and the hom-associative Weyl algebras
// A_1^k = (A_1, *, alpha_k) with a * b = alpha_k(a b).
//
// alpha_k fixes x and sends y to k_0 + y + k_p y^p + k_{2p} y^{2p} + ...;
// these are exactly the unital endomorphisms of K[y] commuting with d/dy.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gfpn.hpp"
#include "weyl_poly.hpp"
#include "ypoly.hpp"

namespace weylk {

/// The vector k = (k_0, k_p, k_{2p}, ...), stored sparsely by index.
class TwistParams {
 public:
  explicit TwistParams(Field f) : field_(std::move(f)) {}

  /// Indices must be 0 or positive multiples of p; zero entries are dropped.
  TwistParams(Field f, const std::map<std::uint32_t, Coef>& entries) : field_(std::move(f)) {
    const auto p = field_.characteristic();
    for (auto [index, value] : entries) {
      if (index != 0 && index % p != 0)
        throw std::invalid_argument("twist index " + std::to_string(index) + " is not a multiple of p = " +
                                    std::to_string(p));
      if (value >= field_.order()) throw std::invalid_argument("twist coefficient out of range");
      if (value != 0) entries_[index] = value;
    }
  }

  const Field& field() const noexcept { return field_; }
  const std::map<std::uint32_t, Coef>& entries() const noexcept { return entries_; }

  /// k_index (0 when absent).
  Coef operator[](std::uint32_t index) const {
    auto it = entries_.find(index);
    return it == entries_.end() ? 0 : it->second;
  }

  bool is_zero() const noexcept { return entries_.empty(); }
  /// Support contained in {0}: alpha_k is then a triangular automorphism.
  bool is_k0_only() const noexcept { return entries_.empty() || (entries_.size() == 1 && entries_.begin()->first == 0); }

  /// M = (largest nonzero index) / p, or 0 when the support lies in {0}.
  std::uint32_t height() const noexcept {
    return entries_.empty() ? 0 : entries_.rbegin()->first / field_.characteristic();
  }

  /// alpha_k(y) as a polynomial in y.
  YPoly alpha_of_y() const {
    YPoly a(std::max<std::size_t>(2, (entries_.empty() ? 0 : entries_.rbegin()->first) + 1), 0);
    a[1] = 1;
    for (auto [index, value] : entries_) a[index] = field_.add(a[index], value);
    ypoly::trim(a);
    return a;
  }

  friend bool operator==(const TwistParams& a, const TwistParams& b) {
    return a.field_ == b.field_ && a.entries_ == b.entries_;
  }

 private:
  Field field_;
  std::map<std::uint32_t, Coef> entries_;
};

/// Comma-separated "index:coeff" pairs, e.g. "0:1,2:1". Coefficients are
/// integers or digit lists "[c0,c1,...]". The empty string is k = 0.
inline TwistParams parse_twist(const Field& F, std::string_view text) {
  auto fail = [&](const std::string& why) -> TwistParams {
    throw std::invalid_argument("bad twist '" + std::string(text) + "': " + why);
  };
  std::map<std::uint32_t, Coef> entries;
  auto parse_nat = [&](std::string_view s) -> std::uint64_t {
    if (s.empty() || s.size() > 9) fail("expected an integer, got '" + std::string(s) + "'");
    for (char c : s)
      if (c < '0' || c > '9') fail("expected an integer, got '" + std::string(s) + "'");
    return std::stoull(std::string(s));
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    // One "index:coeff" item; brackets may contain commas.
    std::size_t end = pos;
    int depth = 0;
    while (end < text.size() && (depth > 0 || text[end] != ',')) {
      if (text[end] == '[') ++depth;
      if (text[end] == ']') --depth;
      ++end;
    }
    std::string_view item = text.substr(pos, end - pos);
    auto colon = item.find(':');
    if (colon == std::string_view::npos) fail("expected index:coeff");
    const auto index = static_cast<std::uint32_t>(parse_nat(item.substr(0, colon)));
    std::string_view cs = item.substr(colon + 1);
    Coef value = 0;
    if (!cs.empty() && cs.front() == '[') {
      if (cs.back() != ']') fail("unterminated digit list");
      std::vector<std::uint32_t> digits;
      std::string_view body = cs.substr(1, cs.size() - 2);
      while (!body.empty()) {
        auto comma = body.find(',');
        digits.push_back(static_cast<std::uint32_t>(parse_nat(body.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        body = body.substr(comma + 1);
      }
      value = F.from_digits(digits);
    } else {
      value = F.from_int(static_cast<long long>(parse_nat(cs) % F.characteristic()));
    }
    if (entries.count(index)) fail("duplicate index " + std::to_string(index));
    entries[index] = value;
    pos = end + 1;
  }
  return TwistParams(F, entries);
}

/// Inverse of parse_twist; the zero twist renders as "0:0".
inline std::string render(const TwistParams& k) {
  if (k.is_zero()) return "0:0";
  std::string out;
  for (auto [index, value] : k.entries()) {
    if (!out.empty()) out += ',';
    out += std::to_string(index) + ":" + k.field().render(value);
  }
  return out;
}

/// Applies the unital endomorphism x -> x, y -> image_of_y to f. The image of
/// y is a polynomial in y only, so this is f(x, image_of_y) in normal form.
inline WeylPoly substitute_y(const WeylPoly& f, const YPoly& image_of_y) {
  const Field& F = f.field();
  std::unordered_map<std::uint32_t, YPoly> powers;
  std::vector<Term> raw;
  for (const auto& t : f.terms()) {
    auto it = powers.find(t.m);
    if (it == powers.end()) it = powers.emplace(t.m, ypoly::pow(F, image_of_y, t.m)).first;
    const YPoly& q = it->second;
    for (std::uint32_t i = 0; i < q.size(); ++i)
      if (q[i] != 0) raw.push_back({i, t.n, F.mul(q[i], t.c)});
  }
  return WeylPoly::from_terms(F, std::move(raw));
}

inline WeylPoly alpha_apply(const TwistParams& k, const WeylPoly& f) {
  if (!(k.field() == f.field())) throw field_mismatch();
  if (k.is_zero()) return f;
  return substitute_y(f, k.alpha_of_y());
}

/// Whether y -> image_of_y (extended with x -> x) commutes with d/dy on the
/// basis y^0, ..., y^cap.
inline bool substitution_commutes_with_ddy(const Field& F, const YPoly& image_of_y, std::uint32_t cap) {
  for (std::uint32_t m = 0; m <= cap; ++m) {
    const WeylPoly ym = WeylPoly::monomial(F, m, 0);
    if (!(substitute_y(partial_y(ym), image_of_y) == partial_y(substitute_y(ym, image_of_y)))) return false;
  }
  return true;
}

/// Self-test: alpha_k(d/dy f) = d/dy alpha_k(f) on y^0 .. y^cap.
inline bool alpha_commutes_with_ddy(const TwistParams& k, std::uint32_t cap = 16) {
  return substitution_commutes_with_ddy(k.field(), k.alpha_of_y(), cap);
}

/// f * g = alpha_k(f g).
inline WeylPoly yau_mul(const TwistParams& k, const WeylPoly& f, const WeylPoly& g) {
  return alpha_apply(k, f * g);
}

inline WeylPoly star_commutator(const TwistParams& k, const WeylPoly& f, const WeylPoly& g) {
  return yau_mul(k, f, g) - yau_mul(k, g, f);
}

/// (f * g) * h - f * (g * h).
inline WeylPoly star_associator(const TwistParams& k, const WeylPoly& f, const WeylPoly& g, const WeylPoly& h) {
  return yau_mul(k, yau_mul(k, f, g), h) - yau_mul(k, f, yau_mul(k, g, h));
}

enum class CommutatorSide {
  left_x,   // [x, f]_*
  right_y,  // [f, y]_*
};

/// [x, f]_* = (d f / dy)(x, alpha_k(y)) and [f, y]_* = (d f / dx)(x, alpha_k(y)),
/// without forming any product.
inline WeylPoly star_commutator_fast(const TwistParams& k, CommutatorSide side, const WeylPoly& f) {
  return alpha_apply(k, side == CommutatorSide::left_x ? partial_y(f) : partial_x(f));
}

inline bool alpha_is_surjective(const TwistParams& k) { return k.is_k0_only(); }

/// (q, r, s)_* = 0 decided through q alpha_k(r s) = alpha_k(q r) s, which
/// holds because alpha_k is injective.
inline bool associator_vanishes_iff(const TwistParams& k, const WeylPoly& q, const WeylPoly& r, const WeylPoly& s) {
  return q * alpha_apply(k, r * s) == alpha_apply(k, q * r) * s;
}

}  // namespace weylk
