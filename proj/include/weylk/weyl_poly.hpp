#pragma once

// Elements of the first Weyl algebra A_1 = K[y][x; id, d/dy] over a finite
// field K, kept in the normal form sum c_{mn} y^m x^n.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gfpn.hpp"

namespace weylk {

/// deg(0).
inline constexpr long long kDegNegInf = std::numeric_limits<long long>::min();

/// c * y^m x^n.
struct Term {
  std::uint32_t m = 0;  // power of y
  std::uint32_t n = 0;  // power of x
  Coef c = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

class WeylPoly {
 public:
  explicit WeylPoly(Field f) : field_(std::move(f)) {}

  /// Canonicalizes an arbitrary term list: sorts, merges duplicates, drops
  /// zero coefficients.
  static WeylPoly from_terms(Field f, std::vector<Term> raw) {
    WeylPoly out(std::move(f));
    out.terms_ = std::move(raw);
    out.normalize();
    return out;
  }

  static WeylPoly monomial(Field f, std::uint32_t m, std::uint32_t n, Coef c = 1) {
    WeylPoly out(std::move(f));
    if (c != 0) out.terms_.push_back({m, n, c});
    return out;
  }
  static WeylPoly constant(Field f, Coef c) { return monomial(std::move(f), 0, 0, c); }
  static WeylPoly one(Field f) { return constant(std::move(f), 1); }
  static WeylPoly x(Field f) { return monomial(std::move(f), 0, 1); }
  static WeylPoly y(Field f) { return monomial(std::move(f), 1, 0); }

  const Field& field() const noexcept { return field_; }
  /// Terms in ascending lexicographic (m, n) order.
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].m == 0 && terms_[0].n == 0); }

  Coef coeff(std::uint32_t m, std::uint32_t n) const noexcept {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{m, n},
                               [](const Term& t, const std::pair<std::uint32_t, std::uint32_t>& k) {
                                 return std::tie(t.m, t.n) < std::tie(k.first, k.second);
                               });
    return (it != terms_.end() && it->m == m && it->n == n) ? it->c : 0;
  }

  /// Largest power of y (0 for the zero polynomial).
  std::uint32_t y_degree() const noexcept {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.m);
    return d;
  }
  std::uint32_t x_degree() const noexcept {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.n);
    return d;
  }

  WeylPoly operator-() const {
    WeylPoly out = *this;
    for (auto& t : out.terms_) t.c = field_.neg(t.c);
    return out;
  }

  friend WeylPoly operator+(const WeylPoly& a, const WeylPoly& b) { return a.combine(b, false); }
  friend WeylPoly operator-(const WeylPoly& a, const WeylPoly& b) { return a.combine(b, true); }
  /// Ore product.
  friend WeylPoly operator*(const WeylPoly& a, const WeylPoly& b);

  WeylPoly& operator+=(const WeylPoly& b) { return *this = *this + b; }
  WeylPoly& operator-=(const WeylPoly& b) { return *this = *this - b; }

  /// c * f for a field scalar.
  WeylPoly scaled(Coef c) const {
    if (c == 0) return WeylPoly(field_);
    WeylPoly out = *this;
    for (auto& t : out.terms_) t.c = field_.mul(t.c, c);
    return out;
  }

  friend bool operator==(const WeylPoly& a, const WeylPoly& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  void require_same_field(const WeylPoly& o) const {
    if (!(o.field_ == field_)) throw field_mismatch();
  }

 private:
  WeylPoly combine(const WeylPoly& b, bool subtract) const {
    require_same_field(b);
    WeylPoly out(field_);
    out.terms_.reserve(terms_.size() + b.terms_.size());
    auto i = terms_.begin();
    auto j = b.terms_.begin();
    auto key = [](const Term& t) { return std::tie(t.m, t.n); };
    while (i != terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != terms_.end() && key(*i) < key(*j))) {
        out.terms_.push_back(*i++);
      } else {
        Term t = *j++;
        if (subtract) t.c = field_.neg(t.c);
        if (i != terms_.end() && key(*i) == key(t)) {
          t.c = field_.add(i->c, t.c);
          ++i;
          if (t.c == 0) continue;
        }
        out.terms_.push_back(t);
      }
    }
    return out;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return std::tie(a.m, a.n) < std::tie(b.m, b.n); });
    std::size_t w = 0;
    for (std::size_t r = 0; r < terms_.size();) {
      Term t = terms_[r++];
      while (r < terms_.size() && terms_[r].m == t.m && terms_[r].n == t.n) t.c = field_.add(t.c, terms_[r++].c);
      if (t.c != 0) terms_[w++] = t;
    }
    terms_.resize(w);
  }

  Field field_;
  std::vector<Term> terms_;
};

/// Product in A_1, via the closed form
///   y^a x^b . y^c x^d = sum_j C(b,j) [c]_j y^{a+c-j} x^{b-j+d},
/// with [c]_j = c (c-1) ... (c-j+1) the j-th derivative factor of y^c.
/// Only j < p can contribute: j! divides C(b,j) [c]_j.
inline WeylPoly operator*(const WeylPoly& a, const WeylPoly& b) {
  a.require_same_field(b);
  const Field& F = a.field();
  const std::uint64_t p = F.characteristic();
  std::vector<Term> raw;
  raw.reserve(a.size() * b.size());
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      const Coef lead = F.mul(s.c, t.c);
      // coef_j = C(b, j) * [c]_j mod p, built incrementally.
      std::uint64_t coef = 1;
      const std::uint32_t jmax = std::min<std::uint64_t>({s.n, t.m, p - 1});
      for (std::uint32_t j = 0; j <= jmax; ++j) {
        if (j > 0) {
          coef = coef * ((s.n - j + 1) % p) % p;
          coef = coef * ((t.m - j + 1) % p) % p;
          coef = coef * detail::powmod(j, p - 2, p) % p;
          if (coef == 0) break;
        }
        raw.push_back({s.m + t.m - j, s.n - j + t.n, F.scale(static_cast<long long>(coef), lead)});
      }
    }
  }
  return WeylPoly::from_terms(F, std::move(raw));
}

inline WeylPoly ore_mul(const WeylPoly& f, const WeylPoly& g) { return f * g; }

inline WeylPoly pow(const WeylPoly& f, std::uint64_t e) {
  WeylPoly result = WeylPoly::one(f.field());
  WeylPoly base = f;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

/// d/dx on the normal form, sum_i i q_i(y) x^{i-1}.
inline WeylPoly partial_x(const WeylPoly& f) {
  const Field& F = f.field();
  std::vector<Term> raw;
  for (const auto& t : f.terms())
    if (t.n > 0) raw.push_back({t.m, t.n - 1, F.scale(t.n, t.c)});
  return WeylPoly::from_terms(F, std::move(raw));
}

inline WeylPoly partial_y(const WeylPoly& f) {
  const Field& F = f.field();
  std::vector<Term> raw;
  for (const auto& t : f.terms())
    if (t.m > 0) raw.push_back({t.m - 1, t.n, F.scale(t.m, t.c)});
  return WeylPoly::from_terms(F, std::move(raw));
}

/// Total degree, kDegNegInf for zero.
inline long long total_degree(const WeylPoly& f) {
  long long d = kDegNegInf;
  for (const auto& t : f.terms()) d = std::max<long long>(d, static_cast<long long>(t.m) + t.n);
  return d;
}

inline WeylPoly commutator(const WeylPoly& f, const WeylPoly& g) { return f * g - g * f; }

/// (f g) h - f (g h); identically zero in A_1.
inline WeylPoly associator(const WeylPoly& f, const WeylPoly& g, const WeylPoly& h) {
  return (f * g) * h - f * (g * h);
}

/// Whether every exponent of every term is divisible by p, i.e. f lies in
/// K[x^p, y^p].
inline bool in_p_power_subalgebra(const WeylPoly& f) {
  const auto p = f.field().characteristic();
  return std::all_of(f.terms().begin(), f.terms().end(), [p](const Term& t) { return t.m % p == 0 && t.n % p == 0; });
}

/// Text form, terms in descending (m, n) order: "2*y^3*x + y + 1".
inline std::string render(const WeylPoly& f) {
  if (f.is_zero()) return "0";
  const Field& F = f.field();
  std::string out;
  auto ts = f.terms();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    if (!out.empty()) out += " + ";
    std::string mono;
    auto factor = [&mono](const char* var, std::uint32_t e) {
      if (e == 0) return;
      if (!mono.empty()) mono += '*';
      mono += var;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    factor("y", it->m);
    factor("x", it->n);
    if (mono.empty())
      out += F.render(it->c);
    else if (it->c == 1)
      out += mono;
    else
      out += F.render(it->c) + "*" + mono;
  }
  return out;
}

}  // namespace weylk
