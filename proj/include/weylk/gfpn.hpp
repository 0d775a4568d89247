#pragma once

// Exact arithmetic in the finite fields F_{p^n} and binomial coefficients
// modulo p.
//
// An element of F_{p^n} = F_p[z]/(f) is stored as the integer
// c_0 + c_1 p + ... + c_{n-1} p^{n-1}, where c_0 + c_1 z + ... is its
// reduced representative. Prime-field elements therefore coincide with their
// residue, and the integer literal c always denotes c * 1.
//
// Multiplication goes through discrete log / antilog tables built once per
// field, which keeps the target scale p^n <= 2^16 cheap.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace weylk {

/// Encoded field element (see file comment). Always < p^n.
using Coef = std::uint32_t;

namespace detail {

inline bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// Dense polynomials over F_p, coefficient of z^i at index i, no trailing zeros
// except for the zero polynomial (empty vector).
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo the monic polynomial g over F_p.
inline PrimePoly poly_mod(PrimePoly f, const PrimePoly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      const std::uint64_t sub = lead * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

// Monic polynomial of degree d whose lower coefficients are the base-p digits
// of code.
inline PrimePoly monic_from_code(std::uint64_t code, std::uint32_t d, std::uint32_t p) {
  PrimePoly g(d + 1, 0);
  for (std::uint32_t i = 0; i < d; ++i) {
    g[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  g[d] = 1;
  return g;
}

inline std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace detail

/// True iff the monic polynomial `poly` (constant coefficient first) is
/// irreducible over F_p. Trial division by every monic polynomial of degree at
/// most deg/2; intended for the small degrees this library targets.
inline bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  if (poly.size() < 2) return false;
  const auto deg = static_cast<std::uint32_t>(poly.size() - 1);
  if (deg == 1) return true;
  for (std::uint32_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = detail::ipow(p, d);
    for (std::uint64_t code = 0; code < count; ++code) {
      if (detail::poly_mod(poly, detail::monic_from_code(code, d, p), p).empty()) return false;
    }
  }
  return true;
}

/// Binomial coefficient C(m, r) mod p, digit by digit in base p (Lucas).
inline std::uint32_t lucas_binom(std::uint64_t m, std::uint64_t r, std::uint32_t p) {
  std::uint64_t result = 1;
  while (m > 0 || r > 0) {
    const std::uint64_t mi = m % p;
    const std::uint64_t ri = r % p;
    if (ri > mi) return 0;
    // C(mi, ri) mod p for digits below p: numerator/denominator are units.
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t j = 0; j < ri; ++j) {
      num = num * ((mi - j) % p) % p;
      den = den * ((j + 1) % p) % p;
    }
    result = result * num % p * detail::powmod(den, p - 2, p) % p;
    m /= p;
    r /= p;
  }
  return static_cast<std::uint32_t>(result % p);
}

/// Whether C(m, r) vanishes mod p for every 0 < r < m. For m = 1 the range is
/// empty and the answer is true (vacuous), even though 1 is not a positive
/// power of p; `is_positive_power_of` gives the other reading.
inline bool is_prime_power_binom_vanishing(std::uint64_t m, std::uint32_t p) {
  if (m == 0) throw std::invalid_argument("is_prime_power_binom_vanishing: m must be positive");
  for (std::uint64_t r = 1; r < m; ++r)
    if (lucas_binom(m, r, p) != 0) return false;
  return true;
}

inline bool is_positive_power_of(std::uint64_t m, std::uint32_t p) {
  if (m < p) return false;
  while (m % p == 0) m /= p;
  return m == 1;
}

class FieldElem;

/// Shared, immutable description of F_{p^n} together with its lookup tables.
class Field {
 public:
  /// Builds F_{p^n}. Without an explicit defining polynomial the smallest
  /// monic irreducible is chosen, ordering candidates by the integer
  /// c_0 + c_1 p + ... + c_{n-1} p^{n-1} of their lower coefficients.
  static Field make(std::uint32_t p, std::uint32_t n,
                    std::optional<std::vector<std::uint32_t>> irreducible = std::nullopt) {
    if (!detail::is_prime(p)) throw std::invalid_argument("field: p = " + std::to_string(p) + " is not prime");
    if (n < 1) throw std::invalid_argument("field: n must be positive");
    const std::uint64_t order = detail::ipow(p, n);
    if (n > 16 || order > (1u << 16)) throw std::invalid_argument("field: p^n exceeds 2^16");

    auto data = std::make_shared<Data>();
    data->p = p;
    data->n = n;
    data->order = static_cast<std::uint32_t>(order);

    if (irreducible) {
      auto poly = *irreducible;
      if (poly.size() != n + 1) throw std::invalid_argument("field: defining polynomial must have degree n");
      for (auto c : poly)
        if (c >= p) throw std::invalid_argument("field: coefficients must be residues in [0, p)");
      if (poly.back() != 1) throw std::invalid_argument("field: defining polynomial must be monic");
      if (!is_irreducible(poly, p)) throw std::invalid_argument("field: defining polynomial is reducible");
      data->modulus = std::move(poly);
    } else if (n == 1) {
      data->modulus = {0, 1};
    } else {
      const std::uint64_t count = detail::ipow(p, n);
      for (std::uint64_t code = 0; code < count && data->modulus.empty(); ++code) {
        auto cand = detail::monic_from_code(code, n, p);
        if (is_irreducible(cand, p)) data->modulus = std::move(cand);
      }
      if (data->modulus.empty()) throw std::logic_error("field: no irreducible polynomial found");
    }
    data->build_tables();
    return Field(std::move(data));
  }

  std::uint32_t characteristic() const noexcept { return d_->p; }
  std::uint32_t degree() const noexcept { return d_->n; }
  std::uint32_t order() const noexcept { return d_->order; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return d_->modulus; }
  bool is_prime_field() const noexcept { return d_->n == 1; }

  Coef zero() const noexcept { return 0; }
  Coef one() const noexcept { return 1; }

  /// Image of the integer v under Z -> F.
  Coef from_int(long long v) const noexcept {
    const long long p = d_->p;
    return static_cast<Coef>(((v % p) + p) % p);
  }

  /// Element with the given base-p digit vector (constant first, length <= n).
  Coef from_digits(const std::vector<std::uint32_t>& digits) const {
    if (digits.size() > d_->n) throw std::invalid_argument("field element has too many digits");
    Coef v = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (digits[i] >= d_->p) throw std::invalid_argument("field element digit out of range");
      v = v * d_->p + digits[i];
    }
    return v;
  }

  std::vector<std::uint32_t> digits(Coef a) const {
    std::vector<std::uint32_t> out(d_->n);
    for (std::uint32_t i = 0; i < d_->n; ++i) {
      out[i] = a % d_->p;
      a /= d_->p;
    }
    return out;
  }

  Coef add(Coef a, Coef b) const noexcept {
    const Data& d = *d_;
    if (d.p == 2) return a ^ b;
    if (d.n == 1) {
      const Coef s = a + b;
      return s >= d.p ? s - d.p : s;
    }
    if (!d.add_table.empty()) return d.add_table[a * d.order + b];
    return d.digit_add(a, b);
  }

  Coef neg(Coef a) const noexcept {
    const Data& d = *d_;
    if (d.p == 2 || a == 0) return a;
    if (d.n == 1) return d.p - a;
    Coef r = 0, w = 1;
    while (a) {
      const Coef digit = a % d.p;
      r += ((d.p - digit) % d.p) * w;
      a /= d.p;
      w *= d.p;
    }
    return r;
  }

  Coef sub(Coef a, Coef b) const noexcept { return add(a, neg(b)); }

  Coef mul(Coef a, Coef b) const noexcept {
    if (a == 0 || b == 0) return 0;
    const Data& d = *d_;
    return d.exp_table[d.log_table[a] + d.log_table[b]];
  }

  Coef inv(Coef a) const {
    if (a == 0) throw std::domain_error("field: inverse of zero");
    const Data& d = *d_;
    const std::uint32_t g = d.order - 1;
    return d.exp_table[(g - d.log_table[a]) % g];
  }

  Coef div(Coef a, Coef b) const { return mul(a, inv(b)); }

  Coef pow(Coef a, std::uint64_t e) const noexcept {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const Data& d = *d_;
    const std::uint64_t g = d.order - 1;
    return d.exp_table[static_cast<std::uint32_t>((static_cast<std::uint64_t>(d.log_table[a]) * (e % g)) % g)];
  }

  /// c * a for an integer c.
  Coef scale(long long c, Coef a) const noexcept { return mul(from_int(c), a); }

  FieldElem elem(Coef v) const;
  FieldElem elem_int(long long v) const;

  /// Text form of an element: plain residue for prime fields, "[c0,c1,...]"
  /// digit list otherwise.
  std::string render(Coef a) const {
    if (d_->n == 1) return std::to_string(a);
    std::string s = "[";
    auto dg = digits(a);
    for (std::size_t i = 0; i < dg.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(dg[i]);
    }
    return s + "]";
  }

  /// "p", "p^n" or "p^n:c0,...,cn".
  std::string spec_string() const {
    std::string s = std::to_string(d_->p);
    if (d_->n > 1) {
      s += "^" + std::to_string(d_->n) + ":";
      for (std::size_t i = 0; i < d_->modulus.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(d_->modulus[i]);
      }
    }
    return s;
  }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.d_ == b.d_ || (a.d_->p == b.d_->p && a.d_->n == b.d_->n && a.d_->modulus == b.d_->modulus);
  }

 private:
  struct Data {
    std::uint32_t p = 0, n = 0, order = 0;
    std::vector<std::uint32_t> modulus;
    std::vector<Coef> exp_table;  // length 2 (order - 1)
    std::vector<std::uint32_t> log_table;
    std::vector<Coef> add_table;  // only for small non-binary extension fields

    Coef digit_add(Coef a, Coef b) const noexcept {
      Coef r = 0, w = 1;
      while (a || b) {
        r += ((a % p + b % p) % p) * w;
        a /= p;
        b /= p;
        w *= p;
      }
      return r;
    }

    // Slow multiplication used only while building the tables.
    Coef poly_mul(Coef a, Coef b) const {
      detail::PrimePoly fa(n, 0), fb(n, 0);
      for (std::uint32_t i = 0; i < n; ++i) {
        fa[i] = a % p;
        a /= p;
        fb[i] = b % p;
        b /= p;
      }
      detail::PrimePoly prod(2 * n, 0);
      for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
          prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(fa[i]) * fb[j]) % p);
      auto r = detail::poly_mod(std::move(prod), modulus, p);
      Coef v = 0;
      for (std::size_t i = r.size(); i-- > 0;) v = v * p + r[i];
      return v;
    }

    void build_tables() {
      const std::uint32_t g = order - 1;
      exp_table.assign(2 * static_cast<std::size_t>(g), 0);
      log_table.assign(order, 0);
      for (Coef cand = 1; cand < order; ++cand) {
        Coef x = 1;
        std::uint32_t k = 0;
        bool ok = true;
        do {
          if (k >= g) {
            ok = false;
            break;
          }
          exp_table[k] = x;
          x = poly_mul(x, cand);
          ++k;
        } while (x != 1);
        if (ok && k == g) break;
        if (cand + 1 == order) throw std::logic_error("field: no primitive element (modulus not irreducible?)");
      }
      for (std::uint32_t k = 0; k < g; ++k) {
        log_table[exp_table[k]] = k;
        exp_table[k + g] = exp_table[k];
      }
      if (p != 2 && n > 1 && order <= 256) {
        add_table.resize(static_cast<std::size_t>(order) * order);
        for (Coef a = 0; a < order; ++a)
          for (Coef b = 0; b < order; ++b) add_table[a * order + b] = digit_add(a, b);
      }
    }
  };

  explicit Field(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::shared_ptr<const Data> d_;
};

/// A field element bundled with its field; the convenient public value type.
/// Containers in this library store bare `Coef` codes instead.
class FieldElem {
 public:
  FieldElem(Field f, Coef v) : field_(std::move(f)), v_(v) {
    if (v_ >= field_.order()) throw std::invalid_argument("field element code out of range");
  }

  const Field& field() const noexcept { return field_; }
  Coef code() const noexcept { return v_; }
  bool is_zero() const noexcept { return v_ == 0; }
  std::vector<std::uint32_t> coeffs() const { return field_.digits(v_); }

  FieldElem operator+(const FieldElem& o) const { return {field_, field_.add(v_, check(o))}; }
  FieldElem operator-(const FieldElem& o) const { return {field_, field_.sub(v_, check(o))}; }
  FieldElem operator*(const FieldElem& o) const { return {field_, field_.mul(v_, check(o))}; }
  FieldElem operator/(const FieldElem& o) const { return {field_, field_.div(v_, check(o))}; }
  FieldElem operator-() const { return {field_, field_.neg(v_)}; }
  FieldElem pow(std::uint64_t e) const { return {field_, field_.pow(v_, e)}; }
  FieldElem inverse() const { return {field_, field_.inv(v_)}; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.field_ == b.field_ && a.v_ == b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const FieldElem& a) { return os << a.field_.render(a.v_); }

 private:
  Coef check(const FieldElem& o) const {
    if (!(o.field_ == field_)) throw field_mismatch();
    return o.v_;
  }

  Field field_;
  Coef v_;
};

inline FieldElem Field::elem(Coef v) const { return FieldElem(*this, v); }
inline FieldElem Field::elem_int(long long v) const { return FieldElem(*this, from_int(v)); }

/// Parses "p", "p^n" or "p^n:c0,c1,...,cn".
inline Field parse_field_spec(std::string_view text) {
  auto fail = [&](const std::string& why) -> Field {
    throw std::invalid_argument("bad field spec '" + std::string(text) + "': " + why);
  };
  auto parse_uint = [&](std::string_view s) -> std::uint32_t {
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      fail("expected a nonnegative integer, got '" + std::string(s) + "'");
    return static_cast<std::uint32_t>(std::stoul(std::string(s)));
  };
  std::string_view head = text;
  std::optional<std::vector<std::uint32_t>> poly;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    head = text.substr(0, colon);
    std::vector<std::uint32_t> coeffs;
    std::string_view rest = text.substr(colon + 1);
    while (true) {
      auto comma = rest.find(',');
      coeffs.push_back(parse_uint(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    poly = std::move(coeffs);
  }
  std::uint32_t p = 0, n = 1;
  if (auto caret = head.find('^'); caret != std::string_view::npos) {
    p = parse_uint(head.substr(0, caret));
    n = parse_uint(head.substr(caret + 1));
  } else {
    p = parse_uint(head);
  }
  return Field::make(p, n, std::move(poly));
}

}  // namespace weylk
