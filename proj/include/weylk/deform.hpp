#pragma once

// Truncated multi-parameter deformations of A_1: the twist parameters
// k_0, k_p, ... become indeterminates t_1, ..., t_{M+1} and
//   alpha_t(y) = y + t_1 y^{i_1} + t_2 y^{i_2} + ...,   a ._t b = alpha_t(a . b),
// with series truncated at a total t-degree cap.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gfpn.hpp"
#include "twist.hpp"
#include "weyl_poly.hpp"

namespace weylk {

using MultiIndex = std::vector<std::uint32_t>;

/// Ascending total degree, then lexicographic.
struct GrlexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    const auto sa = std::accumulate(a.begin(), a.end(), 0u), sb = std::accumulate(b.begin(), b.end(), 0u);
    if (sa != sb) return sa < sb;
    return a < b;
  }
};

/// Which indices of k carry a parameter: t_s multiplies y^{shape[s]}.
struct DeformShape {
  Field field;
  std::vector<std::uint32_t> indices;

  /// {0, p, 2p, ..., Mp}.
  static DeformShape standard(const Field& F, std::uint32_t M) {
    DeformShape s{F, {}};
    for (std::uint32_t j = 0; j <= M; ++j) s.indices.push_back(j * F.characteristic());
    return s;
  }

  std::size_t num_params() const { return indices.size(); }

  /// The twist obtained by setting t_s = values[s].
  TwistParams twist_at(const std::vector<Coef>& values) const {
    if (values.size() != indices.size()) throw std::invalid_argument("deform: wrong number of parameter values");
    std::map<std::uint32_t, Coef> e;
    for (std::size_t s = 0; s < indices.size(); ++s) e[indices[s]] = field.add(e[indices[s]], values[s]);
    return TwistParams(field, e);
  }
};

class TruncSeries {
 public:
  TruncSeries(Field f, std::size_t num_params, std::uint32_t cap) : field_(std::move(f)), params_(num_params), cap_(cap) {}

  /// f t^0.
  static TruncSeries constant(const WeylPoly& f, std::size_t num_params, std::uint32_t cap) {
    TruncSeries s(f.field(), num_params, cap);
    s.add_term(MultiIndex(num_params, 0), f);
    return s;
  }

  const Field& field() const noexcept { return field_; }
  std::size_t num_params() const noexcept { return params_; }
  std::uint32_t cap() const noexcept { return cap_; }
  const std::map<MultiIndex, WeylPoly, GrlexLess>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Coefficient at a multi-index (zero if absent).
  WeylPoly extract(const MultiIndex& i) const {
    auto it = terms_.find(i);
    return it == terms_.end() ? WeylPoly(field_) : it->second;
  }
  WeylPoly extract_zero() const { return extract(MultiIndex(params_, 0)); }

  /// Adds c t^i; silently drops it when |i| exceeds the cap.
  void add_term(const MultiIndex& i, const WeylPoly& c) {
    if (i.size() != params_) throw std::invalid_argument("series: multi-index of wrong length");
    if (std::accumulate(i.begin(), i.end(), 0u) > cap_ || c.is_zero()) return;
    auto it = terms_.find(i);
    if (it == terms_.end()) {
      terms_.emplace(i, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void require_compatible(const TruncSeries& o) const {
    if (!(field_ == o.field_)) throw field_mismatch();
    if (params_ != o.params_ || cap_ != o.cap_) throw std::invalid_argument("series: incompatible parameter count or cap");
  }

  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) {
    a.require_compatible(b);
    for (const auto& [i, c] : b.terms_) a.add_term(i, c);
    return a;
  }
  TruncSeries operator-() const {
    TruncSeries out(field_, params_, cap_);
    for (const auto& [i, c] : terms_) out.terms_.emplace(i, -c);
    return out;
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

  /// The product ._0 extended to series, truncated.
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.require_compatible(b);
    TruncSeries out(a.field_, a.params_, a.cap_);
    for (const auto& [i, f] : a.terms_)
      for (const auto& [j, g] : b.terms_) {
        MultiIndex s(i.size());
        for (std::size_t r = 0; r < s.size(); ++r) s[r] = i[r] + j[r];
        out.add_term(s, f * g);
      }
    return out;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.field_ == b.field_ && a.params_ == b.params_ && a.cap_ == b.cap_ && a.terms_ == b.terms_;
  }

 private:
  Field field_;
  std::size_t params_;
  std::uint32_t cap_;
  std::map<MultiIndex, WeylPoly, GrlexLess> terms_;
};

inline std::string render(const MultiIndex& i) {
  std::string out = "t^(";
  for (std::size_t r = 0; r < i.size(); ++r) out += (r ? "," : "") + std::to_string(i[r]);
  return out + ")";
}

/// "coeff ⊗ t^(i1,...)" terms joined by " + ", graded-lex order.
inline std::string render(const TruncSeries& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [i, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + render(c) + ") ⊗ " + render(i);
  }
  return out;
}

namespace detail {

/// Calls fn(e) for every e in N^len with |e| <= budget.
template <typename Fn>
void for_each_bounded(std::size_t len, std::uint32_t budget, Fn&& fn) {
  MultiIndex e(len, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t pos, std::uint32_t left) {
    if (pos == len) {
      fn(e);
      return;
    }
    for (std::uint32_t v = 0; v <= left; ++v) {
      e[pos] = v;
      rec(pos + 1, left - v);
    }
    e[pos] = 0;
  };
  rec(0, budget);
}

}  // namespace detail

/// m! / (e_0! e_1! ...) mod p with e_0 = m - |e|, as a product of binomials
/// C(m, e_1) C(m - e_1, e_2) ... evaluated by Lucas.
inline std::uint32_t multinomial_mod(std::uint64_t m, const MultiIndex& e, std::uint32_t p) {
  std::uint64_t result = 1, rest = m;
  for (auto v : e) {
    if (v > rest) return 0;
    result = result * lucas_binom(rest, v, p) % p;
    if (result == 0) return 0;
    rest -= v;
  }
  return static_cast<std::uint32_t>(result);
}

/// alpha_t(f): each y^m x^n becomes
///   sum_{|e| <= m} multinomial(m; m-|e|, e) y^{m - |e| + sum_s e_s i_s} x^n t^e.
inline TruncSeries alpha_t_apply(const DeformShape& shape, const WeylPoly& f, std::uint32_t cap) {
  if (!(shape.field == f.field())) throw field_mismatch();
  const Field& F = f.field();
  const std::uint32_t p = F.characteristic();
  const std::size_t S = shape.num_params();
  std::map<MultiIndex, std::vector<Term>, GrlexLess> acc;
  for (const auto& t : f.terms()) {
    detail::for_each_bounded(S, std::min(cap, t.m), [&](const MultiIndex& e) {
      const std::uint32_t c = multinomial_mod(t.m, e, p);
      if (c == 0) return;
      std::uint32_t ydeg = t.m;
      for (std::size_t s = 0; s < S; ++s) ydeg = ydeg - e[s] + e[s] * shape.indices[s];
      acc[e].push_back({ydeg, t.n, F.scale(c, t.c)});
    });
  }
  TruncSeries out(F, S, cap);
  for (auto& [e, raw] : acc) out.add_term(e, WeylPoly::from_terms(F, std::move(raw)));
  return out;
}

/// alpha_t extended to series: sum_i alpha_t(a_i) t^i.
inline TruncSeries alpha_t_apply(const DeformShape& shape, const TruncSeries& a) {
  TruncSeries out(a.field(), a.num_params(), a.cap());
  for (const auto& [i, c] : a.terms()) {
    const std::uint32_t used = std::accumulate(i.begin(), i.end(), 0u);
    const TruncSeries image = alpha_t_apply(shape, c, a.cap() - used);
    for (const auto& [j, d] : image.terms()) {
      MultiIndex s(i.size());
      for (std::size_t r = 0; r < s.size(); ++r) s[r] = i[r] + j[r];
      out.add_term(s, d);
    }
  }
  return out;
}

inline TruncSeries mul_t(const DeformShape& shape, const TruncSeries& a, const TruncSeries& b) {
  return alpha_t_apply(shape, a * b);
}

inline TruncSeries bracket_t(const DeformShape& shape, const TruncSeries& a, const TruncSeries& b) {
  return mul_t(shape, a, b) - mul_t(shape, b, a);
}

/// Sum of c_i * prod_s values[s]^{i_s}; exact when the cap covers every
/// term the untruncated series would have.
inline WeylPoly specialize(const TruncSeries& s, const std::vector<Coef>& values) {
  if (values.size() != s.num_params()) throw std::invalid_argument("specialize: wrong number of values");
  const Field& F = s.field();
  WeylPoly out(F);
  for (const auto& [i, c] : s.terms()) {
    Coef w = 1;
    for (std::size_t r = 0; r < i.size(); ++r) w = F.mul(w, F.pow(values[r], i[r]));
    out += c.scaled(w);
  }
  return out;
}

/// Cap at which mul_t of two constant series is not truncated: the t-degree
/// of alpha_t(y^m x^n) is at most m.
inline std::uint32_t exact_cap_for_product(const WeylPoly& f, const WeylPoly& g) {
  return f.y_degree() + g.y_degree();
}

using SeriesProduct = std::function<TruncSeries(const TruncSeries&, const TruncSeries&)>;

struct Triple {
  WeylPoly a, b, c;
};

/// (a ._t b) ._t alpha_t(c) = alpha_t(a) ._t (b ._t c), coefficientwise up to
/// the cap. `product` overrides ._t (for negative controls).
inline bool check_hom_assoc_t(const DeformShape& shape, const std::vector<Triple>& samples, std::uint32_t cap,
                              const SeriesProduct& product = {}) {
  const std::size_t S = shape.num_params();
  SeriesProduct mul = product ? product : SeriesProduct([&](const TruncSeries& a, const TruncSeries& b) {
    return mul_t(shape, a, b);
  });
  for (const auto& t : samples) {
    const auto a = TruncSeries::constant(t.a, S, cap), b = TruncSeries::constant(t.b, S, cap),
               c = TruncSeries::constant(t.c, S, cap);
    if (!(mul(mul(a, b), alpha_t_apply(shape, c)) == mul(alpha_t_apply(shape, a), mul(b, c)))) return false;
  }
  return true;
}

/// [alpha_t(a), [b,c]_t]_t + [alpha_t(c), [a,b]_t]_t + [alpha_t(b), [c,a]_t]_t = 0.
inline bool check_hom_jacobi_t(const DeformShape& shape, const std::vector<Triple>& samples, std::uint32_t cap,
                               const SeriesProduct& product = {}) {
  const std::size_t S = shape.num_params();
  SeriesProduct mul = product ? product : SeriesProduct([&](const TruncSeries& a, const TruncSeries& b) {
    return mul_t(shape, a, b);
  });
  auto br = [&](const TruncSeries& a, const TruncSeries& b) { return mul(a, b) - mul(b, a); };
  for (const auto& t : samples) {
    const auto a = TruncSeries::constant(t.a, S, cap), b = TruncSeries::constant(t.b, S, cap),
               c = TruncSeries::constant(t.c, S, cap);
    const TruncSeries sum = br(alpha_t_apply(shape, a), br(b, c)) + br(alpha_t_apply(shape, c), br(a, b)) +
                            br(alpha_t_apply(shape, b), br(c, a));
    if (!sum.is_zero()) return false;
  }
  return true;
}

}  // namespace weylk
