#pragma once

// Recursive-descent parser for polynomial expressions in x and y:
//   expr   := term (("+" | "-") term)*
//   term   := factor ("*" factor)*
//   factor := "-" factor | base ("^" nat)?
//   base   := nat | field-literal | "x" | "y" | "(" expr ")"
//   field-literal := "[" nat ("," nat)* "]"      digits c0, c1, ... of c0 + c1 z + ...
// There is no implicit multiplication: "yx" is rejected, write "y*x".

#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "gfpn.hpp"
#include "maps.hpp"
#include "twist.hpp"
#include "weyl_poly.hpp"

namespace weylk {

inline constexpr std::uint32_t kMaxExponent = 1u << 16;

struct Expr {
  enum class Kind { constant, var_x, var_y, add, sub, neg, mul, pow };
  Kind kind = Kind::constant;
  Coef value = 0;          // constant
  std::uint32_t exponent = 0;  // pow
  std::unique_ptr<Expr> lhs, rhs;
};

using ExprPtr = std::unique_ptr<Expr>;

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, const Field& F) : s_(text), F_(F) {}

  ExprPtr parse_all() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static ExprPtr node(Expr::Kind k, ExprPtr l = nullptr, ExprPtr r = nullptr) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  /// Digits as a plain integer, failing above `limit`.
  std::uint64_t nat(std::uint64_t limit, const char* what) {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail(std::string("expected ") + what);
    std::uint64_t v = 0;
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
      if (v > limit) {
        pos_ = start;
        fail(std::string(what) + " too large");
      }
      ++pos_;
    }
    return v;
  }

  /// An integer literal reduced mod p as it is read, so any length is fine.
  Coef literal() {
    std::uint64_t v = 0;
    const std::uint64_t p = F_.characteristic();
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      v = (v * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0')) % p;
    return F_.from_int(static_cast<long long>(v));
  }

  ExprPtr expr() {
    auto e = term();
    while (true) {
      if (accept('+'))
        e = node(Expr::Kind::add, std::move(e), term());
      else if (accept('-'))
        e = node(Expr::Kind::sub, std::move(e), term());
      else
        return e;
    }
  }

  ExprPtr term() {
    auto e = factor();
    while (accept('*')) e = node(Expr::Kind::mul, std::move(e), factor());
    return e;
  }

  ExprPtr factor() {
    if (accept('-')) return node(Expr::Kind::neg, factor());
    auto e = base();
    if (accept('^')) {
      auto p = node(Expr::Kind::pow, std::move(e));
      p->exponent = static_cast<std::uint32_t>(nat(kMaxExponent, "exponent"));
      return p;
    }
    return e;
  }

  ExprPtr base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      expect(')');
      return e;
    }
    if (c == 'x' || c == 'y') {
      ++pos_;
      auto e = node(c == 'x' ? Expr::Kind::var_x : Expr::Kind::var_y);
      if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('))
        fail("implicit multiplication is not allowed");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto e = node(Expr::Kind::constant);
      e->value = literal();
      if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('))
        fail("implicit multiplication is not allowed");
      return e;
    }
    if (c == '[') {
      ++pos_;
      std::vector<std::uint32_t> digits;
      do {
        const auto d = nat(F_.characteristic() - 1, "field digit below p");
        digits.push_back(static_cast<std::uint32_t>(d));
      } while (accept(','));
      expect(']');
      if (digits.size() > F_.degree()) fail("field literal has more than n digits");
      auto e = node(Expr::Kind::constant);
      e->value = F_.from_digits(digits);
      return e;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  const Field& F_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse(std::string_view text, const Field& F) { return detail::Parser(text, F).parse_all(); }

/// Evaluation mode: the Ore product, or the twisted product of A_1^k.
struct EvalMode {
  std::optional<TwistParams> twist;

  static EvalMode associative() { return {}; }
  static EvalMode twisted(TwistParams k) { return {std::move(k)}; }
};

/// Products are evaluated left-associated as parsed; in twisted mode f^e is
/// ((f * f) * f) ... with f^0 = 1.
inline WeylPoly eval(const Expr& e, const Field& F, const EvalMode& mode) {
  auto mul = [&](const WeylPoly& a, const WeylPoly& b) { return mode.twist ? yau_mul(*mode.twist, a, b) : a * b; };
  switch (e.kind) {
    case Expr::Kind::constant: return WeylPoly::constant(F, e.value);
    case Expr::Kind::var_x: return WeylPoly::x(F);
    case Expr::Kind::var_y: return WeylPoly::y(F);
    case Expr::Kind::add: return eval(*e.lhs, F, mode) + eval(*e.rhs, F, mode);
    case Expr::Kind::sub: return eval(*e.lhs, F, mode) - eval(*e.rhs, F, mode);
    case Expr::Kind::neg: return -eval(*e.lhs, F, mode);
    case Expr::Kind::mul: return mul(eval(*e.lhs, F, mode), eval(*e.rhs, F, mode));
    case Expr::Kind::pow: {
      const WeylPoly b = eval(*e.lhs, F, mode);
      if (!mode.twist) return pow(b, e.exponent);
      WeylPoly out = WeylPoly::one(F);
      for (std::uint32_t i = 0; i < e.exponent; ++i) out = i == 0 ? b : mul(out, b);
      return out;
    }
  }
  throw std::logic_error("eval: unknown node");
}

/// Parse and evaluate associatively.
inline WeylPoly parse_poly(std::string_view text, const Field& F) {
  return eval(*parse(text, F), F, EvalMode::associative());
}

/// "x->expr; y->expr" (either order, both required).
inline GenMap parse_genmap(std::string_view text, const Field& F, MapKind kind) {
  std::optional<WeylPoly> fx, fy;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    const auto semi = text.find(';', offset);
    const std::string_view part = text.substr(offset, semi == std::string_view::npos ? std::string_view::npos : semi - offset);
    const auto arrow = part.find("->");
    if (arrow == std::string_view::npos) throw parse_error("expected 'x->expr' or 'y->expr'", offset);
    std::string_view name = part.substr(0, arrow);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.remove_prefix(1);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
    std::optional<WeylPoly>* slot = name == "x" ? &fx : name == "y" ? &fy : nullptr;
    if (!slot) throw parse_error("map target must be x or y", offset);
    if (*slot) throw parse_error("duplicate image for " + std::string(name), offset);
    try {
      *slot = parse_poly(part.substr(arrow + 2), F);
    } catch (const parse_error& e) {
      throw parse_error("bad image of " + std::string(name), offset + arrow + 2 + e.position());
    }
    if (semi == std::string_view::npos) break;
    offset = semi + 1;
  }
  if (!fx || !fy) throw parse_error("map needs images of both x and y", text.size());
  return kind == MapKind::endomorphism ? GenMap::endo(*fx, *fy) : GenMap::der(*fx, *fy);
}

}  // namespace weylk
