#pragma once

// Tiny arithmetic grammar for integer sequences n_k, r_k and polynomial
// generators:
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/" | "%" | "mod") unary } ;
//   unary   = "-" unary | power ;
//   power   = primary [ "^" unary ] ;
//   primary = integer | "k" | "n" | "(" expr ")" ;
//
// "k" and "n" name the same variable. "/" is exact division, "mod" returns a
// value in [0, |m|).

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "reclab/error.hpp"
#include "reclab/intset.hpp"
#include "reclab/real.hpp"

namespace reclab {

class Expression {
 public:
  static Expression parse(std::string_view text) {
    Parser p{text, 0};
    Expression e;
    e.source_ = std::string(text);
    e.root_ = p.expr();
    p.skip_space();
    if (p.pos != text.size()) p.fail("unexpected trailing input");
    return e;
  }

  const std::string& source() const noexcept { return source_; }

  BigInt operator()(const BigInt& k) const { return eval(*root_, k); }

  /// Polynomial form, or nullopt when the expression uses mod or a variable exponent.
  std::optional<Polynomial> as_polynomial() const { return to_poly(*root_); }

 private:
  enum class Op { constant, variable, neg, add, sub, mul, div, mod, pow };
  struct Node {
    Op op;
    BigInt value;
    std::shared_ptr<const Node> lhs, rhs;
  };
  using NodePtr = std::shared_ptr<const Node>;

  static NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr, BigInt v = 0) {
    return std::make_shared<const Node>(Node{op, std::move(v), std::move(l), std::move(r)});
  }

  struct Parser {
    std::string_view s;
    std::size_t pos;

    [[noreturn]] void fail(const std::string& why) const {
      throw ParseError("expression '" + std::string(s) + "': " + why + " at offset " + std::to_string(pos));
    }
    void skip_space() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(std::string_view tok) {
      skip_space();
      if (s.substr(pos, tok.size()) == tok) {
        // "mod" must not be the prefix of a longer identifier
        if (std::isalpha(static_cast<unsigned char>(tok[0])) && pos + tok.size() < s.size() &&
            std::isalnum(static_cast<unsigned char>(s[pos + tok.size()])))
          return false;
        pos += tok.size();
        return true;
      }
      return false;
    }
    NodePtr expr() {
      NodePtr l = term();
      for (;;) {
        if (eat("+")) {
          l = make(Op::add, l, term());
        } else if (eat("-")) {
          l = make(Op::sub, l, term());
        } else {
          return l;
        }
      }
    }
    NodePtr term() {
      NodePtr l = unary();
      for (;;) {
        if (eat("*") || eat("\xC3\x97")) {  // '*' or U+00D7
          l = make(Op::mul, l, unary());
        } else if (eat("/")) {
          l = make(Op::div, l, unary());
        } else if (eat("%") || eat("mod")) {
          l = make(Op::mod, l, unary());
        } else {
          return l;
        }
      }
    }
    NodePtr unary() {
      if (eat("-")) return make(Op::neg, unary());
      return power();
    }
    NodePtr power() {
      NodePtr base = primary();
      if (eat("^")) return make(Op::pow, base, unary());
      return base;
    }
    NodePtr primary() {
      skip_space();
      if (pos >= s.size()) fail("unexpected end of input");
      if (eat("(")) {
        NodePtr e = expr();
        if (!eat(")")) fail("expected ')'");
        return e;
      }
      const char c = s[pos];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return make(Op::constant, nullptr, nullptr, detail::decimal_digits(std::string(s.substr(start, pos - start))));
      }
      if (eat("k") || eat("n")) return make(Op::variable);
      fail("unexpected character");
    }
  };

  static BigInt eval(const Node& n, const BigInt& k) {
    switch (n.op) {
      case Op::constant: return n.value;
      case Op::variable: return k;
      case Op::neg: return -eval(*n.lhs, k);
      case Op::add: return eval(*n.lhs, k) + eval(*n.rhs, k);
      case Op::sub: return eval(*n.lhs, k) - eval(*n.rhs, k);
      case Op::mul: return eval(*n.lhs, k) * eval(*n.rhs, k);
      case Op::div: {
        const BigInt a = eval(*n.lhs, k), b = eval(*n.rhs, k);
        if (b == 0) throw InvalidArgument("division by zero in sequence expression");
        if (a % b != 0) throw InvalidArgument("inexact division in sequence expression");
        return a / b;
      }
      case Op::mod: {
        const BigInt a = eval(*n.lhs, k);
        BigInt m = eval(*n.rhs, k);
        if (m == 0) throw InvalidArgument("mod by zero in sequence expression");
        if (m < 0) m = -m;
        BigInt r = a % m;
        if (r < 0) r += m;
        return r;
      }
      case Op::pow: {
        const BigInt a = eval(*n.lhs, k), e = eval(*n.rhs, k);
        if (e < 0 || e > 100000) throw InvalidArgument("exponent out of range [0, 100000]");
        return boost::multiprecision::pow(a, e.convert_to<unsigned>());
      }
    }
    return 0;
  }

  static std::optional<Polynomial> to_poly(const Node& n) {
    auto both = [&](auto f) -> std::optional<Polynomial> {
      auto a = to_poly(*n.lhs);
      auto b = to_poly(*n.rhs);
      if (!a || !b) return std::nullopt;
      return f(*a, *b);
    };
    switch (n.op) {
      case Op::constant: return Polynomial({Rational(n.value)});
      case Op::variable: return Polynomial::monomial(1);
      case Op::neg: {
        auto a = to_poly(*n.lhs);
        if (!a) return std::nullopt;
        return -*a;
      }
      case Op::add: return both([](const Polynomial& a, const Polynomial& b) { return a + b; });
      case Op::sub: return both([](const Polynomial& a, const Polynomial& b) { return a - b; });
      case Op::mul: return both([](const Polynomial& a, const Polynomial& b) { return a * b; });
      case Op::div: {
        auto a = to_poly(*n.lhs);
        auto b = to_poly(*n.rhs);
        if (!a || !b || !b->is_constant() || b->constant_term() == 0) return std::nullopt;
        return *a * Polynomial({Rational(1) / b->constant_term()});
      }
      case Op::mod: return std::nullopt;
      case Op::pow: {
        auto a = to_poly(*n.lhs);
        auto e = to_poly(*n.rhs);
        if (!a || !e || !e->is_constant()) return std::nullopt;
        const Rational ev = e->constant_term();
        if (boost::multiprecision::denominator(ev) != 1 || ev < 0 || ev > 64) return std::nullopt;
        Polynomial r({Rational(1)});
        for (int i = 0; i < boost::multiprecision::numerator(ev).convert_to<int>(); ++i) r = r * *a;
        return r;
      }
    }
    return std::nullopt;
  }

  std::string source_;
  NodePtr root_;
};

/// n_k or r_k for k = 1, 2, ...: a formula or an explicit list.
class SequenceSource {
 public:
  SequenceSource() : SequenceSource(Expression::parse("k")) {}
  explicit SequenceSource(Expression e) : src_(std::move(e)) {}
  explicit SequenceSource(std::vector<BigInt> values) : src_(std::move(values)) {}

  static SequenceSource identity() { return SequenceSource(); }

  BigInt at(std::int64_t k) const {
    if (const auto* e = std::get_if<Expression>(&src_)) return (*e)(BigInt(k));
    const auto& v = std::get<std::vector<BigInt>>(src_);
    if (k < 1 || static_cast<std::size_t>(k) > v.size())
      throw InvalidArgument("explicit sequence has no term k=" + std::to_string(k));
    return v[static_cast<std::size_t>(k - 1)];
  }

  std::string describe() const {
    if (const auto* e = std::get_if<Expression>(&src_)) return e->source();
    return "explicit list of " + std::to_string(std::get<std::vector<BigInt>>(src_).size()) + " terms";
  }

 private:
  std::variant<Expression, std::vector<BigInt>> src_;
};

}  // namespace reclab
