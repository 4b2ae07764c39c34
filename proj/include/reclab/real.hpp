#pragma once

// Exact real numbers of the form q0 + q1*sqrt(d1) + ... + qk*sqrt(dk) with
// rational coefficients and distinct squarefree radicands. Rationals and
// quadratic surds (every torus frequency the library accepts) live here, and
// so do sums of squares of them (Euclidean norms on T^k). Comparisons are
// exact: a single surd is settled algebraically, several surds by interval
// refinement, which always terminates because square roots of distinct
// squarefree integers are linearly independent over Q. The refinement is
// capped at precision_bits(); past the cap UncertainAtPrecision is raised.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "reclab/error.hpp"

namespace reclab {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline constexpr int kDefaultPrecisionBits = 128;

namespace detail {
inline std::atomic<int>& precision_slot() {
  static std::atomic<int> bits{kDefaultPrecisionBits};
  return bits;
}
}  // namespace detail

/// Cap on interval refinement, in bits. Process-wide.
inline int precision_bits() { return detail::precision_slot().load(std::memory_order_relaxed); }

inline void set_precision_bits(int bits) {
  if (bits < 32) throw InvalidArgument("precision must be at least 32 bits");
  detail::precision_slot().store(bits, std::memory_order_relaxed);
}

// ---------------------------------------------------------------------------
// Rational helpers

inline BigInt floor_of(const Rational& q) {
  BigInt n = boost::multiprecision::numerator(q);
  const BigInt d = boost::multiprecision::denominator(q);
  BigInt f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

inline BigInt ceil_of(const Rational& q) { return -floor_of(-q); }

inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

namespace detail {
/// Decimal digits to BigInt. Leading zeros are dropped first: the string
/// constructor would otherwise read "025" as octal.
inline BigInt decimal_digits(std::string s) {
  const auto nz = s.find_first_not_of('0');
  return BigInt(nz == std::string::npos ? std::string("0") : s.substr(nz));
}
}  // namespace detail

/// Exact parse of "p", "p/q" or a decimal literal such as "-0.034" or "1.5e-3".
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw ParseError("not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::string num(text.substr(0, slash));
    const std::string den(text.substr(slash + 1));
    auto is_int = [](const std::string& s) {
      std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (i >= s.size()) return false;
      return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                         [](unsigned char c) { return std::isdigit(c); });
    };
    if (!is_int(num) || !is_int(den)) fail();
    auto value = [](const std::string& s) {
      if (s[0] == '-') return BigInt(-detail::decimal_digits(s.substr(1)));
      return detail::decimal_digits(s[0] == '+' ? s.substr(1) : s);
    };
    const BigInt d = value(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(value(num), d);
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '-' || text[i] == '+') {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long long exponent = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      const std::string rest(text.substr(i + 1));
      if (rest.empty()) fail();
      char* end = nullptr;
      const long long e = std::strtoll(rest.c_str(), &end, 10);
      if (*end != '\0' || e > 100000 || e < -100000) fail();
      exponent += e;
      break;
    } else {
      fail();
    }
  }
  if (!seen_digit) fail();
  Rational value{detail::decimal_digits(digits)};
  BigInt ten_power = 1;
  for (long long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) ten_power *= 10;
  value = exponent < 0 ? value / Rational(ten_power) : value * Rational(ten_power);
  return negative ? Rational(-value) : value;
}

// ---------------------------------------------------------------------------
// Radicand bookkeeping

struct SquareSplit {
  std::uint64_t square_root_part;  // s with d = s^2 * t
  std::uint64_t squarefree_part;   // t
};

inline SquareSplit split_square(std::uint64_t d) {
  if (d == 0) return {0, 1};
  if (d > 1'000'000'000'000'000'000ULL) throw InvalidArgument("radicand too large (limit 1e18)");
  std::uint64_t s = 1, t = 1, rem = d;
  std::uint64_t p = 2;
  for (; p * p <= rem && p <= 1'000'000; ++p) {
    int e = 0;
    while (rem % p == 0) {
      rem /= p;
      ++e;
    }
    for (int k = 0; k < e / 2; ++k) s *= p;
    if (e % 2 == 1) t *= p;
  }
  // Every prime factor left in rem exceeds 10^6 and rem < 10^18, so rem is
  // 1, a prime, a product of two distinct primes, or a prime square.
  if (rem > 1) {
    const auto r = static_cast<std::uint64_t>(boost::multiprecision::sqrt(BigInt(rem)).convert_to<std::uint64_t>());
    if (r * r == rem) {
      s *= r;
    } else {
      t *= rem;
    }
  }
  return {s, t};
}

namespace detail {
inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}
}  // namespace detail

// ---------------------------------------------------------------------------

class Real {
 public:
  using Term = std::pair<std::uint64_t, Rational>;  // (squarefree radicand, coefficient)

  Real() = default;
  Real(long long v) {  // NOLINT(google-explicit-constructor)
    if (v != 0) terms_.emplace_back(1, Rational(v));
  }
  Real(int v) : Real(static_cast<long long>(v)) {}  // NOLINT(google-explicit-constructor)
  Real(const BigInt& v) {                           // NOLINT(google-explicit-constructor)
    if (v != 0) terms_.emplace_back(1, Rational(v));
  }
  Real(const Rational& q) {  // NOLINT(google-explicit-constructor)
    if (q != 0) terms_.emplace_back(1, q);
  }

  /// coeff * sqrt(d), with d reduced to its squarefree part.
  static Real scaled_sqrt(const Rational& coeff, std::uint64_t d) {
    const auto [s, t] = split_square(d);
    Real r;
    const Rational c = coeff * Rational(BigInt(s));
    if (c != 0) r.terms_.emplace_back(t, c);
    return r;
  }

  /// (a + b*sqrt(d)) / c
  static Real quadratic(const Rational& a, const Rational& b, std::uint64_t d, const Rational& c) {
    if (c == 0) throw InvalidArgument("quadratic surd with zero denominator");
    return (Real(a) + scaled_sqrt(b, d)) / c;
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_rational() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1); }

  Rational rational_part() const {
    return (!terms_.empty() && terms_[0].first == 1) ? terms_[0].second : Rational(0);
  }

  std::size_t surd_count() const noexcept {
    return terms_.size() - ((!terms_.empty() && terms_[0].first == 1) ? 1 : 0);
  }

  /// The single radicand of a quadratic number (1 when rational); 0 for mixed fields.
  std::uint64_t field() const noexcept {
    std::uint64_t d = 1;
    for (const auto& [rad, c] : terms_) {
      if (rad == 1) continue;
      if (d != 1 && d != rad) return 0;
      d = rad;
    }
    return d;
  }

  Real operator-() const {
    Real r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  Real& operator+=(const Real& o) {
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
        out.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->first < a->first) {
        out.push_back(*b++);
      } else {
        Rational c = a->second + b->second;
        if (c != 0) out.emplace_back(a->first, std::move(c));
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }
  Real& operator-=(const Real& o) { return *this += -o; }

  Real& operator*=(const Rational& q) {
    if (q == 0) {
      terms_.clear();
    } else {
      for (auto& t : terms_) t.second *= q;
    }
    return *this;
  }
  Real& operator/=(const Rational& q) {
    if (q == 0) throw InvalidArgument("division by zero");
    for (auto& t : terms_) t.second /= q;
    return *this;
  }

  Real& operator*=(const Real& o) {
    Real acc;
    for (const auto& [d1, c1] : terms_) {
      for (const auto& [d2, c2] : o.terms_) {
        const std::uint64_t g = detail::gcd_u64(d1, d2);
        const std::uint64_t a = d1 / g, b = d2 / g;
        std::uint64_t rad = 0;
        if (__builtin_mul_overflow(a, b, &rad)) throw Overflow("radicand product overflows 64 bits");
        Real term;
        term.terms_.emplace_back(rad, c1 * c2 * Rational(BigInt(g)));
        acc += term;
      }
    }
    *this = std::move(acc);
    return *this;
  }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator*(Real a, const Rational& q) { return a *= q; }
  friend Real operator*(const Rational& q, Real a) { return a *= q; }
  friend Real operator/(Real a, const Rational& q) { return a /= q; }

  /// Multiplicative inverse; defined for rationals and single-field quadratics.
  Real inverse() const {
    if (is_zero()) throw InvalidArgument("inverse of zero");
    if (is_rational()) return Real(Rational(1) / rational_part());
    const std::uint64_t d = field();
    if (d == 0) throw InvalidArgument("inverse of a mixed-field number is not supported");
    const Rational u = rational_part();
    const Rational v = terms_.back().second;
    const Rational norm = u * u - v * v * Rational(BigInt(d));
    Real conj(u);
    conj += scaled_sqrt(-v, d);
    return conj / norm;
  }

  /// Exact sign in {-1, 0, 1}.
  int sign() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1) return terms_[0].second > 0 ? 1 : -1;
    if (surd_count() == 1 && terms_.size() == 2) {
      const Rational& u = terms_[0].second;
      const Rational& v = terms_[1].second;
      const int su = u > 0 ? 1 : -1;
      const int sv = v > 0 ? 1 : -1;
      if (su == sv) return su;
      return u * u > v * v * Rational(BigInt(terms_[1].first)) ? su : sv;
    }
    const int cap = std::max(precision_bits(), 64);
    for (int bits = 64;; bits *= 2) {
      const int b = std::min(bits, cap);
      const auto [lo, hi] = enclose(b);
      if (lo > 0) return 1;
      if (hi < 0) return -1;
      if (b >= cap) break;
    }
    throw UncertainAtPrecision("sign of " + to_string() + " unresolved at " + std::to_string(cap) + " bits",
                               cap);
  }

  /// Exact floor.
  BigInt floor() const {
    if (is_rational()) return floor_of(rational_part());
    if (surd_count() == 1) {
      // (a + b*sqrt(d)) / c with integers, c > 0; b*sqrt(d) is irrational.
      const Rational u = rational_part();
      const Rational v = terms_.back().second;
      const std::uint64_t d = terms_.back().first;
      using boost::multiprecision::denominator;
      using boost::multiprecision::numerator;
      const BigInt du = denominator(u), dv = denominator(v);
      const BigInt c = lcm(du, dv);
      const BigInt a = numerator(u) * (c / du);
      const BigInt b = numerator(v) * (c / dv);
      const BigInt sq = b * b * BigInt(d);
      BigInt fb = boost::multiprecision::sqrt(sq);
      if (b < 0) fb = -fb - 1;
      return floor_of(Rational(a + fb, c));
    }
    const int cap = std::max(precision_bits(), 64);
    for (int bits = 64;; bits *= 2) {
      const int b = std::min(bits, cap);
      const auto [lo, hi] = enclose(b);
      BigInt flo = floor_of(lo), fhi = floor_of(hi);
      if (flo == fhi) return flo;
      if (b >= cap) break;
    }
    throw UncertainAtPrecision("floor of " + to_string() + " unresolved", cap);
  }

  /// x - floor(x), in [0, 1).
  Real frac() const { return *this - Real(floor()); }

  /// Rigorous enclosure [lo, hi] with width at most sum|coeff| * 2^-bits.
  std::pair<Rational, Rational> enclose(int bits) const {
    Rational lo = 0, hi = 0;
    const BigInt scale = BigInt(1) << bits;
    for (const auto& [d, c] : terms_) {
      if (d == 1) {
        lo += c;
        hi += c;
        continue;
      }
      const BigInt s = boost::multiprecision::sqrt(BigInt(d) * scale * scale);
      const Rational r_lo(s, scale), r_hi(BigInt(s + 1), scale);
      if (c > 0) {
        lo += c * r_lo;
        hi += c * r_hi;
      } else {
        lo += c * r_hi;
        hi += c * r_lo;
      }
    }
    return {lo, hi};
  }

  double to_double() const {
    if (is_rational()) return reclab::to_double(rational_part());
    const auto [lo, hi] = enclose(80);
    return reclab::to_double((lo + hi) / 2);
  }

  /// e.g. "-1/2+1/2*sqrt(5)"
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [d, c] : terms_) {
      std::string piece = reclab::to_string(c);
      if (d != 1) piece += "*sqrt(" + std::to_string(d) + ")";
      if (!out.empty() && piece[0] != '-') out += "+";
      out += piece;
    }
    return out;
  }

  friend bool operator==(const Real& a, const Real& b) { return a.terms_ == b.terms_; }
  friend std::strong_ordering operator<=>(const Real& a, const Real& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  std::vector<Term> terms_;  // sorted by radicand, nonzero coefficients
};

inline Real abs(const Real& x) { return x.sign() < 0 ? -x : x; }

/// ||x|| = distance from x to the nearest integer, exact.
inline Real torus_norm(const Real& x) {
  Real f = x.frac();
  Real g = Real(1) - f;
  return (f <= g) ? f : g;
}

/// Parse a frequency: "p/q", a decimal literal, or "sqrt:d:a:b:c" meaning (a + b*sqrt(d))/c.
inline Real parse_real(std::string_view text) {
  if (text.rfind("sqrt:", 0) == 0) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text.substr(5)) {
      if (ch == ':') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    parts.push_back(cur);
    if (parts.size() != 4) throw ParseError("expected sqrt:d:a:b:c, got '" + std::string(text) + "'");
    const Rational d = parse_rational(parts[0]);
    if (d < 0 || boost::multiprecision::denominator(d) != 1)
      throw ParseError("radicand must be a non-negative integer in '" + std::string(text) + "'");
    const BigInt dn = boost::multiprecision::numerator(d);
    if (dn > BigInt(1'000'000'000'000'000'000ULL)) throw ParseError("radicand too large");
    return Real::quadratic(parse_rational(parts[1]), parse_rational(parts[2]),
                           dn.convert_to<std::uint64_t>(), parse_rational(parts[3]));
  }
  return Real(parse_rational(text));
}

/// (sqrt(5) - 1) / 2
inline Real golden_frequency() { return Real::quadratic(-1, 1, 5, 2); }

}  // namespace reclab
