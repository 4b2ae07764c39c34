#pragma once

// Finite subsets of Z_* = Z \ {0}, the families the solver is run on, and
// window-scale versions of the syndetic / thick / lacunary predicates.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <numeric>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include "reclab/error.hpp"
#include "reclab/real.hpp"

namespace reclab {

// ---------------------------------------------------------------------------
// Checked 64-bit arithmetic

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow("integer overflow in addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow("integer overflow in subtraction");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer overflow in multiplication");
  return r;
}

inline std::int64_t checked_abs(std::int64_t a) {
  if (a == INT64_MIN) throw Overflow("integer overflow in abs");
  return a < 0 ? -a : a;
}

inline std::int64_t to_int64(const BigInt& v) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) throw Overflow("value does not fit in 64 bits: " + v.str());
  return v.convert_to<std::int64_t>();
}

// ---------------------------------------------------------------------------

/// Inclusive integer range. hi < lo denotes the empty window.
struct Window {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool empty() const noexcept { return hi < lo; }
  bool contains(std::int64_t n) const noexcept { return lo <= n && n <= hi; }
  std::int64_t length() const noexcept { return empty() ? 0 : hi - lo + 1; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Symmetric window [-h, h].
inline Window symmetric_window(std::int64_t h) { return Window{-h, h}; }

/// Strictly increasing list of nonzero integers. Zero is dropped on construction.
class IntSet {
 public:
  IntSet() = default;
  IntSet(std::initializer_list<std::int64_t> values) : elems_(values) { normalize(); }

  template <std::ranges::input_range R>
  explicit IntSet(const R& values) : elems_(std::ranges::begin(values), std::ranges::end(values)) {
    normalize();
  }

  const std::vector<std::int64_t>& elements() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }
  std::int64_t min() const { return require_nonempty().front(); }
  std::int64_t max() const { return require_nonempty().back(); }

  bool contains(std::int64_t n) const { return std::binary_search(elems_.begin(), elems_.end(), n); }

  IntSet restricted(const Window& w) const {
    IntSet out;
    if (w.empty()) return out;
    auto first = std::lower_bound(elems_.begin(), elems_.end(), w.lo);
    auto last = std::upper_bound(elems_.begin(), elems_.end(), w.hi);
    out.elems_.assign(first, last);
    return out;
  }

  IntSet positive_part() const {
    IntSet out;
    out.elems_.assign(std::upper_bound(elems_.begin(), elems_.end(), 0), elems_.end());
    return out;
  }

  /// {|m| : m in S}
  IntSet absolute() const {
    std::vector<std::int64_t> v;
    v.reserve(elems_.size());
    for (auto m : elems_) v.push_back(checked_abs(m));
    return IntSet(v);
  }

  IntSet without(const IntSet& other) const {
    IntSet out;
    std::ranges::set_difference(elems_, other.elems_, std::back_inserter(out.elems_));
    return out;
  }

  IntSet without(std::int64_t value) const {
    IntSet out = *this;
    std::erase(out.elems_, value);
    return out;
  }

  IntSet united(const IntSet& other) const {
    IntSet out;
    std::ranges::set_union(elems_, other.elems_, std::back_inserter(out.elems_));
    return out;
  }

  bool is_subset_of(const IntSet& other) const { return std::ranges::includes(other.elems_, elems_); }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(elems_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const IntSet&, const IntSet&) = default;

 private:
  void normalize() {
    std::ranges::sort(elems_);
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    std::erase(elems_, 0);
  }
  const std::vector<std::int64_t>& require_nonempty() const {
    if (elems_.empty()) throw EmptyInput("empty set");
    return elems_;
  }

  std::vector<std::int64_t> elems_;
};

// ---------------------------------------------------------------------------
// Difference sets

/// {a - b : a, b in S, a != b}; symmetric, never contains 0.
inline IntSet difference_set(const IntSet& s) {
  if (s.empty()) throw EmptyInput("difference_set of an empty set");
  const auto& e = s.elements();
  std::vector<std::int64_t> diffs;
  diffs.reserve(e.size() * (e.size() - 1));
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      const std::int64_t d = checked_sub(e[j], e[i]);
      diffs.push_back(d);
      diffs.push_back(-d);
    }
  }
  return IntSet(diffs);
}

inline IntSet difference_set(const IntSet& s, const Window& window) {
  return difference_set(s.restricted(window));
}

/// Listed form, where 0 may belong to S: {0,3,6} gives {-6,-3,3,6}.
inline IntSet difference_set(std::span<const std::int64_t> s) {
  std::vector<std::int64_t> e(s.begin(), s.end());
  std::ranges::sort(e);
  e.erase(std::unique(e.begin(), e.end()), e.end());
  if (e.empty()) throw EmptyInput("difference_set of an empty set");
  std::vector<std::int64_t> diffs;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      const std::int64_t d = checked_sub(e[j], e[i]);
      diffs.push_back(d);
      diffs.push_back(-d);
    }
  }
  return IntSet(diffs);
}

inline IntSet difference_set(std::span<const std::int64_t> s, const Window& window) {
  std::vector<std::int64_t> kept;
  for (auto x : s)
    if (window.contains(x)) kept.push_back(x);
  return difference_set(std::span<const std::int64_t>(kept));
}

// ---------------------------------------------------------------------------
// Syndetic / thick at window scale

struct GapProfile {
  std::int64_t max_gap = 0;
  std::vector<std::int64_t> gaps;
};

/// two_sided looks at the whole window; one_sided only at its positive part (subsets of N).
enum class GapSide { two_sided, one_sided };

/// Consecutive gaps of S restricted to the window. With a single element there
/// are no gaps and max_gap is reported as the window length.
inline GapProfile syndetic_gap(const IntSet& s, Window window, GapSide side = GapSide::two_sided) {
  if (side == GapSide::one_sided) window.lo = std::max<std::int64_t>(window.lo, 1);
  const IntSet in = s.restricted(window);
  if (in.empty()) throw NoElementsInWindow("no elements of the set in [" + std::to_string(window.lo) + "," +
                                           std::to_string(window.hi) + "]");
  GapProfile profile;
  const auto& e = in.elements();
  for (std::size_t i = 1; i < e.size(); ++i) profile.gaps.push_back(checked_sub(e[i], e[i - 1]));
  profile.max_gap = profile.gaps.empty() ? window.length() : *std::ranges::max_element(profile.gaps);
  return profile;
}

/// True iff S contains runlen consecutive integers inside the window.
inline bool is_thick_window(const IntSet& s, std::int64_t runlen, const Window& window) {
  if (runlen < 1) throw InvalidArgument("runlen must be positive");
  const IntSet in = s.restricted(window);
  const auto& e = in.elements();
  std::int64_t run = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    run = (i > 0 && e[i] == e[i - 1] + 1) ? run + 1 : 1;
    if (run >= runlen) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Lacunarity

struct LacunarityReport {
  Rational min_ratio;
  bool is_lacunary_at_scale = false;
  std::size_t argmin = 0;  // index k of the minimizing ratio x_{k+1}/x_k among positive elements
};

inline LacunarityReport lacunarity_ratios(const IntSet& s) {
  const IntSet pos = s.positive_part();
  if (pos.size() < 2) throw TooFewElements("lacunarity needs at least two positive elements");
  const auto& e = pos.elements();
  LacunarityReport rep;
  rep.min_ratio = Rational(e[1], e[0]);
  for (std::size_t k = 1; k + 1 < e.size(); ++k) {
    Rational r(e[k + 1], e[k]);
    if (r < rep.min_ratio) {
      rep.min_ratio = r;
      rep.argmin = k;
    }
  }
  rep.is_lacunary_at_scale = rep.min_ratio > 1;
  return rep;
}

// ---------------------------------------------------------------------------
// Families

/// {k, 2k, ..., rk}
inline IntSet gen_k_times_Nr(std::int64_t k, std::int64_t r) {
  if (k < 1 || r < 1) throw InvalidArgument("k and r must be positive");
  std::vector<std::int64_t> v;
  for (std::int64_t n = 1; n <= r; ++n) v.push_back(checked_mul(n, k));
  return IntSet(v);
}

/// Layer (r+2)^k * {1..r} of the lacunary family L_r.
inline IntSet L_r_layer(std::int64_t r, std::int64_t k) {
  if (r < 2) throw InvalidArgument("L_r needs r >= 2");
  if (k < 0) throw InvalidArgument("layer index must be non-negative");
  std::int64_t scale = 1;
  for (std::int64_t i = 0; i < k; ++i) scale = checked_mul(scale, checked_add(r, 2));
  return gen_k_times_Nr(scale, r);
}

/// {n (r+2)^k : 1 <= n <= r, 0 <= k <= k_max}
inline IntSet gen_L_r(std::int64_t r, std::int64_t k_max) {
  if (k_max < 0) throw InvalidArgument("k_max must be non-negative");
  IntSet out;
  for (std::int64_t k = 0; k <= k_max; ++k) out = out.united(L_r_layer(r, k));
  return out;
}

/// Polynomial with rational coefficients (ascending powers), used integer-valued.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(std::size_t degree, const Rational& coeff = 1) {
    std::vector<Rational> c(degree + 1, Rational(0));
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  std::size_t degree() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  Rational constant_term() const { return c_.empty() ? Rational(0) : c_[0]; }

  Rational operator()(const BigInt& n) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * Rational(n) + *it;
    return acc;
  }

  /// Integer value at n; throws if the polynomial is not integral there.
  BigInt integer_at(const BigInt& n) const {
    const Rational v = (*this)(n);
    if (boost::multiprecision::denominator(v) != 1)
      throw InvalidArgument("polynomial is not integer-valued at n=" + n.str());
    return boost::multiprecision::numerator(v);
  }

  /// lcm of coefficient denominators; p(n + m*D) == p(n) (mod m) for integer-valued p.
  BigInt denominator_lcm() const {
    BigInt l = 1;
    for (const auto& q : c_) l = lcm(l, BigInt(boost::multiprecision::denominator(q)));
    return l;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& q : p.c_) q = -q;
    return p;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a += -b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      std::string term = reclab::to_string(c_[i]);
      if (i >= 1) term = (c_[i] == 1 ? std::string() : "(" + term + ")*") + "n" + (i > 1 ? "^" + std::to_string(i) : "");
      if (!s.empty()) s += " + ";
      s += term;
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// {p(n) : 1 <= n <= n_max} \ {0}
inline IntSet gen_polynomial(const Polynomial& p, std::int64_t n_max) {
  std::vector<std::int64_t> v;
  for (std::int64_t n = 1; n <= n_max; ++n) v.push_back(to_int64(p.integer_at(BigInt(n))));
  return IntSet(v);
}

}  // namespace reclab
