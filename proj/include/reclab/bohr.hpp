#pragma once

// Bohr sets B(alpha; eps) = {n : ||n alpha|| < eps}, continued fractions,
// the three-distance theorem, interval pruning for lacunary witnesses, and
// cyclic obstructions L ∩ mZ = ∅.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "reclab/error.hpp"
#include "reclab/intset.hpp"
#include "reclab/real.hpp"

namespace reclab {

/// A point of the circle R/Z, kept exact. Values outside [0,1) are taken mod 1.
using TorusPoint = Real;

/// Squared Euclidean distance to the nearest lattice point of Z^k, exact.
inline Real torus_norm_sq(std::span<const Real> x) {
  Real acc;
  for (const auto& xi : x) {
    const Real t = torus_norm(xi);
    acc += t * t;
  }
  return acc;
}

struct PrecisionInfo {
  int bits = kDefaultPrecisionBits;  // refinement cap in force
  double max_error = 0.0;            // 0 when every comparison was settled algebraically
};

/// Precision bookkeeping for a value whose sign was (or will be) decided.
inline PrecisionInfo precision_of(const Real& decided) {
  PrecisionInfo p;
  p.bits = precision_bits();
  if (decided.surd_count() > 1) {
    double mass = 0;
    for (const auto& [d, c] : decided.terms())
      if (d != 1) mass += std::abs(to_double(c));
    p.max_error = std::ldexp(mass, -p.bits);
  }
  return p;
}

struct BohrSpec {
  std::vector<TorusPoint> alphas;
  Rational eps;

  BohrSpec() = default;
  BohrSpec(std::vector<TorusPoint> a, Rational e) : alphas(std::move(a)), eps(std::move(e)) { validate(); }

  void validate() const {
    if (alphas.empty()) throw InvalidArgument("Bohr set needs at least one frequency");
    if (eps <= 0 || eps > Rational(1, 2)) throw InvalidArgument("eps must lie in (0, 1/2]");
  }
  std::size_t dimension() const noexcept { return alphas.size(); }
};

struct Membership {
  bool member = false;
  double margin = 0.0;               // | ||n alpha|| - eps |
  std::optional<Real> exact_norm;    // ||n alpha||, one frequency only
  std::optional<Real> exact_margin;  // one frequency only
  Real norm_sq;
  PrecisionInfo precision;
};

/// ||n alpha|| < eps (Euclidean on T^k). Strict: the boundary is excluded.
inline Membership bohr_membership(std::int64_t n, const BohrSpec& spec) {
  spec.validate();
  Membership m;
  std::vector<Real> scaled;
  scaled.reserve(spec.alphas.size());
  for (const auto& a : spec.alphas) scaled.push_back(a * Rational(n));
  if (scaled.size() == 1) {
    const Real norm = torus_norm(scaled[0]);
    const Real diff = norm - Real(spec.eps);
    m.member = diff.sign() < 0;
    m.exact_norm = norm;
    m.exact_margin = abs(diff);
    m.margin = m.exact_margin->to_double();
    m.norm_sq = norm * norm;
    m.precision = precision_of(diff);
    return m;
  }
  m.norm_sq = torus_norm_sq(scaled);
  const Real diff = m.norm_sq - Real(spec.eps * spec.eps);
  m.precision = precision_of(diff);
  try {
    m.member = diff.sign() < 0;
  } catch (const UncertainAtPrecision& e) {
    throw UncertainAtPrecision("membership of n=" + std::to_string(n) + " undecided: " + e.what(), e.bits(), {n});
  }
  m.margin = std::abs(std::sqrt(m.norm_sq.to_double()) - to_double(spec.eps));
  return m;
}

/// All n != 0 in the window with ||n alpha|| < eps.
inline IntSet bohr_enumerate(const BohrSpec& spec, const Window& window) {
  spec.validate();
  std::vector<std::int64_t> out, ambiguous;
  int bits = precision_bits();
  for (std::int64_t n = window.lo; !window.empty() && n <= window.hi; ++n) {
    if (n != 0) {
      try {
        if (bohr_membership(n, spec).member) out.push_back(n);
      } catch (const UncertainAtPrecision& e) {
        ambiguous.push_back(n);
        bits = e.bits();
      }
    }
    if (n == window.hi) break;
  }
  if (!ambiguous.empty())
    throw UncertainAtPrecision(std::to_string(ambiguous.size()) + " window elements undecided", bits, ambiguous);
  return IntSet(out);
}

// ---------------------------------------------------------------------------
// Continued fractions

struct Convergent {
  BigInt p;
  BigInt q;
  friend bool operator==(const Convergent&, const Convergent&) = default;
};

struct ContinuedFractionData {
  std::vector<BigInt> partial_quotients;  // a_0; a_1, a_2, ...
  std::vector<Convergent> convergents;    // p_j / q_j, j = 0, 1, ...
  bool terminated = false;                // alpha is rational and the expansion ended
};

namespace detail {
[[noreturn]] inline void invariant_broken(const std::string& what) {
  throw std::logic_error("continued fraction invariant violated: " + what);
}
}  // namespace detail

/// a_0..a_depth and p_j/q_j for j <= depth, with ||q_j alpha|| < 1/q_{j+1}
/// and |alpha - p_j/q_j| < 1/(q_j q_{j+1}) checked exactly wherever q_{j+1} exists.
inline ContinuedFractionData continued_fraction(const TorusPoint& alpha, std::size_t depth) {
  ContinuedFractionData cf;
  Real x = alpha;
  BigInt p_m2 = 0, q_m2 = 1;  // p_{-2}/q_{-2}
  BigInt p_m1 = 1, q_m1 = 0;  // p_{-1}/q_{-1}
  std::vector<Convergent> all;  // one term past depth, for the invariant checks
  bool ended = false;
  for (std::size_t j = 0; j <= depth + 1; ++j) {
    const BigInt a = x.floor();
    const BigInt p = a * p_m1 + p_m2;
    const BigInt q = a * q_m1 + q_m2;
    p_m2 = p_m1;
    q_m2 = q_m1;
    p_m1 = p;
    q_m1 = q;
    all.push_back({p, q});
    if (j <= depth) cf.partial_quotients.push_back(a);
    const Real rest = x - Real(a);
    if (rest.is_zero()) {
      if (j <= depth) cf.terminated = true;
      ended = true;
      break;
    }
    x = rest.inverse();
  }
  for (std::size_t j = 0; j < all.size() && j <= depth; ++j) cf.convergents.push_back(all[j]);

  for (std::size_t j = 0; j + 1 < all.size(); ++j) {
    const auto& [pj, qj] = all[j];
    const BigInt& qn = all[j + 1].q;
    if (j >= 1 && !(qn > qj)) detail::invariant_broken("q_j not increasing");
    // equality is attained only at the step before a rational expansion ends
    const bool penultimate = ended && j + 2 == all.size();
    const Real bound(Rational(BigInt(1), qn));
    const Real err = abs(alpha * Rational(qj) - Real(pj));
    const Real dist = torus_norm(alpha * Rational(qj));
    if (penultimate ? dist > bound : dist >= bound)
      detail::invariant_broken("||q_j alpha|| >= 1/q_{j+1} at j=" + std::to_string(j));
    if (penultimate ? err > bound : err >= bound) detail::invariant_broken("|q_j alpha - p_j| >= 1/q_{j+1}");
  }
  return cf;
}

// ---------------------------------------------------------------------------
// Three-distance theorem

struct ThreeDistance {
  std::vector<Real> gaps;      // ascending, one per arc between consecutive distinct points
  std::vector<Real> distinct;  // ascending distinct lengths
};

/// Arc lengths cut by {j alpha mod 1 : 0 <= j <= N}; at most three distinct values.
inline ThreeDistance three_distance(const TorusPoint& alpha, std::int64_t n) {
  if (n < 1) throw InvalidArgument("three_distance needs N >= 1");
  std::vector<Real> pts;
  pts.reserve(static_cast<std::size_t>(n + 1));
  for (std::int64_t j = 0; j <= n; ++j) pts.push_back((alpha * Rational(j)).frac());
  std::sort(pts.begin(), pts.end(), [](const Real& a, const Real& b) { return a < b; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  ThreeDistance td;
  for (std::size_t i = 1; i < pts.size(); ++i) td.gaps.push_back(pts[i] - pts[i - 1]);
  td.gaps.push_back(Real(1) - pts.back() + pts.front());
  std::sort(td.gaps.begin(), td.gaps.end(), [](const Real& a, const Real& b) { return a < b; });
  for (const auto& g : td.gaps)
    if (td.distinct.empty() || !(td.distinct.back() == g)) td.distinct.push_back(g);
  if (td.distinct.size() > 3) throw std::logic_error("three-distance theorem violated");
  return td;
}

// ---------------------------------------------------------------------------
// Interval pruning

struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational midpoint() const { return (lo + hi) / 2; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct PruningResult {
  std::optional<Interval> interval;  // leftmost longest survivor
  std::size_t survivors = 0;
  std::size_t stages = 0;
  bool truncated = false;  // the survivor list hit the budget and was cut to the longest pieces
};

namespace detail {

/// Intersect each piece with {alpha : ||n alpha|| >= delta}.
inline std::vector<Interval> prune_stage(const std::vector<Interval>& pieces, std::int64_t n, const Rational& delta) {
  std::vector<Interval> out;
  const Rational nn(n);
  for (const auto& iv : pieces) {
    Rational cur = iv.lo;
    const BigInt j_lo = floor_of(iv.lo * nn - delta);
    const BigInt j_hi = ceil_of(iv.hi * nn + delta);
    for (BigInt j = j_lo; j <= j_hi; ++j) {
      const Rational left = (Rational(j) - delta) / nn;
      const Rational right = (Rational(j) + delta) / nn;
      if (right <= cur) continue;
      if (left >= iv.hi) break;
      if (left > cur) out.push_back({cur, left});
      if (right > cur) cur = right;
      if (cur >= iv.hi) break;
    }
    if (cur < iv.hi) out.push_back({cur, iv.hi});
  }
  return out;
}

inline PruningResult prune(std::span<const std::int64_t> seq, const Rational& delta, std::size_t budget) {
  if (delta <= 0) throw InvalidArgument("delta must be positive");
  if (budget == 0) throw InvalidArgument("interval budget must be positive");
  PruningResult res;
  std::vector<Interval> pieces{{Rational(0), Rational(1)}};
  for (auto n : seq) {
    pieces = prune_stage(pieces, checked_abs(n), delta);
    ++res.stages;
    if (pieces.size() > budget) {
      res.truncated = true;
      std::stable_sort(pieces.begin(), pieces.end(),
                       [](const Interval& a, const Interval& b) { return a.length() > b.length(); });
      pieces.resize(budget);
      std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    }
    if (pieces.empty()) break;
  }
  res.survivors = pieces.size();
  for (const auto& iv : pieces)
    if (!res.interval || iv.length() > res.interval->length()) res.interval = iv;
  return res;
}

}  // namespace detail

/// min_k ||n_k x|| >= delta for the given (exact) x.
inline bool clears_all(std::span<const std::int64_t> seq, const Rational& x, const Rational& delta) {
  for (auto n : seq)
    if (torus_norm(Real(x * Rational(n))) < Real(delta)) return false;
  return true;
}

/// Closed interval I in [0,1] with ||n_k alpha|| >= delta for every alpha in I and
/// the first K elements n_k of seq. Empty result means nothing survived at this delta.
inline PruningResult lacunary_witness(const IntSet& seq, const Rational& delta, std::size_t depth,
                                      std::size_t budget = 100000) {
  const IntSet pos = seq.positive_part();
  if (pos.empty()) throw EmptyInput("lacunary_witness needs positive elements");
  const std::size_t k = std::min(depth, pos.size());
  const std::span<const std::int64_t> used(pos.elements().data(), k);
  return detail::prune(used, delta, budget);
}

// ---------------------------------------------------------------------------
// Cyclic obstructions

struct CyclicObstruction {
  std::int64_t modulus = 0;
  bool full_period_proof = false;  // residues of the generating polynomial avoid 0 over a full period
  std::int64_t period_checked = 0;  // m * (lcm of coefficient denominators) when a generator was given
};

/// Smallest m in [2, m_max] with no element of L divisible by m. With a
/// generating polynomial the verdict is upgraded to hold for the whole
/// sequence {p(n)}_{n>=1} when p(n) mod m avoids 0 over n = 1..m*D.
inline std::optional<CyclicObstruction> cyclic_obstruction(const IntSet& l, std::int64_t m_max,
                                                           const std::optional<Polynomial>& generator = std::nullopt) {
  if (l.empty()) throw EmptyInput("cyclic_obstruction of an empty set");
  for (std::int64_t m = 2; m <= m_max; ++m) {
    const bool avoids = std::ranges::none_of(l, [m](std::int64_t x) { return x % m == 0; });
    if (!avoids) continue;
    CyclicObstruction ob;
    ob.modulus = m;
    if (generator) {
      const BigInt period = BigInt(m) * generator->denominator_lcm();
      ob.period_checked = to_int64(period);
      bool clean = true;
      for (BigInt n = 1; n <= period; ++n) {
        if (generator->integer_at(n) % m == 0) {
          clean = false;
          break;
        }
      }
      ob.full_period_proof = clean;
    }
    return ob;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Separating Bohr sets

namespace detail {

/// Rational with the least denominator in [lo, hi], 0 <= lo <= hi; nullopt past max_depth.
inline std::optional<Rational> simplest_rational(Rational lo, Rational hi, int max_depth) {
  if (max_depth < 0) return std::nullopt;
  const BigInt c = ceil_of(lo);
  if (Rational(c) <= hi) return Rational(c);
  const BigInt f = floor_of(lo);
  // lo and hi share the integer part f; recurse on the reciprocals of the fractional parts
  auto inner = simplest_rational(Rational(1) / (hi - Rational(f)), Rational(1) / (lo - Rational(f)), max_depth - 1);
  if (!inner) return std::nullopt;
  return Rational(f) + Rational(1) / *inner;
}

}  // namespace detail

struct Separation {
  BohrSpec spec;      // one frequency; B(alpha; eps) ∩ L = ∅
  Interval interval;  // the surviving interval alpha was drawn from
  bool simplest = true;  // alpha is the least-denominator point of the interval (else its midpoint)
  bool truncated = false;
};

/// Finds alpha with ||n alpha|| >= eps for every n in L. Only single-frequency
/// specs are searched.
inline std::optional<Separation> bohr_separation_search(const IntSet& l, const Rational& eps, int grid_depth = 64,
                                                        std::size_t budget = 100000) {
  if (l.empty()) throw EmptyInput("bohr_separation_search of an empty set");
  const IntSet pos = l.absolute();
  const auto res = detail::prune(pos.elements(), eps, budget);
  if (!res.interval) return std::nullopt;
  Separation s;
  s.interval = *res.interval;
  s.truncated = res.truncated;
  auto alpha = detail::simplest_rational(s.interval.lo, s.interval.hi, grid_depth);
  if (!alpha) {
    alpha = s.interval.midpoint();
    s.simplest = false;
  }
  if (!clears_all(pos.elements(), *alpha, eps)) throw std::logic_error("separating frequency failed re-check");
  s.spec = BohrSpec({Real(*alpha)}, eps);
  return s;
}

}  // namespace reclab
