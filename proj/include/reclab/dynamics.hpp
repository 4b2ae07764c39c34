#pragma once

// Torus rotations and subshifts: return-time sets N(x,U) and N(U,U), the
// recurrence functions phi_L and psi_{(n_k, r_k)}, eta-density of orbits and
// uniform-rigidity scans. Everything is evaluated to an explicit horizon; no
// statement here is about a limit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reclab/bohr.hpp"
#include "reclab/error.hpp"
#include "reclab/expr.hpp"
#include "reclab/intset.hpp"
#include "reclab/parallel.hpp"
#include "reclab/real.hpp"

namespace reclab {

/// Sorted return times. Unlike IntSet it may contain 0.
using TimeSet = std::vector<std::int64_t>;

/// A distance value. One-dimensional rotations and subshifts carry the exact
/// distance; on T^k (k > 1) only the exact square is known.
class Distance {
 public:
  Distance() = default;

  static Distance linear(Real v) {
    Distance d;
    d.lin_ = std::move(v);
    return d;
  }
  static Distance from_squared(Real sq) {
    Distance d;
    d.sq_ = std::move(sq);
    return d;
  }
  /// Zero as far as a finite window can tell: agreement on |i| < resolution.
  static Distance zero_at_resolution(std::int64_t resolution) {
    Distance d = linear(Real(0));
    d.resolution_ = resolution;
    return d;
  }

  bool has_linear() const noexcept { return lin_.has_value(); }
  const Real& linear_value() const { return *lin_; }
  Real squared() const { return lin_ ? *lin_ * *lin_ : *sq_; }
  /// -1 when exact; otherwise the half-width beyond which the window saw nothing.
  std::int64_t resolution() const noexcept { return resolution_; }

  double value() const { return lin_ ? lin_->to_double() : std::sqrt(sq_->to_double()); }
  std::string exact() const { return lin_ ? lin_->to_string() : "sqrt(" + sq_->to_string() + ")"; }

  /// Strictly below a rational threshold.
  bool below(const Rational& eps) const {
    if (lin_) return *lin_ < Real(eps);
    return *sq_ < Real(eps * eps);
  }

  friend std::strong_ordering operator<=>(const Distance& a, const Distance& b) {
    if (a.lin_ && b.lin_) return *a.lin_ <=> *b.lin_;
    return a.squared() <=> b.squared();
  }
  friend bool operator==(const Distance& a, const Distance& b) { return (a <=> b) == 0; }

 private:
  std::optional<Real> lin_;
  std::optional<Real> sq_;
  std::int64_t resolution_ = -1;
};

// ---------------------------------------------------------------------------
// Rotations

using RotationPoint = std::vector<Real>;

/// T x = x + alpha (mod 1) on T^k. Minimality is the caller's declaration.
struct RotationSystem {
  std::vector<TorusPoint> alphas;
  bool declared_minimal = false;

  RotationSystem() = default;
  explicit RotationSystem(std::vector<TorusPoint> a, bool minimal = false)
      : alphas(std::move(a)), declared_minimal(minimal) {
    if (alphas.empty()) throw InvalidArgument("rotation needs at least one frequency");
  }
  std::size_t dimension() const noexcept { return alphas.size(); }

  RotationPoint normalize(RotationPoint x) const {
    if (x.size() != alphas.size()) throw InvalidArgument("point dimension does not match the rotation");
    for (auto& c : x) c = c.frac();
    return x;
  }

  /// T^n x
  RotationPoint iterate(const RotationPoint& x, const BigInt& n) const {
    if (x.size() != alphas.size()) throw InvalidArgument("point dimension does not match the rotation");
    RotationPoint y(x.size());
    const Rational nn(n);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = (x[i] + alphas[i] * nn).frac();
    return y;
  }
  RotationPoint iterate(const RotationPoint& x, std::int64_t n) const { return iterate(x, BigInt(n)); }

  Distance distance(const RotationPoint& a, const RotationPoint& b) const {
    if (a.size() != alphas.size() || b.size() != alphas.size())
      throw InvalidArgument("point dimension does not match the rotation");
    if (a.size() == 1) return Distance::linear(torus_norm(a[0] - b[0]));
    std::vector<Real> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    return Distance::from_squared(torus_norm_sq(diff));
  }

  /// sup_x d(x, T^m x) = ||m alpha||, independent of x.
  Distance displacement(const BigInt& m) const {
    std::vector<Real> s;
    s.reserve(alphas.size());
    for (const auto& a : alphas) s.push_back(a * Rational(m));
    if (s.size() == 1) return Distance::linear(torus_norm(s[0]));
    return Distance::from_squared(torus_norm_sq(s));
  }
};

struct RotationBall {
  RotationPoint center;
  Rational radius;
};

inline bool in_ball(const RotationSystem& sys, const RotationPoint& x, const RotationBall& u) {
  if (u.radius <= 0) throw InvalidArgument("ball radius must be positive");
  return sys.distance(x, u.center).below(u.radius);
}

/// N(x, U) ∩ [-H, H]
inline TimeSet return_times_point(const RotationSystem& sys, const RotationPoint& x, const RotationBall& u,
                                  std::int64_t horizon) {
  if (horizon < 1) throw InvalidArgument("horizon must be at least 1");
  TimeSet out;
  for (std::int64_t n = -horizon; n <= horizon; ++n)
    if (in_ball(sys, sys.iterate(x, n), u)) out.push_back(n);
  return out;
}

/// N(U, U) ∩ [-H, H] = {n : ||n alpha|| < 2 radius}; the center plays no role.
inline TimeSet return_times_set(const RotationSystem& sys, const RotationBall& u, std::int64_t horizon) {
  if (horizon < 1) throw InvalidArgument("horizon must be at least 1");
  if (u.radius <= 0) throw InvalidArgument("ball radius must be positive");
  TimeSet out;
  const Rational reach = 2 * u.radius;
  for (std::int64_t n = -horizon; n <= horizon; ++n)
    if (sys.displacement(BigInt(n)).below(reach)) out.push_back(n);
  return out;
}

struct NuuReport {
  bool declared_minimal = false;
  std::int64_t horizon = 0;
  std::int64_t window_ratio = 4;
  Rational margin;
  std::size_t visits = 0;             // |N(x,U) ∩ [-H,H]|
  std::vector<std::int64_t> forward_exceptions;  // in N(x,U) - N(x,U) but not in N(U,U)
  std::vector<std::int64_t> reverse_exceptions;  // in N(U,U) ∩ [-H,H] but not in N(x,U+) - N(x,U+)
  bool forward_holds() const { return forward_exceptions.empty(); }
  bool reverse_holds() const { return reverse_exceptions.empty(); }
};

/// Checks N(x,U) - N(x,U) ⊆ N(U,U) on [-H,H] (exact, unconditional) and
/// N(U,U) ∩ [-H,H] ⊆ N(x,U+) - N(x,U+) with U+ the ball enlarged by margin and
/// visits collected on [-ratio*H, ratio*H] (the finite-horizon stand-in for minimality).
inline NuuReport verify_nuu(const RotationSystem& sys, const RotationBall& u, const RotationPoint& x,
                            std::int64_t horizon, const Rational& margin, std::int64_t window_ratio = 4) {
  if (margin < 0) throw InvalidArgument("margin must be non-negative");
  if (window_ratio < 1) throw InvalidArgument("window ratio must be at least 1");
  NuuReport rep;
  rep.declared_minimal = sys.declared_minimal;
  rep.horizon = horizon;
  rep.window_ratio = window_ratio;
  rep.margin = margin;

  const TimeSet visits = return_times_point(sys, x, u, horizon);
  rep.visits = visits.size();
  const TimeSet nuu_wide = return_times_set(sys, u, checked_mul(2, horizon));
  std::set<std::int64_t> diffs;
  for (auto a : visits)
    for (auto b : visits) diffs.insert(a - b);
  for (auto d : diffs)
    if (!std::binary_search(nuu_wide.begin(), nuu_wide.end(), d)) rep.forward_exceptions.push_back(d);

  const RotationBall bigger{u.center, u.radius + margin};
  const TimeSet far_visits = return_times_point(sys, x, bigger, checked_mul(window_ratio, horizon));
  std::set<std::int64_t> far_diffs;
  for (auto a : far_visits)
    for (auto b : far_visits) far_diffs.insert(a - b);
  for (auto n : return_times_set(sys, u, horizon))
    if (!far_diffs.contains(n)) rep.reverse_exceptions.push_back(n);
  return rep;
}

// ---------------------------------------------------------------------------
// Subshifts

/// A two-sided sequence known on a finite window of coordinates.
class SymbolicPoint {
 public:
  SymbolicPoint() : data_(std::make_shared<const std::vector<std::uint8_t>>()) {}
  SymbolicPoint(std::int64_t lo, std::vector<std::uint8_t> symbols)
      : data_(std::make_shared<const std::vector<std::uint8_t>>(std::move(symbols))), lo_(lo) {}

  std::optional<std::uint8_t> at(std::int64_t i) const {
    const std::int64_t k = i - lo_;
    if (k < 0 || k >= static_cast<std::int64_t>(data_->size())) return std::nullopt;
    return (*data_)[static_cast<std::size_t>(k)];
  }
  std::uint8_t require(std::int64_t i) const {
    auto s = at(i);
    if (!s) throw WindowTooSmall("coordinate " + std::to_string(i) + " lies outside the known window");
    return *s;
  }

  /// Coordinates where the point is known.
  Window support() const { return Window{lo_, lo_ + static_cast<std::int64_t>(data_->size()) - 1}; }

  /// sigma^n: (sigma^n w)_i = w_{i+n}
  SymbolicPoint shifted(std::int64_t n) const {
    SymbolicPoint p = *this;
    p.lo_ = checked_sub(lo_, n);
    return p;
  }

 private:
  std::shared_ptr<const std::vector<std::uint8_t>> data_;
  std::int64_t lo_ = 0;
};

/// d(w, w') = 2^{-min{|i| : w_i != w'_i}}, evaluated where both points are known.
inline Distance symbolic_distance(const SymbolicPoint& a, const SymbolicPoint& b) {
  const Window wa = a.support(), wb = b.support();
  const std::int64_t reach = std::min({-wa.lo, wa.hi, -wb.lo, wb.hi});
  if (reach < 0) throw WindowTooSmall("coordinate 0 is outside the known window");
  for (std::int64_t j = 0; j <= reach; ++j) {
    if (*a.at(j) != *b.at(j) || *a.at(-j) != *b.at(-j)) return Distance::linear(Real(Rational(BigInt(1), BigInt(1) << j)));
  }
  return Distance::zero_at_resolution(reach + 1);
}

/// The open ball of radius rho: agreement on |i| <= n where n is least with 2^{-(n+1)} < rho.
struct Cylinder {
  std::int64_t radius = 0;            // n; -1 means the whole space
  std::vector<std::uint8_t> pattern;  // w_{-n} .. w_n

  static Cylinder around(const SymbolicPoint& center, const Rational& rho) {
    if (rho <= 0) throw InvalidArgument("ball radius must be positive");
    Cylinder c;
    c.radius = -1;
    while (Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(c.radius + 1)) >= rho) ++c.radius;
    for (std::int64_t i = -c.radius; i <= c.radius; ++i) c.pattern.push_back(center.require(i));
    return c;
  }
  /// {w : w_0 = symbol}
  static Cylinder at_origin(std::uint8_t symbol) { return Cylinder{0, {symbol}}; }

  bool contains(const SymbolicPoint& w) const {
    for (std::int64_t i = -radius; i <= radius; ++i)
      if (w.require(i) != pattern[static_cast<std::size_t>(i + radius)]) return false;
    return true;
  }
};

struct SubshiftSystem {
  SymbolicPoint base;
  int alphabet = 2;
  std::string description;
};

/// Base point 1_S on the window. S may contain 0 here: the indicator is about
/// coordinates, not about Z_*.
inline SubshiftSystem subshift_from_indicator(std::span<const std::int64_t> s, const Window& window) {
  if (window.empty()) throw InvalidArgument("empty window");
  std::vector<std::uint8_t> sym(static_cast<std::size_t>(window.length()), 0);
  for (auto x : s)
    if (window.contains(x)) sym[static_cast<std::size_t>(x - window.lo)] = 1;
  return SubshiftSystem{SymbolicPoint(window.lo, std::move(sym)), 2, "indicator"};
}

inline SubshiftSystem subshift_from_indicator(const IntSet& s, const Window& window) {
  return subshift_from_indicator(std::span<const std::int64_t>(s.elements()), window);
}

/// Analyses with horizon H need the point known on [-4H, 4H].
inline void require_adequate_window(const SymbolicPoint& x, std::int64_t horizon) {
  const Window need{-checked_mul(4, horizon), checked_mul(4, horizon)};
  const Window have = x.support();
  if (have.lo > need.lo || have.hi < need.hi)
    throw WindowTooSmall("window [" + std::to_string(have.lo) + "," + std::to_string(have.hi) +
                         "] is shorter than 4x the horizon " + std::to_string(horizon));
}

/// N(x, U) ∩ [-H, H] for a cylinder U.
inline TimeSet return_times_point(const SubshiftSystem&, const SymbolicPoint& x, const Cylinder& u,
                                  std::int64_t horizon) {
  if (horizon < 1) throw InvalidArgument("horizon must be at least 1");
  require_adequate_window(x, horizon);
  TimeSet out;
  for (std::int64_t n = -horizon; n <= horizon; ++n)
    if (u.contains(x.shifted(n))) out.push_back(n);
  return out;
}

/// Number of distinct words of the given length read along the base point.
inline std::size_t word_complexity(const SymbolicPoint& x, std::int64_t length) {
  if (length < 1) throw InvalidArgument("word length must be positive");
  const Window w = x.support();
  std::set<std::vector<std::uint8_t>> words;
  for (std::int64_t s = w.lo; s + length - 1 <= w.hi; ++s) {
    std::vector<std::uint8_t> word;
    for (std::int64_t i = 0; i < length; ++i) word.push_back(*x.at(s + i));
    words.insert(std::move(word));
  }
  return words.size();
}

// ---------------------------------------------------------------------------
// Difference sets versus return times of the indicator subshift

struct BohrProbe {
  Real alpha;
  Real eps;  // largest eps with B(alpha; eps) ∩ [-H,H] ⊆ S - S
  std::size_t candidates = 0;
};

struct DifferenceSupersetReport {
  std::int64_t horizon = 0;
  TimeSet observed;                         // N(U', U') along the orbit of 1_S, within [-H,H]
  std::vector<std::int64_t> exceptions;     // observed times missing from S - S
  bool holds() const { return exceptions.empty(); }
  std::optional<BohrProbe> probe;
};

/// N(U',U') ⊆ S - S for U' = {w : w_0 = 1}, plus a search for a single-frequency
/// Bohr set B(alpha; eps) whose trace on [-H,H] lies in S - S. Candidates: the
/// hints, then every p/q in (0,1) with q <= max_denominator.
inline DifferenceSupersetReport check_difference_superset(std::span<const std::int64_t> s, std::int64_t horizon,
                                                          const std::vector<Real>& alpha_hints = {},
                                                          std::int64_t max_denominator = 12) {
  if (horizon < 1) throw InvalidArgument("horizon must be at least 1");
  const Window window = symmetric_window(checked_mul(4, horizon));
  std::vector<std::int64_t> in_window;
  for (auto x : s)
    if (window.contains(x)) in_window.push_back(x);
  std::ranges::sort(in_window);
  in_window.erase(std::unique(in_window.begin(), in_window.end()), in_window.end());

  DifferenceSupersetReport rep;
  rep.horizon = horizon;
  const SubshiftSystem sys = subshift_from_indicator(in_window, window);
  for (std::int64_t n = -horizon; n <= horizon; ++n) {
    for (std::int64_t t = window.lo; t <= window.hi; ++t) {
      const auto a = sys.base.at(t), b = sys.base.at(t + n);
      if (a && b && *a == 1 && *b == 1) {
        rep.observed.push_back(n);
        break;
      }
    }
  }
  std::set<std::int64_t> diffs;
  for (auto a : in_window)
    for (auto b : in_window) diffs.insert(a - b);
  for (auto n : rep.observed)
    if (!diffs.contains(n)) rep.exceptions.push_back(n);

  std::vector<Real> candidates = alpha_hints;
  for (std::int64_t q = 1; q <= max_denominator; ++q)
    for (std::int64_t p = 1; p < q; ++p)
      if (std::gcd(p, q) == 1) candidates.emplace_back(Rational(p, q));
  for (const auto& alpha : candidates) {
    Real eps = Real(Rational(1, 2));
    for (std::int64_t n = -horizon; n <= horizon; ++n) {
      if (n == 0 || diffs.contains(n)) continue;
      const Real v = torus_norm(alpha * Rational(n));
      if (v < eps) eps = v;
    }
    if (eps.is_zero()) continue;
    if (!rep.probe || eps > rep.probe->eps) rep.probe = BohrProbe{alpha, eps, 0};
  }
  if (rep.probe) rep.probe->candidates = candidates.size();
  return rep;
}

// ---------------------------------------------------------------------------
// phi_L and psi

struct PhiResult {
  Distance value;
  std::int64_t argmin = 0;  // the n in L attaining the minimum (least |n|, then least n)
};

namespace detail {
inline std::vector<std::int64_t> horizon_members(const IntSet& l, std::int64_t horizon) {
  std::vector<std::int64_t> v = l.restricted(symmetric_window(horizon)).elements();
  if (v.empty()) throw EmptyInput("L has no elements within the horizon");
  std::ranges::stable_sort(v, [](std::int64_t a, std::int64_t b) { return checked_abs(a) < checked_abs(b); });
  return v;
}
}  // namespace detail

/// phi_L(x) = min{d(T^n x, x) : n in L ∩ [-H, H]}
inline PhiResult phi_L(const RotationSystem& sys, const RotationPoint& x, const IntSet& l, std::int64_t horizon) {
  PhiResult best;
  bool first = true;
  for (auto n : detail::horizon_members(l, horizon)) {
    Distance d = sys.distance(sys.iterate(x, n), x);
    if (first || d < best.value) {
      best = {std::move(d), n};
      first = false;
    }
  }
  return best;
}

inline PhiResult phi_L(const SubshiftSystem&, const SymbolicPoint& x, const IntSet& l, std::int64_t horizon) {
  require_adequate_window(x, horizon);
  PhiResult best;
  bool first = true;
  for (auto n : detail::horizon_members(l, horizon)) {
    Distance d = symbolic_distance(x.shifted(n), x);
    if (first || d < best.value) {
      best = {std::move(d), n};
      first = false;
    }
  }
  return best;
}

struct MovingQuery {
  SequenceSource n_seq;
  SequenceSource r_seq = SequenceSource::identity();
  std::int64_t horizon = 1;  // K
  Rational eps = Rational(1, 100);

  void validate() const {
    if (horizon < 1) throw InvalidArgument("moving query horizon K must be at least 1");
    if (eps <= 0) throw InvalidArgument("moving query tolerance must be positive");
  }
};

struct PsiResult {
  Distance value;
  std::int64_t argmin_k = 1;
};

/// psi(x) = min_{k <= K} d(T^{n_k + r_k} x, T^{n_k} x)
inline PsiResult psi_moving(const RotationSystem& sys, const RotationPoint& x, const MovingQuery& q) {
  q.validate();
  PsiResult best;
  for (std::int64_t k = 1; k <= q.horizon; ++k) {
    const BigInt nk = q.n_seq.at(k);
    const BigInt rk = q.r_seq.at(k);
    Distance d = sys.distance(sys.iterate(x, nk + rk), sys.iterate(x, nk));
    if (k == 1 || d < best.value) best = {std::move(d), k};
  }
  return best;
}

inline PsiResult psi_moving(const SubshiftSystem&, const SymbolicPoint& x, const MovingQuery& q) {
  q.validate();
  PsiResult best;
  for (std::int64_t k = 1; k <= q.horizon; ++k) {
    const std::int64_t nk = to_int64(q.n_seq.at(k));
    const std::int64_t rk = to_int64(q.r_seq.at(k));
    Distance d = symbolic_distance(x.shifted(checked_add(nk, rk)), x.shifted(nk));
    if (k == 1 || d < best.value) best = {std::move(d), k};
  }
  return best;
}

// ---------------------------------------------------------------------------
// L-recurrence witnesses

template <class Point>
struct RecurrenceWitness {
  std::size_t sample_index = 0;
  Point x;
  std::int64_t m = 0;
  Distance distance;
};

/// First sample x with min_{m in L} d(T^m x, x) < eps. On a rotation the
/// distance does not depend on x, so the first sample decides exactly.
inline std::optional<RecurrenceWitness<RotationPoint>> find_L_recurrent(const RotationSystem& sys, const IntSet& l,
                                                                        const Rational& eps,
                                                                        const std::vector<RotationPoint>& samples) {
  if (eps <= 0) throw InvalidArgument("eps must be positive");
  if (samples.empty()) throw InvalidArgument("need at least one sample point");
  if (l.empty()) throw EmptyInput("L is empty");
  const std::int64_t h = std::max(checked_abs(l.min()), checked_abs(l.max()));
  const PhiResult r = phi_L(sys, samples.front(), l, h);
  if (!r.value.below(eps)) return std::nullopt;
  return RecurrenceWitness<RotationPoint>{0, samples.front(), r.argmin, r.value};
}

inline std::optional<RecurrenceWitness<SymbolicPoint>> find_L_recurrent(const SubshiftSystem& sys, const IntSet& l,
                                                                        const Rational& eps,
                                                                        const std::vector<SymbolicPoint>& samples) {
  if (eps <= 0) throw InvalidArgument("eps must be positive");
  if (samples.empty()) throw InvalidArgument("need at least one sample point");
  if (l.empty()) throw EmptyInput("L is empty");
  const std::int64_t h = std::max(checked_abs(l.min()), checked_abs(l.max()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    PhiResult best;
    bool first = true;
    for (auto m : detail::horizon_members(l, h)) {
      Distance d = symbolic_distance(samples[i].shifted(m), samples[i]);
      if (first || d < best.value) {
        best = {std::move(d), m};
        first = false;
      }
    }
    (void)sys;
    if (best.value.below(eps)) return RecurrenceWitness<SymbolicPoint>{i, samples[i], best.argmin, best.value};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// eta-density

struct EtaDenseResult {
  std::int64_t m = 0;
  bool conservative = false;  // k > 1: grid-cover sufficient condition, an upper bound on the least M
};

/// Least M such that {T^j x : 0 <= j <= M} is eta-dense. In one dimension this
/// is exact (largest arc between orbit points <= 2 eta).
inline EtaDenseResult eta_dense_constant(const RotationSystem& sys, const Rational& eta, std::int64_t max_m = 1'000'000) {
  if (eta <= 0) throw InvalidArgument("eta must be positive");
  if (sys.dimension() == 1) {
    const Real alpha = sys.alphas[0].frac();
    const Real limit(2 * eta);
    auto less = [](const Real& a, const Real& b) { return a < b; };
    std::set<Real, decltype(less)> pts(less);
    std::multiset<Real, decltype(less)> gaps(less);
    pts.insert(Real(0));
    gaps.insert(Real(1));
    if (*gaps.rbegin() <= limit) return {0, false};
    Real p(0);
    for (std::int64_t j = 1; j <= max_m; ++j) {
      p = (p + alpha).frac();
      auto [it, inserted] = pts.insert(p);
      if (!inserted)
        throw NoSuchM("orbit is periodic with " + std::to_string(pts.size()) + " points; largest gap " +
                      gaps.rbegin()->to_string() + " exceeds 2*eta");
      const Real prev = (it == pts.begin()) ? *pts.rbegin() - Real(1) : *std::prev(it);
      const Real next = (std::next(it) == pts.end()) ? *pts.begin() + Real(1) : *std::next(it);
      gaps.erase(gaps.find(next - prev));
      gaps.insert(p - prev);
      gaps.insert(next - p);
      if (*gaps.rbegin() <= limit) return {j, false};
    }
    throw NoSuchM("orbit not eta-dense within " + std::to_string(max_m) + " steps");
  }

  // T^k: cells of side h = eta/sqrt(k); a cell is covered when its center lies
  // within eta/2 of an orbit point, which puts the whole cell within eta.
  const std::size_t k = sys.dimension();
  const double e = to_double(eta);
  const auto cells = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(k)) / e));
  std::int64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total = checked_mul(total, cells);
  if (total > 50'000'000) throw InvalidArgument("eta too small for the grid cover in this dimension");
  std::vector<char> covered(static_cast<std::size_t>(total), 0);
  std::int64_t remaining = total;
  const double reach = e / 2 - 1e-12;
  std::vector<long double> a(k);
  for (std::size_t i = 0; i < k; ++i) a[i] = static_cast<long double>(sys.alphas[i].frac().to_double());
  std::vector<long double> pt(k, 0.0L);
  for (std::int64_t j = 0; j <= max_m; ++j) {
    if (j > 0)
      for (std::size_t i = 0; i < k; ++i) pt[i] = std::fmod(pt[i] + a[i], 1.0L);
    for (std::int64_t c = 0; c < total; ++c) {
      if (covered[static_cast<std::size_t>(c)]) continue;
      std::int64_t rest = c;
      long double sq = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const long double center = (static_cast<long double>(rest % cells) + 0.5L) / static_cast<long double>(cells);
        rest /= cells;
        long double d = std::fabs(center - pt[i]);
        d = std::min(d, 1.0L - d);
        sq += d * d;
      }
      if (sq <= static_cast<long double>(reach) * reach) {
        covered[static_cast<std::size_t>(c)] = 1;
        --remaining;
      }
    }
    if (remaining == 0) return {j, true};
  }
  throw NoSuchM("grid not covered within " + std::to_string(max_m) + " steps");
}

// ---------------------------------------------------------------------------
// Uniform rigidity

struct RigidityRecord {
  std::int64_t m = 0;
  Distance sup_displacement;
};

/// Record minima of m -> sup_x d(x, T^m x) = ||m alpha|| over 1 <= m <= H.
inline std::vector<RigidityRecord> uniform_rigidity_scan(const RotationSystem& sys, std::int64_t horizon) {
  if (horizon < 1) throw InvalidArgument("horizon must be at least 1");
  std::vector<RigidityRecord> out;
  for (std::int64_t m = 1; m <= horizon; ++m) {
    Distance d = sys.displacement(BigInt(m));
    if (out.empty() || d < out.back().sup_displacement) out.push_back({m, std::move(d)});
  }
  return out;
}

/// Record minima of m -> max over the sampled points of d(x, sigma^m x).
inline std::vector<RigidityRecord> uniform_rigidity_scan(const std::vector<SymbolicPoint>& samples,
                                                         std::int64_t horizon) {
  if (horizon < 1) throw InvalidArgument("horizon must be at least 1");
  if (samples.empty()) throw InvalidArgument("need at least one sample point");
  std::vector<RigidityRecord> out;
  for (std::int64_t m = 1; m <= horizon; ++m) {
    Distance sup = symbolic_distance(samples[0].shifted(m), samples[0]);
    for (std::size_t i = 1; i < samples.size(); ++i) {
      Distance d = symbolic_distance(samples[i].shifted(m), samples[i]);
      if (d > sup) sup = std::move(d);
    }
    if (out.empty() || sup < out.back().sup_displacement) out.push_back({m, std::move(sup)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Moving recurrence experiments

struct MovingReport {
  std::size_t samples = 0;
  std::size_t below = 0;  // samples with psi < eps
  double fraction = 0.0;
  Distance min, median, max;
  std::int64_t horizon = 0;
  Rational eps;
  bool declared_minimal = false;
  std::vector<Distance> values;  // per sample, in sample order
};

inline constexpr const char* kMovingReportNote =
    "psi is a minimum over k <= K, not an infimum over all k; a small value is evidence at this horizon only. "
    "Pairing windowed Birkhoff verdicts for (r_k) with these values is left to the user's statistical framing.";

namespace detail {
inline MovingReport summarize(std::vector<Distance> values, const MovingQuery& q, bool minimal) {
  MovingReport rep;
  rep.samples = values.size();
  rep.horizon = q.horizon;
  rep.eps = q.eps;
  rep.declared_minimal = minimal;
  for (const auto& v : values)
    if (v.below(q.eps)) ++rep.below;
  rep.fraction = values.empty() ? 0.0 : static_cast<double>(rep.below) / static_cast<double>(values.size());
  std::vector<Distance> sorted = values;
  std::ranges::sort(sorted, [](const Distance& a, const Distance& b) { return a < b; });
  if (!sorted.empty()) {
    rep.min = sorted.front();
    rep.max = sorted.back();
    rep.median = sorted[(sorted.size() - 1) / 2];
  }
  rep.values = std::move(values);
  return rep;
}
}  // namespace detail

inline MovingReport moving_recurrence_experiment(const RotationSystem& sys, const MovingQuery& q,
                                                 const std::vector<RotationPoint>& samples, unsigned threads = 1) {
  if (samples.empty()) throw InvalidArgument("need at least one sample point");
  std::vector<Distance> values(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) { values[i] = psi_moving(sys, samples[i], q).value; });
  return detail::summarize(std::move(values), q, sys.declared_minimal);
}

inline MovingReport moving_recurrence_experiment(const SubshiftSystem& sys, const MovingQuery& q,
                                                 const std::vector<SymbolicPoint>& samples, unsigned threads = 1) {
  if (samples.empty()) throw InvalidArgument("need at least one sample point");
  std::vector<Distance> values(samples.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) { values[i] = psi_moving(sys, samples[i], q).value; });
  return detail::summarize(std::move(values), q, false);
}

// ---------------------------------------------------------------------------
// Sampling

/// Points with coordinates u / 2^32, u drawn from mt19937_64(seed).
inline std::vector<RotationPoint> sample_rotation_points(std::size_t dimension, std::size_t count,
                                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<RotationPoint> out(count, RotationPoint(dimension));
  for (auto& p : out)
    for (auto& c : p) c = Real(Rational(BigInt(rng() >> 32), BigInt(1) << 32));
  return out;
}

/// Orbit points sigma^t(base) with t drawn uniformly from [-spread, spread].
inline std::vector<SymbolicPoint> sample_orbit_points(const SubshiftSystem& sys, std::size_t count,
                                                      std::int64_t spread, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SymbolicPoint> out;
  const auto width = static_cast<std::uint64_t>(2 * spread + 1);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(sys.base.shifted(static_cast<std::int64_t>(rng() % width) - spread));
  return out;
}

/// Sampled points of the full shift on {0,1}^Z, known on [-half_width, half_width].
/// The first sample is the point with a single 1 at coordinate 0.
inline std::vector<SymbolicPoint> full_shift_samples(std::size_t count, std::int64_t half_width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SymbolicPoint> out;
  const auto len = static_cast<std::size_t>(2 * half_width + 1);
  if (count > 0) {
    std::vector<std::uint8_t> spike(len, 0);
    spike[static_cast<std::size_t>(half_width)] = 1;
    out.emplace_back(-half_width, std::move(spike));
  }
  while (out.size() < count) {
    std::vector<std::uint8_t> w(len);
    for (auto& s : w) s = static_cast<std::uint8_t>(rng() & 1U);
    out.emplace_back(-half_width, std::move(w));
  }
  return out;
}

}  // namespace reclab
