#pragma once

// r-Birkhoff decisions for finite distance sets M.
//
// A proper r-coloring of Z with no monochromatic pair at a distance in M
// exists iff M is not r-Birkhoff. Two kinds of finite evidence settle the
// question:
//   * WindowUnsat{W, r}: the distance graph on {0..W-1} has no proper
//     r-coloring. Any coloring of Z restricts to one, so M is r-Birkhoff.
//   * PeriodicWitness: a proper r-coloring of the circulant graph on Z_p.
//     Extended periodically it colors Z, so M is not r-Birkhoff.
// The solver searches both sides round-robin and never guesses: when the node
// budget or the window/period limits run out the verdict is UNDECIDED.

#include <algorithm>
#include <chrono>
#include <map>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "reclab/error.hpp"
#include "reclab/intset.hpp"

namespace reclab {

enum class Status { r_birkhoff, not_r_birkhoff, undecided };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::r_birkhoff: return "R_BIRKHOFF";
    case Status::not_r_birkhoff: return "NOT_R_BIRKHOFF";
    case Status::undecided: return "UNDECIDED";
  }
  return "?";
}

/// c(i) = colors[i mod period], colors in 1..r.
struct PeriodicColoring {
  std::vector<int> colors;

  std::int64_t period() const noexcept { return static_cast<std::int64_t>(colors.size()); }
  int color_at(std::int64_t i) const {
    const std::int64_t p = period();
    return colors[static_cast<std::size_t>(((i % p) + p) % p)];
  }
  friend bool operator==(const PeriodicColoring&, const PeriodicColoring&) = default;
};

struct WindowUnsat {
  std::int64_t window = 0;
  int arity = 0;
  friend bool operator==(const WindowUnsat&, const WindowUnsat&) = default;
};

struct PeriodicWitness {
  PeriodicColoring coloring;
  friend bool operator==(const PeriodicWitness&, const PeriodicWitness&) = default;
};

using Certificate = std::variant<WindowUnsat, PeriodicWitness>;

/// Zero means "use the default": max_window = 4 max(M), max_period = min(256, 2 max(M) + 1).
struct SolverLimits {
  std::int64_t max_window = 0;
  std::int64_t max_period = 0;
  std::uint64_t node_budget = 20'000'000;
  bool greedy_fallback = true;  // try the greedy cycle once the period scan is exhausted
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::int64_t windows_checked = 0;
  std::int64_t periods_checked = 0;
  bool budget_exhausted = false;
  double wall_seconds = 0.0;
};

struct Verdict {
  Status status = Status::undecided;
  std::optional<Certificate> certificate;
  SearchStats stats;
};

/// Adjacency i ~ j iff |i - j| in distances, on vertices 0..window-1.
struct DistanceGraph {
  std::int64_t window = 0;
  IntSet distances;  // positive representatives

  DistanceGraph(std::int64_t w, const IntSet& m) : window(w), distances(m.absolute()) {
    if (w < 1) throw InvalidArgument("window length must be positive");
  }

  bool adjacent(std::int64_t i, std::int64_t j) const { return i != j && distances.contains(checked_abs(i - j)); }

  std::int64_t edge_count() const {
    std::int64_t e = 0;
    for (auto m : distances) e += std::max<std::int64_t>(0, window - m);
    return e;
  }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(window));
    for (std::int64_t i = 0; i < window; ++i) {
      for (auto m : distances) {
        if (m >= window) break;
        if (i - m >= 0) adj[static_cast<std::size_t>(i)].push_back(static_cast<int>(i - m));
        if (i + m < window) adj[static_cast<std::size_t>(i)].push_back(static_cast<int>(i + m));
      }
    }
    return adj;
  }
};

namespace detail {

class NodeCounter {
 public:
  explicit NodeCounter(std::uint64_t budget) : budget_(budget) {}
  bool charge() {
    if (used_ >= budget_) {
      exhausted_ = true;
      return false;
    }
    ++used_;
    return true;
  }
  std::uint64_t used() const noexcept { return used_; }
  bool exhausted() const noexcept { return exhausted_; }

 private:
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  bool exhausted_ = false;
};

enum class Outcome { colorable, uncolorable, aborted };

struct ColoringResult {
  Outcome outcome = Outcome::aborted;
  std::vector<int> coloring;
};

/// Shared state for the two exact searches: forbidden-color counts per vertex.
class ColoringState {
 public:
  ColoringState(const std::vector<std::vector<int>>& adj, int colors)
      : adj_(adj),
        colors_(colors),
        color_(adj.size(), 0),
        forbid_(adj.size() * static_cast<std::size_t>(colors + 1), 0),
        sat_(adj.size(), 0) {}

  int color(int v) const { return color_[static_cast<std::size_t>(v)]; }
  int saturation(int v) const { return sat_[static_cast<std::size_t>(v)]; }
  bool forbidden(int v, int c) const { return forbid_[idx(v, c)] > 0; }

  /// Assigns c to v; returns false when some uncolored neighbor lost its last color.
  bool assign(int v, int c) {
    color_[static_cast<std::size_t>(v)] = c;
    bool ok = true;
    for (int u : adj_[static_cast<std::size_t>(v)]) {
      if (forbid_[idx(u, c)]++ == 0) {
        if (++sat_[static_cast<std::size_t>(u)] == colors_ && color_[static_cast<std::size_t>(u)] == 0) ok = false;
      }
    }
    return ok;
  }

  void unassign(int v) {
    const int c = color_[static_cast<std::size_t>(v)];
    color_[static_cast<std::size_t>(v)] = 0;
    for (int u : adj_[static_cast<std::size_t>(v)]) {
      if (--forbid_[idx(u, c)] == 0) --sat_[static_cast<std::size_t>(u)];
    }
  }

  const std::vector<int>& colors() const noexcept { return color_; }

 private:
  std::size_t idx(int v, int c) const {
    return static_cast<std::size_t>(v) * static_cast<std::size_t>(colors_ + 1) + static_cast<std::size_t>(c);
  }

  const std::vector<std::vector<int>>& adj_;
  int colors_;
  std::vector<int> color_;
  std::vector<int> forbid_;
  std::vector<int> sat_;
};

/// Exact DSATUR: most saturated vertex first (ties: lowest index), lowest
/// color first, new colors introduced one at a time.
class DsaturSearch {
 public:
  DsaturSearch(const std::vector<std::vector<int>>& adj, int colors, NodeCounter& nodes)
      : adj_(adj), colors_(colors), nodes_(nodes), state_(adj, colors) {}

  ColoringResult run() {
    const bool found = recurse(0, 0);
    if (aborted_) return {Outcome::aborted, {}};
    if (!found) return {Outcome::uncolorable, {}};
    return {Outcome::colorable, state_.colors()};
  }

 private:
  bool recurse(std::size_t colored, int used_max) {
    const int n = static_cast<int>(adj_.size());
    if (colored == adj_.size()) return true;
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (state_.color(v) != 0) continue;
      if (pick < 0 || state_.saturation(v) > state_.saturation(pick)) pick = v;
    }
    const int limit = std::min(colors_, used_max + 1);
    for (int c = 1; c <= limit; ++c) {
      if (state_.forbidden(pick, c)) continue;
      if (!nodes_.charge()) {
        aborted_ = true;
        return false;
      }
      const bool viable = state_.assign(pick, c);
      if (viable && recurse(colored + 1, std::max(used_max, c))) return true;
      state_.unassign(pick);
      if (aborted_) return false;
    }
    return false;
  }

  const std::vector<std::vector<int>>& adj_;
  int colors_;
  NodeCounter& nodes_;
  ColoringState state_;
  bool aborted_ = false;
};

/// Chronological search in vertex order 0, 1, 2, ...; the first coloring
/// found is the lexicographically least one.
class LexSearch {
 public:
  LexSearch(const std::vector<std::vector<int>>& adj, int colors, NodeCounter& nodes)
      : adj_(adj), colors_(colors), nodes_(nodes), state_(adj, colors) {}

  ColoringResult run() {
    const bool found = recurse(0, 0);
    if (aborted_) return {Outcome::aborted, {}};
    if (!found) return {Outcome::uncolorable, {}};
    return {Outcome::colorable, state_.colors()};
  }

 private:
  bool recurse(int v, int used_max) {
    if (v == static_cast<int>(adj_.size())) return true;
    const int limit = std::min(colors_, used_max + 1);
    for (int c = 1; c <= limit; ++c) {
      if (state_.forbidden(v, c)) continue;
      if (!nodes_.charge()) {
        aborted_ = true;
        return false;
      }
      const bool viable = state_.assign(v, c);
      if (viable && recurse(v + 1, std::max(used_max, c))) return true;
      state_.unassign(v);
      if (aborted_) return false;
    }
    return false;
  }

  const std::vector<std::vector<int>>& adj_;
  int colors_;
  NodeCounter& nodes_;
  ColoringState state_;
  bool aborted_ = false;
};

/// Is DistanceGraph(W, M) r-colorable? M positive. The graph splits into g =
/// gcd(M) residue classes, the largest isomorphic to DistanceGraph(ceil(W/g), M/g).
inline Outcome window_colorable(std::int64_t window, const IntSet& m, int r, NodeCounter& nodes) {
  if (window <= r) return Outcome::colorable;
  std::vector<std::int64_t> active;
  for (auto d : m) {
    if (d >= window) break;
    active.push_back(d);
  }
  if (active.empty()) return Outcome::colorable;
  std::int64_t g = 0;
  for (auto d : active) g = std::gcd(g, d);
  std::vector<std::int64_t> reduced;
  for (auto d : active) reduced.push_back(d / g);
  const std::int64_t w = (window + g - 1) / g;
  const auto adj = DistanceGraph(w, IntSet(reduced)).adjacency();
  return DsaturSearch(adj, r, nodes).run().outcome;
}

inline std::vector<std::vector<int>> circulant_adjacency(std::int64_t p, const IntSet& m) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(p));
  for (std::int64_t j = 0; j < p; ++j) {
    auto& row = adj[static_cast<std::size_t>(j)];
    for (auto d : m) {
      const std::int64_t s = d % p;
      row.push_back(static_cast<int>((j + s) % p));
      row.push_back(static_cast<int>((j - s + p) % p));
    }
    std::ranges::sort(row);
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return adj;
}

/// Lexicographically least proper r-coloring of the circulant graph on Z_p, if any.
inline ColoringResult periodic_coloring(std::int64_t p, const IntSet& m, int r, NodeCounter& nodes) {
  for (auto d : m)
    if (d % p == 0) return {Outcome::uncolorable, {}};
  const auto adj = circulant_adjacency(p, m);
  return LexSearch(adj, r, nodes).run();
}

inline std::int64_t default_max_window(const IntSet& m) { return checked_mul(4, m.max()); }
inline std::int64_t default_max_period(const IntSet& m) {
  return std::min<std::int64_t>(256, checked_add(checked_mul(2, m.max()), 1));
}

inline IntSet positive_distances(const IntSet& m) {
  if (m.empty()) throw EmptyInput("distance set is empty");
  return m.absolute();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Certificate verification (independent reference path)

namespace detail {

/// Plain chronological backtracking, one connected component at a time, in
/// increasing vertex order. Deliberately shares nothing with the solver.
inline bool reference_window_colorable(std::int64_t window, const IntSet& m, int r, std::uint64_t allowance) {
  const auto n = static_cast<std::size_t>(window);
  std::vector<std::vector<std::size_t>> back(n);  // neighbors with smaller index
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (auto d : m) {
      if (static_cast<std::size_t>(d) > i) break;
      const std::size_t j = i - static_cast<std::size_t>(d);
      back[i].push_back(j);
      parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t i = 0; i < n; ++i) components[find(i)].push_back(i);

  std::vector<int> color(n, 0);
  std::uint64_t spent = 0;
  for (auto& [root, verts] : components) {
    // verts is increasing; a vertex's smaller neighbors all lie in its component
    color[verts[0]] = 1;
    std::size_t k = 1;
    while (k < verts.size()) {
      const std::size_t v = verts[k];
      int c = color[v] + 1;
      for (; c <= r; ++c) {
        bool clash = false;
        for (auto u : back[v])
          if (color[u] == c) {
            clash = true;
            break;
          }
        if (!clash) break;
      }
      if (++spent > allowance) throw BudgetExceeded("reference verifier exceeded its node allowance");
      if (c <= r) {
        color[v] = c;
        ++k;
      } else {
        color[v] = 0;
        if (k == 1) return false;  // first vertex is pinned to color 1 by symmetry
        --k;
      }
    }
  }
  return true;
}

}  // namespace detail

/// Checks a periodic coloring against every distance and residue.
inline bool periodic_coloring_is_valid(const IntSet& m, const PeriodicColoring& c) {
  const std::int64_t p = c.period();
  if (p < 1) return false;
  for (auto d : m.absolute()) {
    if (d % p == 0) return false;
    for (std::int64_t j = 0; j < p; ++j)
      if (c.colors[static_cast<std::size_t>(j)] == c.color_at(j + d)) return false;
  }
  return true;
}

/// Independent re-check of a certificate for (M, r).
inline bool verify_certificate(const IntSet& m, int r, const Certificate& cert,
                               std::uint64_t reference_allowance = 200'000'000) {
  if (r < 1) throw InvalidArity("arity must be at least 1");
  const IntSet pos = detail::positive_distances(m);
  if (const auto* w = std::get_if<WindowUnsat>(&cert)) {
    if (w->window < 1) throw MalformedCertificate("window must be positive");
    if (w->arity < 1) throw MalformedCertificate("certificate arity must be positive");
    if (w->arity != r) return false;
    return !detail::reference_window_colorable(w->window, pos, r, reference_allowance);
  }
  const auto& pc = std::get<PeriodicWitness>(cert).coloring;
  if (pc.colors.empty()) throw MalformedCertificate("periodic witness has no colors");
  for (int c : pc.colors)
    if (c < 1 || c > r) throw MalformedCertificate("color " + std::to_string(c) + " outside 1.." + std::to_string(r));
  return periodic_coloring_is_valid(pos, pc);
}

// ---------------------------------------------------------------------------
// Greedy construction z_i = min X_i

struct GreedyResult {
  std::vector<int> sequence;  // z_1 .. z_N
  std::optional<PeriodicColoring> cycle;
  std::int64_t cycle_start = 0;  // first index of the purely periodic tail
};

/// z_i = 1 for i <= 0; z_i = least color differing from every z_{i-m}, m in M.
/// Needs |M| < colors. The tail becomes periodic once the last max(M) values
/// repeat; the cycle is searched for up to cycle_search_limit terms.
inline GreedyResult greedy_coloring(const IntSet& m_in, int colors, std::int64_t length,
                                    std::int64_t cycle_search_limit = 2'000'000) {
  const IntSet m = detail::positive_distances(m_in);
  if (colors < 1) throw InvalidArity("need at least one color");
  if (static_cast<std::int64_t>(m.size()) >= colors)
    throw InvalidArity("greedy coloring needs |M| < colors");
  if (length < 0) throw InvalidArgument("length must be non-negative");
  const std::int64_t lag = m.max();
  const std::int64_t horizon = std::max(length, cycle_search_limit);

  std::vector<int> z(static_cast<std::size_t>(lag), 1);  // z_{1-lag} .. z_0
  auto at = [&](std::int64_t i) { return z[static_cast<std::size_t>(i + lag - 1)]; };

  GreedyResult res;
  std::unordered_map<std::string, std::int64_t> seen;
  std::vector<char> used(static_cast<std::size_t>(colors + 1));
  for (std::int64_t i = 1; i <= horizon; ++i) {
    std::fill(used.begin(), used.end(), 0);
    for (auto d : m) used[static_cast<std::size_t>(at(i - d))] = 1;
    int c = 1;
    while (used[static_cast<std::size_t>(c)]) ++c;
    z.push_back(c);
    if (i <= length) res.sequence.push_back(c);
    if (!res.cycle && i >= lag) {
      // state = (z_{i-lag+1}, ..., z_i), all produced by the rule itself
      std::string key(z.end() - lag, z.end());
      auto [it, inserted] = seen.emplace(std::move(key), i);
      if (!inserted) {
        const std::int64_t first = it->second;
        const std::int64_t period = i - first;
        const std::int64_t start = first - lag + 1;  // z_t = z_{t+period} for t >= start
        PeriodicColoring pc;
        pc.colors.resize(static_cast<std::size_t>(period));
        for (std::int64_t t = start; t < start + period; ++t)
          pc.colors[static_cast<std::size_t>(t % period)] = at(t);
        res.cycle = std::move(pc);
        res.cycle_start = start;
      }
    }
    if (res.cycle && i >= length) break;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Main decision procedure

/// Round-robin: window W = r+1, r+2, ... for UNSAT proofs interleaved with
/// period p = 1, 2, ... for periodic witnesses. The first proof found wins.
/// Witnesses are canonical: least period, then lexicographically least colors
/// (ties broken toward lower indices and lower colors). UNSAT reports the least W.
inline Verdict check_r_birkhoff(const IntSet& m_in, int r, const SolverLimits& limits = {}) {
  if (r < 1) throw InvalidArity("arity must be at least 1");
  const IntSet m = detail::positive_distances(m_in);
  const auto started = std::chrono::steady_clock::now();
  const std::int64_t max_window = limits.max_window > 0 ? limits.max_window : detail::default_max_window(m);
  const std::int64_t max_period = limits.max_period > 0 ? limits.max_period : detail::default_max_period(m);

  detail::NodeCounter nodes(limits.node_budget);
  Verdict v;
  auto finish = [&](Status s, std::optional<Certificate> cert) {
    v.status = s;
    v.certificate = std::move(cert);
    v.stats.nodes = nodes.used();
    v.stats.budget_exhausted = nodes.exhausted();
    v.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return v;
  };

  std::int64_t w = r + 1;
  std::int64_t p = 1;
  while (w <= max_window || p <= max_period) {
    if (w <= max_window) {
      ++v.stats.windows_checked;
      const auto out = detail::window_colorable(w, m, r, nodes);
      if (out == detail::Outcome::aborted) return finish(Status::undecided, std::nullopt);
      if (out == detail::Outcome::uncolorable) return finish(Status::r_birkhoff, WindowUnsat{w, r});
      ++w;
    }
    if (p <= max_period) {
      ++v.stats.periods_checked;
      auto res = detail::periodic_coloring(p, m, r, nodes);
      if (res.outcome == detail::Outcome::aborted) return finish(Status::undecided, std::nullopt);
      if (res.outcome == detail::Outcome::colorable)
        return finish(Status::not_r_birkhoff, PeriodicWitness{PeriodicColoring{std::move(res.coloring)}});
      ++p;
    }
  }
  if (limits.greedy_fallback && static_cast<int>(m.size()) < r) {
    auto g = greedy_coloring(m, r, 0, std::min<std::uint64_t>(limits.node_budget, 2'000'000));
    if (g.cycle && periodic_coloring_is_valid(m, *g.cycle))
      return finish(Status::not_r_birkhoff, PeriodicWitness{std::move(*g.cycle)});
  }
  return finish(Status::undecided, std::nullopt);
}

// ---------------------------------------------------------------------------
// Derived operations

struct MinimalSubsetResult {
  Status status = Status::undecided;  // r_birkhoff when `subset` is a verified minimal r-Birkhoff set
  IntSet subset;                      // the minimal subset, or the partial progress when undecided
  std::optional<Certificate> certificate;
  std::uint64_t nodes = 0;
};

/// Drops elements one at a time (ascending) while the rest stays r-Birkhoff.
/// One pass suffices: subsets of a non-r-Birkhoff set are not r-Birkhoff.
inline MinimalSubsetResult minimal_r_birkhoff_subset(const IntSet& m_in, int r, const SolverLimits& limits = {}) {
  const IntSet m = detail::positive_distances(m_in);
  MinimalSubsetResult res;
  Verdict top = check_r_birkhoff(m, r, limits);
  res.nodes += top.stats.nodes;
  res.subset = m;
  if (top.status == Status::undecided) return res;
  if (top.status == Status::not_r_birkhoff)
    throw InvalidArgument("set is not " + std::to_string(r) + "-Birkhoff; no r-Birkhoff subset exists");
  res.certificate = top.certificate;
  for (auto e : m) {
    const IntSet candidate = res.subset.without(e);
    if (candidate.empty()) continue;
    Verdict v = check_r_birkhoff(candidate, r, limits);
    res.nodes += v.stats.nodes;
    if (v.status == Status::undecided) return res;  // status stays undecided, subset = partial progress
    if (v.status == Status::r_birkhoff) {
      res.subset = candidate;
      res.certificate = v.certificate;
    }
  }
  res.status = Status::r_birkhoff;
  return res;
}

struct StableProbeResult {
  Verdict verdict;
  IntSet probed;                          // truncation of L_{family_r} minus the removed set
  std::optional<std::int64_t> intact_layer;  // first layer (r+2)^k N_r that survived, if any
};

/// Verdict for (L_{family_r} truncated at k_max) \ removed at the given arity.
/// When arity <= family_r and a whole layer (family_r+2)^k N_{family_r} survives,
/// the set is r-Birkhoff outright: the layer contains a clique of size arity+1
/// inside a window of length s*arity+1, s = (family_r+2)^k. Only the least
/// UNSAT window is searched for then.
inline StableProbeResult stably_r_birkhoff_probe(std::int64_t family_r, int arity, const IntSet& removed,
                                                 std::int64_t k_max, const SolverLimits& limits = {}) {
  if (arity < 1) throw InvalidArity("arity must be at least 1");
  StableProbeResult res;
  res.probed = gen_L_r(family_r, k_max).without(removed);
  if (res.probed.empty()) throw EmptyInput("nothing left after removing F");
  if (arity <= family_r) {
    for (std::int64_t k = 0; k <= k_max; ++k) {
      if (L_r_layer(family_r, k).is_subset_of(res.probed)) {
        res.intact_layer = k;
        break;
      }
    }
  }
  if (!res.intact_layer) {
    res.verdict = check_r_birkhoff(res.probed, arity, limits);
    return res;
  }
  const auto started = std::chrono::steady_clock::now();
  const std::int64_t scale = L_r_layer(family_r, *res.intact_layer).min();
  const std::int64_t clique_window = checked_add(checked_mul(scale, arity), 1);
  detail::NodeCounter nodes(limits.node_budget);
  std::int64_t found = clique_window;
  std::int64_t checked = 0;
  for (std::int64_t w = arity + 1; w < clique_window; ++w) {
    ++checked;
    const auto out = detail::window_colorable(w, res.probed, arity, nodes);
    if (out == detail::Outcome::aborted) break;
    if (out == detail::Outcome::uncolorable) {
      found = w;
      break;
    }
  }
  res.verdict.status = Status::r_birkhoff;
  res.verdict.certificate = WindowUnsat{found, arity};
  res.verdict.stats.nodes = nodes.used();
  res.verdict.stats.windows_checked = checked;
  res.verdict.stats.budget_exhausted = nodes.exhausted();
  res.verdict.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return res;
}

struct ChromaticBracket {
  int lower = 0;
  int upper = 0;
  std::uint64_t nodes = 0;
};

/// Bracket on the chromatic number of DistanceGraph(W, M). Exact UNSAT raises
/// the lower end; any coloring found (first a DSATUR greedy pass) lowers the upper end.
inline ChromaticBracket chromatic_number_window(const IntSet& m_in, std::int64_t window,
                                                const SolverLimits& limits = {}) {
  const IntSet m = detail::positive_distances(m_in);
  const DistanceGraph graph(window, m);
  ChromaticBracket b;
  b.lower = graph.edge_count() > 0 ? 2 : 1;

  // Greedy DSATUR pass (no backtracking) for the initial upper bound.
  const auto adj = graph.adjacency();
  {
    std::vector<int> color(adj.size(), 0);
    std::vector<std::vector<char>> seen(adj.size());
    std::vector<int> sat(adj.size(), 0);
    int used = 0;
    for (std::size_t step = 0; step < adj.size(); ++step) {
      int pick = -1;
      for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
        if (color[static_cast<std::size_t>(v)]) continue;
        if (pick < 0 || sat[static_cast<std::size_t>(v)] > sat[static_cast<std::size_t>(pick)]) pick = v;
      }
      auto& s = seen[static_cast<std::size_t>(pick)];
      int c = 1;
      while (c < static_cast<int>(s.size()) && s[static_cast<std::size_t>(c)]) ++c;
      color[static_cast<std::size_t>(pick)] = c;
      used = std::max(used, c);
      for (int u : adj[static_cast<std::size_t>(pick)]) {
        auto& su = seen[static_cast<std::size_t>(u)];
        if (static_cast<int>(su.size()) <= c) su.resize(static_cast<std::size_t>(c + 1), 0);
        if (!su[static_cast<std::size_t>(c)]) {
          su[static_cast<std::size_t>(c)] = 1;
          ++sat[static_cast<std::size_t>(u)];
        }
      }
    }
    b.upper = std::max(used, 1);
  }

  detail::NodeCounter nodes(limits.node_budget);
  for (int r = b.lower; r < b.upper; ++r) {
    const auto out = detail::window_colorable(window, m, r, nodes);
    if (out == detail::Outcome::aborted) break;
    if (out == detail::Outcome::uncolorable) {
      b.lower = r + 1;
    } else {
      b.upper = r;
      break;
    }
  }
  b.nodes = nodes.used();
  return b;
}

}  // namespace reclab
