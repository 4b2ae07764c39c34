#pragma once

// The fixed list of finite-scale claims re-derived by `report paper-claims`.
// Each claim runs the library end to end and re-verifies every certificate
// it relies on; a budget-starved run may only downgrade claims to UNDECIDED.

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "reclab/birkhoff.hpp"
#include "reclab/bohr.hpp"
#include "reclab/dynamics.hpp"
#include "reclab/expr.hpp"
#include "reclab/intset.hpp"
#include "reclab/real.hpp"

namespace reclab {

enum class ClaimStatus { pass, fail, undecided };

inline const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::pass: return "PASS";
    case ClaimStatus::fail: return "FAIL";
    case ClaimStatus::undecided: return "UNDECIDED";
  }
  return "?";
}

struct ClaimResult {
  int id = 0;
  std::string name;
  ClaimStatus status = ClaimStatus::pass;
  std::vector<std::string> certificates;  // "window_unsat W=7 r=3", "periodic p=3 (1,2,3)", ...
  std::vector<std::string> notes;         // failures and undecided sub-checks
  double seconds = 0.0;                   // kept out of deterministic output
};

struct ClaimOptions {
  SolverLimits limits;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool inject_corrupt = false;   // negative control: swap a corrupted witness into claim 3
  bool run_starvation = true;    // claim 10 reruns claims 1-9 at node_budget = 10
};

struct PaperReport {
  std::vector<ClaimResult> claims;
  bool all_pass() const {
    for (const auto& c : claims)
      if (c.status != ClaimStatus::pass) return false;
    return true;
  }
  bool any_fail() const {
    for (const auto& c : claims)
      if (c.status == ClaimStatus::fail) return true;
    return false;
  }
};

inline std::string describe(const Certificate& c) {
  if (const auto* u = std::get_if<WindowUnsat>(&c))
    return "window_unsat W=" + std::to_string(u->window) + " r=" + std::to_string(u->arity);
  const auto& pc = std::get<PeriodicWitness>(c).coloring;
  std::string s = "periodic p=" + std::to_string(pc.period()) + " (";
  for (std::size_t i = 0; i < pc.colors.size(); ++i) s += (i ? "," : "") + std::to_string(pc.colors[i]);
  return s + ")";
}

namespace claims_detail {

/// Collects sub-check outcomes; FAIL dominates UNDECIDED dominates PASS.
class Tally {
 public:
  explicit Tally(ClaimResult& r) : r_(r) {}
  void fail(const std::string& why) {
    r_.status = ClaimStatus::fail;
    r_.notes.push_back("FAIL: " + why);
  }
  void undecided(const std::string& why) {
    if (r_.status == ClaimStatus::pass) r_.status = ClaimStatus::undecided;
    r_.notes.push_back("UNDECIDED: " + why);
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
  void certificate(const std::string& label, const Certificate& c) { r_.certificates.push_back(label + ": " + describe(c)); }

 private:
  ClaimResult& r_;
};

inline std::string set_text(const IntSet& s) { return s.to_string(); }

/// Verdict checked against the expected status, with its certificate re-verified.
inline void expect_verdict(Tally& t, const std::string& label, const IntSet& m, int r, const Verdict& v, Status want) {
  if (v.status == Status::undecided) {
    t.undecided(label + " within budget");
    return;
  }
  if (!v.certificate) {
    t.fail(label + ": verdict without certificate");
    return;
  }
  bool ok = false;
  try {
    ok = verify_certificate(m, r, *v.certificate);
  } catch (const BudgetExceeded&) {
    t.undecided(label + ": certificate re-verification exceeded its allowance");
    return;
  }
  if (!ok) {
    t.fail(label + ": certificate rejected by the verifier");
    return;
  }
  if (v.status != want) {
    t.fail(label + ": got " + to_string(v.status) + ", expected " + to_string(want));
    return;
  }
  t.certificate(label, *v.certificate);
}

inline Rational random_rational(std::mt19937_64& rng, std::int64_t lo_num, std::int64_t hi_num, std::int64_t den) {
  std::uniform_int_distribution<std::int64_t> d(lo_num, hi_num);
  return Rational(d(rng), den);
}

// --- individual claims -----------------------------------------------------

inline void pigeonhole(Tally& t, const ClaimOptions& o) {
  for (std::int64_t k = 1; k <= 5; ++k) {
    for (int r = 1; r <= 6; ++r) {
      const IntSet m = gen_k_times_Nr(k, r);
      const std::string label = std::to_string(k) + "N_" + std::to_string(r);
      const Verdict v = check_r_birkhoff(m, r, o.limits);
      expect_verdict(t, label, m, r, v, Status::r_birkhoff);
      if (v.certificate) {
        if (const auto* u = std::get_if<WindowUnsat>(&*v.certificate))
          t.expect(u->window <= k * r + 1, label + ": window " + std::to_string(u->window) + " exceeds k*r+1");
      }
    }
  }
}

inline void cardinality(Tally& t, const ClaimOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> pick_r(1, 6);
  std::uniform_int_distribution<std::int64_t> pick_elem(1, 50);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = pick_r(rng);
    std::vector<std::int64_t> elems;
    while (static_cast<int>(elems.size()) < r) {
      const std::int64_t e = pick_elem(rng);
      if (std::find(elems.begin(), elems.end(), e) == elems.end()) elems.push_back(e);
    }
    const IntSet m(elems);
    const std::string label = m.to_string() + " arity " + std::to_string(r + 1);
    const Verdict v = check_r_birkhoff(m, r + 1, o.limits);
    expect_verdict(t, label, m, r + 1, v, Status::not_r_birkhoff);

    // Greedy min-rule, checked pairwise over 10*max(M) terms.
    const std::int64_t n = 10 * m.max();
    const auto g = greedy_coloring(m, r + 1, n);
    const auto& z = g.sequence;
    bool clean = static_cast<std::int64_t>(z.size()) == n;
    for (std::size_t i = 0; clean && i < z.size(); ++i) {
      if (z[i] < 1 || z[i] > r + 1) clean = false;
      for (auto d : m)
        if (i + static_cast<std::size_t>(d) < z.size() && z[i] == z[i + static_cast<std::size_t>(d)]) clean = false;
    }
    t.expect(clean, label + ": greedy sequence has a monochromatic pair");
  }
}

inline PeriodicColoring corrupted(PeriodicColoring pc) {
  if (pc.colors.size() >= 2) pc.colors[1] = pc.colors[0];
  return pc;
}

inline void layered(Tally& t, const ClaimOptions& o) {
  const std::int64_t k_max = 3;
  for (std::int64_t r = 2; r <= 4; ++r) {
    const IntSet l = gen_L_r(r, k_max);
    const std::string tag = "L_" + std::to_string(r);

    // (a) lacunary with ratio exactly r/(r-1)
    const auto lac = lacunarity_ratios(l);
    t.expect(lac.min_ratio == Rational(r, r - 1) && lac.is_lacunary_at_scale,
             tag + ": min ratio " + to_string(lac.min_ratio) + " differs from r/(r-1)");

    // (b) every single-layer removal stays r-Birkhoff
    for (std::int64_t k = 0; k <= k_max; ++k) {
      const IntSet layer = L_r_layer(r, k);
      const auto probe = stably_r_birkhoff_probe(r, static_cast<int>(r), layer, k_max, o.limits);
      expect_verdict(t, tag + " minus layer " + std::to_string(k), probe.probed, static_cast<int>(r), probe.verdict,
                     Status::r_birkhoff);
    }

    // (c) not (r+1)-Birkhoff, witness i mod (r+1)
    Verdict v = check_r_birkhoff(l, static_cast<int>(r + 1), o.limits);
    if (o.inject_corrupt && v.certificate && std::holds_alternative<PeriodicWitness>(*v.certificate))
      v.certificate = PeriodicWitness{corrupted(std::get<PeriodicWitness>(*v.certificate).coloring)};
    expect_verdict(t, tag + " arity " + std::to_string(r + 1), l, static_cast<int>(r + 1), v, Status::not_r_birkhoff);
    if (v.status == Status::not_r_birkhoff && v.certificate) {
      std::vector<int> want;
      for (int i = 0; i <= r; ++i) want.push_back(i + 1);
      const auto* w = std::get_if<PeriodicWitness>(&*v.certificate);
      t.expect(w && w->coloring.colors == want, tag + ": canonical witness is not i mod (r+1)");
    }
  }
}

inline void obstruction(Tally& t, const ClaimOptions&) {
  const Polynomial sq_plus_one = Polynomial::monomial(2) + Polynomial({Rational(1)});
  const auto ob = cyclic_obstruction(gen_polynomial(sq_plus_one, 100), 10, sq_plus_one);
  t.expect(ob.has_value() && ob->modulus == 3, "n^2+1: expected modulus 3");
  t.expect(ob.has_value() && ob->full_period_proof, "n^2+1: no full-period residue proof");
  if (ob) {
    // independent residue sweep over one period
    bool clean = true;
    for (std::int64_t n = 0; n < 3; ++n) clean = clean && (n * n + 1) % 3 != 0;
    t.expect(clean, "n^2+1: residue sweep mod 3 hits 0");
  }
  const Polynomial sq = Polynomial::monomial(2);
  t.expect(!cyclic_obstruction(gen_polynomial(sq, 100), 10, sq).has_value(), "n^2: unexpected obstruction");
}

inline void lacunary(Tally& t, const ClaimOptions&) {
  std::vector<std::int64_t> powers;
  for (int k = 0; k <= 20; ++k) powers.push_back(std::int64_t{1} << k);
  const IntSet seq(powers);
  const Rational delta(3, 10);
  const auto res = lacunary_witness(seq, delta, seq.size());
  if (!res.interval) {
    t.fail("no surviving interval at delta 0.3");
    return;
  }
  const Interval iv = *res.interval;
  t.expect(iv.contains(Rational(1, 3)), "interval [" + to_string(iv.lo) + ", " + to_string(iv.hi) + "] misses 1/3");
  // Re-validation in surd arithmetic at doubled precision.
  const int saved = precision_bits();
  set_precision_bits(2 * saved);
  for (const Rational& x : {iv.lo, iv.midpoint(), iv.hi}) {
    for (auto n : seq) t.expect(torus_norm(Real(x * Rational(n))) >= Real(delta), "re-validation failed at n=" + std::to_string(n));
  }
  set_precision_bits(saved);
}

inline Real random_quadratic(std::mt19937_64& rng) {
  static const std::uint64_t radicands[] = {2, 3, 5, 7, 11, 13};
  std::uniform_int_distribution<std::size_t> pick(0, 5);
  std::uniform_int_distribution<std::int64_t> coef(-9, 9), den(2, 11);
  std::int64_t b = 0;
  while (b == 0) b = coef(rng);
  return Real::quadratic(Rational(coef(rng)), Rational(b), radicands[pick(rng)], Rational(den(rng))).frac();
}

inline void nuu(Tally& t, const ClaimOptions& o) {
  const RotationSystem rot({golden_frequency()}, true);
  std::mt19937_64 rng(o.seed ^ 0x6e7575ULL);
  const auto points = sample_rotation_points(1, 40, rng());
  for (int i = 0; i < 20; ++i) {
    const Rational radius = random_rational(rng, 2, 10, 100);
    const RotationBall u{points[static_cast<std::size_t>(2 * i)], radius};
    const auto& x = points[static_cast<std::size_t>(2 * i + 1)];
    const auto rep = verify_nuu(rot, u, x, 50, Rational(1, 100), 4);
    t.expect(rep.forward_holds(), "ball " + std::to_string(i) + ": forward inclusion has exceptions");
    t.expect(rep.reverse_holds(), "ball " + std::to_string(i) + ": reverse inclusion has " +
                                      std::to_string(rep.reverse_exceptions.size()) + " exceptions");
  }
}

inline void cross_module(Tally& t, const ClaimOptions& o) {
  std::mt19937_64 rng(o.seed ^ 0x63726f7373ULL);
  std::uniform_int_distribution<std::int64_t> q_dist(2, 60);
  const std::int64_t h = 200;
  for (int i = 0; i < 20; ++i) {
    Real alpha;
    if (i % 2 == 0) {
      const std::int64_t q = q_dist(rng);
      alpha = Real(Rational(std::uniform_int_distribution<std::int64_t>(1, q - 1)(rng), q));
    } else {
      alpha = random_quadratic(rng);
    }
    const Rational rho = random_rational(rng, 1, 25, 100);
    const RotationSystem rot({alpha});
    const TimeSet nuu = return_times_set(rot, RotationBall{{Real(0)}, rho}, h);
    const IntSet bohr = bohr_enumerate(BohrSpec({alpha}, 2 * rho), symmetric_window(h));
    t.expect(IntSet(nuu) == bohr, "alpha " + alpha.to_string() + ", rho " + to_string(rho) + ": sets differ");
  }
}

inline void rigidity(Tally& t, const ClaimOptions&) {
  const std::int64_t h = 10000;
  const Real alpha = golden_frequency();
  const auto records = uniform_rigidity_scan(RotationSystem({alpha}), h);
  const auto cf = continued_fraction(alpha, 30);
  std::vector<BigInt> denominators;  // distinct q_j, j >= 1
  for (std::size_t j = 1; j < cf.convergents.size(); ++j) {
    const BigInt& q = cf.convergents[j].q;
    if (denominators.empty() || denominators.back() != q) denominators.push_back(q);
  }
  std::size_t j = 0;
  for (const auto& rec : records) {
    if (j >= denominators.size() || BigInt(rec.m) != denominators[j]) {
      t.fail("record at m=" + std::to_string(rec.m) + " is not the next denominator");
      return;
    }
    const Real bound(Rational(BigInt(1), denominators.at(j + 1)));
    t.expect(rec.sup_displacement.linear_value() < bound, "record at m=" + std::to_string(rec.m) + " not below 1/q_next");
    ++j;
  }
  t.expect(j < denominators.size() && denominators[j] > h, "records stop before the last denominator within the horizon");
}

inline void moving(Tally& t, const ClaimOptions& o) {
  const RotationSystem rot({golden_frequency()}, true);
  const Rational eps(1, 100);
  const std::int64_t horizon = 200;
  const auto samples = sample_rotation_points(1, 10, o.seed ^ 0x6d6f7665ULL);
  Real direct = torus_norm(rot.alphas[0]);
  for (std::int64_t k = 2; k <= horizon; ++k) {
    const Real v = torus_norm(rot.alphas[0] * Rational(k));
    if (v < direct) direct = v;
  }
  for (const char* formula : {"7^k mod 1000", "k^3 + 5*k", "2^k - 1"}) {
    const MovingQuery q{SequenceSource(Expression::parse(formula)), SequenceSource::identity(), horizon, eps};
    const auto rep = moving_recurrence_experiment(rot, q, samples, o.threads);
    t.expect(rep.fraction == 1.0, std::string(formula) + ": moving-recurrent fraction " + std::to_string(rep.fraction));
    for (const auto& v : rep.values)
      t.expect(std::fabs(v.value() - direct.to_double()) <= 1e-12, std::string(formula) + ": psi differs from min ||k alpha||");
  }
}

struct ClaimDef {
  int id;
  const char* name;
  void (*run)(Tally&, const ClaimOptions&);
};

inline const std::vector<ClaimDef>& claim_table() {
  static const std::vector<ClaimDef> table = {
      {1, "kN_r is r-Birkhoff with window <= k*r+1 (k <= 5, r <= 6)", pigeonhole},
      {2, "|M| = r implies M is not (r+1)-Birkhoff; greedy min-rule avoids M", cardinality},
      {3, "L_r (r = 2,3,4): lacunary, stable under layer removal, not (r+1)-Birkhoff", layered},
      {4, "n^2+1 avoids 3Z over a full period; n^2 has no cyclic obstruction", obstruction},
      {5, "lacunary witness for 2^k at delta 0.3 contains 1/3", lacunary},
      {6, "N(U,U) = N(x,U) - N(x,U) on the golden rotation", nuu},
      {7, "return_times_set equals bohr_enumerate at radius 2*rho", cross_module},
      {8, "rigidity records of the golden rotation are its CF denominators", rigidity},
      {9, "psi_(n_k, k) equals min ||k alpha|| and every sample is moving recurrent", moving},
  };
  return table;
}

inline ClaimResult run_claim(const ClaimDef& def, const ClaimOptions& o) {
  ClaimResult r;
  r.id = def.id;
  r.name = def.name;
  Tally t(r);
  const auto started = std::chrono::steady_clock::now();
  try {
    def.run(t, o);
  } catch (const UncertainAtPrecision& e) {
    t.undecided(std::string("precision cap reached: ") + e.what());
  } catch (const std::exception& e) {
    t.fail(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return r;
}

}  // namespace claims_detail

/// Runs the claim list. Claim 10 reruns 1-9 with a 10-node budget (any FAIL
/// there is a soundness bug) and checks that corrupted certificates are rejected.
inline PaperReport report_paper_claims(const ClaimOptions& options = {}) {
  using namespace claims_detail;
  PaperReport rep;
  for (const auto& def : claim_table()) rep.claims.push_back(run_claim(def, options));
  if (!options.run_starvation) return rep;

  ClaimResult starve;
  starve.id = 10;
  starve.name = "node budget 10 yields only PASS or UNDECIDED; corrupted certificates are rejected";
  Tally t(starve);
  const auto started = std::chrono::steady_clock::now();
  try {
    ClaimOptions starved = options;
    starved.limits.node_budget = 10;
    starved.run_starvation = false;
    starved.inject_corrupt = false;
    std::size_t undecided = 0;
    for (const auto& def : claim_table()) {
      const ClaimResult c = run_claim(def, starved);
      if (c.status == ClaimStatus::fail) t.fail("claim " + std::to_string(c.id) + " failed under starvation");
      if (c.status == ClaimStatus::undecided) ++undecided;
    }
    starve.notes.push_back(std::to_string(undecided) + " of 9 claims UNDECIDED at node budget 10");

    // Negative controls: each corrupted certificate must be rejected.
    const IntSet l2 = gen_L_r(2, 2);
    const bool bad_period = verify_certificate(l2, 3, PeriodicWitness{PeriodicColoring{{1, 1, 3}}});
    const bool bad_window = verify_certificate(IntSet{1, 2}, 2, WindowUnsat{2, 2});
    const bool bad_zero = verify_certificate(IntSet{3}, 2, PeriodicWitness{PeriodicColoring{{1, 2, 1}}});
    t.expect(!bad_period, "corrupted periodic witness accepted");
    t.expect(!bad_window, "window_unsat on a colorable window accepted");
    t.expect(!bad_zero, "witness with a distance divisible by the period accepted");
    if (options.inject_corrupt) {
      const ClaimResult injected = run_claim(claim_table()[2], options);
      t.expect(injected.status == ClaimStatus::fail, "injected corrupt certificate was not flagged");
    }
  } catch (const std::exception& e) {
    t.fail(std::string("exception: ") + e.what());
  }
  starve.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  rep.claims.push_back(std::move(starve));
  return rep;
}

}  // namespace reclab
