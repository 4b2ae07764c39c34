// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
// Library results are cross-checked against the brute-force oracles.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "reclab/birkhoff.hpp"
#include "reclab/bohr.hpp"
#include "reclab/claims.hpp"
#include "reclab/dynamics.hpp"
#include "reclab/expr.hpp"
#include "reclab/intset.hpp"

using namespace reclab;
using oracle::Float;

namespace {

class Check {
 public:
  void expect(bool ok, const std::string& why) {
    if (!ok && failures_.size() < 5) failures_.push_back(why);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(count_) + " failure(s)";
    for (const auto& f : failures_) s += "; " + f;
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Float to_float(const Rational& q) {
  return Float(numerator(q).str()) / Float(denominator(q).str());
}

Float golden_float() { return oracle::golden(); }

bool certified(const IntSet& m, int r, const Verdict& v) {
  return v.certificate && verify_certificate(m, r, *v.certificate);
}

// 1. kN_r for k <= 5, r <= 6: least UNSAT window is k*r+1, found in under 10 s.
void pigeonhole(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  for (std::int64_t k = 1; k <= 5; ++k) {
    for (int r = 1; r <= 6; ++r) {
      const IntSet m = gen_k_times_Nr(k, r);
      const std::string tag = std::to_string(k) + "N_" + std::to_string(r);
      const Verdict v = check_r_birkhoff(m, r);
      c.expect(v.status == Status::r_birkhoff, tag + " not R_BIRKHOFF");
      c.expect(certified(m, r, v), tag + " certificate rejected");
      const auto* u = v.certificate ? std::get_if<WindowUnsat>(&*v.certificate) : nullptr;
      c.expect(u && u->window <= k * r + 1, tag + " window exceeds k*r+1");
      // Oracle: a window of k*r positions is colorable, so the bound is tight.
      c.expect(oracle::window_colorable(static_cast<int>(k * r), m.elements(), r), tag + " oracle disagrees");
      c.expect(u && u->window == k * r + 1, tag + " window is not minimal");
    }
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 10.0, "took " + std::to_string(secs) + " s");
}

// 2. |M| = r implies NOT (r+1)-Birkhoff; greedy min-rule avoids M.
void cardinality(Check& c) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> pick_r(1, 6);
  std::uniform_int_distribution<std::int64_t> pick(1, 50);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = pick_r(rng);
    std::set<std::int64_t> elems;
    while (static_cast<int>(elems.size()) < r) elems.insert(pick(rng));
    const IntSet m(std::vector<std::int64_t>(elems.begin(), elems.end()));
    const std::string tag = m.to_string();
    const Verdict v = check_r_birkhoff(m, r + 1);
    c.expect(v.status == Status::not_r_birkhoff, tag + " not NOT_R_BIRKHOFF");
    c.expect(certified(m, r + 1, v), tag + " certificate rejected");
    if (const auto* w = v.certificate ? std::get_if<PeriodicWitness>(&*v.certificate) : nullptr)
      c.expect(oracle::periodic_valid(w->coloring.colors, m.elements()), tag + " oracle rejects witness");

    const int n = static_cast<int>(10 * m.max());
    const auto g = greedy_coloring(m, r + 1, n);
    c.expect(g.sequence == oracle::greedy(m.elements(), r + 1, n), tag + " greedy differs from oracle");
    bool clean = static_cast<int>(g.sequence.size()) == n;
    for (std::size_t i = 0; clean && i < g.sequence.size(); ++i)
      for (auto d : m)
        if (i + static_cast<std::size_t>(d) < g.sequence.size() && g.sequence[i] == g.sequence[i + static_cast<std::size_t>(d)])
          clean = false;
    c.expect(clean, tag + " greedy has a monochromatic pair");
  }
}

// 3. L_r for r in {2,3,4}, k_max = 3: lacunary, stably r-Birkhoff, not (r+1)-Birkhoff.
void layered(Check& c) {
  for (std::int64_t r = 2; r <= 4; ++r) {
    const std::string tag = "L_" + std::to_string(r);
    const IntSet l = gen_L_r(r, 3);
    const auto& e = l.elements();
    Rational least(e[1], e[0]);
    for (std::size_t i = 1; i + 1 < e.size(); ++i) least = std::min(least, Rational(e[i + 1], e[i]));
    const auto lac = lacunarity_ratios(l);
    c.expect(lac.min_ratio == Rational(r, r - 1) && least == lac.min_ratio, tag + " min ratio");

    for (std::int64_t k = 0; k <= 3; ++k) {
      const auto probe = stably_r_birkhoff_probe(r, static_cast<int>(r), L_r_layer(r, k), 3);
      c.expect(probe.verdict.status == Status::r_birkhoff, tag + " minus layer " + std::to_string(k));
      c.expect(certified(probe.probed, static_cast<int>(r), probe.verdict), tag + " probe certificate");
    }

    const Verdict v = check_r_birkhoff(l, static_cast<int>(r + 1));
    c.expect(v.status == Status::not_r_birkhoff && certified(l, static_cast<int>(r + 1), v), tag + " arity r+1");
    std::vector<int> want;
    for (int i = 0; i <= r; ++i) want.push_back(i + 1);
    const auto* w = v.certificate ? std::get_if<PeriodicWitness>(&*v.certificate) : nullptr;
    c.expect(w && w->coloring.colors == want, tag + " witness is not i mod (r+1)");
    c.expect(oracle::periodic_valid(want, e), tag + " oracle rejects i mod (r+1)");
  }
}

// 4. n^2+1 has a mod-3 obstruction with a full-period proof; n^2 has none up to 10.
void obstruction(Check& c) {
  const Polynomial sq = Polynomial::monomial(2);
  const Polynomial sq1 = sq + Polynomial({Rational(1)});
  const auto ob = cyclic_obstruction(gen_polynomial(sq1, 100), 10, sq1);
  c.expect(ob && ob->modulus == 3 && ob->full_period_proof, "n^2+1 modulus 3 with proof");
  for (std::int64_t n = 1; n <= 100; ++n) c.expect((n * n + 1) % 3 != 0, "oracle residue");
  c.expect(!cyclic_obstruction(gen_polynomial(sq, 100), 10, sq), "n^2 obstruction");
  for (std::int64_t mod = 2; mod <= 10; ++mod) {
    bool hits = false;
    for (std::int64_t n = 1; n <= 100; ++n) hits = hits || (n * n) % mod == 0;
    c.expect(hits, "oracle: n^2 misses 0 mod " + std::to_string(mod));
  }
}

// 5. Lacunary witness for 2^k, k <= 20 at delta 0.3 contains 1/3.
void lacunary(Check& c) {
  std::vector<std::int64_t> powers;
  for (int k = 0; k <= 20; ++k) powers.push_back(std::int64_t{1} << k);
  const IntSet seq(powers);
  const Rational delta(3, 10);
  const auto res = lacunary_witness(seq, delta, seq.size());
  c.expect(res.interval.has_value(), "no interval");
  if (!res.interval) return;
  const Interval iv = *res.interval;
  c.expect(iv.contains(Rational(1, 3)), "interval misses 1/3");
  const int saved = precision_bits();
  set_precision_bits(2 * saved);
  for (const Rational& x : {iv.lo, iv.midpoint(), iv.hi}) {
    for (auto n : powers) {
      const Rational prod = x * Rational(n);
      Rational f = prod - Rational(BigInt(numerator(prod) / denominator(prod)));
      if (f < 0) f += 1;
      c.expect(std::min(f, Rational(1 - f)) >= delta, "exact check at n=" + std::to_string(n));
      c.expect(torus_norm(Real(prod)) >= Real(delta), "surd check at n=" + std::to_string(n));
      c.expect(oracle::norm(to_float(x) * n) >= Float(3) / 10 - Float("1e-80"), "float check at n=" + std::to_string(n));
    }
  }
  set_precision_bits(saved);
}

// 6. N(U,U) = N(x,U) - N(x,U) on the golden rotation, 20 balls, H = 50.
void nuu(Check& c) {
  const RotationSystem rot({golden_frequency()}, true);
  const Float alpha = golden_float();
  std::mt19937_64 rng(777);
  const auto points = sample_rotation_points(1, 40, rng());
  std::uniform_int_distribution<std::int64_t> rad(2, 10);
  const std::int64_t h = 50;
  for (int i = 0; i < 20; ++i) {
    const Rational radius(rad(rng), 100);
    const RotationBall u{points[static_cast<std::size_t>(2 * i)], radius};
    const auto& x = points[static_cast<std::size_t>(2 * i + 1)];
    const auto rep = verify_nuu(rot, u, x, h, Rational(1, 100), 4);
    c.expect(rep.forward_holds(), "ball " + std::to_string(i) + " forward");
    c.expect(rep.reverse_holds(), "ball " + std::to_string(i) + " reverse");

    // Oracle: recompute visits and N(U,U) in floating point.
    const Float cx = to_float(u.center[0].enclose(300).first);
    const Float px = to_float(x[0].enclose(300).first);
    const Float rho = to_float(radius);
    TimeSet visits, self;
    for (std::int64_t n = -h; n <= h; ++n)
      if (oracle::norm(px + n * alpha - cx) < rho) visits.push_back(n);
    for (std::int64_t n = -2 * h; n <= 2 * h; ++n)
      if (oracle::norm(n * alpha) < 2 * rho) self.push_back(n);
    c.expect(visits == return_times_point(rot, x, u, h), "ball " + std::to_string(i) + " visits differ");
    c.expect(self == return_times_set(rot, u, 2 * h), "ball " + std::to_string(i) + " N(U,U) differs");
    for (auto a : visits)
      for (auto b : visits) c.expect(std::binary_search(self.begin(), self.end(), a - b), "oracle forward");
  }
}

// 7. return_times_set equals bohr_enumerate at radius 2*rho on 20 instances.
void cross_module(Check& c) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::int64_t> qd(2, 60), rd(1, 25), coef(-9, 9), den(2, 11);
  std::uniform_int_distribution<std::size_t> pick(0, 5);
  const std::uint64_t radicands[] = {2, 3, 5, 7, 11, 13};
  const std::int64_t h = 200;
  for (int i = 0; i < 20; ++i) {
    Real alpha;
    Float af;
    bool exact_rational = i % 2 == 0;
    if (exact_rational) {
      const std::int64_t q = qd(rng);
      const Rational a(std::uniform_int_distribution<std::int64_t>(1, q - 1)(rng), q);
      alpha = Real(a);
      af = to_float(a);
    } else {
      std::int64_t b = 0;
      while (b == 0) b = coef(rng);
      const std::int64_t a0 = coef(rng), d = den(rng);
      const std::uint64_t rad = radicands[pick(rng)];
      alpha = Real::quadratic(Rational(a0), Rational(b), rad, Rational(d)).frac();
      af = oracle::frac((a0 + b * boost::multiprecision::sqrt(Float(rad))) / d);
    }
    const Rational rho(rd(rng), 100);
    const RotationSystem rot({alpha});
    const TimeSet ret = return_times_set(rot, RotationBall{{Real(0)}, rho}, h);
    const IntSet bohr = bohr_enumerate(BohrSpec({alpha}, 2 * rho), symmetric_window(h));
    const std::string tag = "instance " + std::to_string(i);
    c.expect(IntSet(ret) == bohr, tag + " sets differ");

    // Oracle: brute-force Bohr set; rational instances decide the boundary exactly.
    std::vector<std::int64_t> want;
    for (std::int64_t n = -h; n <= h; ++n) {
      bool in;
      if (exact_rational) {
        const Rational a = alpha.enclose(64).first;
        Rational f = a * Rational(n);
        f -= Rational(BigInt(numerator(f) / denominator(f)));
        if (f < 0) f += 1;
        in = std::min(f, Rational(1 - f)) < 2 * rho;
      } else {
        in = oracle::norm(n * af) < 2 * to_float(rho);
      }
      if (in) want.push_back(n);
    }
    c.expect(ret == TimeSet(want.begin(), want.end()), tag + " oracle disagrees");
  }
}

// 8. Golden rotation, H = 10^4: record minima sit at Fibonacci denominators, each below 1/q_next.
void rigidity(Check& c) {
  const std::int64_t h = 10000;
  const auto records = uniform_rigidity_scan(RotationSystem({golden_frequency()}), h);
  const Float alpha = golden_float();
  std::vector<std::int64_t> expected;
  Float best = 2;
  for (std::int64_t m = 1; m <= h; ++m) {
    const Float d = oracle::norm(m * alpha);
    if (d < best) {
      best = d;
      expected.push_back(m);
    }
  }
  std::vector<std::int64_t> fib{1, 2};
  while (fib.back() <= 2 * h) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  std::vector<std::int64_t> got;
  for (const auto& rec : records) got.push_back(rec.m);
  c.expect(got == expected, "records differ from oracle scan");
  c.expect(got.size() + 1 < fib.size() && std::equal(got.begin(), got.end(), fib.begin()), "records are not Fibonacci");

  const auto cf = continued_fraction(golden_frequency(), 30);
  std::vector<BigInt> qs;
  for (std::size_t j = 1; j < cf.convergents.size(); ++j)
    if (qs.empty() || qs.back() != cf.convergents[j].q) qs.push_back(cf.convergents[j].q);
  for (std::size_t j = 0; j < records.size(); ++j) {
    c.expect(j + 1 < qs.size() && BigInt(records[j].m) == qs[j], "record " + std::to_string(j) + " is not q_j");
    if (j + 1 < qs.size())
      c.expect(records[j].sup_displacement.linear_value() < Real(Rational(BigInt(1), qs[j + 1])),
               "record " + std::to_string(j) + " not below 1/q_next");
  }
}

// 9. Moving recurrence on the golden rotation: fraction 1 and psi = min ||k alpha||.
void moving(Check& c) {
  const RotationSystem rot({golden_frequency()}, true);
  const Float alpha = golden_float();
  Float direct = 1;
  for (int k = 1; k <= 200; ++k) direct = std::min(direct, oracle::norm(k * alpha));
  const double want = static_cast<double>(direct);
  const auto samples = sample_rotation_points(1, 10, 99);
  for (const char* formula : {"7^k mod 1000", "k^3 + 5*k", "2^k - 1"}) {
    const MovingQuery q{SequenceSource(Expression::parse(formula)), SequenceSource::identity(), 200, Rational(1, 100)};
    const auto rep = moving_recurrence_experiment(rot, q, samples, 2);
    c.expect(rep.fraction == 1.0, std::string(formula) + " fraction");
    c.expect(rep.values.size() == 10, std::string(formula) + " sample count");
    for (const auto& v : rep.values)
      c.expect(std::fabs(v.value() - want) <= 1e-12, std::string(formula) + " psi differs");
  }
}

// 10. Starved budget never yields FAIL; corrupted certificates are rejected.
void starvation(Check& c) {
  ClaimOptions starved;
  starved.limits.node_budget = 10;
  const PaperReport rep = report_paper_claims(starved);
  c.expect(rep.claims.size() == 10, "claim count");
  std::size_t undecided = 0;
  for (const auto& cl : rep.claims) {
    c.expect(cl.status != ClaimStatus::fail, "claim " + std::to_string(cl.id) + " failed");
    if (cl.status == ClaimStatus::undecided) ++undecided;
  }
  c.expect(undecided > 0, "starvation left nothing undecided");

  ClaimOptions corrupt;
  corrupt.inject_corrupt = true;
  corrupt.run_starvation = false;
  c.expect(report_paper_claims(corrupt).claims.at(2).status == ClaimStatus::fail, "injected corruption not flagged");

  const IntSet l2 = gen_L_r(2, 2);
  c.expect(verify_certificate(l2, 3, PeriodicWitness{{{1, 2, 3}}}), "valid witness rejected");
  c.expect(!verify_certificate(l2, 3, PeriodicWitness{{{1, 1, 3}}}), "corrupted witness accepted");
  c.expect(!verify_certificate(IntSet{2, 4, 6}, 3, WindowUnsat{6, 3}), "corrupted window accepted");

  const auto t0 = std::chrono::steady_clock::now();
  const bool all = report_paper_claims().all_pass();
  const double secs = seconds_since(t0);
  c.expect(all, "default report not all PASS");
  c.expect(secs < 60.0, "default report took " + std::to_string(secs) + " s");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria = {
      {"kN_r pigeonhole windows", pigeonhole},
      {"cardinality bound and greedy avoidance", cardinality},
      {"L_r lacunary, stable, not (r+1)-Birkhoff", layered},
      {"n^2+1 cyclic obstruction", obstruction},
      {"lacunary witness contains 1/3", lacunary},
      {"N(U,U) from a single orbit", nuu},
      {"return times equal Bohr enumeration", cross_module},
      {"rigidity records are CF denominators", rigidity},
      {"moving recurrence and psi", moving},
      {"soundness under starvation", starvation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    std::printf("%s criterion %zu: %s (%.2f s)%s%s\n", c.ok() ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                c.ok() ? "" : " ", c.ok() ? "" : c.summary().c_str());
    if (!c.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
