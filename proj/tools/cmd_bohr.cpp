#include "cli_common.hpp"

namespace reclab::cli {

namespace {

constexpr const char* kSingleFrequencyNote = "separation search emits one-frequency Bohr sets only (k = 1)";

void add_member(CLI::App* parent, Registry& reg) {
  struct Args {
    std::int64_t n = 0;
    std::vector<std::string> alphas;
    std::string eps;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("member", "is n in B(alpha; eps)?");
  c->add_option("--n", a->n, "integer to test")->required();
  c->add_option("--alpha", a->alphas, "frequency: p/q, decimal or sqrt:d:a:b:c (repeat for T^k)")->required();
  c->add_option("--eps", a->eps, "radius in (0, 1/2]")->required();
  reg.on(c, [a] {
    const BohrSpec spec(parse_frequencies(a->alphas), parse_rational(a->eps));
    const auto m = bohr_membership(a->n, spec);
    Json j{{"n", a->n}, {"member", m.member}, {"margin", m.margin}, {"precision", to_json(m.precision)}};
    j["norm"] = m.exact_norm ? to_json(*m.exact_norm) : Json(nullptr);
    j["exact_margin"] = m.exact_margin ? to_json(*m.exact_margin) : Json(nullptr);
    j["norm_squared"] = to_json(m.norm_sq);
    return j;
  });
}

void add_enumerate(CLI::App* parent, Registry& reg) {
  struct Args {
    std::vector<std::string> alphas;
    std::string eps;
    std::int64_t lo = 1, hi = 100;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("enumerate", "list B(alpha; eps) on a window, 0 excluded");
  c->add_option("--alpha", a->alphas, "frequency (repeat for T^k)")->required();
  c->add_option("--eps", a->eps, "radius in (0, 1/2]")->required();
  c->add_option("--lo", a->lo, "window start");
  c->add_option("--hi", a->hi, "window end");
  reg.on(c, [a] {
    const BohrSpec spec(parse_frequencies(a->alphas), parse_rational(a->eps));
    const IntSet s = bohr_enumerate(spec, Window{a->lo, a->hi});
    PrecisionInfo p;
    p.bits = precision_bits();
    for (const auto& al : spec.alphas)
      if (al.surd_count() > 1) p.max_error = std::ldexp(1.0, -p.bits);
    return Json{{"elements", to_json(s)}, {"count", s.size()}, {"precision", to_json(p)}};
  });
}

void add_witness(CLI::App* parent, Registry& reg) {
  struct Args {
    SetInput set;
    std::string delta;
    std::size_t depth = 0;
    std::size_t budget = 100000;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("witness", "interval of alpha with ||n_k alpha|| >= delta for the first K terms");
  a->set.add(c);
  c->add_option("--delta", a->delta, "separation delta")->required();
  c->add_option("--depth", a->depth, "number of terms K (0: all)");
  c->add_option("--budget", a->budget, "cap on surviving intervals per stage");
  reg.on(c, [a] {
    const IntSet s = a->set.set();
    const Rational delta = parse_positive(a->delta, "delta");
    const std::size_t depth = a->depth > 0 ? a->depth : s.size();
    const auto res = lacunary_witness(s, delta, depth, a->budget);
    Json j = to_json(res);
    if (res.interval) {
      const auto pos = s.positive_part().elements();
      const std::vector<std::int64_t> used(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(std::min(depth, pos.size())));
      j["revalidated"] = clears_all(used, res.interval->lo, delta) && clears_all(used, res.interval->midpoint(), delta) &&
                         clears_all(used, res.interval->hi, delta);
    }
    j["precision"] = to_json(PrecisionInfo{precision_bits(), 0.0});
    return j;
  });
}

void add_obstruct(CLI::App* parent, Registry& reg) {
  struct Args {
    SetInput set;
    std::string poly;
    std::int64_t n_max = 100;
    std::int64_t m_max = 10;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("obstruct", "least m with L ∩ mZ empty");
  a->set.add(c);
  c->add_option("--poly", a->poly, "generate L = {p(n) : 1 <= n <= n-max} from a polynomial in n");
  c->add_option("--n-max", a->n_max, "polynomial truncation");
  c->add_option("--m-max", a->m_max, "largest modulus tried");
  reg.on(c, [a] {
    std::optional<Polynomial> generator;
    IntSet l;
    if (!a->poly.empty()) {
      if (a->set.given()) throw InvalidArgument("give either --poly or a set, not both");
      generator = Expression::parse(a->poly).as_polynomial();
      if (!generator) throw InvalidArgument("'" + a->poly + "' is not a polynomial");
      l = gen_polynomial(*generator, a->n_max);
    } else {
      l = a->set.set();
    }
    const auto ob = cyclic_obstruction(l, a->m_max, generator);
    Json j{{"size", l.size()}, {"found", ob.has_value()}};
    if (ob) {
      j["modulus"] = ob->modulus;
      j["full_period_proof"] = ob->full_period_proof;
      j["period_checked"] = ob->period_checked;
      j["scope"] = ob->full_period_proof ? "absolute" : "truncation";
    }
    return j;
  });
}

void add_separate(CLI::App* parent, Registry& reg) {
  struct Args {
    SetInput set;
    std::string eps;
    int grid_depth = 64;
    std::size_t budget = 100000;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("separate", "find B(alpha; eps) disjoint from L");
  a->set.add(c);
  c->add_option("--eps", a->eps, "radius")->required();
  c->add_option("--grid-depth", a->grid_depth, "continued-fraction depth for the simplest alpha");
  c->add_option("--budget", a->budget, "cap on surviving intervals per stage");
  reg.on(c, [a] {
    const IntSet l = a->set.set();
    const auto s = bohr_separation_search(l, parse_positive(a->eps, "eps"), a->grid_depth, a->budget);
    Json j{{"found", s.has_value()}, {"note", kSingleFrequencyNote}};
    if (s) {
      j["alpha"] = frequencies_json(s->spec.alphas);
      j["eps"] = to_json(s->spec.eps);
      j["interval"] = to_json(s->interval);
      j["alpha_is_simplest"] = s->simplest;
      j["truncated"] = s->truncated;
    }
    j["precision"] = to_json(PrecisionInfo{precision_bits(), 0.0});
    return j;
  });
}

void add_cf(CLI::App* parent, Registry& reg) {
  struct Args {
    std::string alpha;
    std::size_t depth = 10;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("cf", "continued fraction and convergents");
  c->add_option("--alpha", a->alpha, "frequency")->required();
  c->add_option("--depth", a->depth, "number of partial quotients after a_0");
  reg.on(c, [a] {
    const Real alpha = parse_real(a->alpha);
    Json j = to_json(continued_fraction(alpha, a->depth));
    j["alpha"] = to_json(alpha);
    j["precision"] = to_json(precision_of(alpha));
    return j;
  });
}

void add_threedist(CLI::App* parent, Registry& reg) {
  struct Args {
    std::string alpha;
    std::int64_t n = 10;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("threedist", "gaps of {j alpha mod 1 : 0 <= j <= N}");
  c->add_option("--alpha", a->alpha, "frequency")->required();
  c->add_option("--n", a->n, "N")->check(CLI::PositiveNumber);
  reg.on(c, [a] {
    const Real alpha = parse_frequency(a->alpha);
    Json j = to_json(three_distance(alpha, a->n));
    j["alpha"] = to_json(alpha);
    j["precision"] = to_json(precision_of(alpha));
    return j;
  });
}

}  // namespace

void register_bohr(CLI::App& app, Registry& reg, const Globals&) {
  auto* b = app.add_subcommand("bohr", "Bohr sets, continued fractions and obstructions");
  b->require_subcommand(1);
  b->fallthrough();
  add_member(b, reg);
  add_enumerate(b, reg);
  add_witness(b, reg);
  add_obstruct(b, reg);
  add_separate(b, reg);
  add_cf(b, reg);
  add_threedist(b, reg);
}

}  // namespace reclab::cli
