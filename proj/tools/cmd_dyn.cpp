#include "cli_common.hpp"

namespace reclab::cli {

namespace {

/// --system rotation|subshift and what each needs.
struct SystemInput {
  std::string kind = "rotation";
  std::vector<std::string> alphas;
  std::vector<std::string> point;
  bool minimal = false;
  SetInput indicator;  // subshift: base point 1_S
  std::int64_t window_half = 0;

  void add(CLI::App* app, bool with_point = true) {
    app->add_option("--system", kind, "rotation or subshift")->check(CLI::IsMember({"rotation", "subshift"}));
    app->add_option("--alpha", alphas, "rotation frequency (repeat for T^k)");
    if (with_point) app->add_option("--point", point, "rotation point x (default 0; repeat for T^k)");
    app->add_flag("--minimal", minimal, "declare the rotation minimal (recorded, not proved)");
    indicator.add(app, "--set", "--elements", "subshift base set S");
    app->add_option("--window-half", window_half, "subshift: S is read on [-h, h] (0: 4x the reach)");
  }
  bool rotation() const { return kind == "rotation"; }

  RotationSystem rotation_system() const {
    if (alphas.empty()) throw InvalidArgument("--alpha is required for a rotation");
    return RotationSystem(parse_frequencies(alphas), minimal);
  }
  RotationPoint rotation_point(const RotationSystem& sys) const {
    if (point.empty()) return RotationPoint(sys.dimension(), Real(0));
    return sys.normalize(parse_frequencies(point));
  }
  SubshiftSystem subshift(std::int64_t reach) const {
    const std::int64_t h = window_half > 0 ? window_half : checked_mul(4, std::max<std::int64_t>(reach, 1));
    auto raw = indicator.raw();
    return subshift_from_indicator(raw, symmetric_window(h));
  }
  Json describe(std::int64_t reach) const {
    if (rotation()) {
      return Json{{"kind", "rotation"}, {"alpha", frequencies_json(parse_frequencies(alphas))}, {"declared_minimal", minimal}};
    }
    const std::int64_t h = window_half > 0 ? window_half : checked_mul(4, std::max<std::int64_t>(reach, 1));
    return Json{{"kind", "subshift"}, {"window", to_json(symmetric_window(h))}, {"metric", "2^-min{|i| : w_i != w'_i}"}};
  }
};

std::int64_t set_reach(const IntSet& l) { return l.empty() ? 1 : std::max(checked_abs(l.min()), checked_abs(l.max())); }

MovingQuery make_query(const std::string& nk, const std::string& rk, std::int64_t horizon, const std::string& eps) {
  MovingQuery q{parse_sequence(nk), rk.empty() ? SequenceSource::identity() : parse_sequence(rk), horizon,
                parse_positive(eps, "eps")};
  q.validate();
  return q;
}

std::int64_t query_reach(const MovingQuery& q) {
  std::int64_t reach = 1;
  for (std::int64_t k = 1; k <= q.horizon; ++k) {
    const std::int64_t n = to_int64(q.n_seq.at(k));
    const std::int64_t r = to_int64(q.r_seq.at(k));
    reach = std::max({reach, checked_abs(n), checked_abs(checked_add(n, r))});
  }
  return reach;
}

Json query_json(const MovingQuery& q) {
  return Json{{"n_seq", q.n_seq.describe()}, {"r_seq", q.r_seq.describe()}, {"K", q.horizon}, {"eps", to_json(q.eps)}};
}

void add_returns(CLI::App* parent, Registry& reg) {
  struct Args {
    SystemInput sys;
    std::vector<std::string> center;
    std::string radius;
    std::int64_t horizon = 0;
    bool set_level = false;
    int symbol = 1;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("returns", "return times N(x,U) or N(U,U) within [-H, H]");
  a->sys.add(c);
  c->add_option("--center", a->center, "rotation ball center (default 0)");
  c->add_option("--radius", a->radius, "ball radius (subshift: snapped to a cylinder around the base point)");
  c->add_option("--horizon,-H", a->horizon, "horizon H")->required()->check(CLI::PositiveNumber);
  c->add_flag("--set-level", a->set_level, "rotation: N(U,U) instead of N(x,U)");
  c->add_option("--symbol", a->symbol, "subshift without --radius: U = {w : w_0 = symbol}");
  reg.on(c, [a] {
    Json j{{"system", a->sys.describe(a->horizon)}, {"horizon", a->horizon}};
    if (a->sys.rotation()) {
      const auto sys = a->sys.rotation_system();
      if (a->radius.empty()) throw InvalidArgument("--radius is required for a rotation ball");
      RotationBall u{a->center.empty() ? RotationPoint(sys.dimension(), Real(0)) : sys.normalize(parse_frequencies(a->center)),
                     parse_positive(a->radius, "radius")};
      if (a->set_level) {
        j["kind"] = "N(U,U)";
        j["times"] = return_times_set(sys, u, a->horizon);
      } else {
        j["kind"] = "N(x,U)";
        j["times"] = return_times_point(sys, a->sys.rotation_point(sys), u, a->horizon);
      }
      return j;
    }
    if (a->set_level) throw InvalidArgument("--set-level is only available for rotations");
    const auto sys = a->sys.subshift(a->horizon);
    Cylinder u = a->radius.empty() ? Cylinder::at_origin(static_cast<std::uint8_t>(a->symbol))
                                   : Cylinder::around(sys.base, parse_positive(a->radius, "radius"));
    j["kind"] = "N(x,U)";
    j["cylinder"] = {{"radius", u.radius}, {"pattern", u.pattern}};
    j["times"] = return_times_point(sys, sys.base, u, a->horizon);
    return j;
  });
}

void add_nuu(CLI::App* parent, Registry& reg) {
  struct Args {
    SystemInput sys;
    std::vector<std::string> center;
    std::string radius;
    std::int64_t horizon = 0;
    std::string margin = "1/100";
    std::int64_t ratio = 4;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("nuu", "check N(U,U) = N(x,U) - N(x,U) on a rotation");
  a->sys.add(c);
  c->add_option("--center", a->center, "ball center (default 0)");
  c->add_option("--radius", a->radius, "ball radius")->required();
  c->add_option("--horizon,-H", a->horizon, "horizon H")->required()->check(CLI::PositiveNumber);
  c->add_option("--margin", a->margin, "enlargement of U for the reverse inclusion");
  c->add_option("--ratio", a->ratio, "visits for the reverse inclusion are collected on [-ratio*H, ratio*H]");
  reg.on(c, [a] {
    if (!a->sys.rotation()) throw InvalidArgument("nuu is implemented for rotations");
    const auto sys = a->sys.rotation_system();
    RotationBall u{a->center.empty() ? RotationPoint(sys.dimension(), Real(0)) : sys.normalize(parse_frequencies(a->center)),
                   parse_positive(a->radius, "radius")};
    const auto rep = verify_nuu(sys, u, a->sys.rotation_point(sys), a->horizon, parse_rational(a->margin), a->ratio);
    return Json{{"system", a->sys.describe(a->horizon)},
                {"declared_minimal", rep.declared_minimal},
                {"horizon", rep.horizon},
                {"window_ratio", rep.window_ratio},
                {"margin", to_json(rep.margin)},
                {"visits", rep.visits},
                {"forward_holds", rep.forward_holds()},
                {"forward_exceptions", rep.forward_exceptions},
                {"reverse_holds", rep.reverse_holds()},
                {"reverse_exceptions", rep.reverse_exceptions}};
  });
}

void add_superset(CLI::App* parent, Registry& reg) {
  struct Args {
    SetInput set;
    std::int64_t horizon = 0;
    std::vector<std::string> hints;
    std::int64_t max_den = 12;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("superset", "check N(U',U') ⊆ S - S for the indicator subshift, and probe for a Bohr set inside S - S");
  a->set.add(c);
  c->add_option("--horizon,-H", a->horizon, "horizon H (S is read on [-4H, 4H])")->required()->check(CLI::PositiveNumber);
  c->add_option("--hint", a->hints, "candidate frequency tried before the rational grid");
  c->add_option("--max-denominator", a->max_den, "rational candidates p/q with q up to this");
  reg.on(c, [a] {
    const auto rep = check_difference_superset(a->set.raw(), a->horizon, parse_frequencies(a->hints), a->max_den);
    Json j{{"horizon", rep.horizon}, {"observed", rep.observed}, {"holds", rep.holds()}, {"exceptions", rep.exceptions}};
    if (rep.probe) {
      j["probe"] = {{"alpha", to_json(rep.probe->alpha)}, {"eps", to_json(rep.probe->eps)}, {"candidates", rep.probe->candidates},
                    {"note", "B(alpha; eps) ∩ [-H, H] ⊆ (S - S) ∪ {0}; one frequency only"}};
    } else {
      j["probe"] = nullptr;
    }
    return j;
  });
}

void add_phi(CLI::App* parent, Registry& reg) {
  struct Args {
    SystemInput sys;
    SetInput l;
    std::int64_t horizon = 0;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("phi", "phi_L(x) = min over n in L ∩ [-H,H] of d(T^n x, x)");
  a->sys.add(c);
  a->l.add(c, "--L", "--L-elements", "L");
  c->add_option("--horizon,-H", a->horizon, "horizon H (0: max |L|)");
  reg.on(c, [a] {
    const IntSet l = a->l.set();
    const std::int64_t h = a->horizon > 0 ? a->horizon : set_reach(l);
    const PhiResult r = a->sys.rotation() ? [&] {
      const auto sys = a->sys.rotation_system();
      return phi_L(sys, a->sys.rotation_point(sys), l, h);
    }()
                                          : [&] {
                                              const auto sys = a->sys.subshift(h);
                                              return phi_L(sys, sys.base, l, h);
                                            }();
    return Json{{"system", a->sys.describe(h)}, {"horizon", h}, {"phi", to_json(r.value)}, {"argmin", r.argmin}};
  });
}

void add_psi(CLI::App* parent, Registry& reg) {
  struct Args {
    SystemInput sys;
    std::string nk, rk;
    std::int64_t horizon = 100;
    std::string eps = "1/100";
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("psi", "psi(x) = min over k <= K of d(T^(n_k + r_k) x, T^(n_k) x)");
  a->sys.add(c);
  c->add_option("--nk", a->nk, "n_k: expression in k or a file of integers")->required();
  c->add_option("--rk", a->rk, "r_k: expression in k or a file of integers (default k)");
  c->add_option("--K", a->horizon, "horizon K")->check(CLI::PositiveNumber);
  c->add_option("--eps", a->eps, "tolerance reported against");
  reg.on(c, [a] {
    const MovingQuery q = make_query(a->nk, a->rk, a->horizon, a->eps);
    PsiResult r;
    Json j;
    if (a->sys.rotation()) {
      const auto sys = a->sys.rotation_system();
      r = psi_moving(sys, a->sys.rotation_point(sys), q);
      j["system"] = a->sys.describe(0);
    } else {
      const std::int64_t reach = query_reach(q);
      const auto sys = a->sys.subshift(reach);
      r = psi_moving(sys, sys.base, q);
      j["system"] = a->sys.describe(reach);
    }
    j["query"] = query_json(q);
    j["psi"] = to_json(r.value);
    j["argmin_k"] = r.argmin_k;
    j["below_eps"] = r.value.below(q.eps);
    j["note"] = "minimum over k <= K only";
    return j;
  });
}

void add_recurrent(CLI::App* parent, Registry& reg, const Globals& g) {
  struct Args {
    SystemInput sys;
    SetInput l;
    std::string eps;
    std::size_t samples = 16;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("recurrent", "find x and m in L with d(T^m x, x) < eps");
  a->sys.add(c, false);
  a->l.add(c, "--L", "--L-elements", "L");
  c->add_option("--eps", a->eps, "tolerance")->required();
  c->add_option("--samples", a->samples, "sample points")->check(CLI::PositiveNumber);
  reg.on(c, [a, &g] {
    const IntSet l = a->l.set();
    const Rational eps = parse_positive(a->eps, "eps");
    Json j{{"eps", to_json(eps)}, {"samples", a->samples}};
    if (a->sys.rotation()) {
      const auto sys = a->sys.rotation_system();
      const auto w = find_L_recurrent(sys, l, eps, sample_rotation_points(sys.dimension(), a->samples, g.seed));
      j["system"] = a->sys.describe(0);
      j["exact"] = true;
      j["found"] = w.has_value();
      if (w) {
        Json x = Json::array();
        for (const auto& c : w->x) x.push_back(to_json(c));
        j["witness"] = {{"sample", w->sample_index}, {"x", x}, {"m", w->m}, {"distance", to_json(w->distance)}};
      }
      return j;
    }
    const std::int64_t reach = set_reach(l);
    const auto sys = a->sys.subshift(reach);
    const auto w = find_L_recurrent(sys, l, eps, sample_orbit_points(sys, a->samples, reach, g.seed));
    j["system"] = a->sys.describe(reach);
    j["exact"] = false;
    j["found"] = w.has_value();
    if (w) {
      j["witness"] = {{"sample", w->sample_index}, {"orbit_offset", -w->x.support().lo + sys.base.support().lo},
                      {"m", w->m}, {"distance", to_json(w->distance)}};
    }
    return j;
  });
}

void add_etadense(CLI::App* parent, Registry& reg) {
  struct Args {
    std::vector<std::string> alphas;
    std::string eta;
    std::int64_t max_m = 1'000'000;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("etadense", "least M with {T^j x : j <= M} eta-dense (rotation)");
  c->add_option("--alpha", a->alphas, "frequency (repeat for T^k)")->required();
  c->add_option("--eta", a->eta, "density radius")->required();
  c->add_option("--max-m", a->max_m, "give up after this many steps");
  reg.on(c, [a] {
    const RotationSystem sys(parse_frequencies(a->alphas));
    Json j{{"eta", to_json(parse_positive(a->eta, "eta"))}};
    try {
      const auto r = eta_dense_constant(sys, parse_positive(a->eta, "eta"), a->max_m);
      j["found"] = true;
      j["M"] = r.m;
      j["method"] = r.conservative ? "grid cover (upper bound on the least M)" : "exact gap check";
    } catch (const NoSuchM& e) {
      j["found"] = false;
      j["reason"] = e.what();
    }
    return j;
  });
}

void add_rigidity(CLI::App* parent, Registry& reg, const Globals& g) {
  struct Args {
    SystemInput sys;
    std::int64_t horizon = 0;
    bool full_shift = false;
    std::size_t samples = 32;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("rigidity", "record minima of m -> sup_x d(x, T^m x), m <= H");
  a->sys.add(c, false);
  c->add_option("--horizon,-H", a->horizon, "horizon H")->required()->check(CLI::PositiveNumber);
  c->add_flag("--full-shift", a->full_shift, "subshift: sample the full shift on {0,1}^Z instead of an orbit");
  c->add_option("--samples", a->samples, "subshift sample points")->check(CLI::PositiveNumber);
  reg.on(c, [a, &g] {
    std::vector<RigidityRecord> recs;
    Json j{{"horizon", a->horizon}};
    if (a->sys.rotation()) {
      recs = uniform_rigidity_scan(a->sys.rotation_system(), a->horizon);
      j["system"] = a->sys.describe(0);
      j["exact"] = true;
    } else {
      const std::int64_t reach = a->horizon;
      const std::int64_t half = a->sys.window_half > 0 ? a->sys.window_half : checked_mul(4, reach);
      std::vector<SymbolicPoint> pts;
      if (a->full_shift) {
        pts = full_shift_samples(a->samples, half, g.seed);
        j["system"] = Json{{"kind", "full_shift"}, {"window", to_json(symmetric_window(half))}};
      } else {
        const auto sys = a->sys.subshift(reach);
        pts = sample_orbit_points(sys, a->samples, reach, g.seed);
        j["system"] = a->sys.describe(reach);
      }
      recs = uniform_rigidity_scan(pts, a->horizon);
      j["exact"] = false;
      j["samples"] = a->samples;
    }
    Json r = Json::array();
    for (const auto& rec : recs) r.push_back({{"m", rec.m}, {"sup_displacement", to_json(rec.sup_displacement)}});
    j["records"] = r;
    return j;
  });
}

void add_moving(CLI::App* parent, Registry& reg, const Globals& g) {
  struct Args {
    SystemInput sys;
    std::string nk, rk;
    std::int64_t horizon = 200;
    std::string eps = "1/100";
    std::size_t samples = 32;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("moving", "fraction of sampled x with psi(x) < eps");
  a->sys.add(c, false);
  c->add_option("--nk", a->nk, "n_k: expression in k or a file of integers")->required();
  c->add_option("--rk", a->rk, "r_k: expression in k or a file of integers (default k)");
  c->add_option("--K", a->horizon, "horizon K")->check(CLI::PositiveNumber);
  c->add_option("--eps", a->eps, "tolerance");
  c->add_option("--samples", a->samples, "sample points")->check(CLI::PositiveNumber);
  reg.on(c, [a, &g] {
    const MovingQuery q = make_query(a->nk, a->rk, a->horizon, a->eps);
    MovingReport rep;
    Json j;
    if (a->sys.rotation()) {
      const auto sys = a->sys.rotation_system();
      rep = moving_recurrence_experiment(sys, q, sample_rotation_points(sys.dimension(), a->samples, g.seed), g.threads);
      j["system"] = a->sys.describe(0);
    } else {
      const std::int64_t reach = query_reach(q);
      const auto sys = a->sys.subshift(2 * reach);
      rep = moving_recurrence_experiment(sys, q, sample_orbit_points(sys, a->samples, reach, g.seed), g.threads);
      j["system"] = a->sys.describe(2 * reach);
    }
    Json values = Json::array();
    for (const auto& v : rep.values) values.push_back(v.value());
    j["query"] = query_json(q);
    j["samples"] = rep.samples;
    j["below_eps"] = rep.below;
    j["fraction"] = rep.fraction;
    j["min"] = to_json(rep.min);
    j["median"] = to_json(rep.median);
    j["max"] = to_json(rep.max);
    j["values"] = values;
    j["declared_minimal"] = rep.declared_minimal;
    j["note"] = kMovingReportNote;
    return j;
  });
}

}  // namespace

void register_dyn(CLI::App& app, Registry& reg, const Globals& g) {
  auto* d = app.add_subcommand("dyn", "rotations and subshifts: return times and recurrence functions");
  d->require_subcommand(1);
  d->fallthrough();
  add_returns(d, reg);
  add_nuu(d, reg);
  add_superset(d, reg);
  add_phi(d, reg);
  add_psi(d, reg);
  add_recurrent(d, reg, g);
  add_etadense(d, reg);
  add_rigidity(d, reg, g);
  add_moving(d, reg, g);
}

}  // namespace reclab::cli
