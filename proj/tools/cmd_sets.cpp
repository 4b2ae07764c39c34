#include <fstream>
#include <iostream>

#include "cli_common.hpp"

namespace reclab::cli {

namespace {

struct WindowInput {
  std::optional<std::int64_t> lo, hi;
  void add(CLI::App* app) {
    app->add_option("--lo", lo, "window start (default: min of the set)");
    app->add_option("--hi", hi, "window end (default: max of the set)");
  }
  Window get(const std::vector<std::int64_t>& raw) const {
    if (raw.empty() && (!lo || !hi)) throw EmptyInput("set is empty");
    const auto [mn, mx] = raw.empty() ? std::pair<std::int64_t, std::int64_t>{0, 0}
                                      : std::pair{*std::min_element(raw.begin(), raw.end()),
                                                  *std::max_element(raw.begin(), raw.end())};
    return Window{lo.value_or(mn), hi.value_or(mx)};
  }
};

void emit_set(const std::vector<std::int64_t>& values, SetFormat f, const std::string& out_path) {
  const std::string text = format_set(values, f);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + out_path + "'");
  out << text;
}

void add_diff(CLI::App* parent, Registry& reg) {
  struct Args {
    SetInput set;
    WindowInput window;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("diff", "difference set {a - b : a != b}");
  a->set.add(c);
  a->window.add(c);
  reg.on(c, [a] {
    const auto raw = a->set.raw();
    const IntSet d = (a->window.lo || a->window.hi) ? difference_set(raw, a->window.get(raw)) : difference_set(raw);
    return Json{{"elements", to_json(d)}, {"count", d.size()}};
  });
}

void add_gaps(CLI::App* parent, Registry& reg) {
  struct Args {
    SetInput set;
    WindowInput window;
    bool one_sided = false;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("gaps", "gap profile of S on a window");
  a->set.add(c);
  a->window.add(c);
  c->add_flag("--one-sided", a->one_sided, "only the positive part of the window");
  reg.on(c, [a] {
    const auto raw = a->set.raw();
    const Window w = a->window.get(raw);
    const auto g = syndetic_gap(IntSet(raw), w, a->one_sided ? GapSide::one_sided : GapSide::two_sided);
    return Json{{"window", to_json(w)}, {"side", a->one_sided ? "one_sided" : "two_sided"},
                {"max_gap", g.max_gap}, {"syndeticity_constant", g.max_gap - 1}, {"gaps", g.gaps}};
  });
}

void add_thick(CLI::App* parent, Registry& reg) {
  struct Args {
    SetInput set;
    WindowInput window;
    std::int64_t run = 0;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("thick", "does S contain a run of consecutive integers in the window?");
  a->set.add(c);
  a->window.add(c);
  c->add_option("--run", a->run, "run length")->required()->check(CLI::PositiveNumber);
  reg.on(c, [a] {
    const auto raw = a->set.raw();
    const Window w = a->window.get(raw);
    return Json{{"window", to_json(w)}, {"run", a->run}, {"thick", is_thick_window(IntSet(raw), a->run, w)}};
  });
}

void add_lacunarity(CLI::App* parent, Registry& reg) {
  struct Args {
    SetInput set;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("lacunarity", "minimum of consecutive ratios x_{k+1}/x_k");
  a->set.add(c);
  reg.on(c, [a] {
    const auto rep = lacunarity_ratios(a->set.set());
    return Json{{"min_ratio", to_json(rep.min_ratio)}, {"argmin", rep.argmin}, {"is_lacunary_at_scale", rep.is_lacunary_at_scale}};
  });
}

void add_gen(CLI::App* parent, Registry& reg) {
  struct Args {
    std::string family;
    std::int64_t k = 1, r = 2, k_max = 0, n_max = 10;
    std::string poly;
    std::string format = "json";
    std::string out;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("gen", "generate kN_r, L_r or {p(n)}");
  c->add_option("--family", a->family, "kNr, Lr or poly")->required()->check(CLI::IsMember({"kNr", "Lr", "poly"}));
  c->add_option("--k", a->k, "kNr: multiplier k");
  c->add_option("--r", a->r, "kNr and Lr: r");
  c->add_option("--k-max", a->k_max, "Lr: largest layer");
  c->add_option("--poly", a->poly, "poly: polynomial in n");
  c->add_option("--n-max", a->n_max, "poly: truncation");
  c->add_option("--format", a->format, "json or lines (for --out)")->check(CLI::IsMember({"json", "lines"}));
  c->add_option("--out", a->out, "also write the set file here");
  reg.on(c, [a] {
    IntSet s;
    if (a->family == "kNr") {
      s = gen_k_times_Nr(a->k, a->r);
    } else if (a->family == "Lr") {
      s = gen_L_r(a->r, a->k_max);
    } else {
      if (a->poly.empty()) throw InvalidArgument("--poly is required for family poly");
      const auto p = Expression::parse(a->poly).as_polynomial();
      if (!p) throw InvalidArgument("'" + a->poly + "' is not a polynomial");
      s = gen_polynomial(*p, a->n_max);
    }
    if (!a->out.empty()) emit_set(s.elements(), parse_set_format(a->format), a->out);
    return Json{{"elements", to_json(s)}, {"count", s.size()}};
  });
}

void add_normalize(CLI::App* parent, Registry& reg) {
  struct Args {
    std::string path;
    std::string format;
    std::string out;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("normalize", "rewrite a set file in canonical form (sorted, unique, no 0)");
  c->add_option("--set", a->path, "set file")->required();
  c->add_option("--format", a->format, "json or lines (default: as read)")->check(CLI::IsMember({"json", "lines"}));
  c->add_option("--out", a->out, "output file (default: stdout)");
  reg.on(c, [a] {
    const RawSet raw = read_set_file(a->path);
    const SetFormat f = a->format.empty() ? raw.format : parse_set_format(a->format);
    emit_set(IntSet(raw.values).elements(), f, a->out);
    return Json(nullptr);
  });
}

}  // namespace

void register_sets(CLI::App& app, Registry& reg, const Globals&) {
  auto* s = app.add_subcommand("sets", "integer-set utilities");
  s->require_subcommand(1);
  s->fallthrough();
  add_diff(s, reg);
  add_gaps(s, reg);
  add_thick(s, reg);
  add_lacunarity(s, reg);
  add_gen(s, reg);
  add_normalize(s, reg);
}

}  // namespace reclab::cli
