#include <fstream>

#include "cli_common.hpp"

namespace reclab::cli {

namespace {

constexpr std::uint64_t kDefaultAllowance = 200'000'000;

void write_certificate(const std::string& path, const Certificate& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write certificate to '" + path + "'");
  out << certificate_to_json(c).dump() << "\n";
}

Certificate read_certificate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open certificate '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw MalformedCertificate(std::string("certificate is not valid JSON: ") + e.what());
  }
  return certificate_from_json(j);
}

void add_check(CLI::App* parent, Registry& reg) {
  struct Args {
    SetInput set;
    int arity = 0;
    LimitsInput limits;
    std::string emit;
    std::uint64_t allowance = kDefaultAllowance;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("check", "decide whether M is r-Birkhoff, with a certificate");
  a->set.add(c);
  c->add_option("--arity,-r", a->arity, "number of colors r")->required();
  a->limits.add(c);
  c->add_option("--emit-cert", a->emit, "write the certificate JSON here");
  c->add_option("--allowance", a->allowance, "node allowance for the independent re-verification");
  reg.on(c, [a] {
    const IntSet m = a->set.set();
    if (m.empty()) throw EmptyInput("M is empty");
    const Verdict v = check_r_birkhoff(m, a->arity, a->limits.get());
    Json j = to_json(v);
    j["set"] = to_json(m);
    j["arity"] = a->arity;
    j["verified"] = verified(m, a->arity, v.certificate, a->allowance);
    if (!a->emit.empty() && v.certificate) write_certificate(a->emit, *v.certificate);
    return j;
  });
}

void add_verify(CLI::App* parent, Registry& reg) {
  struct Args {
    SetInput set;
    int arity = 0;
    std::string cert;
    std::uint64_t allowance = kDefaultAllowance;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("verify", "independently re-check a certificate");
  a->set.add(c);
  c->add_option("--arity,-r", a->arity, "number of colors r")->required();
  c->add_option("--cert", a->cert, "certificate JSON file")->required();
  c->add_option("--allowance", a->allowance, "node allowance for the reference search");
  reg.on(c, [a] {
    const IntSet m = a->set.set();
    const Certificate cert = read_certificate(a->cert);
    Json j{{"set", to_json(m)}, {"arity", a->arity}, {"certificate", certificate_to_json(cert)}};
    try {
      j["valid"] = verify_certificate(m, a->arity, cert, a->allowance);
    } catch (const BudgetExceeded& e) {
      j["valid"] = nullptr;
      j["note"] = e.what();
    }
    return j;
  });
}

void add_minimal(CLI::App* parent, Registry& reg) {
  struct Args {
    SetInput set;
    int arity = 0;
    LimitsInput limits;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("minimal", "inclusion-minimal r-Birkhoff subset by greedy removal");
  a->set.add(c);
  c->add_option("--arity,-r", a->arity, "number of colors r")->required();
  a->limits.add(c);
  reg.on(c, [a] {
    const IntSet m = a->set.set();
    const auto res = minimal_r_birkhoff_subset(m, a->arity, a->limits.get());
    Json j{{"status", to_string(res.status)}, {"subset", to_json(res.subset)}, {"nodes", res.nodes}};
    j["partial"] = res.status == Status::undecided;
    j["certificate"] = res.certificate ? certificate_to_json(*res.certificate) : Json(nullptr);
    j["verified"] = verified(res.subset, a->arity, res.certificate, kDefaultAllowance);
    return j;
  });
}

void add_greedy(CLI::App* parent, Registry& reg) {
  struct Args {
    SetInput set;
    int colors = 0;
    std::int64_t length = 0;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("greedy", "greedy min-rule coloring avoiding M, with cycle detection");
  a->set.add(c);
  c->add_option("--colors", a->colors, "palette size (0: |M|+1)");
  c->add_option("--length,-n", a->length, "terms z_1..z_n to print")->required();
  reg.on(c, [a] {
    const IntSet m = a->set.set();
    const int colors = a->colors > 0 ? a->colors : static_cast<int>(m.size()) + 1;
    const auto g = greedy_coloring(m, colors, a->length);
    Json j{{"set", to_json(m)}, {"colors", colors}, {"sequence", g.sequence}};
    if (g.cycle) {
      const Certificate cert = PeriodicWitness{*g.cycle};
      j["cycle"] = {{"start", g.cycle_start}, {"certificate", certificate_to_json(cert)}};
      j["verified"] = verified(m, colors, cert, kDefaultAllowance);
    } else {
      j["cycle"] = nullptr;
      j["verified"] = nullptr;
    }
    return j;
  });
}

void add_stable(CLI::App* parent, Registry& reg) {
  struct Args {
    std::int64_t family_r = 0;
    int arity = 0;
    SetInput removed;
    std::int64_t k_max = 0;
    LimitsInput limits;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("stable", "probe (L_r truncated at k_max) minus F at a given arity");
  c->add_option("--family-r", a->family_r, "r of the family L_r = {n (r+2)^k : n <= r}")->required();
  c->add_option("--arity", a->arity, "number of colors (default: family r)");
  a->removed.add(c, "--removed", "--removed-elements", "removed set F");
  c->add_option("--k-max", a->k_max, "largest layer index")->required();
  a->limits.add(c);
  reg.on(c, [a] {
    const int arity = a->arity > 0 ? a->arity : static_cast<int>(a->family_r);
    const IntSet removed = a->removed.given() ? a->removed.set() : IntSet{};
    const auto res = stably_r_birkhoff_probe(a->family_r, arity, removed, a->k_max, a->limits.get());
    Json j = to_json(res.verdict);
    j["probed"] = to_json(res.probed);
    j["removed"] = to_json(removed);
    j["arity"] = arity;
    j["intact_layer"] = res.intact_layer ? Json(*res.intact_layer) : Json(nullptr);
    j["verified"] = verified(res.probed, arity, res.verdict.certificate, kDefaultAllowance);
    return j;
  });
}

void add_chromatic(CLI::App* parent, Registry& reg) {
  struct Args {
    SetInput set;
    std::int64_t window = 0;
    LimitsInput limits;
  };
  auto a = std::make_shared<Args>();
  auto* c = parent->add_subcommand("chromatic", "bracket the chromatic number of the distance graph on a window");
  a->set.add(c);
  c->add_option("--window,-w", a->window, "window length W")->required()->check(CLI::PositiveNumber);
  a->limits.add(c);
  reg.on(c, [a] {
    const IntSet m = a->set.set();
    const auto b = chromatic_number_window(m, a->window, a->limits.get());
    return Json{{"set", to_json(m)}, {"window", a->window}, {"lower", b.lower}, {"upper", b.upper},
                {"exact", b.lower == b.upper}, {"nodes", b.nodes}};
  });
}

}  // namespace

void register_birkhoff(CLI::App& app, Registry& reg, const Globals&) {
  auto* b = app.add_subcommand("birkhoff", "r-Birkhoff decisions and certificates");
  b->require_subcommand(1);
  b->fallthrough();
  add_check(b, reg);
  add_verify(b, reg);
  add_minimal(b, reg);
  add_greedy(b, reg);
  add_stable(b, reg);
  add_chromatic(b, reg);
}

}  // namespace reclab::cli
