#include <cstdio>
#include <fstream>
#include <iostream>

#include "cli_common.hpp"
#include "reclab/claims.hpp"

namespace reclab::cli {

namespace {

Json claim_json(const ClaimResult& c, bool with_runtime) {
  Json j{{"id", c.id}, {"name", c.name}, {"status", to_string(c.status)}, {"certificates", c.certificates}, {"notes", c.notes}};
  if (with_runtime) j["seconds"] = c.seconds;
  return j;
}

std::string markdown(const PaperReport& rep) {
  std::string s = "# Claim report\n\n| # | claim | status | seconds |\n|---|---|---|---|\n";
  char buf[32];
  for (const auto& c : rep.claims) {
    std::snprintf(buf, sizeof buf, "%.3f", c.seconds);
    s += "| " + std::to_string(c.id) + " | " + c.name + " | " + to_string(c.status) + " | " + buf + " |\n";
  }
  for (const auto& c : rep.claims) {
    if (c.notes.empty() && c.certificates.empty()) continue;
    s += "\n## " + std::to_string(c.id) + ". " + c.name + "\n\n";
    for (const auto& n : c.notes) s += "- " + n + "\n";
    for (const auto& n : c.certificates) s += "- certificate " + n + "\n";
  }
  return s;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

}  // namespace

void register_report(CLI::App& app, Registry& reg, const Globals& g) {
  auto* r = app.add_subcommand("report", "end-to-end reports");
  r->require_subcommand(1);
  r->fallthrough();

  struct Args {
    std::uint64_t budget = SolverLimits{}.node_budget;
    std::string out;
    bool inject_corrupt = false;
  };
  auto a = std::make_shared<Args>();
  auto* c = r->add_subcommand("paper-claims", "re-derive the fixed claim list with verified certificates");
  c->add_option("--budget", a->budget, "solver node budget for every claim");
  c->add_option("--out", a->out, "write PREFIX.md and PREFIX.json (these include runtimes)");
  c->add_flag("--inject-corrupt", a->inject_corrupt, "negative control: corrupt one certificate before verification");
  reg.on(c, [a, &g] {
    ClaimOptions o;
    o.limits.node_budget = a->budget;
    o.seed = g.seed;
    o.threads = g.threads;
    o.inject_corrupt = a->inject_corrupt;
    const PaperReport rep = report_paper_claims(o);

    for (const auto& cl : rep.claims)
      std::fprintf(stderr, "%2d  %-9s %8.3fs  %s\n", cl.id, to_string(cl.status), cl.seconds, cl.name.c_str());

    Json claims = Json::array(), timed = Json::array();
    for (const auto& cl : rep.claims) {
      claims.push_back(claim_json(cl, false));
      timed.push_back(claim_json(cl, true));
    }
    if (!a->out.empty()) {
      write_file(a->out + ".md", markdown(rep));
      write_file(a->out + ".json", Json{{"claims", timed}, {"all_pass", rep.all_pass()}}.dump(2) + "\n");
    }
    return Json{{"claims", claims}, {"all_pass", rep.all_pass()}, {"any_fail", rep.any_fail()}};
  });
}

}  // namespace reclab::cli
