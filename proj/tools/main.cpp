#include <cstdlib>
#include <iostream>

#include "cli_common.hpp"

using namespace reclab;
using namespace reclab::cli;

namespace {

const CLI::App* selected_leaf(const CLI::App& app) {
  const CLI::App* cur = &app;
  for (;;) {
    auto subs = cur->get_subcommands();
    if (subs.empty()) return cur;
    cur = subs.front();
  }
}

std::string command_path(const CLI::App* leaf) {
  std::string path;
  for (const CLI::App* a = leaf; a->get_parent() != nullptr; a = a->get_parent())
    path = a->get_name() + (path.empty() ? "" : " " + path);
  return path;
}

Json echo_option(const CLI::Option* o) {
  if (o->get_expected_max() == 0) return o->count() > 0;  // flag
  if (o->count() == 0 && o->get_items_expected_max() > 1) return Json::array();
  if (o->count() == 0) {
    const std::string d = o->get_default_str();
    return d.empty() ? Json(nullptr) : Json(d);
  }
  const auto& r = o->results();
  if (o->get_items_expected_max() > 1) return Json(r);
  return Json(r.back());
}

Json echo_config(const CLI::App* leaf, const Globals& g) {
  Json opts = Json::object();
  for (const CLI::Option* o : leaf->get_options()) {
    if (o->get_name() == "--help") continue;
    std::string key = o->get_name();
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    opts[key] = echo_option(o);
  }
  return Json{{"command", command_path(leaf)},
              {"options", opts},
              {"seed", g.seed},
              {"precision_bits", precision_bits()}};
}

int resolve_precision(const Globals& g) {
  if (g.precision_bits > 0) return g.precision_bits;
  if (const char* env = std::getenv("RECLAB_PRECISION_BITS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v <= 0 || v > 1'000'000) throw InvalidArgument("RECLAB_PRECISION_BITS must be a positive integer");
    return static_cast<int>(v);
  }
  return kDefaultPrecisionBits;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reclab: recurrence sets, Birkhoff colorings, Bohr sets and rotation/subshift experiments"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "seed for every sampled quantity");
  app.add_option("--threads", g.threads, "worker cap (0: available parallelism); output does not depend on it");
  app.add_option("--precision-bits", g.precision_bits, "interval refinement cap (default 128 or RECLAB_PRECISION_BITS)");

  Registry reg;
  register_birkhoff(app, reg, g);
  register_bohr(app, reg, g);
  register_dyn(app, reg, g);
  register_sets(app, reg, g);
  register_report(app, reg, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const CLI::App* leaf = selected_leaf(app);
  const auto it = reg.handlers.find(leaf);
  if (it == reg.handlers.end()) {
    std::cerr << leaf->help();
    return 2;
  }

  try {
    set_precision_bits(resolve_precision(g));
    Json result = it->second();
    if (!result.is_null()) {
      const Json out{{"config", echo_config(leaf, g)}, {"result", std::move(result)}};
      std::cout << out.dump(2) << "\n";
    }
    return 0;
  } catch (const UncertainAtPrecision& e) {
    std::cerr << "error: " << e.what() << "\n";
    const Json out{{"config", echo_config(leaf, g)},
                   {"error",
                    {{"type", "UncertainAtPrecision"},
                     {"message", e.what()},
                     {"bits", e.bits()},
                     {"ambiguous", e.ambiguous()}}}};
    std::cout << out.dump(2) << "\n";
    return 3;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Overflow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
