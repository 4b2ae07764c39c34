#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reclab/birkhoff.hpp"
#include "reclab/bohr.hpp"
#include "reclab/dynamics.hpp"
#include "reclab/expr.hpp"
#include "reclab/serialize.hpp"

namespace reclab::cli {

/// Options shared by every subcommand.
struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  int precision_bits = 0;  // 0: RECLAB_PRECISION_BITS or the library default
};

/// A handler returns the "result" object; null means it wrote its own stdout.
using Handler = std::function<Json()>;

struct Registry {
  std::map<const CLI::App*, Handler> handlers;
  void on(const CLI::App* leaf, Handler h) { handlers[leaf] = std::move(h); }
};

/// A soundness bug surfaced at runtime (never an input problem).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// --set FILE or --elements "a,b,c" (names configurable).
struct SetInput {
  std::string path;
  std::string inline_list;
  std::string flag = "--set";

  void add(CLI::App* app, const std::string& file_flag = "--set", const std::string& list_flag = "--elements",
           const std::string& what = "set") {
    flag = file_flag;
    app->add_option(file_flag, path, what + " file (JSON array or one integer per line)");
    app->add_option(list_flag, inline_list, what + " as a comma-separated list");
  }
  bool given() const { return !path.empty() || !inline_list.empty(); }
  std::vector<std::int64_t> raw() const {
    if (!path.empty() && !inline_list.empty()) throw InvalidArgument("give the set either as a file or inline, not both");
    if (!path.empty()) return read_set_file(path).values;
    if (!inline_list.empty()) return parse_inline_list(inline_list);
    throw InvalidArgument(flag + " is required");
  }
  IntSet set() const { return IntSet(raw()); }
};

struct LimitsInput {
  std::int64_t max_window = 0;
  std::int64_t max_period = 0;
  std::uint64_t budget = SolverLimits{}.node_budget;
  bool no_greedy = false;

  void add(CLI::App* app) {
    app->add_option("--max-window", max_window, "largest window for UNSAT search (0: 4*max(M))");
    app->add_option("--max-period", max_period, "largest period for witness search (0: min(256, 2*max(M)+1))");
    app->add_option("--budget", budget, "search node budget");
    app->add_flag("--no-greedy", no_greedy, "skip the greedy cycle fallback");
  }
  SolverLimits get() const {
    SolverLimits l;
    l.max_window = max_window;
    l.max_period = max_period;
    l.node_budget = budget;
    l.greedy_fallback = !no_greedy;
    return l;
  }
};

inline Real parse_frequency(const std::string& s) { return parse_real(s).frac(); }

inline std::vector<Real> parse_frequencies(const std::vector<std::string>& v) {
  std::vector<Real> out;
  for (const auto& s : v) out.push_back(parse_frequency(s));
  return out;
}

inline Json frequencies_json(const std::vector<Real>& v) {
  Json j = Json::array();
  for (const auto& a : v) j.push_back(to_json(a));
  return j;
}

/// A sequence given as an expression in k, or as a path to a file of integers.
inline SequenceSource parse_sequence(const std::string& text) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(text, ec)) {
    std::vector<BigInt> values;
    for (auto v : read_set_file(text).values) values.emplace_back(v);
    return SequenceSource(std::move(values));
  }
  return SequenceSource(Expression::parse(text));
}

inline Rational parse_positive(const std::string& s, const char* what) {
  const Rational q = parse_rational(s);
  if (q <= 0) throw InvalidArgument(std::string(what) + " must be positive");
  return q;
}

/// Re-verifies a certificate before it is printed.
inline Json verified(const IntSet& m, int r, const std::optional<Certificate>& cert, std::uint64_t allowance) {
  if (!cert) return nullptr;
  try {
    if (!verify_certificate(m, r, *cert, allowance))
      throw InternalError("emitted certificate failed re-verification");
  } catch (const BudgetExceeded&) {
    return "allowance_exceeded";
  }
  return true;
}

void register_birkhoff(CLI::App& app, Registry& reg, const Globals& g);
void register_bohr(CLI::App& app, Registry& reg, const Globals& g);
void register_dyn(CLI::App& app, Registry& reg, const Globals& g);
void register_sets(CLI::App& app, Registry& reg, const Globals& g);
void register_report(CLI::App& app, Registry& reg, const Globals& g);

}  // namespace reclab::cli
