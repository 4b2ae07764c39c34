#pragma once

// JSON views of library values and the on-disk set format.
//
// Set files hold integers either as a JSON array or one decimal per line; the
// reader detects which. Canonical forms are "[1,2,3]\n" and "1\n2\n3\n", and
// normalizing a canonical file reproduces it byte for byte.

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "reclab/birkhoff.hpp"
#include "reclab/bohr.hpp"
#include "reclab/dynamics.hpp"
#include "reclab/error.hpp"
#include "reclab/intset.hpp"
#include "reclab/real.hpp"

namespace reclab {

using Json = nlohmann::json;

enum class SetFormat { json, lines };

inline const char* to_string(SetFormat f) { return f == SetFormat::json ? "json" : "lines"; }

inline SetFormat parse_set_format(std::string_view s) {
  if (s == "json") return SetFormat::json;
  if (s == "lines") return SetFormat::lines;
  throw InvalidArgument("unknown set format '" + std::string(s) + "' (expected json or lines)");
}

struct RawSet {
  std::vector<std::int64_t> values;  // as listed; may contain 0 and repeats
  SetFormat format = SetFormat::json;
};

namespace detail {
inline std::int64_t parse_int64(std::string_view tok, std::size_t line) {
  std::int64_t v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc::result_out_of_range) throw Overflow("set entry out of 64-bit range on line " + std::to_string(line));
  if (ec != std::errc() || ptr != last || first == last)
    throw ParseError("not an integer on line " + std::to_string(line) + ": '" + std::string(tok) + "'");
  return v;
}
}  // namespace detail

inline RawSet parse_set_text(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  RawSet out;
  if (i < text.size() && text[i] == '[') {
    out.format = SetFormat::json;
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("set file is not valid JSON: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("set file must be a JSON array of integers");
    for (const auto& v : j) {
      if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
        throw Overflow("set entry out of 64-bit range: " + v.dump());
      } else if (v.is_number_integer()) {
        out.values.push_back(v.get<std::int64_t>());
      } else {
        throw ParseError("set file entries must be integers, got " + v.dump());
      }
    }
    return out;
  }
  out.format = SetFormat::lines;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    if (!tok.empty()) out.values.push_back(detail::parse_int64(tok, line));
    pos = end + 1;
  }
  return out;
}

inline RawSet read_set_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open set file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_set_text(buf.str());
}

/// Comma-separated inline list, e.g. "2,4,6".
inline std::vector<std::int64_t> parse_inline_list(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    if (!tok.empty()) out.push_back(detail::parse_int64(tok, 1));
    pos = end + 1;
  }
  return out;
}

inline std::string format_set(const std::vector<std::int64_t>& values, SetFormat f) {
  if (f == SetFormat::json) return Json(values).dump() + "\n";
  std::string s;
  for (auto v : values) s += std::to_string(v) + "\n";
  return s;
}

// ---------------------------------------------------------------------------
// Value views

inline Json to_json(const Rational& q) { return Json{{"exact", to_string(q)}, {"value", to_double(q)}}; }

inline Json to_json(const Real& x) { return Json{{"exact", x.to_string()}, {"value", x.to_double()}}; }

inline Json to_json(const Distance& d) {
  Json j{{"exact", d.exact()}, {"value", d.value()}};
  if (d.resolution() >= 0) j["zero_within_window_radius"] = d.resolution();
  return j;
}

inline Json to_json(const IntSet& s) { return Json(s.elements()); }

inline Json to_json(const Window& w) { return Json{{"lo", w.lo}, {"hi", w.hi}}; }

inline Json to_json(const PrecisionInfo& p) { return Json{{"bits", p.bits}, {"max_error", p.max_error}}; }

inline Json certificate_to_json(const Certificate& c) {
  if (const auto* u = std::get_if<WindowUnsat>(&c))
    return Json{{"type", "window_unsat"}, {"window", u->window}, {"arity", u->arity}};
  const auto& pc = std::get<PeriodicWitness>(c).coloring;
  return Json{{"type", "periodic"}, {"period", pc.period()}, {"colors", pc.colors}};
}

inline Certificate certificate_from_json(const Json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "window_unsat") return WindowUnsat{j.at("window").get<std::int64_t>(), j.at("arity").get<int>()};
    if (type == "periodic") {
      PeriodicColoring pc{j.at("colors").get<std::vector<int>>()};
      if (j.contains("period") && j.at("period").get<std::int64_t>() != pc.period())
        throw MalformedCertificate("period does not match the number of colors");
      return PeriodicWitness{std::move(pc)};
    }
    throw MalformedCertificate("unknown certificate type '" + type + "'");
  } catch (const Json::exception& e) {
    throw MalformedCertificate(std::string("certificate JSON: ") + e.what());
  }
}

/// Deterministic part of the search statistics (wall time is left out).
inline Json to_json(const SearchStats& s) {
  return Json{{"nodes", s.nodes},
              {"windows_checked", s.windows_checked},
              {"periods_checked", s.periods_checked},
              {"budget_exhausted", s.budget_exhausted}};
}

inline Json to_json(const Verdict& v) {
  Json j{{"status", to_string(v.status)}, {"stats", to_json(v.stats)}};
  j["certificate"] = v.certificate ? certificate_to_json(*v.certificate) : Json(nullptr);
  return j;
}

inline Json to_json(const SolverLimits& l) {
  return Json{{"max_window", l.max_window},
              {"max_period", l.max_period},
              {"node_budget", l.node_budget},
              {"greedy_fallback", l.greedy_fallback}};
}

inline Json to_json(const Interval& iv) {
  return Json{{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}, {"length", to_json(iv.length())}};
}

inline Json to_json(const PruningResult& r) {
  Json j{{"found", r.interval.has_value()},
         {"survivors", r.survivors},
         {"stages", r.stages},
         {"truncated", r.truncated}};
  j["interval"] = r.interval ? to_json(*r.interval) : Json(nullptr);
  return j;
}

inline Json to_json(const ContinuedFractionData& cf) {
  Json q = Json::array(), c = Json::array();
  for (const auto& a : cf.partial_quotients) q.push_back(a.str());
  for (const auto& v : cf.convergents) c.push_back(Json{{"p", v.p.str()}, {"q", v.q.str()}});
  return Json{{"partial_quotients", q}, {"convergents", c}, {"terminated", cf.terminated}};
}

inline Json to_json(const ThreeDistance& td) {
  Json g = Json::array(), d = Json::array();
  for (const auto& x : td.gaps) g.push_back(to_json(x));
  for (const auto& x : td.distinct) d.push_back(to_json(x));
  return Json{{"gaps", g}, {"distinct", d}};
}

inline Json to_json(const TimeSet& t) { return Json(t); }

}  // namespace reclab
