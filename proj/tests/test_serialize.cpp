#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "reclab/serialize.hpp"

using namespace reclab;

TEST(SetText, AutoDetectsFormat) {
  const RawSet j = parse_set_text("  [3, -1, 0, 3]\n");
  EXPECT_EQ(j.format, SetFormat::json);
  EXPECT_EQ(j.values, (std::vector<std::int64_t>{3, -1, 0, 3}));

  const RawSet l = parse_set_text("4\n  -2 \n\n+7\n");
  EXPECT_EQ(l.format, SetFormat::lines);
  EXPECT_EQ(l.values, (std::vector<std::int64_t>{4, -2, 7}));
}

TEST(SetText, Errors) {
  EXPECT_THROW(parse_set_text("[1, 2"), ParseError);
  EXPECT_THROW(parse_set_text("[1.5]"), ParseError);
  EXPECT_THROW(parse_set_text("[\"1\"]"), ParseError);
  EXPECT_THROW(parse_set_text("1\nx\n"), ParseError);
  EXPECT_THROW(parse_set_text("99999999999999999999\n"), Overflow);
  EXPECT_THROW(parse_set_text("[18446744073709551615]"), Overflow);
  EXPECT_THROW(read_set_file("/nonexistent/set.json"), InvalidArgument);
}

TEST(SetText, RoundTripIsBitExact) {
  const std::vector<std::int64_t> values{-9223372036854775807LL, -3, 1, 2, 9223372036854775807LL};
  for (SetFormat f : {SetFormat::json, SetFormat::lines}) {
    const std::string text = format_set(values, f);
    const RawSet back = parse_set_text(text);
    EXPECT_EQ(back.values, values);
    EXPECT_EQ(back.format, f);
    EXPECT_EQ(format_set(back.values, back.format), text);
  }
  EXPECT_EQ(format_set({1, 2}, SetFormat::json), "[1,2]\n");
  EXPECT_EQ(format_set({1, 2}, SetFormat::lines), "1\n2\n");
}

TEST(SetText, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "reclab_set_roundtrip.txt";
  {
    std::ofstream out(path);
    out << format_set({5, 10, 15}, SetFormat::lines);
  }
  EXPECT_EQ(read_set_file(path.string()).values, (std::vector<std::int64_t>{5, 10, 15}));
  std::filesystem::remove(path);
}

TEST(InlineList, Parses) {
  EXPECT_EQ(parse_inline_list("2, 4,6"), (std::vector<std::int64_t>{2, 4, 6}));
  EXPECT_TRUE(parse_inline_list("").empty());
  EXPECT_THROW(parse_inline_list("2,a"), ParseError);
  EXPECT_EQ(parse_set_format("lines"), SetFormat::lines);
  EXPECT_THROW(parse_set_format("csv"), InvalidArgument);
}

TEST(Certificates, JsonRoundTrip) {
  const Certificate w = WindowUnsat{7, 3};
  const Certificate p = PeriodicWitness{{{1, 1, 2, 2, 3, 3, 4, 4}}};
  EXPECT_EQ(certificate_to_json(w), Json::parse(R"({"type":"window_unsat","window":7,"arity":3})"));
  EXPECT_EQ(certificate_to_json(p), Json::parse(R"({"type":"periodic","period":8,"colors":[1,1,2,2,3,3,4,4]})"));
  EXPECT_EQ(certificate_from_json(certificate_to_json(w)), w);
  EXPECT_EQ(certificate_from_json(certificate_to_json(p)), p);
}

TEST(Certificates, MalformedJson) {
  for (const char* bad : {R"({"type":"periodic","period":3,"colors":[1,2]})", R"({"type":"mystery"})",
                          R"({"window":3})", R"({"type":"window_unsat","window":"x","arity":2})", "[]"})
    EXPECT_THROW(certificate_from_json(Json::parse(bad)), MalformedCertificate) << bad;
}

TEST(Values, ExactAndApproximateViews) {
  EXPECT_EQ(to_json(Rational(1, 4)), Json::parse(R"({"exact":"1/4","value":0.25})"));
  const Json g = to_json(golden_frequency());
  EXPECT_EQ(g["exact"], "-1/2+1/2*sqrt(5)");
  EXPECT_DOUBLE_EQ(g["value"].get<double>(), 0.6180339887498949);
  EXPECT_EQ(to_json(Distance::zero_at_resolution(9))["zero_within_window_radius"], 9);
  EXPECT_FALSE(to_json(Distance::linear(Real(1))).contains("zero_within_window_radius"));
}

TEST(Values, StatsOmitWallTime) {
  SearchStats s;
  s.wall_seconds = 3.5;
  EXPECT_FALSE(to_json(s).contains("wall_seconds"));
}

TEST(Values, ContinuedFractionUsesDecimalStrings) {
  const Json j = to_json(continued_fraction(Real::quadratic(-1, 1, 2, 1), 3));
  EXPECT_EQ(j["partial_quotients"], Json::parse(R"(["0","2","2","2"])"));
  EXPECT_EQ(j["convergents"].back(), Json::parse(R"({"p":"5","q":"12"})"));
}
