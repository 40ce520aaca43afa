#include "doctest.h"

#include "support.hpp"

using namespace testing;

TEST_SUITE("io") {

TEST_CASE("market files round-trip") {
  for (const auto& name : kCorpusMarkets) {
    const std::string text = read_file(corpus_path(name));
    const Market m = parse_market(text);
    const std::string out = format_market(m);
    CHECK_MESSAGE(parse_market(out) == m, name);
    CHECK_MESSAGE(format_market(parse_market(out)) == out, name);
  }
}

TEST_CASE("fractional file round-trips") {
  const Market m = load_market("two_firm_split.market");
  const FractionalMatching fm = parse_fractional(read_file(corpus_path("two_firm_split.frac")), m);
  const Rational h(1, 2);
  CHECK(fm.levels == std::vector<Rational>{h, h, Rational(0), h});
  CHECK(fm.null_assignment == std::vector<Rational>{Rational(0), Rational(0), Rational(0), h});
  CHECK(parse_fractional(format_fractional(fm, m), m) == fm);
}

TEST_CASE("fractional numbers") {
  const Market m({"w1"}, {"f"}, {{0}}, {FirmPreference{{WorkerSet::of({0})}}});
  auto parse = [&](const std::string& a, const std::string& b) {
    return parse_fractional("workers: w1\nf: " + a + "\nnull: " + b + "\n", m);
  };
  CHECK(parse("0.25", "3/4").levels[0] == Rational(1, 4));
  CHECK(parse("1", "0").levels[0] == Rational(1));
  CHECK(parse(".5", "0.5").null_assignment[0] == Rational(1, 2));
  CHECK_THROWS_AS(parse("2", "0"), ParseError);
  CHECK_THROWS_AS(parse("x", "0"), ParseError);
  CHECK_THROWS_AS(parse("1/0", "0"), ParseError);
}

TEST_CASE("fractional errors carry positions") {
  const Market m = load_market("two_firm_split.market");
  try {
    parse_fractional("workers: w1 w2 w3 w4\nf1#1: 1/2 1/2 1/2 0\nf1#9: 0 0 0 0\n", m);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 1);
  }
  try {
    parse_fractional("workers: w1 w2 w3 w4\nf1#2: 1/2 1/2 0 0\n", m);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 11);
  }
  CHECK_THROWS_AS(parse_fractional("workers: w1 w2\n", m), ParseError);
  CHECK_THROWS_AS(parse_fractional("", m), ParseError);
}

TEST_CASE("market parse errors carry positions") {
  try {
    parse_market("{\n  \"workers\": [\"w1\"],\n  \"firms\": {\"f1\": [[\"w9\"]]}\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
    CHECK(std::string(e.what()).find("w9") != std::string::npos);
  }
  try {
    parse_market("{\n  \"workers\": [\"w1\",\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_market("[]"), ParseError);
  CHECK_THROWS_AS(parse_market(R"({"workers": ["w1", "w1"], "firms": {}})"), ParseError);
  CHECK_THROWS_AS(parse_market(R"({"workers": ["w1"], "firms": {"f": [["w1"], ["w1"]]}})"), ParseError);
  CHECK_THROWS_AS(parse_market(R"({"workers": ["w1"], "firms": {"f": [[]]}})"), ParseError);
  CHECK_THROWS_AS(parse_market(R"({"workers": ["w1"], "firms": {}, "worker_prefs": {"w1": ["g"]}})"), ParseError);
}

TEST_CASE("tree files round-trip in both formats") {
  for (const char* name : {"upgrades.tree", "tu_sets.tree", "triangle.tree", "root_only.tree"}) {
    const TechnologyTree t = load_tree(name);
    CHECK_MESSAGE(parse_tree_outline(format_tree_outline(t)) == t, name);
    CHECK_MESSAGE(format_tree_outline(t) == read_file(corpus_path(name)), name);
    CHECK_MESSAGE(parse_tree_json(format_tree_json(t)) == t, name);
    CHECK_MESSAGE(parse_tree(format_tree_json(t)) == t, name);
  }
}

TEST_CASE("tree parse errors") {
  try {
    parse_tree_outline("workers: w1 w2\nv0: {}\n  v1: {w1}\n    v2: {w1}\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_tree_outline("workers: w1\nv0: {}\n   v1: {w1}\n"), ParseError);
  CHECK_THROWS_AS(parse_tree_outline("workers: w1\nv0: {}\n  v1: {w7}\n"), ParseError);
  CHECK_THROWS_AS(parse_tree_outline("workers: w1\nv0: {}\n      v1: {w1}\n"), ParseError);
  CHECK_THROWS_AS(parse_tree_json(R"({"workers": ["w1"], "root": "v0", "vertices": [{"name": "v1"}]})"), ParseError);
}

}  // TEST_SUITE
