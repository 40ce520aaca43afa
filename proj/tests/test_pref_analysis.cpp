#include "doctest.h"

#include "compmatch/oracle.hpp"
#include "compmatch/pref_analysis.hpp"
#include "compmatch/stability.hpp"
#include "support.hpp"

using namespace testing;

namespace {

using Sets = std::vector<WorkerSet>;

bool all_firms(const Market& m, bool (*pred)(const Market&, std::size_t)) {
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    if (!pred(m, f)) return false;
  }
  return true;
}

Market single_firm(std::size_t workers, Sets chain) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < workers; ++i) names.push_back("w" + std::to_string(i + 1));
  return Market(names, {"f"}, std::vector<std::vector<std::size_t>>(workers), {FirmPreference{std::move(chain)}});
}

}  // namespace

TEST_SUITE("pref-analysis") {

TEST_CASE("acceptable sets in chain order") {
  const Market m9 = load_market("two_firm.market");
  CHECK(acceptable_sets(m9, 0) == Sets{ws(m9, {"w1", "w2", "w3"}), ws(m9, {"w1"}), ws(m9, {"w2", "w3"})});
  CHECK(acceptable_sets(single_firm(2, {WorkerSet::of({0}), WorkerSet::of({0, 1})}), 0) == Sets{WorkerSet::of({0})});
  CHECK(acceptable_sets(single_firm(2, {}), 0).empty());
  CHECK_THROWS_AS(acceptable_sets(m9, 5), MarketError);
}

TEST_CASE("acceptable sets agree with subset enumeration") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Market m = random_market(rng);
    for (std::size_t f = 0; f < m.num_firms(); ++f) {
      Sets expected;
      for (const auto& s : m.firm_prefs()[f].chain) {
        if (brute::choose(m, f, s) == s) expected.push_back(s);
      }
      CHECK(acceptable_sets(m, f) == expected);
    }
  }
}

TEST_CASE("complementarity") {
  const Market m6 = load_market("complementary_six.market");
  CHECK(is_complementary(m6, m6.firm_index("f2")));
  const Market m14 = load_market("additive.market");
  CHECK_FALSE(is_complementary(m14, m14.firm_index("f1")));
  const auto violation = complementarity_violation(m14, m14.firm_index("f1"));
  REQUIRE(violation);
  CHECK(choose(m14, 0, violation->available).contains(violation->dropped));
  CHECK_FALSE(choose(m14, 0, violation->available.with(violation->added)).contains(violation->dropped));
  CHECK(is_complementary(single_firm(3, {WorkerSet::of({0, 2})}), 0));
}

TEST_CASE("single-step complementarity check matches all S ⊂ S' pairs") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const Market m = random_market(rng);
    for (std::size_t f = 0; f < m.num_firms(); ++f) CHECK(is_complementary(m, f) == brute::complementary(m, f));
  }
}

TEST_CASE("additivity") {
  const Market m14 = load_market("additive.market");
  CHECK(is_additive(m14, m14.firm_index("f2")));
  CHECK(is_additive(m14, m14.firm_index("f1")));
  const Market split = single_firm(2, {WorkerSet::of({0}), WorkerSet::of({1})});
  CHECK_FALSE(is_additive(split, 0));
  const auto v = additivity_violation(split, 0);
  REQUIRE(v);
  CHECK((v->first | v->second) == WorkerSet::of({0, 1}));
}

TEST_CASE("complementary implies additive") {
  for (const auto& name : kCorpusMarkets) {
    const Market m = load_market(name);
    for (std::size_t f = 0; f < m.num_firms(); ++f) {
      if (is_complementary(m, f)) CHECK(is_additive(m, f));
    }
  }
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const Market m = random_market(rng);
    for (std::size_t f = 0; f < m.num_firms(); ++f) {
      if (is_complementary(m, f)) CHECK(is_additive(m, f));
    }
  }
}

TEST_CASE("demand type") {
  const auto dt = demand_type(single_firm(2, {WorkerSet::of({0, 1}), WorkerSet::of({0})}), 0);
  CHECK(dt.count({0, 1}) == 1);
  const Market m7 = load_market("tu_sets.market");
  CHECK(demand_type(m7, m7.firm_index("f1")).count({1, 1, 0}) == 1);
  CHECK(demand_type(single_firm(2, {}), 0).empty());
  for (const auto& v : dt) CHECK(std::any_of(v.begin(), v.end(), [](int x) { return x != 0; }));
}

TEST_CASE("complementarity graph") {
  const Market m12 = load_market("primitive_sets.market");
  auto g = complementarity_graph(m12, m12.firm_index("f1"));
  using Edges = std::vector<std::pair<std::size_t, std::size_t>>;
  CHECK(g.edges == Edges{{0, 1}});
  CHECK(g.components() == Sets{ws(m12, {"w1", "w2"}), ws(m12, {"w3"})});

  g = complementarity_graph(m12, m12.firm_index("f2"));
  CHECK(g.edges == Edges{{0, 2}, {1, 2}});
  CHECK(g.adjacent(2, 0));
  CHECK_FALSE(g.adjacent(0, 1));

  const Market m11 = load_market("separable.market");
  g = complementarity_graph(m11, m11.firm_index("f1"));
  CHECK(g.edges.empty());
  CHECK(g.components().size() == 2);
}

TEST_CASE("primitive acceptable sets") {
  const Market m16 = load_market("tree_firms.market");
  CHECK(primitive_acceptable_sets(m16, m16.firm_index("f1")) == Sets{ws(m16, {"w1", "w2"}), ws(m16, {"w3", "w4"})});
  const Market m12 = load_market("primitive_sets.market");
  const auto f2 = m12.firm_index("f2");
  CHECK(primitive_acceptable_sets(m12, f2) == acceptable_sets(m12, f2));
  const auto p = primitive_acceptable_sets(m12, f2);
  CHECK(std::find(p.begin(), p.end(), ws(m12, {"w1", "w2"})) != p.end());
  CHECK(primitive_acceptable_sets(m12, m12.firm_index("f1")) == Sets{ws(m12, {"w1", "w2"}), ws(m12, {"w3"})});
  CHECK(primitive_acceptable_sets(single_firm(1, {WorkerSet::of({0})}), 0) == Sets{WorkerSet::of({0})});
}

TEST_CASE("decomposition by sets reproduces the split market") {
  const Market m9 = load_market("two_firm.market");
  const auto d = decompose_by_sets(m9);
  CHECK(d.market == load_market("two_firm_split.market"));
  CHECK(d.siblings(0) == std::vector<std::size_t>{0, 1, 2});
  CHECK(d.origin[3].firm == 1);

  const Market m3 = load_market("three_firm_cycle.market");
  const auto d3 = decompose_by_sets(m3);
  CHECK(d3.market.firms() == std::vector<std::string>{"f1#1", "f2#1", "f3#1"});
  for (std::size_t w = 0; w < 3; ++w) CHECK(d3.market.preference_list(w).size() == 2);
  for (std::size_t f = 0; f < 3; ++f) CHECK(d3.market.firm_prefs()[f] == m3.firm_prefs()[f]);

  const Market empty({"w1"}, {"f"}, {{}}, {FirmPreference{}});
  CHECK_THROWS_AS(decompose_by_sets(empty), MarketError);
}

TEST_CASE("recover and reassemble invert the split") {
  const auto d = recover_decomposition(load_market("two_firm_split.market"));
  CHECK(d.original_firms == std::vector<std::string>{"f1", "f2"});
  CHECK(reassemble_market(d) == load_market("two_firm.market"));
}

TEST_CASE("decomposition by components") {
  const Market m11 = load_market("separable.market");
  auto d = decompose_by_components(m11);
  const auto f1 = d.siblings(0);
  REQUIRE(f1.size() == 2);
  CHECK(d.market.firm_prefs()[f1[0]].chain == Sets{ws(m11, {"w1"})});
  CHECK(d.market.firm_prefs()[f1[1]].chain == Sets{ws(m11, {"w2"})});
  CHECK(d.market.firms()[f1[0]] == "f1#1");

  const Market m16 = load_market("tree_firms.market");
  d = decompose_by_components(m16);
  const auto s = d.siblings(0);
  REQUIRE(s.size() == 2);
  CHECK(d.market.firm_prefs()[s[0]].chain == Sets{ws(m16, {"w1", "w2"})});
  CHECK(d.market.firm_prefs()[s[1]].chain == Sets{ws(m16, {"w3", "w4"})});
  CHECK(d.market.firm_prefs()[d.siblings(1)[0]] == m16.firm_prefs()[1]);

  CHECK_THROWS_AS(decompose_by_components(load_market("additive.market")), MarketError);
}

TEST_CASE("component siblings choose the restriction of the original choice") {
  std::mt19937_64 rng(24);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Market m = random_market(rng);
    if (!all_firms(m, is_complementary)) continue;
    ++checked;
    const auto d = decompose_by_components(m);
    for (std::size_t g = 0; g < d.market.num_firms(); ++g) {
      const std::size_t f = d.origin[g].firm;
      const WorkerSet part = potential_employees(d.market, g);
      for_each_subset(m.all_workers(), [&](WorkerSet s) {
        CHECK(choose(d.market, g, s) == (choose(m, f, s) & part));
      });
      const auto prim = primitive_acceptable_sets(m, f);
      for (const auto& a : acceptable_sets(d.market, g)) {
        CHECK(std::find(prim.begin(), prim.end(), a) != prim.end());
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("lifting") {
  const Market m9 = load_market("two_firm.market");
  const Market m10 = load_market("two_firm_split.market");
  const auto d = decompose_by_sets(m9);
  const Matching lifted = lift_matching(matching(m10, {{"f1#1", ws(m10, {"w1", "w2", "w3"})}}), d);
  CHECK(lifted == matching(m9, {{"f1", ws(m9, {"w1", "w2", "w3"})}}));
  CHECK(lift_matching(Matching(4), d) == Matching(4));
  const Matching both = matching(m10, {{"f1#2", ws(m10, {"w1"})}, {"f1#3", ws(m10, {"w2", "w3"})}});
  CHECK(lift_matching(both, d).members(0) == ws(m9, {"w1", "w2", "w3"}));
  CHECK_THROWS_AS(lift_matching(Matching(3), d), MarketError);

  const Market m6 = load_market("complementary_six.market");
  const auto d6 = decompose_by_sets(m6);
  const auto all = all_stable_matchings(d6.market);
  CHECK_FALSE(all.empty());
  for (const auto& mu : all) CHECK(is_stable(lift_matching(mu, d6), m6));
}

TEST_CASE("split siblings never share a stable matching and lifts stay stable") {
  auto check_market = [](const Market& m) {
    if (!all_firms(m, is_additive)) return;
    bool nonempty_chains = true;
    for (std::size_t f = 0; f < m.num_firms(); ++f) nonempty_chains = nonempty_chains && !acceptable_sets(m, f).empty();
    if (!nonempty_chains) return;
    const auto d = decompose_by_sets(m);
    if (d.market.num_firms() > kOracleMaxFirms) return;
    for (const auto& mu : all_stable_matchings(d.market)) {
      for (std::size_t f = 0; f < m.num_firms(); ++f) {
        int active = 0;
        for (auto g : d.siblings(f)) active += mu.members(g).empty() ? 0 : 1;
        CHECK(active <= 1);
      }
      CHECK(is_stable(lift_matching(mu, d), m));
    }
    if (all_firms(m, is_complementary)) {
      const auto dc = decompose_by_components(m);
      for (const auto& mu : all_stable_matchings(dc.market)) CHECK(is_stable(lift_matching(mu, dc), m));
    }
  };
  for (const auto& name : kCorpusMarkets) {
    if (name != "two_firm_split.market") check_market(load_market(name));
  }
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 150; ++trial) check_market(random_market(rng));
}

}  // TEST_SUITE
