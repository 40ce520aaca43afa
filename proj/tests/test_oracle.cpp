#include "doctest.h"

#include "compmatch/oracle.hpp"
#include "compmatch/stability.hpp"
#include "support.hpp"

using namespace testing;

TEST_SUITE("oracle") {

TEST_CASE("stable matchings of the worked markets") {
  CHECK(all_stable_matchings(load_market("three_firm_cycle.market")).empty());
  CHECK(all_stable_matchings(load_market("firm_worker_cycle.market")).empty());

  const Market m9 = load_market("two_firm.market");
  const auto all = all_stable_matchings(m9);
  CHECK(std::find(all.begin(), all.end(), matching(m9, {{"f1", ws(m9, {"w1", "w2", "w3"})}})) != all.end());
  CHECK(std::is_sorted(all.begin(), all.end()));

  const Market idle({"w1", "w2"}, {"f"}, {{}, {}}, {FirmPreference{{WorkerSet::of({0, 1})}}});
  CHECK(all_stable_matchings(idle) == std::vector<Matching>{Matching(2)});
}

TEST_CASE("budget guard") {
  std::vector<std::string> workers;
  for (int i = 0; i < 11; ++i) workers.push_back("w" + std::to_string(i));
  const Market big(workers, {"f"}, std::vector<std::vector<std::size_t>>(11), {FirmPreference{}});
  CHECK_THROWS_AS(all_stable_matchings(big), BudgetExceeded);
  CHECK(assignment_space(load_market("three_firm_cycle.market")) == doctest::Approx(64));
}

TEST_CASE("oracle agrees with plain enumeration") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    const Market m = random_market(rng, {4, 3, 3});
    CHECK(all_stable_matchings(m) == brute::stable_matchings(m));
  }
}

TEST_CASE("preference lists") {
  using L = std::vector<std::vector<std::size_t>>;
  CHECK(preference_lists({0, 1}, true) == L{{0, 1}, {1, 0}, {0}, {1}, {}});
  CHECK(preference_lists({0, 1}, false) == L{{0, 1}, {1, 0}});
  CHECK(preference_lists({}, true) == L{{}});
  CHECK(relevant_firms(load_market("two_firm.market"), 0) == std::vector<std::size_t>{0});
  CHECK(profile_space(load_market("three_firm_cycle.market"), true) == doctest::Approx(125));
  CHECK(profile_space(load_market("three_firm_cycle.market"), false) == doctest::Approx(8));

  std::size_t seen = 0;
  std::vector<std::size_t> first_worker;
  for_each_worker_profile(load_market("three_firm_cycle.market"), false, [&](const Market& m) {
    ++seen;
    first_worker.push_back(m.preference_list(0).front());
    return true;
  });
  CHECK(seen == 8);
  CHECK(first_worker == std::vector<std::size_t>{0, 0, 0, 0, 2, 2, 2, 2});
}

TEST_CASE("existence for every worker profile") {
  auto r = exists_for_all_worker_prefs(load_market("complementary_six.market"));
  CHECK(r.verdict == Verdict::Pass);
  CHECK_FALSE(r.sampled);
  CHECK(r.checked == static_cast<std::size_t>(r.space));

  r = exists_for_all_worker_prefs(load_market("separable.market"));
  CHECK(r.verdict == Verdict::Pass);

  r = exists_for_all_worker_prefs(load_market("three_firm_cycle.market"));
  CHECK(r.verdict == Verdict::Fail);
  REQUIRE(r.counterexample);
  CHECK(brute::stable_matchings(*r.counterexample).empty());
  CHECK(r.counterexample->firm_prefs() == load_market("three_firm_cycle.market").firm_prefs());
}

TEST_CASE("sampling only on request") {
  SweepOptions opt;
  opt.max_profiles = 10;
  CHECK_THROWS_AS(exists_for_all_worker_prefs(load_market("complementary_six.market"), opt), BudgetExceeded);
  opt.allow_sampling = true;
  opt.samples = 50;
  const auto r = exists_for_all_worker_prefs(load_market("complementary_six.market"), opt);
  CHECK(r.sampled);
  CHECK(r.checked == 50);
  CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("cyclic markets") {
  const Market c3 = cyclic_market(3);
  CHECK(c3 == load_market("three_firm_cycle.market"));
  CHECK_FALSE(all_stable_matchings(cyclic_market(4)).empty());
  CHECK(all_stable_matchings(cyclic_market(5)).empty());
  CHECK_THROWS_AS(cyclic_market(2), MarketError);
}

TEST_CASE("random generators stay within their specs") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 100; ++trial) {
    const Market m = random_market(rng);
    CHECK(m.num_workers() <= 5);
    CHECK(m.num_firms() <= 4);
    for (const auto& p : m.firm_prefs()) CHECK(p.chain.size() <= 3);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const Market p = random_balanced_complementary_profile(rng);
    CHECK(profile_space(p, true) <= 4096);
    for (std::size_t f = 0; f < p.num_firms(); ++f) CHECK(brute::complementary(p, f));
    CHECK(brute::balanced(matrix_of_sets(acceptable_set_family(p), p)));
  }
}

}  // TEST_SUITE
