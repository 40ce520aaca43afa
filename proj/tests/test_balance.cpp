#include "doctest.h"

#include "compmatch/balance.hpp"
#include "compmatch/hypergraph.hpp"
#include "compmatch/oracle.hpp"
#include "compmatch/solver.hpp"
#include "compmatch/techtree.hpp"
#include "support.hpp"

using namespace testing;

namespace {

using Rows = std::vector<std::vector<int>>;

ZeroOneMatrix sets_matrix(const std::string& name) {
  const Market m = load_market(name);
  return matrix_of_sets(acceptable_set_family(m), m);
}

// Re-checks a cycle witness against the matrix, independent of the certifier.
bool cycle_witness_ok(const ZeroOneMatrix& m, const MatrixCertificate& c) {
  const std::size_t k = c.rows.size();
  if (k < 3 || c.cols.size() != k) return false;
  const auto a = brute::pick(m, c.rows, c.cols);
  if (!brute::two_per_line(a) || !brute::connected(a)) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (!a[i][i] || !a[i][(i + 1) % k]) return false;
  }
  return true;
}

ZeroOneMatrix permuted(const ZeroOneMatrix& m, std::mt19937_64& rng) {
  std::vector<std::size_t> r(m.rows());
  std::vector<std::size_t> c(m.cols());
  std::iota(r.begin(), r.end(), 0);
  std::iota(c.begin(), c.end(), 0);
  std::shuffle(r.begin(), r.end(), rng);
  std::shuffle(c.begin(), c.end(), rng);
  return m.submatrix(r, c);
}

}  // namespace

TEST_SUITE("balance") {

TEST_CASE("matrix of sets") {
  const ZeroOneMatrix m3 = sets_matrix("three_firm_cycle.market");
  CHECK(m3.to_rows() == Rows{{1, 0, 1}, {1, 1, 0}, {0, 1, 1}});
  CHECK(m3.row_labels() == std::vector<std::string>{"w1", "w2", "w3"});
  CHECK(m3.col_labels() == std::vector<std::string>{"{w1,w2}", "{w2,w3}", "{w1,w3}"});

  const Market m = load_market("three_firm_cycle.market");
  const ZeroOneMatrix empty = matrix_of_sets({}, m);
  CHECK(empty.rows() == 3);
  CHECK(empty.cols() == 0);
  CHECK_THROWS_AS(matrix_of_sets({WorkerSet::of({0, 2})}, {0, 1}, m), MarketError);

  const Market m8 = load_market("balanced_not_tu.market");
  const ZeroOneMatrix colored = matrix_of_sets(
      {ws(m8, {"w1", "w2", "w3", "w4"}), ws(m8, {"w1", "w2"}), ws(m8, {"w1", "w3"}), ws(m8, {"w1", "w4"})}, m8);
  CHECK(std::llabs(determinant(colored)) == 2);
  CHECK(determinant(colored) == brute::leibniz(colored.to_rows()));
}

TEST_CASE("determinants are exact") {
  CHECK(determinant({2, 0, 0, 0, 3, 0, 0, 0, 5}, 3) == 30);
  CHECK(determinant({0, 1, 1, 0}, 2) == -1);
  CHECK(determinant({}, 0) == 1);
  std::vector<long long> big(9, 0);
  for (std::size_t i = 0; i < 3; ++i) big[i * 3 + i] = 1000003;
  CHECK(determinant(big, 3) == 1000003LL * 1000003LL * 1000003LL);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const ZeroOneMatrix m = random_matrix(rng, 6, 6, 0.5);
    const std::size_t k = std::min(m.rows(), m.cols());
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    const ZeroOneMatrix sq = m.submatrix(idx, idx);
    CHECK(determinant(sq) == brute::leibniz(sq.to_rows()));
  }
}

TEST_CASE("balanced") {
  const ZeroOneMatrix m3 = sets_matrix("three_firm_cycle.market");
  const auto c = is_balanced(m3);
  CHECK(c.verdict == Verdict::Fail);
  CHECK(c.rows.size() == 3);
  CHECK(cycle_witness_ok(m3, c));

  std::vector<std::vector<int>> identity(5, std::vector<int>(5, 0));
  for (int i = 0; i < 5; ++i) identity[i][i] = 1;
  CHECK(is_balanced(ZeroOneMatrix::from_rows(identity)).passed());
  CHECK(is_balanced(sets_matrix("balanced_not_tu.market")).passed());
}

TEST_CASE("totally unimodular") {
  CHECK(is_totally_unimodular(sets_matrix("tu_sets.market")).passed());

  const auto triangle = ZeroOneMatrix::from_columns({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  const auto c = is_totally_unimodular(triangle);
  CHECK(c.verdict == Verdict::Fail);
  REQUIRE(c.determinant);
  CHECK(std::llabs(*c.determinant) == 2);

  const ZeroOneMatrix m8 = sets_matrix("balanced_not_tu.market");
  const auto c8 = is_totally_unimodular(m8);
  CHECK(c8.verdict == Verdict::Fail);
  REQUIRE(c8.determinant);
  CHECK(*c8.determinant == 2);
  CHECK(determinant(m8.submatrix(c8.rows, c8.cols)) == 2);
  CHECK(brute::leibniz(brute::pick(m8, c8.rows, c8.cols)) == 2);
}

TEST_CASE("totally balanced") {
  CHECK(is_totally_balanced(worker_set_matrix(load_tree("upgrades.tree"))).passed());
  const ZeroOneMatrix m3 = sets_matrix("three_firm_cycle.market");
  const auto c = is_totally_balanced(m3);
  CHECK(c.verdict == Verdict::Fail);
  CHECK(cycle_witness_ok(m3, c));
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) CHECK(is_totally_balanced(random_matrix(rng, 8, 2, 0.6)).passed());

  // An even cycle is balanced but not totally balanced.
  const auto square = ZeroOneMatrix::from_rows({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {1, 0, 0, 1}});
  CHECK(is_balanced(square).passed());
  CHECK(is_totally_balanced(square).verdict == Verdict::Fail);
}

TEST_CASE("cap makes large searches inconclusive") {
  const ZeroOneMatrix m3 = sets_matrix("three_firm_cycle.market");
  CHECK(is_balanced(m3, 2).verdict == Verdict::Inconclusive);
  CHECK(is_totally_unimodular(m3, 2).verdict == Verdict::Inconclusive);
  CHECK(is_totally_balanced(m3, 2).verdict == Verdict::Inconclusive);
  CHECK_FALSE(is_balanced(m3, 2).note.empty());

  // A long cycle survives reduction, so the default cap is exceeded.
  const std::size_t n = 13;
  std::vector<std::vector<int>> ring(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) ring[i][i] = ring[i][(i + 1) % n] = 1;
  CHECK(is_balanced(ZeroOneMatrix::from_rows(ring)).verdict == Verdict::Inconclusive);
  CHECK(is_balanced(ZeroOneMatrix::from_rows(ring), 13).verdict == Verdict::Fail);
}

TEST_CASE("reduction drops lines with at most one 1") {
  const auto m = ZeroOneMatrix::from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}});
  const auto red = reduce(m);
  CHECK(red.rows == std::vector<std::size_t>{0, 1});
  CHECK(red.cols == std::vector<std::size_t>{0, 1});
  CHECK(reduce(ZeroOneMatrix::from_rows({{1, 0}, {0, 1}})).rows.empty());
}

TEST_CASE("certificates agree with exhaustive submatrix checks") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 400; ++trial) {
    const ZeroOneMatrix m = random_matrix(rng, 6, 6, trial % 2 == 0 ? 0.4 : 0.6);
    const auto bal = is_balanced(m);
    const auto tu = is_totally_unimodular(m);
    const auto tb = is_totally_balanced(m);
    CHECK(bal.passed() == brute::balanced(m));
    CHECK(tu.passed() == brute::totally_unimodular(m));
    CHECK(tb.passed() == brute::totally_balanced(m));
    if (!bal.passed()) {
      CHECK(bal.rows.size() % 2 == 1);
      CHECK(cycle_witness_ok(m, bal));
    }
    if (!tb.passed()) CHECK(cycle_witness_ok(m, tb));
    if (!tu.passed()) {
      REQUIRE(tu.determinant);
      CHECK(*tu.determinant >= 2);
      CHECK(determinant(m.submatrix(tu.rows, tu.cols)) == *tu.determinant);
    }
    if (tu.passed()) CHECK(bal.passed());
    if (tb.passed()) CHECK(bal.passed());

    const ZeroOneMatrix p = permuted(m, rng);
    CHECK(is_balanced(p).verdict == bal.verdict);
    CHECK(is_totally_unimodular(p).verdict == tu.verdict);
    CHECK(is_totally_balanced(p).verdict == tb.verdict);
  }
}

TEST_CASE("acceptable-set hypergraph") {
  CHECK(acceptable_set_hypergraph(load_market("complementary_six.market")).edges.size() == 5);
  CHECK(acceptable_set_hypergraph(load_market("additive.market")).edges.size() == 4);
  const Market singles({"w1", "w2"}, {"f"}, {{0}, {0}}, {FirmPreference{{WorkerSet::of({0}), WorkerSet::of({1})}}});
  CHECK(acceptable_set_hypergraph(singles).edges.empty());
}

TEST_CASE("odd cycle condition") {
  const Market m6 = load_market("complementary_six.market");
  const Hypergraph h6 = acceptable_set_hypergraph(m6);
  CHECK(check_odd_cycle_condition(h6).passed());
  // The only odd cycle runs through w1, w2, w3 and {w1,w2,w3} holds all of them.
  for (const auto& c : enumerate_cycles(h6, 6)) {
    if (c.length() % 2 == 0) continue;
    CHECK(c.length() == 3);
    bool fat = false;
    for (auto e : c.edges) fat = fat || h6.edges[e].members.size() == 3;
    CHECK(fat);
  }

  const Hypergraph h3 = acceptable_set_hypergraph(load_market("three_firm_cycle.market"));
  const auto c3 = check_odd_cycle_condition(h3);
  CHECK(c3.verdict == Verdict::Fail);
  REQUIRE(c3.witness);
  CHECK(c3.witness->length() == 3);
  CHECK(is_valid_cycle(h3, *c3.witness));

  CHECK(check_odd_cycle_condition(acceptable_set_hypergraph(load_market("balanced_not_tu.market"))).passed());
}

TEST_CASE("firm-worker hypergraph") {
  const Market m17 = load_market("firm_worker_cycle.market");
  const Hypergraph h = firm_worker_hypergraph(m17);
  REQUIRE(h.edges.size() == 3);
  CHECK(h.format_vertices(h.edges[0].members) == "{f1,w1,w2}");
  CHECK(h.format_vertices(h.edges[1].members) == "{f2,w1}");
  CHECK(h.format_vertices(h.edges[2].members) == "{f2,w2}");
  const auto c = check_hypergraph_balanced(h);
  CHECK(c.verdict == Verdict::Fail);
  REQUIRE(c.witness);
  CHECK(c.witness->length() % 2 == 1);
  CHECK(is_valid_cycle(h, *c.witness));
  for (auto e : c.witness->edges) {
    std::size_t inside = 0;
    for (auto v : c.witness->vertices) inside += h.edges[e].members.contains(v) ? 1 : 0;
    CHECK(inside == 2);
  }

  const Hypergraph h3 = firm_worker_hypergraph(load_market("three_firm_cycle.market"));
  CHECK(h3.edges.size() == 3);
  for (const auto& e : h3.edges) CHECK(e.members.size() == 3);

  const Market idle({"w1"}, {"f", "g"}, {{0}}, {FirmPreference{{WorkerSet::of({0})}}, FirmPreference{}});
  CHECK(firm_worker_hypergraph(idle).edges.size() == 1);
  CHECK(check_hypergraph_balanced(Hypergraph{{"a", "b"}, {}}).passed());
}

TEST_CASE("hypergraph balance matches balance of its incidence matrix") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 300; ++trial) {
    const Market m = random_market(rng, {4, 3, 3});
    const Hypergraph fw = firm_worker_hypergraph(m);
    CHECK(check_hypergraph_balanced(fw).passed() == brute::balanced(incidence_matrix(fw)));
    const Hypergraph as = acceptable_set_hypergraph(m);
    CHECK(check_odd_cycle_condition(as).passed() == brute::balanced(incidence_matrix(as)));
  }
}

TEST_CASE("hierarchy and the odd cycle condition on the corpus") {
  for (const auto& name : kCorpusMarkets) {
    const Market m = load_market(name);
    const ZeroOneMatrix a = matrix_of_sets(acceptable_set_family(m), m);
    const bool bal = is_balanced(a).passed();
    if (is_totally_unimodular(a).passed()) CHECK(bal);
    if (is_totally_balanced(a).passed()) CHECK(bal);
    if (check_odd_cycle_condition(acceptable_set_hypergraph(m)).passed()) CHECK(bal);
  }
}

TEST_CASE("cycle enumeration") {
  const Hypergraph h3 = acceptable_set_hypergraph(load_market("three_firm_cycle.market"));
  const auto cycles = enumerate_cycles(h3, 3);
  // No two sets share two workers, so the triangle is the only cycle.
  std::size_t triangles = 0;
  for (const auto& c : cycles) {
    CHECK(is_valid_cycle(h3, c));
    triangles += c.length() == 3 ? 1 : 0;
  }
  CHECK(triangles == 1);
  CHECK(cycles.size() == 1);
  CHECK(format_cycle(h3, cycles.back()).find("w1") != std::string::npos);
}

}  // TEST_SUITE
