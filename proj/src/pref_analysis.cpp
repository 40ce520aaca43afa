#include "compmatch/pref_analysis.hpp"

#include <algorithm>
#include <numeric>

#include "compmatch/stability.hpp"

namespace compmatch {

std::vector<WorkerSet> acceptable_sets(const Market& m, std::size_t firm) {
  std::vector<WorkerSet> out;
  for (const WorkerSet& s : m.preference(firm).chain) {
    if (choose(m, firm, s) == s) out.push_back(s);
  }
  return out;
}

WorkerSet potential_employees(const Market& m, std::size_t firm) {
  WorkerSet all;
  for (const WorkerSet& s : acceptable_sets(m, firm)) all |= s;
  return all;
}

// Ch_f(S) = Ch_f(S ∩ W_f): a chosen set is always acceptable, so workers
// outside W_f are never chosen. All enumerations below run over W_f only.

std::optional<ComplementarityViolation> complementarity_violation(const Market& m, std::size_t firm) {
  const WorkerSet pool = potential_employees(m, firm);
  std::optional<ComplementarityViolation> found;
  // One-worker expansions suffice: monotonicity chains along S ⊂ S∪{x} ⊂ ...
  for_each_subset(pool, [&](WorkerSet s) {
    if (found) return;
    const WorkerSet chosen = choose(m, firm, s);
    (pool - s).for_each([&](std::size_t x) {
      if (found) return;
      const WorkerSet after = choose(m, firm, s.with(x));
      if (!chosen.is_subset_of(after)) found = ComplementarityViolation{s, x, (chosen - after).min()};
    });
  });
  return found;
}

bool is_complementary(const Market& m, std::size_t firm) { return !complementarity_violation(m, firm); }

std::optional<std::pair<WorkerSet, WorkerSet>> additivity_violation(const Market& m, std::size_t firm) {
  const auto sets = acceptable_sets(m, firm);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (!sets[i].intersects(sets[j]) && !is_acceptable_set(m, firm, sets[i] | sets[j])) {
        return std::make_pair(sets[i], sets[j]);
      }
    }
  }
  return std::nullopt;
}

bool is_additive(const Market& m, std::size_t firm) { return !additivity_violation(m, firm); }

std::set<std::vector<int>> demand_type(const Market& m, std::size_t firm) {
  const WorkerSet pool = potential_employees(m, firm);
  std::set<std::vector<int>> out;
  for_each_subset(pool, [&](WorkerSet larger) {
    const WorkerSet big = choose(m, firm, larger);
    for_each_subset(larger, [&](WorkerSet smaller) {
      if (smaller == larger) return;
      const WorkerSet small = choose(m, firm, smaller);
      if (small == big) return;
      std::vector<int> diff(m.num_workers(), 0);
      big.for_each([&](std::size_t w) { diff[w] += 1; });
      small.for_each([&](std::size_t w) { diff[w] -= 1; });
      out.insert(std::move(diff));
    });
  });
  return out;
}

bool ComplementarityGraph::adjacent(std::size_t a, std::size_t b) const {
  auto key = std::minmax(a, b);
  return std::binary_search(edges.begin(), edges.end(), std::pair<std::size_t, std::size_t>(key.first, key.second));
}

std::vector<WorkerSet> ComplementarityGraph::components() const {
  std::vector<std::size_t> parent(IndexSet::kCapacity);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : edges) parent[find(a)] = find(b);

  std::vector<WorkerSet> out;
  vertices.for_each([&](std::size_t v) {
    const std::size_t root = find(v);
    for (auto& comp : out) {
      if (find(comp.min()) == root) {
        comp.insert(v);
        return;
      }
    }
    out.push_back(WorkerSet::of({v}));
  });
  return out;
}

ComplementarityGraph complementarity_graph(const Market& m, std::size_t firm) {
  ComplementarityGraph g;
  g.firm = firm;
  g.vertices = potential_employees(m, firm);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  // (w,w') is an edge when adding w' to some S pulls w into the choice.
  for_each_subset(g.vertices, [&](WorkerSet s) {
    const WorkerSet before = choose(m, firm, s);
    (g.vertices - s).for_each([&](std::size_t added) {
      const WorkerSet gained = choose(m, firm, s.with(added)) - before;
      gained.for_each([&](std::size_t w) {
        if (w != added) edges.insert(std::minmax(w, added));
      });
    });
  });
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

std::vector<WorkerSet> primitive_acceptable_sets(const Market& m, std::size_t firm) {
  const auto components = complementarity_graph(m, firm).components();
  std::vector<WorkerSet> out;
  for (const WorkerSet& s : acceptable_sets(m, firm)) {
    for (const WorkerSet& comp : components) {
      if (s.is_subset_of(comp)) {
        out.push_back(s);
        break;
      }
    }
  }
  return out;
}

}  // namespace compmatch
