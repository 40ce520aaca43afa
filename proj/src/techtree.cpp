#include "compmatch/techtree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "compmatch/pref_analysis.hpp"

namespace compmatch {

TechnologyTree::TechnologyTree(std::vector<std::string> workers, std::string root_name)
    : workers_(std::move(workers)) {
  if (workers_.size() > IndexSet::kCapacity) throw TreeError("a tree supports at most 64 workers");
  for (std::size_t i = 0; i < workers_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (workers_[i] == workers_[j]) throw TreeError("duplicate worker " + workers_[i]);
    }
  }
  vertices_.push_back({std::move(root_name), WorkerSet{}, kNoParent, {}});
}

std::size_t TechnologyTree::add_vertex(std::string name, std::size_t parent, WorkerSet workers) {
  if (parent >= vertices_.size()) throw TreeError("unknown parent for vertex " + name);
  if (find_vertex(name)) throw TreeError("duplicate vertex " + name);
  if (!workers.is_subset_of(WorkerSet::first(workers_.size()))) throw TreeError("vertex " + name + " names unknown workers");
  if (!vertices_[parent].workers.is_proper_subset_of(workers)) {
    throw TreeError("vertex " + name + " must need strictly more workers than its parent " + vertices_[parent].name);
  }
  vertices_.push_back({std::move(name), workers, parent, {}});
  vertices_[parent].children.push_back(vertices_.size() - 1);
  return vertices_.size() - 1;
}

std::optional<std::size_t> TechnologyTree::find_vertex(std::string_view name) const {
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].name == name) return v;
  }
  return std::nullopt;
}

std::size_t TechnologyTree::vertex_index(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  throw TreeError("unknown vertex " + std::string(name));
}

std::optional<std::size_t> TechnologyTree::find_worker(std::string_view name) const {
  for (std::size_t w = 0; w < workers_.size(); ++w) {
    if (workers_[w] == name) return w;
  }
  return std::nullopt;
}

std::vector<std::size_t> TechnologyTree::edges() const {
  std::vector<std::size_t> out;
  std::vector<std::size_t> stack{root()};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (v != root()) out.push_back(v);
    const auto& ch = vertices_[v].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::string TechnologyTree::edge_name(std::size_t child) const {
  const TreeVertex& c = vertices_.at(child);
  if (c.parent == kNoParent) throw TreeError("the root has no incoming edge");
  return vertices_[c.parent].name + c.name;
}

bool TechnologyTree::precedes(std::size_t v, std::size_t v2) const {
  for (std::size_t u = vertices_.at(v2).parent; u != kNoParent; u = vertices_[u].parent) {
    if (u == v) return true;
  }
  return false;
}

TechnologyTree TechnologyTree::with_child_order(std::size_t v, std::vector<std::size_t> order) const {
  auto sorted = order;
  auto current = vertices_.at(v).children;
  std::sort(sorted.begin(), sorted.end());
  std::sort(current.begin(), current.end());
  if (sorted != current) throw TreeError("order does not permute the children of " + vertices_[v].name);
  TechnologyTree copy = *this;
  copy.vertices_[v].children = std::move(order);
  return copy;
}

std::string TechnologyTree::format_set(WorkerSet s) const {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t w) {
    if (!first) out += ',';
    first = false;
    out += workers_[w];
  });
  return out + "}";
}

bool operator==(const TechnologyTree& a, const TechnologyTree& b) {
  if (a.workers_ != b.workers_ || a.vertices_.size() != b.vertices_.size()) return false;
  for (std::size_t v = 0; v < a.vertices_.size(); ++v) {
    const auto& x = a.vertices_[v];
    const auto& y = b.vertices_[v];
    if (x.name != y.name || x.workers != y.workers || x.parent != y.parent || x.children != y.children) return false;
  }
  return true;
}

WorkerSet upgrade_workers(const TechnologyTree& t, std::size_t child) {
  if (child >= t.size()) throw TreeError("unknown edge");
  const TreeVertex& c = t.vertex(child);
  if (c.parent == TechnologyTree::kNoParent) throw TreeError("the root has no incoming edge");
  return c.workers - t.vertex(c.parent).workers;
}

std::vector<std::size_t> engagement(const TechnologyTree& t, std::size_t worker) {
  std::vector<std::size_t> out;
  for (std::size_t e : t.edges()) {
    if (upgrade_workers(t, e).contains(worker)) out.push_back(e);
  }
  return out;
}

namespace {

// The first violation for one worker, or a passing certificate.
NeighbourCertificate check_worker(const TechnologyTree& t, std::size_t w) {
  NeighbourCertificate cert;
  const auto eng = engagement(t, w);
  if (eng.empty()) return cert;
  const std::size_t source = t.vertex(eng.front()).parent;
  for (auto e : eng) {
    if (t.vertex(e).parent != source) {
      cert.verdict = Verdict::Fail;
      cert.worker = w;
      cert.sources = {source, t.vertex(e).parent};
      return cert;
    }
  }
  const auto& ch = t.vertex(source).children;
  std::vector<bool> engaged(ch.size(), false);
  for (std::size_t i = 0; i < ch.size(); ++i) {
    engaged[i] = std::find(eng.begin(), eng.end(), ch[i]) != eng.end();
  }
  const std::size_t lo = static_cast<std::size_t>(std::find(engaged.begin(), engaged.end(), true) - engaged.begin());
  const std::size_t hi = ch.size() - 1 -
                         static_cast<std::size_t>(std::find(engaged.rbegin(), engaged.rend(), true) - engaged.rbegin());
  for (std::size_t i = lo; i <= hi; ++i) {
    if (!engaged[i]) {
      cert.verdict = Verdict::Fail;
      cert.worker = w;
      cert.separating = {ch[lo], ch[i], ch[hi]};
      return cert;
    }
  }
  return cert;
}

}  // namespace

NeighbourCertificate check_neighbour_condition(const TechnologyTree& t) {
  for (std::size_t w = 0; w < t.workers().size(); ++w) {
    auto cert = check_worker(t, w);
    if (!cert.passed()) return cert;
  }
  return {};
}

std::string describe(const NeighbourCertificate& c, const TechnologyTree& t) {
  if (c.passed()) return "PASS: every worker engages in a neighbour of upgrades";
  std::ostringstream os;
  os << "FAIL: " << t.workers()[*c.worker];
  if (!c.sources.empty()) {
    os << " engages in upgrades from both " << t.vertex(c.sources[0]).name << " and " << t.vertex(c.sources[1]).name;
  } else {
    os << " engages in " << t.edge_name(c.separating[0]) << " and " << t.edge_name(c.separating[2])
       << " but not in " << t.edge_name(c.separating[1]) << " between them";
  }
  return os.str();
}

PermutationResult search_child_orders(const TechnologyTree& t) {
  PermutationResult result;
  for (std::size_t w = 0; w < t.workers().size(); ++w) {
    auto cert = check_worker(t, w);
    if (!cert.sources.empty()) {
      result.verdict = Verdict::Fail;
      result.note = describe(cert, t) + "; reordering children cannot help";
      return result;
    }
  }
  TechnologyTree current = t;
  for (std::size_t v = 0; v < t.size(); ++v) {
    auto order = t.vertex(v).children;
    if (order.size() < 3) continue;
    auto contiguous = [&](const TechnologyTree& tree) {
      for (std::size_t w = 0; w < tree.workers().size(); ++w) {
        auto cert = check_worker(tree, w);
        if (!cert.separating.empty() && tree.vertex(cert.separating[0]).parent == v) return false;
      }
      return true;
    };
    if (contiguous(current)) continue;
    if (order.size() > kMaxPermutedChildren) {
      result.verdict = Verdict::Inconclusive;
      result.note = "vertex " + t.vertex(v).name + " has " + std::to_string(order.size()) +
                    " children, above the permutation cap of " + std::to_string(kMaxPermutedChildren);
      return result;
    }
    std::sort(order.begin(), order.end());
    bool found = false;
    do {
      TechnologyTree candidate = current.with_child_order(v, order);
      if (contiguous(candidate)) {
        current = std::move(candidate);
        found = true;
        break;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    if (!found) {
      result.verdict = Verdict::Fail;
      result.note = "no ordering of the children of " + t.vertex(v).name + " passes";
      return result;
    }
  }
  result.verdict = Verdict::Pass;
  result.note = "ordering found";
  result.tree = std::move(current);
  return result;
}

ZeroOneMatrix worker_set_matrix(const TechnologyTree& t) {
  std::vector<WorkerSet> sets;
  std::vector<std::string> labels;
  for (const auto& v : t.vertices()) {
    if (v.workers.empty() || std::find(sets.begin(), sets.end(), v.workers) != sets.end()) continue;
    sets.push_back(v.workers);
    labels.push_back(v.name);
  }
  ZeroOneMatrix m(t.workers(), labels);
  for (std::size_t c = 0; c < sets.size(); ++c) {
    sets[c].for_each([&](std::size_t w) { m.set(w, c, true); });
  }
  return m;
}

Market profile_from_tree(const std::vector<FirmTreeSpec>& specs, const TechnologyTree& t) {
  std::vector<std::string> firms;
  std::vector<FirmPreference> prefs;
  for (const auto& spec : specs) {
    firms.push_back(spec.firm);
    FirmPreference p;
    for (const auto& entry : spec.chain) {
      WorkerSet s;
      for (const auto& name : entry) s |= t.vertex(t.vertex_index(name)).workers;
      p.chain.push_back(s);
    }
    prefs.push_back(std::move(p));
  }
  std::vector<std::vector<std::size_t>> lists(t.workers().size());
  return Market(t.workers(), std::move(firms), std::move(lists), std::move(prefs));
}

namespace {

std::optional<WorkerSet> translate(WorkerSet s, const Market& m, const TechnologyTree& t) {
  WorkerSet out;
  bool ok = true;
  s.for_each([&](std::size_t w) {
    if (auto tw = t.find_worker(m.workers()[w])) {
      out.insert(*tw);
    } else {
      ok = false;
    }
  });
  if (!ok) return std::nullopt;
  return out;
}

}  // namespace

bool sets_from_tree(std::size_t firm, const Market& m, const TechnologyTree& t, TreeSetMode mode) {
  m.check_firm(firm, false);
  std::vector<WorkerSet> sets =
      mode == TreeSetMode::All ? acceptable_sets(m, firm) : primitive_acceptable_sets(m, firm);
  for (WorkerSet s : sets) {
    if (mode == TreeSetMode::NonSingleton && s.size() < 2) continue;
    const auto ts = translate(s, m, t);
    if (!ts) return false;
    const bool present = std::any_of(t.vertices().begin(), t.vertices().end(),
                                     [&](const TreeVertex& v) { return v.workers == *ts; });
    if (!present) return false;
  }
  return true;
}

bool market_sets_from_tree(const Market& m, const TechnologyTree& t, TreeSetMode mode) {
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    if (!sets_from_tree(f, m, t, mode)) return false;
  }
  return true;
}

InducingTreeSurvey survey_inducing_trees(const std::vector<WorkerSet>& family, const std::vector<std::string>& workers) {
  if (family.size() > 3) throw TreeError("inducing-tree survey supports at most 3 sets");
  WorkerSet ground;
  for (auto s : family) ground |= s;
  if (ground.size() > 3) throw TreeError("inducing-tree survey supports at most 3 workers in the family");

  std::vector<WorkerSet> optional_sets;
  for_each_subset(ground, [&](WorkerSet s) {
    if (!s.empty() && std::find(family.begin(), family.end(), s) == family.end()) optional_sets.push_back(s);
  });

  InducingTreeSurvey survey;
  const std::uint64_t combos = std::uint64_t{1} << optional_sets.size();
  for (std::uint64_t pick = 0; pick < combos; ++pick) {
    std::vector<WorkerSet> sets = family;
    for (std::size_t i = 0; i < optional_sets.size(); ++i) {
      if ((pick >> i) & 1U) sets.push_back(optional_sets[i]);
    }
    std::stable_sort(sets.begin(), sets.end(), [](WorkerSet a, WorkerSet b) { return a.size() < b.size(); });

    // Candidate parents (0 is the root) for each vertex.
    std::vector<std::vector<std::size_t>> candidates(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      candidates[i].push_back(0);
      for (std::size_t j = 0; j < i; ++j) {
        if (sets[j].is_proper_subset_of(sets[i])) candidates[i].push_back(j + 1);
      }
    }
    std::vector<std::size_t> choice(sets.size(), 0);
    while (true) {
      TechnologyTree tree(workers);
      for (std::size_t i = 0; i < sets.size(); ++i) {
        tree.add_vertex("v" + std::to_string(i + 1), candidates[i][choice[i]], sets[i]);
      }
      ++survey.trees;
      auto perm = search_child_orders(tree);
      if (perm.verdict == Verdict::Pass) {
        ++survey.satisfying;
        if (!survey.example) survey.example = perm.tree;
      }
      std::size_t i = 0;
      while (i < sets.size() && ++choice[i] == candidates[i].size()) choice[i++] = 0;
      if (i == sets.size()) break;
    }
  }
  return survey;
}

namespace {

std::vector<std::size_t> random_shape(std::mt19937_64& rng, std::size_t max_vertices) {
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, max_vertices));
  const std::size_t n = count(rng);
  std::vector<std::size_t> parent(n, TechnologyTree::kNoParent);
  for (std::size_t i = 1; i < n; ++i) parent[i] = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
  return parent;
}

std::vector<std::string> worker_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

}  // namespace

TechnologyTree random_neighbour_tree(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_workers) {
  while (true) {
    const auto parent = random_shape(rng, max_vertices);
    const std::size_t n = parent.size();
    std::vector<std::vector<std::size_t>> children(n);
    for (std::size_t i = 1; i < n; ++i) children[parent[i]].push_back(i);

    // Each worker: a source vertex and a contiguous run of its children.
    struct Run {
      std::size_t source, first, last;
    };
    std::vector<Run> runs;
    std::bernoulli_distribution cut(0.35);
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t start = 0;
      for (std::size_t i = 0; i < children[v].size(); ++i) {
        if (i + 1 == children[v].size() || cut(rng)) {
          runs.push_back({v, start, i});
          start = i + 1;
        }
      }
    }
    if (runs.size() > max_workers) continue;
    std::vector<std::size_t> with_children;
    for (std::size_t v = 0; v < n; ++v) {
      if (!children[v].empty()) with_children.push_back(v);
    }
    if (!with_children.empty()) {
      const std::size_t extra =
          std::uniform_int_distribution<std::size_t>(0, max_workers - runs.size())(rng);
      for (std::size_t k = 0; k < extra; ++k) {
        const std::size_t v = with_children[std::uniform_int_distribution<std::size_t>(0, with_children.size() - 1)(rng)];
        std::uniform_int_distribution<std::size_t> pos(0, children[v].size() - 1);
        std::size_t a = pos(rng);
        std::size_t b = pos(rng);
        if (a > b) std::swap(a, b);
        runs.push_back({v, a, b});
      }
    }
    std::shuffle(runs.begin(), runs.end(), rng);

    std::vector<WorkerSet> sets(n);
    for (std::size_t w = 0; w < runs.size(); ++w) {
      const Run& r = runs[w];
      for (std::size_t i = r.first; i <= r.last; ++i) {
        std::vector<std::size_t> stack{children[r.source][i]};
        while (!stack.empty()) {
          const std::size_t u = stack.back();
          stack.pop_back();
          sets[u].insert(w);
          for (auto c : children[u]) stack.push_back(c);
        }
      }
    }
    TechnologyTree t(worker_names(runs.size()));
    for (std::size_t i = 1; i < n; ++i) t.add_vertex("v" + std::to_string(i), parent[i], sets[i]);
    return t;
  }
}

TechnologyTree random_tree(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_workers) {
  const std::size_t nw = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, max_workers))(rng);
  const WorkerSet all = WorkerSet::first(nw);
  TechnologyTree t(worker_names(nw));
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, max_vertices))(rng);
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::size_t> open;
    for (std::size_t v = 0; v < t.size(); ++v) {
      if (t.vertex(v).workers != all) open.push_back(v);
    }
    const std::size_t p = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
    const auto rest = (all - t.vertex(p).workers).elements();
    WorkerSet add;
    while (add.empty()) {
      for (auto w : rest) {
        if (std::bernoulli_distribution(0.4)(rng)) add.insert(w);
      }
    }
    t.add_vertex("v" + std::to_string(i), p, t.vertex(p).workers | add);
  }
  return t;
}

}  // namespace compmatch
