#include "compmatch/hypergraph.hpp"

#include <algorithm>

#include "compmatch/pref_analysis.hpp"

namespace compmatch {

bool Hypergraph::add_edge(std::string label, IndexSet members) {
  for (const auto& e : edges) {
    if (e.members == members) return false;
  }
  edges.push_back({std::move(label), members});
  return true;
}

std::string Hypergraph::format_vertices(IndexSet s) const {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t v) {
    if (!first) out += ',';
    first = false;
    out += vertices.at(v);
  });
  return out + "}";
}

Hypergraph acceptable_set_hypergraph(const Market& m) {
  Hypergraph h;
  h.vertices = m.workers();
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    for (const WorkerSet& s : acceptable_sets(m, f)) {
      if (s.size() >= 2) h.add_edge(m.format_set(s), s);
    }
  }
  return h;
}

Hypergraph firm_worker_hypergraph(const Market& m) {
  const std::size_t nf = m.num_firms();
  if (nf + m.num_workers() > IndexSet::kCapacity) throw MarketError("firm-worker hypergraph limited to 64 agents");
  Hypergraph h;
  h.vertices = m.firms();
  h.vertices.insert(h.vertices.end(), m.workers().begin(), m.workers().end());
  for (std::size_t f = 0; f < nf; ++f) {
    for (const WorkerSet& s : acceptable_sets(m, f)) {
      IndexSet members = IndexSet::of({f});
      s.for_each([&](std::size_t w) { members.insert(nf + w); });
      h.add_edge(m.firms()[f] + ":" + m.format_set(s), members);
    }
  }
  return h;
}

namespace {

// Depth-first search over the vertex/edge incidence graph for cycles of an
// exact length whose first vertex is the smallest. With `tight`, only cycles
// in which every edge meets exactly two cycle vertices are explored, which
// prunes as soon as an edge picks up a third.
class CycleSearch {
 public:
  CycleSearch(const Hypergraph& h, std::size_t length, bool tight) : h_(h), length_(length), tight_(tight) {}

  template <class Visit>
  bool run(Visit&& visit) {
    for (std::size_t s = 0; s < h_.vertices.size(); ++s) {
      vertices_ = {s};
      on_cycle_ = IndexSet::of({s});
      edges_.clear();
      if (extend(visit)) return true;
    }
    return false;
  }

 private:
  bool used(std::size_t e) const { return std::find(edges_.begin(), edges_.end(), e) != edges_.end(); }

  template <class Visit>
  bool extend(Visit& visit) {
    const std::size_t start = vertices_.front();
    const std::size_t current = vertices_.back();
    if (vertices_.size() == length_) {
      for (std::size_t e = 0; e < h_.edges.size(); ++e) {
        const IndexSet members = h_.edges[e].members;
        if (used(e) || !members.contains(current) || !members.contains(start)) continue;
        if (tight_ && (members & on_cycle_) != IndexSet::of({start, current})) continue;
        // One orientation per cycle.
        if (length_ >= 3 && vertices_[1] > vertices_.back()) continue;
        if (length_ == 2 && edges_.front() > e) continue;
        edges_.push_back(e);
        const bool stop = visit(HyperCycle{vertices_, edges_});
        edges_.pop_back();
        if (stop) return true;
      }
      return false;
    }
    for (std::size_t e = 0; e < h_.edges.size(); ++e) {
      const IndexSet members = h_.edges[e].members;
      if (used(e) || !members.contains(current)) continue;
      if (tight_ && (members & on_cycle_) != IndexSet::of({current})) continue;
      for (std::size_t v : members.elements()) {
        if (v <= start || on_cycle_.contains(v)) continue;
        if (tight_) {
          bool clean = true;
          for (auto used_edge : edges_) clean = clean && !h_.edges[used_edge].members.contains(v);
          if (!clean) continue;
        }
        vertices_.push_back(v);
        on_cycle_.insert(v);
        edges_.push_back(e);
        const bool stop = extend(visit);
        edges_.pop_back();
        on_cycle_.erase(v);
        vertices_.pop_back();
        if (stop) return true;
      }
    }
    return false;
  }

  const Hypergraph& h_;
  std::size_t length_;
  bool tight_;
  std::vector<std::size_t> vertices_;
  std::vector<std::size_t> edges_;
  IndexSet on_cycle_;
};

}  // namespace

HypergraphCertificate check_hypergraph_balanced(const Hypergraph& h) {
  HypergraphCertificate cert;
  for (std::size_t k = 3; k <= h.vertices.size() && k <= h.edges.size(); k += 2) {
    CycleSearch search(h, k, true);
    if (search.run([&](const HyperCycle& c) {
          cert.witness = c;
          return true;
        })) {
      cert.verdict = Verdict::Fail;
      return cert;
    }
  }
  return cert;
}

HypergraphCertificate check_odd_cycle_condition(const Hypergraph& h) { return check_hypergraph_balanced(h); }

std::vector<HyperCycle> enumerate_cycles(const Hypergraph& h, std::size_t max_length) {
  std::vector<HyperCycle> out;
  for (std::size_t k = 2; k <= max_length && k <= h.vertices.size(); ++k) {
    CycleSearch search(h, k, false);
    search.run([&](const HyperCycle& c) {
      out.push_back(c);
      return false;
    });
  }
  return out;
}

ZeroOneMatrix incidence_matrix(const Hypergraph& h) {
  std::vector<std::string> cols;
  for (const auto& e : h.edges) cols.push_back(e.label);
  ZeroOneMatrix m(h.vertices, std::move(cols));
  for (std::size_t c = 0; c < h.edges.size(); ++c) {
    h.edges[c].members.for_each([&](std::size_t v) { m.set(v, c, true); });
  }
  return m;
}

bool is_valid_cycle(const Hypergraph& h, const HyperCycle& c) {
  const std::size_t k = c.length();
  if (k < 2 || c.edges.size() != k) return false;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (c.vertices[i] == c.vertices[j] || c.edges[i] == c.edges[j]) return false;
    }
    const IndexSet e = h.edges.at(c.edges[i]).members;
    if (!e.contains(c.vertices[i]) || !e.contains(c.vertices[(i + 1) % k])) return false;
  }
  return true;
}

std::string format_cycle(const Hypergraph& h, const HyperCycle& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.length(); ++i) {
    out += h.vertices[c.vertices[i]] + ", " + h.format_vertices(h.edges[c.edges[i]].members) + ", ";
  }
  return out + h.vertices[c.vertices.front()] + ")";
}

}  // namespace compmatch
