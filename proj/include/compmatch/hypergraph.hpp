#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compmatch/balance.hpp"
#include "compmatch/market.hpp"

namespace compmatch {

struct Hypergraph {
  struct Edge {
    std::string label;
    IndexSet members;
  };

  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  /// Adds the edge unless an edge with the same members exists. Returns
  /// whether it was added.
  bool add_edge(std::string label, IndexSet members);
  std::string format_vertices(IndexSet s) const;
};

/// (v_0, E_0, v_1, E_1, ..., v_{k-1}, E_{k-1}, v_0): edge i contains vertices
/// i and i+1 (mod k). Vertices and edges are distinct; k ≥ 2.
struct HyperCycle {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> edges;

  std::size_t length() const { return vertices.size(); }
};

struct HypergraphCertificate {
  Verdict verdict = Verdict::Pass;
  /// An odd cycle whose every edge contains exactly two of its vertices.
  std::optional<HyperCycle> witness;

  bool passed() const { return verdict == Verdict::Pass; }
};

/// Workers as vertices; the non-singleton acceptable sets of all firms as
/// edges, deduplicated by content.
Hypergraph acceptable_set_hypergraph(const Market& m);

/// Firms then workers as vertices; one edge {f} ∪ S per acceptable set S of f.
Hypergraph firm_worker_hypergraph(const Market& m);

/// Passes when every odd cycle has an edge holding at least three of the
/// cycle's vertices; otherwise returns the shortest violating cycle, starting
/// at its smallest vertex.
HypergraphCertificate check_hypergraph_balanced(const Hypergraph& h);

/// The same test applied to an acceptable-set hypergraph.
HypergraphCertificate check_odd_cycle_condition(const Hypergraph& h);

/// Every cycle of length 2..max_length, each listed once (smallest vertex
/// first, one orientation).
std::vector<HyperCycle> enumerate_cycles(const Hypergraph& h, std::size_t max_length);

/// Incidence matrix: vertices as rows, edges as columns.
ZeroOneMatrix incidence_matrix(const Hypergraph& h);

bool is_valid_cycle(const Hypergraph& h, const HyperCycle& c);

std::string format_cycle(const Hypergraph& h, const HyperCycle& c);

}  // namespace compmatch
