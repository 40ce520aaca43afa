#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "compmatch/market.hpp"

namespace compmatch {

/// A_f in chain order.
std::vector<WorkerSet> acceptable_sets(const Market& m, std::size_t firm);

/// W_f: workers that belong to some acceptable set of the firm.
WorkerSet potential_employees(const Market& m, std::size_t firm);

/// Choice membership never drops when the available set grows.
bool is_complementary(const Market& m, std::size_t firm);

/// The union of any two disjoint acceptable sets is acceptable.
bool is_additive(const Market& m, std::size_t firm);

/// Adding `added` to `available` makes the firm drop `dropped`.
struct ComplementarityViolation {
  WorkerSet available;
  std::size_t added;
  std::size_t dropped;
};
std::optional<ComplementarityViolation> complementarity_violation(const Market& m, std::size_t firm);

/// Two disjoint acceptable sets whose union is not acceptable.
std::optional<std::pair<WorkerSet, WorkerSet>> additivity_violation(const Market& m, std::size_t firm);

/// Nonzero differences χ(Ch(S')) − χ(Ch(S)) over S ⊂ S' ⊆ W_f, indexed by worker.
std::set<std::vector<int>> demand_type(const Market& m, std::size_t firm);

struct ComplementarityGraph {
  std::size_t firm = 0;
  WorkerSet vertices;
  /// Unordered pairs stored with first < second, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  bool adjacent(std::size_t a, std::size_t b) const;
  /// Connected components, ordered by their smallest worker.
  std::vector<WorkerSet> components() const;
};

ComplementarityGraph complementarity_graph(const Market& m, std::size_t firm);

/// Acceptable sets lying within a single component of G_f, in chain order.
std::vector<WorkerSet> primitive_acceptable_sets(const Market& m, std::size_t firm);

/// Result of splitting firms, with enough bookkeeping to lift matchings back.
struct DecomposedMarket {
  enum class Kind { BySets, ByComponents };

  struct Origin {
    std::size_t firm;   // index in the original market
    std::size_t index;  // 1-based position within the sibling group
  };

  Market market;
  std::vector<Origin> origin;                // per firm of `market`
  std::vector<std::string> original_firms;   // names of the original firms
  Kind kind = Kind::BySets;

  /// Firms of `market` decomposed from original firm f.
  std::vector<std::size_t> siblings(std::size_t original_firm) const;
};

/// Splits every firm into one firm per acceptable set, named `f#k`.
/// Throws MarketError for a firm without acceptable sets.
DecomposedMarket decompose_by_sets(const Market& m);

/// Splits every complementary firm into one firm per component of its
/// complementarity graph. Throws MarketError for a non-complementary firm.
DecomposedMarket decompose_by_components(const Market& m);

/// Rebuilds the decomposition bookkeeping from `f#k` firm names, treating
/// every firm without a `#` suffix as its own group.
DecomposedMarket recover_decomposition(const Market& decomposed,
                                       DecomposedMarket::Kind kind = DecomposedMarket::Kind::BySets);

/// The market the decomposition came from, for BySets bookkeeping: each
/// original chain lists its siblings' sets by sibling index, and each worker
/// list keeps the first sibling's position.
Market reassemble_market(const DecomposedMarket& d);

/// µ(f) = ∪ µ̄(f̄) over f's siblings.
Matching lift_matching(const Matching& decomposed_matching, const DecomposedMarket& d);

}  // namespace compmatch
