#pragma once

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "compmatch/balance.hpp"
#include "compmatch/market.hpp"

namespace compmatch {

class TreeError : public MarketError {
 public:
  using MarketError::MarketError;
};

struct TreeVertex {
  std::string name;
  WorkerSet workers;
  std::size_t parent;
  /// Left to right: earlier children rank higher under >_v.
  std::vector<std::size_t> children;
};

/// Rooted ordered tree of technologies. Vertex 0 is the root and needs no
/// worker; every child needs a strict superset of its parent's workers. An
/// edge is named by its child vertex.
class TechnologyTree {
 public:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  TechnologyTree() : TechnologyTree(std::vector<std::string>{}) {}
  explicit TechnologyTree(std::vector<std::string> workers, std::string root_name = "v0");

  /// Appends a child at the right end of the parent's children.
  std::size_t add_vertex(std::string name, std::size_t parent, WorkerSet workers);

  const std::vector<std::string>& workers() const { return workers_; }
  const std::vector<TreeVertex>& vertices() const { return vertices_; }
  const TreeVertex& vertex(std::size_t v) const { return vertices_.at(v); }
  std::size_t size() const { return vertices_.size(); }
  std::size_t root() const { return 0; }

  std::size_t vertex_index(std::string_view name) const;
  std::optional<std::size_t> find_vertex(std::string_view name) const;
  std::optional<std::size_t> find_worker(std::string_view name) const;

  /// Non-root vertices in preorder; each stands for the edge into it.
  std::vector<std::size_t> edges() const;
  std::string edge_name(std::size_t child) const;

  /// v ◁ v′: v lies on the path from the root to v′, v ≠ v′.
  bool precedes(std::size_t v, std::size_t v2) const;

  /// Copy with v's children reordered; `order` must permute them.
  TechnologyTree with_child_order(std::size_t v, std::vector<std::size_t> order) const;

  std::string format_set(WorkerSet s) const;

  friend bool operator==(const TechnologyTree& a, const TechnologyTree& b);

 private:
  std::vector<std::string> workers_;
  std::vector<TreeVertex> vertices_;
};

/// W^e = W^{v′} ∖ W^v for the edge into `child`.
WorkerSet upgrade_workers(const TechnologyTree& t, std::size_t child);

/// Edges (child vertices, preorder) whose upgrade needs the worker.
std::vector<std::size_t> engagement(const TechnologyTree& t, std::size_t worker);

struct NeighbourCertificate {
  Verdict verdict = Verdict::Pass;
  std::optional<std::size_t> worker;
  /// Edges e >_v e′ >_v e″ with the worker in e and e″ but not e′.
  std::vector<std::size_t> separating;
  /// Two distinct source vertices of the worker's upgrades.
  std::vector<std::size_t> sources;

  bool passed() const { return verdict == Verdict::Pass; }
};

/// Every worker's upgrades leave one vertex and are contiguous in its order.
NeighbourCertificate check_neighbour_condition(const TechnologyTree& t);

std::string describe(const NeighbourCertificate& c, const TechnologyTree& t);

/// Largest number of children whose orderings the permutation search tries.
inline constexpr std::size_t kMaxPermutedChildren = 6;

struct PermutationResult {
  /// Pass: `tree` is a reordering that satisfies the condition. Fail: no
  /// ordering does. Inconclusive: a vertex exceeds the child cap.
  Verdict verdict = Verdict::Fail;
  std::optional<TechnologyTree> tree;
  std::string note;
};

/// Searches the child orderings of each vertex independently.
PermutationResult search_child_orders(const TechnologyTree& t);

/// Nonempty W^v, duplicates dropped, as columns over all workers of t.
ZeroOneMatrix worker_set_matrix(const TechnologyTree& t);

/// Per firm: chain entries, each the union of the listed vertices' worker sets.
struct FirmTreeSpec {
  std::string firm;
  std::vector<std::vector<std::string>> chain;
};

/// Firms with the given chains over t's workers; worker lists are left empty.
Market profile_from_tree(const std::vector<FirmTreeSpec>& specs, const TechnologyTree& t);

enum class TreeSetMode { Primitive, All, NonSingleton };

/// Every (primitive / any / non-singleton primitive) acceptable set of the firm
/// equals some W^v. Workers are matched by name.
bool sets_from_tree(std::size_t firm, const Market& m, const TechnologyTree& t, TreeSetMode mode);

/// The same over every firm of the market.
bool market_sets_from_tree(const Market& m, const TechnologyTree& t, TreeSetMode mode);

/// Trees over `workers` whose vertex sets contain `family` (at most 3 sets of
/// at most 4 workers), each with the children orders found by the
/// permutation search. Reports how many exist and whether any satisfies the
/// neighbour condition.
struct InducingTreeSurvey {
  std::size_t trees = 0;
  std::size_t satisfying = 0;
  std::optional<TechnologyTree> example;
};
InducingTreeSurvey survey_inducing_trees(const std::vector<WorkerSet>& family, const std::vector<std::string>& workers);

/// Random tree meeting the neighbour condition: every worker engages in a
/// contiguous run of one vertex's outgoing edges.
TechnologyTree random_neighbour_tree(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_workers);

/// Random tree with arbitrary nested worker sets.
TechnologyTree random_tree(std::mt19937_64& rng, std::size_t max_vertices, std::size_t max_workers);

}  // namespace compmatch
