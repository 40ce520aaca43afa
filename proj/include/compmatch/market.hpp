#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "compmatch/index_set.hpp"

namespace compmatch {

/// Index used for the null firm (being unmatched) wherever a firm index is expected.
inline constexpr std::size_t kNullFirm = std::numeric_limits<std::size_t>::max();

/// Thrown when a market, matching or identifier violates the model invariants.
class MarketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A firm's strict preference, written as the chain of candidate sets it
/// ranks above the empty set, best first. Every set not in the chain ranks
/// below the empty set.
struct FirmPreference {
  std::vector<WorkerSet> chain;

  friend bool operator==(const FirmPreference&, const FirmPreference&) = default;
};

/// Two-sided many-to-one market: workers, firms, worker preference lists
/// (unlisted firms are unacceptable) and firm preference chains.
///
/// Immutable after construction; the constructor rejects duplicate
/// identifiers, unknown references, duplicate chain sets and empty chain sets.
class Market {
 public:
  Market() = default;
  Market(std::vector<std::string> workers, std::vector<std::string> firms,
         std::vector<std::vector<std::size_t>> worker_prefs, std::vector<FirmPreference> firm_prefs);

  std::size_t num_workers() const { return workers_.size(); }
  std::size_t num_firms() const { return firms_.size(); }

  const std::vector<std::string>& workers() const { return workers_; }
  const std::vector<std::string>& firms() const { return firms_; }
  const std::vector<std::vector<std::size_t>>& worker_prefs() const { return worker_prefs_; }
  const std::vector<FirmPreference>& firm_prefs() const { return firm_prefs_; }

  const std::vector<std::size_t>& preference_list(std::size_t worker) const;
  const FirmPreference& preference(std::size_t firm) const;

  std::size_t worker_index(std::string_view name) const;
  std::size_t firm_index(std::string_view name) const;
  std::optional<std::size_t> find_worker(std::string_view name) const;
  std::optional<std::size_t> find_firm(std::string_view name) const;

  /// Position of `firm` in the worker's list; the list length for the null
  /// firm, and something larger still for unacceptable firms.
  std::size_t firm_rank(std::size_t worker, std::size_t firm) const;
  /// f ≻_w ø
  bool accepts(std::size_t worker, std::size_t firm) const;
  /// f ⪰_w g (either may be kNullFirm)
  bool weakly_prefers(std::size_t worker, std::size_t f, std::size_t g) const;
  bool prefers(std::size_t worker, std::size_t f, std::size_t g) const;

  /// Position of s in the firm's chain; chain length for ∅; chain length + 1
  /// for every unlisted set.
  std::size_t set_rank(std::size_t firm, WorkerSet s) const;

  WorkerSet all_workers() const { return WorkerSet::first(workers_.size()); }

  /// Same firms and workers, new worker preference lists.
  Market with_worker_prefs(std::vector<std::vector<std::size_t>> worker_prefs) const;

  std::string format_set(WorkerSet s) const;
  std::string firm_name(std::size_t firm) const;

  void check_firm(std::size_t firm, bool allow_null) const;
  void check_workers(WorkerSet s) const;

  friend bool operator==(const Market& a, const Market& b) {
    return a.workers_ == b.workers_ && a.firms_ == b.firms_ && a.worker_prefs_ == b.worker_prefs_ &&
           a.firm_prefs_ == b.firm_prefs_;
  }

 private:
  std::vector<std::string> workers_;
  std::vector<std::string> firms_;
  std::vector<std::vector<std::size_t>> worker_prefs_;
  std::vector<FirmPreference> firm_prefs_;
  // rank_[w][f]: position of f in w's list, or kUnacceptable.
  std::vector<std::vector<std::size_t>> rank_;
};

/// A total assignment of workers to firms or the null firm. The inverse view
/// µ(f) is derived, so µ(w)=f iff w∈µ(f) holds by construction.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t num_workers) : assignment_(num_workers, kNullFirm) {}
  explicit Matching(std::vector<std::size_t> assignment) : assignment_(std::move(assignment)) {}

  /// Builds a matching from per-firm worker sets; throws MarketError when two
  /// firms claim the same worker.
  static Matching from_firm_sets(std::size_t num_workers,
                                 const std::vector<std::pair<std::size_t, WorkerSet>>& sets);

  std::size_t num_workers() const { return assignment_.size(); }
  std::size_t firm_of(std::size_t worker) const { return assignment_.at(worker); }
  void assign(std::size_t worker, std::size_t firm) { assignment_.at(worker) = firm; }

  /// µ(f); for kNullFirm, the unmatched workers.
  WorkerSet members(std::size_t firm) const;

  const std::vector<std::size_t>& assignment() const { return assignment_; }

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching&, const Matching&) = default;

 private:
  std::vector<std::size_t> assignment_;
};

/// Throws MarketError unless µ is a total assignment over m's workers and firms.
void validate_matching(const Matching& mu, const Market& m);

/// Two-row layout: firms (and ø) on top, their workers below.
std::string format_matching(const Matching& mu, const Market& m);

}  // namespace compmatch
