#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "compmatch/market.hpp"
#include "compmatch/solver.hpp"

namespace compmatch {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kOracleMaxWorkers = 10;
inline constexpr std::size_t kOracleMaxFirms = 8;

/// Every stable matching, ordered by assignment vector with firms in market
/// order and ø last. Throws BudgetExceeded beyond 10 workers or 8 firms.
std::vector<Matching> all_stable_matchings(const Market& m);

/// Number of assignments W → F ∪ {ø} the oracle would have to consider.
double assignment_space(const Market& m);

/// Firms that have the worker in some acceptable set.
std::vector<std::size_t> relevant_firms(const Market& m, std::size_t worker);

/// Ordered lists of distinct firms drawn from `firms`: longest first, then
/// lexicographic by position. Without truncations only full rankings.
std::vector<std::vector<std::size_t>> preference_lists(const std::vector<std::size_t>& firms, bool truncations);

/// Size of the worker-preference space over relevant firms.
double profile_space(const Market& m, bool truncations);

/// Calls visit with each worker-preference profile (the first worker varies
/// slowest) until it returns false.
void for_each_worker_profile(const Market& m, bool truncations,
                             const std::function<bool(const Market&)>& visit);

struct SweepOptions {
  bool truncations = true;
  Decompose decompose = Decompose::Sets;
  double max_profiles = 1e7;
  /// Above max_profiles, sample this many profiles instead of failing.
  bool allow_sampling = false;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};

struct SweepResult {
  Verdict verdict = Verdict::Pass;
  double space = 0;
  std::size_t checked = 0;
  bool sampled = false;
  /// The first profile without a stable matching.
  std::optional<Market> counterexample;
};

/// Solves the market under every worker-preference profile (firm chains
/// fixed), confirming each result with is_stable.
SweepResult exists_for_all_worker_prefs(const Market& firm_profile, const SweepOptions& options = {});

/// n firms and workers; f_i wants {w_i, w_{i+1}}, w_i ranks f_i over f_{i-1}.
Market cyclic_market(std::size_t n);

struct RandomMarketSpec {
  std::size_t max_workers = 5;
  std::size_t max_firms = 4;
  std::size_t max_chain = 3;
};

/// Arbitrary chains and worker lists.
Market random_market(std::mt19937_64& rng, const RandomMarketSpec& spec = {});

/// Complementary firms whose acceptable sets form a balanced matrix, with a
/// worker-preference space of at most `max_space` profiles (truncations
/// included). Worker lists are empty.
Market random_balanced_complementary_profile(std::mt19937_64& rng, const RandomMarketSpec& spec = {},
                                             double max_space = 4096);

}  // namespace compmatch
