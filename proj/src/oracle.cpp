#include "compmatch/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "compmatch/pref_analysis.hpp"
#include "compmatch/stability.hpp"

namespace compmatch {

double assignment_space(const Market& m) {
  double total = 1;
  for (std::size_t w = 0; w < m.num_workers(); ++w) total *= static_cast<double>(m.num_firms() + 1);
  return total;
}

std::vector<Matching> all_stable_matchings(const Market& m) {
  if (m.num_workers() > kOracleMaxWorkers || m.num_firms() > kOracleMaxFirms) {
    throw BudgetExceeded("oracle budget is 10 workers and 8 firms; market has " + std::to_string(m.num_workers()) +
                         " and " + std::to_string(m.num_firms()));
  }
  std::vector<std::vector<WorkerSet>> sets;
  for (std::size_t f = 0; f < m.num_firms(); ++f) sets.push_back(acceptable_sets(m, f));
  auto fits = [&](std::size_t f, WorkerSet held) {
    return std::any_of(sets[f].begin(), sets[f].end(), [&](WorkerSet s) { return held.is_subset_of(s); });
  };

  std::vector<Matching> out;
  Matching mu(m.num_workers());
  std::vector<WorkerSet> held(m.num_firms());
  auto visit = [&](auto&& self, std::size_t w) -> void {
    if (w == m.num_workers()) {
      if (is_stable(mu, m)) out.push_back(mu);
      return;
    }
    for (std::size_t f = 0; f < m.num_firms(); ++f) {
      if (!m.accepts(w, f) || !fits(f, held[f].with(w))) continue;
      held[f].insert(w);
      mu.assign(w, f);
      self(self, w + 1);
      held[f].erase(w);
    }
    mu.assign(w, kNullFirm);
    self(self, w + 1);
  };
  visit(visit, 0);
  return out;
}

std::vector<std::size_t> relevant_firms(const Market& m, std::size_t worker) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    if (potential_employees(m, f).contains(worker)) out.push_back(f);
  }
  return out;
}

std::vector<std::vector<std::size_t>> preference_lists(const std::vector<std::size_t>& firms, bool truncations) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t r = firms.size();
  for (std::size_t len = r + 1; len-- > 0;) {
    if (!truncations && len != r) break;
    // Ordered selections of `len` positions, lexicographic.
    std::vector<std::size_t> pick;
    std::vector<bool> used(r, false);
    auto rec = [&](auto&& self) -> void {
      if (pick.size() == len) {
        std::vector<std::size_t> list;
        for (auto i : pick) list.push_back(firms[i]);
        out.push_back(std::move(list));
        return;
      }
      for (std::size_t i = 0; i < r; ++i) {
        if (used[i]) continue;
        used[i] = true;
        pick.push_back(i);
        self(self);
        pick.pop_back();
        used[i] = false;
      }
    };
    rec(rec);
  }
  return out;
}

namespace {

double count_lists(std::size_t r, bool truncations) {
  double total = 0;
  double falling = 1;
  for (std::size_t k = 0; k <= r; ++k) {
    if (truncations || k == r) total += falling;
    falling *= static_cast<double>(r - k);
  }
  return total;
}

}  // namespace

double profile_space(const Market& m, bool truncations) {
  double total = 1;
  for (std::size_t w = 0; w < m.num_workers(); ++w) total *= count_lists(relevant_firms(m, w).size(), truncations);
  return total;
}

void for_each_worker_profile(const Market& m, bool truncations, const std::function<bool(const Market&)>& visit) {
  std::vector<std::vector<std::vector<std::size_t>>> options;
  for (std::size_t w = 0; w < m.num_workers(); ++w) options.push_back(preference_lists(relevant_firms(m, w), truncations));
  std::vector<std::size_t> choice(m.num_workers(), 0);
  while (true) {
    std::vector<std::vector<std::size_t>> lists;
    for (std::size_t w = 0; w < m.num_workers(); ++w) lists.push_back(options[w][choice[w]]);
    if (!visit(m.with_worker_prefs(std::move(lists)))) return;
    std::size_t w = m.num_workers();
    while (w > 0 && ++choice[w - 1] == options[w - 1].size()) choice[--w] = 0;
    if (w == 0) return;
  }
}

SweepResult exists_for_all_worker_prefs(const Market& firm_profile, const SweepOptions& options) {
  SweepResult result;
  result.space = profile_space(firm_profile, options.truncations);

  auto check = [&](const Market& market) {
    ++result.checked;
    const auto matching = find_stable_matching(market, options.decompose);
    if (matching && is_stable(*matching, market)) return true;
    result.verdict = Verdict::Fail;
    result.counterexample = market;
    return false;
  };

  if (result.space <= options.max_profiles) {
    for_each_worker_profile(firm_profile, options.truncations, check);
    return result;
  }
  if (!options.allow_sampling) {
    throw BudgetExceeded("worker-preference space has " + std::to_string(result.space) +
                         " profiles, above the budget; enable sampling to test a subset");
  }
  result.sampled = true;
  std::mt19937_64 rng(options.seed);
  std::vector<std::vector<std::vector<std::size_t>>> lists;
  for (std::size_t w = 0; w < firm_profile.num_workers(); ++w) {
    lists.push_back(preference_lists(relevant_firms(firm_profile, w), options.truncations));
  }
  for (std::size_t i = 0; i < options.samples; ++i) {
    std::vector<std::vector<std::size_t>> profile;
    for (const auto& l : lists) profile.push_back(l[std::uniform_int_distribution<std::size_t>(0, l.size() - 1)(rng)]);
    if (!check(firm_profile.with_worker_prefs(std::move(profile)))) break;
  }
  return result;
}

Market cyclic_market(std::size_t n) {
  if (n < 3) throw MarketError("cyclic market needs n >= 3");
  std::vector<std::string> workers;
  std::vector<std::string> firms;
  std::vector<FirmPreference> prefs;
  std::vector<std::vector<std::size_t>> lists;
  for (std::size_t i = 0; i < n; ++i) {
    workers.push_back("w" + std::to_string(i + 1));
    firms.push_back("f" + std::to_string(i + 1));
    prefs.push_back({{WorkerSet::of({i, (i + 1) % n})}});
    lists.push_back({i, (i + n - 1) % n});
  }
  return Market(std::move(workers), std::move(firms), std::move(lists), std::move(prefs));
}

namespace {

std::vector<std::string> names(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

FirmPreference random_chain(std::mt19937_64& rng, std::size_t nw, std::size_t max_chain) {
  FirmPreference p;
  const std::size_t len = std::uniform_int_distribution<std::size_t>(1, max_chain)(rng);
  std::uniform_int_distribution<std::uint64_t> bits(1, (std::uint64_t{1} << nw) - 1);
  for (std::size_t k = 0; k < len; ++k) {
    const WorkerSet s = WorkerSet::from_bits(bits(rng));
    if (std::find(p.chain.begin(), p.chain.end(), s) == p.chain.end()) p.chain.push_back(s);
  }
  return p;
}

}  // namespace

Market random_market(std::mt19937_64& rng, const RandomMarketSpec& spec) {
  const std::size_t nw = std::uniform_int_distribution<std::size_t>(1, spec.max_workers)(rng);
  const std::size_t nf = std::uniform_int_distribution<std::size_t>(1, spec.max_firms)(rng);
  std::vector<FirmPreference> prefs;
  for (std::size_t f = 0; f < nf; ++f) prefs.push_back(random_chain(rng, nw, spec.max_chain));
  std::vector<std::vector<std::size_t>> lists;
  std::bernoulli_distribution keep(0.75);
  for (std::size_t w = 0; w < nw; ++w) {
    std::vector<std::size_t> list;
    for (std::size_t f = 0; f < nf; ++f) {
      if (keep(rng)) list.push_back(f);
    }
    std::shuffle(list.begin(), list.end(), rng);
    lists.push_back(std::move(list));
  }
  return Market(names("w", nw), names("f", nf), std::move(lists), std::move(prefs));
}

Market random_balanced_complementary_profile(std::mt19937_64& rng, const RandomMarketSpec& spec, double max_space) {
  while (true) {
    const std::size_t nw = std::uniform_int_distribution<std::size_t>(2, std::max<std::size_t>(2, spec.max_workers))(rng);
    const std::size_t nf = std::uniform_int_distribution<std::size_t>(1, spec.max_firms)(rng);
    std::vector<FirmPreference> prefs;
    for (std::size_t f = 0; f < nf; ++f) prefs.push_back(random_chain(rng, nw, spec.max_chain));
    Market m(names("w", nw), names("f", nf), std::vector<std::vector<std::size_t>>(nw), std::move(prefs));
    bool ok = true;
    for (std::size_t f = 0; f < nf && ok; ++f) ok = is_complementary(m, f);
    if (!ok || profile_space(m, true) > max_space) continue;
    if (!is_balanced(matrix_of_sets(acceptable_set_family(m), m)).passed()) continue;
    return m;
  }
}

}  // namespace compmatch
