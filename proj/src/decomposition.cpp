#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "compmatch/pref_analysis.hpp"
#include "compmatch/stability.hpp"

namespace compmatch {

namespace {

std::string sibling_name(const std::string& firm, std::size_t k) { return firm + "#" + std::to_string(k); }

// Replaces every original firm in each worker list by its sibling group, in
// group order, at the original position.
std::vector<std::vector<std::size_t>> splice_lists(const Market& m,
                                                   const std::vector<std::vector<std::size_t>>& groups) {
  std::vector<std::vector<std::size_t>> lists(m.num_workers());
  for (std::size_t w = 0; w < m.num_workers(); ++w) {
    for (std::size_t f : m.preference_list(w)) {
      lists[w].insert(lists[w].end(), groups[f].begin(), groups[f].end());
    }
  }
  return lists;
}

}  // namespace

std::vector<std::size_t> DecomposedMarket::siblings(std::size_t original_firm) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < origin.size(); ++f) {
    if (origin[f].firm == original_firm) out.push_back(f);
  }
  return out;
}

DecomposedMarket decompose_by_sets(const Market& m) {
  std::vector<std::string> names;
  std::vector<FirmPreference> prefs;
  std::vector<DecomposedMarket::Origin> origin;
  std::vector<std::vector<std::size_t>> groups(m.num_firms());

  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    const auto sets = acceptable_sets(m, f);
    if (sets.empty()) throw MarketError("firm '" + m.firms()[f] + "' has no acceptable set to decompose");
    for (std::size_t k = 0; k < sets.size(); ++k) {
      groups[f].push_back(names.size());
      names.push_back(sibling_name(m.firms()[f], k + 1));
      prefs.push_back(FirmPreference{{sets[k]}});
      origin.push_back({f, k + 1});
    }
  }

  DecomposedMarket d;
  d.market = Market(m.workers(), std::move(names), splice_lists(m, groups), std::move(prefs));
  d.origin = std::move(origin);
  d.original_firms = m.firms();
  d.kind = DecomposedMarket::Kind::BySets;
  return d;
}

DecomposedMarket decompose_by_components(const Market& m) {
  std::vector<std::string> names;
  std::vector<FirmPreference> prefs;
  std::vector<DecomposedMarket::Origin> origin;
  std::vector<std::vector<std::size_t>> groups(m.num_firms());
  std::vector<WorkerSet> component_of;

  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    if (!is_complementary(m, f)) {
      throw MarketError("firm '" + m.firms()[f] + "' is not complementary; component decomposition needs it");
    }
    const auto sets = acceptable_sets(m, f);
    const auto components = complementarity_graph(m, f).components();
    for (std::size_t k = 0; k < components.size(); ++k) {
      FirmPreference pref;
      for (const WorkerSet& s : sets) {
        if (s.is_subset_of(components[k])) pref.chain.push_back(s);
      }
      groups[f].push_back(names.size());
      names.push_back(sibling_name(m.firms()[f], k + 1));
      prefs.push_back(std::move(pref));
      origin.push_back({f, k + 1});
      component_of.push_back(components[k]);
    }
  }

  DecomposedMarket d;
  d.market = Market(m.workers(), std::move(names), splice_lists(m, groups), std::move(prefs));
  d.origin = std::move(origin);
  d.original_firms = m.firms();
  d.kind = DecomposedMarket::Kind::ByComponents;

  // The inherited chain must reproduce Ch(S) ∩ K for every S.
  for (std::size_t g = 0; g < d.market.num_firms(); ++g) {
    const std::size_t f = d.origin[g].firm;
    const WorkerSet pool = potential_employees(m, f);
    const WorkerSet component = component_of[g];
    for_each_subset(pool, [&](WorkerSet s) {
      if (choose(d.market, g, s) != (choose(m, f, s) & component)) {
        throw std::logic_error("component decomposition of '" + m.firms()[f] + "' does not restrict the choice");
      }
    });
  }
  return d;
}

DecomposedMarket recover_decomposition(const Market& decomposed, DecomposedMarket::Kind kind) {
  DecomposedMarket d;
  d.market = decomposed;
  d.kind = kind;
  for (const std::string& name : decomposed.firms()) {
    std::string base = name;
    std::size_t index = 1;
    if (auto hash = name.rfind('#'); hash != std::string::npos && hash > 0) {
      const char* first = name.data() + hash + 1;
      const char* last = name.data() + name.size();
      std::size_t k = 0;
      auto [ptr, ec] = std::from_chars(first, last, k);
      if (ec == std::errc() && ptr == last && k > 0) {
        base = name.substr(0, hash);
        index = k;
      }
    }
    auto it = std::find(d.original_firms.begin(), d.original_firms.end(), base);
    if (it == d.original_firms.end()) {
      d.original_firms.push_back(base);
      it = d.original_firms.end() - 1;
    }
    d.origin.push_back({static_cast<std::size_t>(it - d.original_firms.begin()), index});
  }
  return d;
}

Market reassemble_market(const DecomposedMarket& d) {
  const Market& dm = d.market;
  std::vector<FirmPreference> prefs(d.original_firms.size());
  for (std::size_t o = 0; o < d.original_firms.size(); ++o) {
    auto sibs = d.siblings(o);
    std::stable_sort(sibs.begin(), sibs.end(),
                     [&](std::size_t a, std::size_t b) { return d.origin[a].index < d.origin[b].index; });
    for (auto g : sibs) {
      for (const WorkerSet& s : dm.preference(g).chain) {
        if (std::find(prefs[o].chain.begin(), prefs[o].chain.end(), s) == prefs[o].chain.end()) {
          prefs[o].chain.push_back(s);
        }
      }
    }
  }
  std::vector<std::vector<std::size_t>> lists(dm.num_workers());
  for (std::size_t w = 0; w < dm.num_workers(); ++w) {
    for (auto g : dm.preference_list(w)) {
      const std::size_t o = d.origin[g].firm;
      if (std::find(lists[w].begin(), lists[w].end(), o) == lists[w].end()) lists[w].push_back(o);
    }
  }
  return Market(dm.workers(), d.original_firms, std::move(lists), std::move(prefs));
}

Matching lift_matching(const Matching& decomposed_matching, const DecomposedMarket& d) {
  validate_matching(decomposed_matching, d.market);
  Matching mu(decomposed_matching.num_workers());
  for (std::size_t w = 0; w < mu.num_workers(); ++w) {
    const std::size_t f = decomposed_matching.firm_of(w);
    mu.assign(w, f == kNullFirm ? kNullFirm : d.origin[f].firm);
  }
  return mu;
}

}  // namespace compmatch
