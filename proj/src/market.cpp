#include "compmatch/market.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace compmatch {

namespace {

constexpr std::size_t kUnacceptable = std::numeric_limits<std::size_t>::max() - 1;

void require_unique(const std::vector<std::string>& names, const char* what) {
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    if (n.empty()) throw MarketError(std::string("empty ") + what + " identifier");
    if (!seen.insert(n).second) throw MarketError(std::string("duplicate ") + what + " identifier '" + n + "'");
  }
}

}  // namespace

Market::Market(std::vector<std::string> workers, std::vector<std::string> firms,
               std::vector<std::vector<std::size_t>> worker_prefs, std::vector<FirmPreference> firm_prefs)
    : workers_(std::move(workers)),
      firms_(std::move(firms)),
      worker_prefs_(std::move(worker_prefs)),
      firm_prefs_(std::move(firm_prefs)) {
  if (workers_.size() > IndexSet::kCapacity) throw MarketError("at most 64 workers are supported");
  require_unique(workers_, "worker");
  require_unique(firms_, "firm");
  for (const auto& f : firms_) {
    if (std::find(workers_.begin(), workers_.end(), f) != workers_.end()) {
      throw MarketError("identifier '" + f + "' names both a worker and a firm");
    }
  }
  if (worker_prefs_.size() != workers_.size()) throw MarketError("one preference list per worker required");
  if (firm_prefs_.size() != firms_.size()) throw MarketError("one preference chain per firm required");

  const WorkerSet everyone = all_workers();
  for (std::size_t f = 0; f < firms_.size(); ++f) {
    const auto& chain = firm_prefs_[f].chain;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (chain[i].empty()) throw MarketError("firm '" + firms_[f] + "' lists the empty set in its chain");
      if (!chain[i].is_subset_of(everyone)) throw MarketError("firm '" + firms_[f] + "' lists an unknown worker");
      for (std::size_t j = 0; j < i; ++j) {
        if (chain[j] == chain[i]) {
          throw MarketError("firm '" + firms_[f] + "' lists " + format_set(chain[i]) + " twice");
        }
      }
    }
  }

  rank_.assign(workers_.size(), std::vector<std::size_t>(firms_.size(), kUnacceptable));
  for (std::size_t w = 0; w < workers_.size(); ++w) {
    const auto& list = worker_prefs_[w];
    for (std::size_t pos = 0; pos < list.size(); ++pos) {
      const std::size_t f = list[pos];
      if (f >= firms_.size()) throw MarketError("worker '" + workers_[w] + "' lists an unknown firm");
      if (rank_[w][f] != kUnacceptable) {
        throw MarketError("worker '" + workers_[w] + "' lists firm '" + firms_[f] + "' twice");
      }
      rank_[w][f] = pos;
    }
  }
}

const std::vector<std::size_t>& Market::preference_list(std::size_t worker) const {
  if (worker >= workers_.size()) throw MarketError("unknown worker index");
  return worker_prefs_[worker];
}

const FirmPreference& Market::preference(std::size_t firm) const {
  check_firm(firm, false);
  return firm_prefs_[firm];
}

std::optional<std::size_t> Market::find_worker(std::string_view name) const {
  auto it = std::find(workers_.begin(), workers_.end(), name);
  if (it == workers_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - workers_.begin());
}

std::optional<std::size_t> Market::find_firm(std::string_view name) const {
  auto it = std::find(firms_.begin(), firms_.end(), name);
  if (it == firms_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - firms_.begin());
}

std::size_t Market::worker_index(std::string_view name) const {
  if (auto w = find_worker(name)) return *w;
  throw MarketError("unknown worker '" + std::string(name) + "'");
}

std::size_t Market::firm_index(std::string_view name) const {
  if (auto f = find_firm(name)) return *f;
  throw MarketError("unknown firm '" + std::string(name) + "'");
}

std::size_t Market::firm_rank(std::size_t worker, std::size_t firm) const {
  if (worker >= workers_.size()) throw MarketError("unknown worker index");
  if (firm == kNullFirm) return worker_prefs_[worker].size();
  check_firm(firm, false);
  return rank_[worker][firm];
}

bool Market::accepts(std::size_t worker, std::size_t firm) const {
  return firm != kNullFirm && firm_rank(worker, firm) != kUnacceptable;
}

bool Market::weakly_prefers(std::size_t worker, std::size_t f, std::size_t g) const {
  if (f == g) return true;
  return firm_rank(worker, f) < firm_rank(worker, g);
}

bool Market::prefers(std::size_t worker, std::size_t f, std::size_t g) const {
  return f != g && firm_rank(worker, f) < firm_rank(worker, g);
}

std::size_t Market::set_rank(std::size_t firm, WorkerSet s) const {
  const auto& chain = preference(firm).chain;
  if (s.empty()) return chain.size();
  auto it = std::find(chain.begin(), chain.end(), s);
  if (it == chain.end()) return chain.size() + 1;
  return static_cast<std::size_t>(it - chain.begin());
}

Market Market::with_worker_prefs(std::vector<std::vector<std::size_t>> worker_prefs) const {
  return Market(workers_, firms_, std::move(worker_prefs), firm_prefs_);
}

std::string Market::format_set(WorkerSet s) const {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t w) {
    if (!first) out += ',';
    first = false;
    out += w < workers_.size() ? workers_[w] : "?" + std::to_string(w);
  });
  out += '}';
  return out;
}

std::string Market::firm_name(std::size_t firm) const {
  if (firm == kNullFirm) return "ø";
  check_firm(firm, false);
  return firms_[firm];
}

void Market::check_firm(std::size_t firm, bool allow_null) const {
  if (firm == kNullFirm) {
    if (allow_null) return;
    throw MarketError("the null firm is not allowed here");
  }
  if (firm >= firms_.size()) throw MarketError("unknown firm index " + std::to_string(firm));
}

void Market::check_workers(WorkerSet s) const {
  if (!s.is_subset_of(all_workers())) throw MarketError("worker set mentions an unknown worker");
}

Matching Matching::from_firm_sets(std::size_t num_workers,
                                  const std::vector<std::pair<std::size_t, WorkerSet>>& sets) {
  Matching mu(num_workers);
  WorkerSet taken;
  for (const auto& [firm, workers] : sets) {
    if (firm == kNullFirm) continue;
    if (workers.intersects(taken)) throw MarketError("a worker is assigned to two firms");
    if (!workers.is_subset_of(WorkerSet::first(num_workers))) throw MarketError("unknown worker in firm set");
    taken |= workers;
    workers.for_each([&](std::size_t w) { mu.assign(w, firm); });
  }
  return mu;
}

WorkerSet Matching::members(std::size_t firm) const {
  WorkerSet s;
  for (std::size_t w = 0; w < assignment_.size(); ++w) {
    if (assignment_[w] == firm) s.insert(w);
  }
  return s;
}

void validate_matching(const Matching& mu, const Market& m) {
  if (mu.num_workers() != m.num_workers()) throw MarketError("matching size does not match the market");
  for (std::size_t w = 0; w < mu.num_workers(); ++w) m.check_firm(mu.firm_of(w), true);
}

std::string format_matching(const Matching& mu, const Market& m) {
  validate_matching(mu, m);
  std::vector<std::string> top;
  std::vector<std::string> bottom;
  auto column = [&](std::size_t f) {
    top.push_back(m.firm_name(f));
    std::string s = m.format_set(mu.members(f));
    bottom.push_back(s.substr(1, s.size() - 2));
  };
  for (std::size_t f = 0; f < m.num_firms(); ++f) column(f);
  column(kNullFirm);

  std::ostringstream a;
  std::ostringstream b;
  for (std::size_t i = 0; i < top.size(); ++i) {
    // "ø" is two bytes but one column wide.
    auto width = [](const std::string& s) {
      return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
    };
    const std::size_t w = std::max(width(top[i]), width(bottom[i])) + 2;
    a << top[i] << std::string(w - width(top[i]), ' ');
    b << bottom[i] << std::string(w - width(bottom[i]), ' ');
  }
  auto rstrip = [](std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
  };
  return rstrip(a.str()) + "\n" + rstrip(b.str()) + "\n";
}

}  // namespace compmatch
