#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "compmatch/io.hpp"
#include "compmatch/market.hpp"
#include "compmatch/zero_one_matrix.hpp"

namespace testing {

using namespace compmatch;

inline std::string corpus_path(const std::string& name) { return std::string(COMPMATCH_CORPUS_DIR) + "/" + name; }

inline Market load_market(const std::string& name) { return parse_market(read_file(corpus_path(name))); }

inline TechnologyTree load_tree(const std::string& name) { return parse_tree(read_file(corpus_path(name))); }

inline WorkerSet ws(const Market& m, std::initializer_list<const char*> names) {
  WorkerSet s;
  for (const char* n : names) s.insert(m.worker_index(n));
  return s;
}

inline Matching matching(const Market& m, std::initializer_list<std::pair<const char*, WorkerSet>> sets) {
  std::vector<std::pair<std::size_t, WorkerSet>> v;
  for (const auto& [f, s] : sets) v.emplace_back(m.firm_index(f), s);
  return Matching::from_firm_sets(m.num_workers(), v);
}

inline const std::vector<std::string> kCorpusMarkets = {
    "three_firm_cycle.market",  "complementary_six.market",  "tu_sets.market",  "balanced_not_tu.market",  "two_firm.market", "two_firm_split.market",
    "separable.market", "primitive_sets.market", "additive.market", "tree_firms.market", "firm_worker_cycle.market",
};

// Reference implementations straight from the definitions. Slow on purpose.
namespace brute {

// 0 is best; ∅ ranks at chain length; unlisted sets below that.
inline std::size_t rank(const Market& m, std::size_t f, WorkerSet s) {
  const auto& chain = m.firm_prefs()[f].chain;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain[i] == s) return i;
  }
  return s.empty() ? chain.size() : chain.size() + 1;
}

inline WorkerSet choose(const Market& m, std::size_t f, WorkerSet available) {
  if (f == kNullFirm) return available;
  WorkerSet best;
  std::size_t best_rank = rank(m, f, best);
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << m.num_workers()); ++b) {
    const auto s = WorkerSet::from_bits(b);
    if (!s.is_subset_of(available)) continue;
    if (const auto r = rank(m, f, s); r < best_rank) {
      best = s;
      best_rank = r;
    }
  }
  return best;
}

// Position in w's list; list length for ø; large for unacceptable.
inline std::size_t worker_rank(const Market& m, std::size_t w, std::size_t f) {
  const auto& list = m.worker_prefs()[w];
  if (f == kNullFirm) return list.size();
  const auto it = std::find(list.begin(), list.end(), f);
  return it == list.end() ? list.size() + 1 : static_cast<std::size_t>(it - list.begin());
}

inline bool individually_rational(const Matching& mu, const Market& m) {
  for (std::size_t w = 0; w < m.num_workers(); ++w) {
    if (worker_rank(m, w, mu.firm_of(w)) > m.worker_prefs()[w].size()) return false;
  }
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    if (brute::choose(m, f, mu.members(f)) != mu.members(f)) return false;
  }
  return true;
}

// Any S ⊆ W with S ≻_f µ(f) and f ⪰_w µ(w) for all w ∈ S.
inline bool has_blocking(const Matching& mu, const Market& m) {
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    const std::size_t current = rank(m, f, mu.members(f));
    for (std::uint64_t b = 1; b < (std::uint64_t{1} << m.num_workers()); ++b) {
      const auto s = WorkerSet::from_bits(b);
      const std::size_t r = rank(m, f, s);
      if (r >= current || r > m.firm_prefs()[f].chain.size()) continue;
      bool willing = true;
      s.for_each([&](std::size_t w) {
        if (worker_rank(m, w, f) > worker_rank(m, w, mu.firm_of(w))) willing = false;
      });
      if (willing) return true;
    }
  }
  return false;
}

inline bool stable(const Matching& mu, const Market& m) { return individually_rational(mu, m) && !has_blocking(mu, m); }

inline std::vector<Matching> stable_matchings(const Market& m) {
  std::vector<Matching> out;
  const std::size_t options = m.num_firms() + 1;
  std::vector<std::size_t> digits(m.num_workers(), 0);
  while (true) {
    Matching mu(m.num_workers());
    for (std::size_t w = 0; w < m.num_workers(); ++w) {
      mu.assign(w, digits[w] == m.num_firms() ? kNullFirm : digits[w]);
    }
    if (stable(mu, m)) out.push_back(mu);
    std::size_t i = m.num_workers();
    while (i > 0 && ++digits[i - 1] == options) digits[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

inline bool complementary(const Market& m, std::size_t f) {
  const std::uint64_t n = std::uint64_t{1} << m.num_workers();
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = 0; b < n; ++b) {
      if ((a & ~b) != 0) continue;
      const auto small = brute::choose(m, f, WorkerSet::from_bits(a));
      const auto large = brute::choose(m, f, WorkerSet::from_bits(b));
      if (!small.is_subset_of(large)) return false;
    }
  }
  return true;
}

inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  if (k > n) return out;
  while (true) {
    out.push_back(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

inline long long leibniz(const std::vector<std::vector<int>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long long total = 0;
  do {
    long long term = 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= a[i][perm[i]];
    if (term == 0) continue;
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    total += inversions % 2 == 0 ? term : -term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline std::vector<std::vector<int>> pick(const ZeroOneMatrix& m, const std::vector<std::size_t>& rows,
                                          const std::vector<std::size_t>& cols) {
  std::vector<std::vector<int>> out(rows.size(), std::vector<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out[i][j] = m.at(rows[i], cols[j]) ? 1 : 0;
  }
  return out;
}

inline bool two_per_line(const std::vector<std::vector<int>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    int r = 0;
    int c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      r += a[i][j];
      c += a[j][i];
    }
    if (r != 2 || c != 2) return false;
  }
  return true;
}

// Rows and columns of a two-per-line matrix form one cycle.
inline bool connected(const std::vector<std::vector<int>>& a) {
  const std::size_t n = a.size();
  std::vector<bool> row_seen(n, false);
  std::vector<bool> col_seen(n, false);
  std::vector<std::size_t> stack = {0};
  row_seen[0] = true;
  while (!stack.empty()) {
    const std::size_t r = stack.back();
    stack.pop_back();
    for (std::size_t c = 0; c < n; ++c) {
      if (!a[r][c] || col_seen[c]) continue;
      col_seen[c] = true;
      for (std::size_t r2 = 0; r2 < n; ++r2) {
        if (a[r2][c] && !row_seen[r2]) {
          row_seen[r2] = true;
          stack.push_back(r2);
        }
      }
    }
  }
  return std::all_of(row_seen.begin(), row_seen.end(), [](bool b) { return b; });
}

template <class Pred>
bool any_square(const ZeroOneMatrix& m, std::size_t min_k, std::size_t step, Pred pred) {
  for (std::size_t k = min_k; k <= std::min(m.rows(), m.cols()); k += step) {
    for (const auto& r : combinations(m.rows(), k)) {
      for (const auto& c : combinations(m.cols(), k)) {
        if (pred(pick(m, r, c))) return true;
      }
    }
  }
  return false;
}

inline bool balanced(const ZeroOneMatrix& m) { return !any_square(m, 3, 2, two_per_line); }

inline bool totally_unimodular(const ZeroOneMatrix& m) {
  return !any_square(m, 1, 1, [](const auto& a) { return std::llabs(leibniz(a)) > 1; });
}

inline bool totally_balanced(const ZeroOneMatrix& m) {
  return !any_square(m, 3, 1, [](const auto& a) { return two_per_line(a) && connected(a); });
}

}  // namespace brute

inline ZeroOneMatrix random_matrix(std::mt19937_64& rng, std::size_t max_rows, std::size_t max_cols, double density) {
  std::uniform_int_distribution<std::size_t> rows(1, max_rows);
  std::uniform_int_distribution<std::size_t> cols(1, max_cols);
  std::bernoulli_distribution bit(density);
  const std::size_t r = rows(rng);
  const std::size_t c = cols(rng);
  std::vector<std::vector<int>> entries(r, std::vector<int>(c));
  for (auto& row : entries) {
    for (auto& x : row) x = bit(rng) ? 1 : 0;
  }
  return ZeroOneMatrix::from_rows(entries);
}

}  // namespace testing
