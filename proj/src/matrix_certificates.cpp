#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>

#include "compmatch/balance.hpp"

namespace compmatch {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Reduction reduce(const ZeroOneMatrix& m) {
  std::vector<bool> row_alive(m.rows(), true);
  std::vector<bool> col_alive(m.cols(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (!row_alive[r]) continue;
      std::size_t ones = 0;
      for (std::size_t c = 0; c < m.cols(); ++c) ones += (col_alive[c] && m.at(r, c)) ? 1 : 0;
      if (ones <= 1) row_alive[r] = false, changed = true;
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!col_alive[c]) continue;
      std::size_t ones = 0;
      for (std::size_t r = 0; r < m.rows(); ++r) ones += (row_alive[r] && m.at(r, c)) ? 1 : 0;
      if (ones <= 1) col_alive[c] = false, changed = true;
    }
  }
  Reduction out;
  for (std::size_t r = 0; r < m.rows(); ++r) if (row_alive[r]) out.rows.push_back(r);
  for (std::size_t c = 0; c < m.cols(); ++c) if (col_alive[c]) out.cols.push_back(c);
  return out;
}

namespace {

// Calls f on each k-combination of {0..n-1} in lexicographic order until f
// returns true. Returns whether f stopped the walk.
template <class F>
bool for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (f(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct CycleWitness {
  std::vector<std::size_t> rows;  // positions in the reduced matrix, cycle order
  std::vector<std::size_t> cols;
};

// Orders a 2-regular bipartite selection along its cycle, or returns nothing
// when the selection splits into several cycles. `cols` index col_masks;
// masks are over reduced row positions and `row_mask` holds the selection.
std::optional<CycleWitness> order_cycle(const std::vector<std::uint64_t>& col_masks, std::uint64_t row_mask,
                                        const std::vector<std::size_t>& rows,
                                        const std::vector<std::size_t>& cols) {
  const std::size_t k = rows.size();
  auto meets = [&](std::size_t col, std::size_t row) { return ((col_masks[col] >> row) & 1U) != 0; };
  auto other_row = [&](std::size_t col, std::size_t row) {
    return static_cast<std::size_t>(std::countr_zero(col_masks[col] & row_mask & ~(std::uint64_t{1} << row)));
  };

  const std::size_t start = rows.front();
  std::vector<std::size_t> at_start;
  for (auto c : cols) if (meets(c, start)) at_start.push_back(c);
  const std::size_t forward = at_start[0];
  const std::size_t closing = at_start[1];

  CycleWitness out;
  out.rows.push_back(start);
  out.cols.push_back(closing);
  std::size_t via = forward;
  std::size_t row = other_row(forward, start);
  while (row != start) {
    out.rows.push_back(row);
    out.cols.push_back(via);
    std::size_t next = via;
    for (auto c : cols) {
      if (c != via && meets(c, row)) next = c;
    }
    via = next;
    row = other_row(via, row);
  }
  if (out.rows.size() != k) return std::nullopt;
  // Column 0 joins the last row and the first; column i joins rows i-1 and i.
  return out;
}

// Smallest cycle submatrix of order k in the reduced matrix, rows before
// columns, both lexicographic.
std::optional<CycleWitness> find_cycle_of_order(const std::vector<std::uint64_t>& col_masks, std::size_t num_rows,
                                                std::size_t k) {
  std::optional<CycleWitness> found;
  for_each_combination(num_rows, k, [&](const std::vector<std::size_t>& rows) {
    std::uint64_t row_mask = 0;
    for (auto r : rows) row_mask |= std::uint64_t{1} << r;
    std::vector<std::size_t> candidates;
    for (std::size_t c = 0; c < col_masks.size(); ++c) {
      if (std::popcount(col_masks[c] & row_mask) == 2) candidates.push_back(c);
    }
    if (candidates.size() < k) return false;

    // Pick k candidates so no row exceeds two 1s; then every row has exactly two.
    std::vector<int> load(64, 0);
    std::vector<std::size_t> chosen;
    auto search = [&](auto&& self, std::size_t from) -> bool {
      if (chosen.size() == k) {
        if (auto cyc = order_cycle(col_masks, row_mask, rows, chosen)) {
          found = std::move(cyc);
          return true;
        }
        return false;
      }
      for (std::size_t i = from; i + (k - chosen.size()) <= candidates.size(); ++i) {
        const std::uint64_t hit = col_masks[candidates[i]] & row_mask;
        bool ok = true;
        for (std::uint64_t b = hit; b; b &= b - 1) ok = ok && load[std::countr_zero(b)] < 2;
        if (!ok) continue;
        for (std::uint64_t b = hit; b; b &= b - 1) ++load[std::countr_zero(b)];
        chosen.push_back(candidates[i]);
        if (self(self, i + 1)) return true;
        chosen.pop_back();
        for (std::uint64_t b = hit; b; b &= b - 1) --load[std::countr_zero(b)];
      }
      return false;
    };
    return search(search, 0);
  });
  return found;
}

std::vector<std::uint64_t> reduced_col_masks(const ZeroOneMatrix& m, const Reduction& red) {
  std::vector<std::uint64_t> masks;
  for (auto c : red.cols) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < red.rows.size(); ++i) {
      if (m.at(red.rows[i], c)) mask |= std::uint64_t{1} << i;
    }
    masks.push_back(mask);
  }
  return masks;
}

MatrixCertificate inconclusive(const Reduction& red, std::size_t cap) {
  MatrixCertificate cert;
  cert.verdict = Verdict::Inconclusive;
  cert.note = "reduced matrix is " + std::to_string(red.rows.size()) + "x" + std::to_string(red.cols.size()) +
              ", above the cap of " + std::to_string(cap) + "; inconclusive at this cap";
  return cert;
}

MatrixCertificate cycle_certificate(const ZeroOneMatrix& m, std::size_t cap, bool odd_only) {
  const Reduction red = reduce(m);
  if (red.rows.size() > cap || red.cols.size() > cap) return inconclusive(red, cap);
  const auto masks = reduced_col_masks(m, red);
  const std::size_t limit = std::min(red.rows.size(), red.cols.size());
  for (std::size_t k = 3; k <= limit; k += odd_only ? 2 : 1) {
    if (auto cyc = find_cycle_of_order(masks, red.rows.size(), k)) {
      MatrixCertificate cert;
      cert.verdict = Verdict::Fail;
      for (auto r : cyc->rows) cert.rows.push_back(red.rows[r]);
      for (auto c : cyc->cols) cert.cols.push_back(red.cols[c]);
      cert.note = std::string(odd_only ? "odd" : "") + (odd_only ? " " : "") + "cycle submatrix of order " +
                  std::to_string(k);
      return cert;
    }
  }
  MatrixCertificate cert;
  cert.note = "no " + std::string(odd_only ? "odd " : "") + "cycle submatrix";
  return cert;
}

}  // namespace

MatrixCertificate is_balanced(const ZeroOneMatrix& m, std::size_t cap) { return cycle_certificate(m, cap, true); }

MatrixCertificate is_totally_balanced(const ZeroOneMatrix& m, std::size_t cap) {
  return cycle_certificate(m, cap, false);
}

MatrixCertificate is_totally_unimodular(const ZeroOneMatrix& m, std::size_t cap) {
  const Reduction red = reduce(m);
  if (red.rows.size() > cap || red.cols.size() > cap) return inconclusive(red, cap);
  const std::size_t limit = std::min(red.rows.size(), red.cols.size());
  std::vector<long long> entries;
  for (std::size_t k = 2; k <= limit; ++k) {
    MatrixCertificate cert;
    const bool hit = for_each_combination(red.rows.size(), k, [&](const std::vector<std::size_t>& rows) {
      return for_each_combination(red.cols.size(), k, [&](const std::vector<std::size_t>& cols) {
        entries.assign(k * k, 0);
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) entries[i * k + j] = m.at(red.rows[rows[i]], red.cols[cols[j]]) ? 1 : 0;
        }
        const long long det = determinant(entries, k);
        if (det >= -1 && det <= 1) return false;
        cert.verdict = Verdict::Fail;
        for (auto r : rows) cert.rows.push_back(red.rows[r]);
        for (auto c : cols) cert.cols.push_back(red.cols[c]);
        // Swapping two rows flips the sign; report the witness with det > 0.
        if (det < 0) std::swap(cert.rows[0], cert.rows[1]);
        cert.determinant = det < 0 ? -det : det;
        cert.note = "submatrix of order " + std::to_string(k) + " has determinant " + std::to_string(*cert.determinant);
        return true;
      });
    });
    if (hit) return cert;
  }
  MatrixCertificate cert;
  cert.note = "every square submatrix has determinant 0 or ±1";
  return cert;
}

bool is_cycle_submatrix(const ZeroOneMatrix& m, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) {
  const std::size_t k = rows.size();
  if (k < 2 || cols.size() != k) return false;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t row_ones = 0;
    std::size_t col_ones = 0;
    for (std::size_t j = 0; j < k; ++j) {
      row_ones += m.at(rows[i], cols[j]) ? 1 : 0;
      col_ones += m.at(rows[j], cols[i]) ? 1 : 0;
    }
    if (row_ones != 2 || col_ones != 2) return false;
  }
  // Single cycle: walk from the first row and count visited rows.
  std::vector<bool> seen_row(k, false);
  std::vector<bool> seen_col(k, false);
  std::size_t row = 0;
  std::size_t visited = 0;
  while (!seen_row[row]) {
    seen_row[row] = true;
    ++visited;
    std::size_t next_col = k;
    for (std::size_t j = 0; j < k; ++j) {
      if (!seen_col[j] && m.at(rows[row], cols[j])) {
        next_col = j;
        break;
      }
    }
    if (next_col == k) break;
    seen_col[next_col] = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (i != row && m.at(rows[i], cols[next_col])) {
        row = i;
        break;
      }
    }
  }
  return visited == k;
}

std::string render(const MatrixCertificate& cert, const ZeroOneMatrix& m) {
  std::ostringstream os;
  os << to_string(cert.verdict);
  if (!cert.note.empty()) os << ": " << cert.note;
  os << '\n';
  if (cert.verdict == Verdict::Fail) {
    os << m.submatrix(cert.rows, cert.cols).render();
    if (cert.determinant) os << "determinant = " << *cert.determinant << '\n';
  }
  return os.str();
}

}  // namespace compmatch
