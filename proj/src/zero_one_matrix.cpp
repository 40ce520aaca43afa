#include "compmatch/zero_one_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace compmatch {

namespace {

std::vector<std::string> default_labels(char prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, prefix) + std::to_string(i + 1));
  return out;
}

}  // namespace

ZeroOneMatrix::ZeroOneMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      bits_(row_labels_.size() * col_labels_.size(), 0) {}

ZeroOneMatrix::ZeroOneMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                             const std::vector<std::vector<int>>& entries)
    : ZeroOneMatrix(std::move(row_labels), std::move(col_labels)) {
  if (entries.size() != rows()) throw std::invalid_argument("ZeroOneMatrix: row count does not match labels");
  for (std::size_t r = 0; r < rows(); ++r) {
    if (entries[r].size() != cols()) throw std::invalid_argument("ZeroOneMatrix: ragged rows");
    for (std::size_t c = 0; c < cols(); ++c) {
      const int v = entries[r][c];
      if (v != 0 && v != 1) throw std::invalid_argument("ZeroOneMatrix: entries must be 0 or 1");
      set(r, c, v == 1);
    }
  }
}

ZeroOneMatrix ZeroOneMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t n = rows.empty() ? 0 : rows.front().size();
  return ZeroOneMatrix(default_labels('r', rows.size()), default_labels('c', n), rows);
}

ZeroOneMatrix ZeroOneMatrix::from_columns(const std::vector<std::vector<int>>& cols) {
  return from_rows(cols).transposed();
}

ZeroOneMatrix ZeroOneMatrix::submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
  std::vector<std::string> rl;
  std::vector<std::string> cl;
  for (auto r : rs) rl.push_back(row_labels_.at(r));
  for (auto c : cs) cl.push_back(col_labels_.at(c));
  ZeroOneMatrix out(std::move(rl), std::move(cl));
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = 0; j < cs.size(); ++j) out.set(i, j, at(rs[i], cs[j]));
  }
  return out;
}

ZeroOneMatrix ZeroOneMatrix::transposed() const {
  ZeroOneMatrix out(col_labels_, row_labels_);
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols(); ++c) out.set(c, r, at(r, c));
  }
  return out;
}

std::vector<std::vector<int>> ZeroOneMatrix::to_rows() const {
  std::vector<std::vector<int>> out(rows(), std::vector<int>(cols(), 0));
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols(); ++c) out[r][c] = at(r, c) ? 1 : 0;
  }
  return out;
}

std::string ZeroOneMatrix::render() const {
  std::size_t left = 0;
  for (const auto& l : row_labels_) left = std::max(left, l.size());
  std::vector<std::size_t> width(cols());
  for (std::size_t c = 0; c < cols(); ++c) width[c] = std::max<std::size_t>(1, col_labels_[c].size());

  std::ostringstream os;
  os << std::string(left, ' ') << " |";
  for (std::size_t c = 0; c < cols(); ++c) os << ' ' << col_labels_[c] << std::string(width[c] - col_labels_[c].size(), ' ');
  os << '\n' << std::string(left + 1, '-') << '+';
  for (std::size_t c = 0; c < cols(); ++c) os << std::string(width[c] + 1, '-');
  os << '\n';
  for (std::size_t r = 0; r < rows(); ++r) {
    os << row_labels_[r] << std::string(left - row_labels_[r].size(), ' ') << " |";
    for (std::size_t c = 0; c < cols(); ++c) os << ' ' << (at(r, c) ? '1' : '0') << std::string(width[c] - 1, ' ');
    os << '\n';
  }
  return os.str();
}

ZeroOneMatrix matrix_of_sets(const std::vector<WorkerSet>& sets, const std::vector<std::size_t>& ground,
                             const Market& m) {
  WorkerSet ground_set;
  std::vector<std::string> rl;
  for (auto w : ground) {
    if (w >= m.num_workers()) throw MarketError("ground set mentions an unknown worker");
    ground_set.insert(w);
    rl.push_back(m.workers()[w]);
  }
  std::vector<std::string> cl;
  for (const auto& s : sets) {
    if (!s.is_subset_of(ground_set)) throw MarketError("set " + m.format_set(s) + " is not contained in the ground set");
    cl.push_back(m.format_set(s));
  }
  ZeroOneMatrix out(std::move(rl), std::move(cl));
  for (std::size_t r = 0; r < ground.size(); ++r) {
    for (std::size_t c = 0; c < sets.size(); ++c) out.set(r, c, sets[c].contains(ground[r]));
  }
  return out;
}

ZeroOneMatrix matrix_of_sets(const std::vector<WorkerSet>& sets, const Market& m) {
  std::vector<std::size_t> ground(m.num_workers());
  std::iota(ground.begin(), ground.end(), std::size_t{0});
  return matrix_of_sets(sets, ground, m);
}

long long determinant(const ZeroOneMatrix& square) {
  const std::size_t n = square.rows();
  if (square.cols() != n) throw std::invalid_argument("determinant: matrix is not square");
  std::vector<long long> entries(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) entries[r * n + c] = square.at(r, c) ? 1 : 0;
  }
  return determinant(std::move(entries), n);
}

namespace {
__extension__ typedef __int128 Wide;
}  // namespace

long long determinant(std::vector<long long> entries, std::size_t n) {
  if (entries.size() != n * n) throw std::invalid_argument("determinant: expected n*n entries");
  if (n == 0) return 1;
  std::vector<Wide> a(entries.begin(), entries.end());
  auto at = [&](std::size_t r, std::size_t c) -> Wide& { return a[r * n + c]; };
  // Bareiss: every intermediate entry is a minor of the input, so the
  // divisions below are exact.
  Wide previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && at(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(pivot, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / previous;
      }
    }
    previous = at(k, k);
  }
  return static_cast<long long>(sign * at(n - 1, n - 1));
}

}  // namespace compmatch
