#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "compmatch/market.hpp"

namespace compmatch {

/// Dense 0-1 matrix with row and column labels.
class ZeroOneMatrix {
 public:
  ZeroOneMatrix() = default;
  ZeroOneMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels);
  ZeroOneMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                const std::vector<std::vector<int>>& entries);

  /// Unlabelled matrix from rows of 0/1 values; labels default to r1.., c1...
  static ZeroOneMatrix from_rows(const std::vector<std::vector<int>>& rows);
  /// Columns given as 0/1 vectors (handy for demand-type vectors).
  static ZeroOneMatrix from_columns(const std::vector<std::vector<int>>& cols);

  std::size_t rows() const { return row_labels_.size(); }
  std::size_t cols() const { return col_labels_.size(); }

  bool at(std::size_t r, std::size_t c) const { return bits_.at(r * cols() + c) != 0; }
  void set(std::size_t r, std::size_t c, bool value) { bits_.at(r * cols() + c) = value ? 1 : 0; }

  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  ZeroOneMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  ZeroOneMatrix transposed() const;

  std::vector<std::vector<int>> to_rows() const;

  /// Aligned table with row legends on the left and column legends on top.
  std::string render() const;

  friend bool operator==(const ZeroOneMatrix&, const ZeroOneMatrix&) = default;

 private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  std::vector<std::uint8_t> bits_;
};

/// Columns are the indicator vectors of `sets` over `ground` (rows, in order).
/// Throws MarketError when a set mentions a worker outside `ground`.
ZeroOneMatrix matrix_of_sets(const std::vector<WorkerSet>& sets, const std::vector<std::size_t>& ground,
                             const Market& m);
/// Same, with every worker of m as a row.
ZeroOneMatrix matrix_of_sets(const std::vector<WorkerSet>& sets, const Market& m);

/// Exact determinant of a square 0-1 matrix (fraction-free elimination).
long long determinant(const ZeroOneMatrix& square);
/// Exact determinant of an n×n integer matrix given row-major.
long long determinant(std::vector<long long> entries, std::size_t n);

}  // namespace compmatch
