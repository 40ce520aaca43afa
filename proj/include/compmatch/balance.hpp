#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compmatch/zero_one_matrix.hpp"

namespace compmatch {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

/// Outcome of a matrix certification.
///
/// On Fail, `rows`/`cols` index the input matrix. Cycle witnesses (balanced,
/// totally balanced) are listed in cycle order: row i meets columns i and
/// i+1 (mod k), which is the circulant pattern after permutation. TU
/// witnesses carry the offending determinant.
struct MatrixCertificate {
  Verdict verdict = Verdict::Pass;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::optional<long long> determinant;
  std::string note;

  bool passed() const { return verdict == Verdict::Pass; }
};

/// Largest reduced dimension the exhaustive searches accept.
inline constexpr std::size_t kDefaultCap = 12;

/// Rows and columns that survive repeated deletion of lines holding at most
/// one 1. Such lines cannot belong to a cycle submatrix and, by Laplace
/// expansion, never create a determinant outside {0,±1} on their own.
struct Reduction {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};
Reduction reduce(const ZeroOneMatrix& m);

/// No odd-order square submatrix with exactly two 1s per row and column.
MatrixCertificate is_balanced(const ZeroOneMatrix& m, std::size_t cap = kDefaultCap);

/// Every square submatrix has determinant 0 or ±1.
MatrixCertificate is_totally_unimodular(const ZeroOneMatrix& m, std::size_t cap = kDefaultCap);

/// No submatrix is the incidence matrix of a cycle of length at least 3.
MatrixCertificate is_totally_balanced(const ZeroOneMatrix& m, std::size_t cap = kDefaultCap);

/// True when the listed submatrix is square and has exactly two 1s in every
/// row and column, forming a single cycle.
bool is_cycle_submatrix(const ZeroOneMatrix& m, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols);

std::string render(const MatrixCertificate& cert, const ZeroOneMatrix& m);

}  // namespace compmatch
