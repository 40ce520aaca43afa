#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "compmatch/pref_analysis.hpp"
#include "compmatch/zero_one_matrix.hpp"

namespace compmatch {

using Rational = boost::rational<std::int64_t>;

std::string format_rational(const Rational& r);

/// Thrown for assignments that do not describe a (pseudo-)matching of the
/// continuum market, e.g. column sums other than 1.
class FractionalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Assignment in the continuum market built from a market whose firms each
/// have one acceptable set. A firm hires `levels[f]` of every worker type in
/// its set; `null_assignment[w]` of type w stays unmatched.
struct FractionalMatching {
  std::vector<Rational> levels;
  std::vector<Rational> null_assignment;

  /// Amount of worker type w held by firm f (kNullFirm for ø).
  Rational amount(const Market& m, std::size_t firm, std::size_t worker) const;
  bool is_integral() const;

  friend bool operator==(const FractionalMatching&, const FractionalMatching&) = default;
};

/// The firm's unique acceptable set; throws FractionalError when the firm
/// does not have exactly one.
WorkerSet leontief_set(const Market& m, std::size_t firm);

/// Table with one row per firm plus `null`, one column per worker type.
std::string render(const FractionalMatching& fm, const Market& m);

/// Integral assignments correspond one-to-one with matchings.
FractionalMatching from_matching(const Matching& mu, const Market& m);
Matching to_matching(const FractionalMatching& fm, const Market& m);

enum class Accounting {
  /// Every worker type is fully assigned (a matching).
  Full,
  /// Intermediate states of the rounding chain may over- or under-assign.
  Pseudo,
};

struct FractionalBlock {
  std::size_t firm;
  /// Per worker of the firm's set: amount the firm could still draw.
  std::vector<std::pair<std::size_t, Rational>> available;
};

struct FractionalReport {
  std::vector<std::string> ir_violations;
  std::optional<FractionalBlock> blocking;

  bool stable() const { return ir_violations.empty() && !blocking; }
};

/// (a) no worker type sits at a firm it finds unacceptable; (b) no firm
/// below level 1 can draw a positive amount of every type in its set from ø
/// or from firms those workers like less.
FractionalReport verify_fractional_stability(const FractionalMatching& fm, const Market& m,
                                             Accounting accounting = Accounting::Full);

std::string describe(const FractionalReport& report, const Market& m);

struct ConstraintColumn {
  enum class Kind { TakeSet, TakeEmpty, Null };
  Kind kind;
  std::size_t index;  // firm for TakeSet/TakeEmpty, worker for Null
};

struct ConstraintRow {
  enum class Kind { Firm, Worker };
  Kind kind;
  std::size_t index;
};

/// B z = rhs with z ∈ {0,1}: one pair of columns (set, ∅) per firm at a
/// fractional level, one ø column per worker type with a fractional null
/// amount; firm rows first, then one row per worker type.
struct ConstraintSystem {
  ZeroOneMatrix matrix;
  std::vector<ConstraintColumn> columns;
  std::vector<ConstraintRow> rows;
  std::vector<long long> rhs;

  /// The fractional assignment this system was built from, as a z vector.
  std::vector<Rational> point;

  std::string render() const;
  /// Columns of firms' sets only: what balancedness has to be checked on.
  ZeroOneMatrix acceptable_set_columns() const;
};

ConstraintSystem build_constraint_system(const FractionalMatching& fm, const Market& m);

/// A 0/1 solution of B z = rhs by backtracking with row propagation, trying
/// 1 before 0 on each column in order. Empty optional when none exists.
std::optional<std::vector<int>> extract_integral_solution(const ConstraintSystem& cs);

bool satisfies(const ConstraintSystem& cs, const std::vector<int>& z);

/// One rounding move of the chain.
struct TransformationStep {
  enum class Type { DropFirm, FillFirm, SetNull };  // types (i), (ii), (iii)
  Type type;
  std::size_t index;
  FractionalMatching result;
};

std::string describe(const TransformationStep& step, const Market& m);

/// Applies the moves selected by z one column pair at a time, in column order.
std::vector<TransformationStep> transformation_chain(const FractionalMatching& fm, const std::vector<int>& z,
                                                     const ConstraintSystem& cs, const Market& m);

/// Final state of the chain; throws std::logic_error when the result is not
/// a stable integral matching.
FractionalMatching apply_stable_transformations(const FractionalMatching& fm, const std::vector<int>& z,
                                                const ConstraintSystem& cs, const Market& m);

}  // namespace compmatch
