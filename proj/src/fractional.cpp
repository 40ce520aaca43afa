#include "compmatch/fractional.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "compmatch/stability.hpp"

namespace compmatch {

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

WorkerSet leontief_set(const Market& m, std::size_t firm) {
  const auto sets = acceptable_sets(m, firm);
  if (sets.size() != 1) {
    throw FractionalError("firm " + m.firms().at(firm) + " has " + std::to_string(sets.size()) +
                          " acceptable sets; continuum firms need exactly one");
  }
  return sets.front();
}

Rational FractionalMatching::amount(const Market& m, std::size_t firm, std::size_t worker) const {
  if (firm == kNullFirm) return null_assignment.at(worker);
  return leontief_set(m, firm).contains(worker) ? levels.at(firm) : Rational(0);
}

bool FractionalMatching::is_integral() const {
  auto integral = [](const Rational& r) { return r == Rational(0) || r == Rational(1); };
  return std::all_of(levels.begin(), levels.end(), integral) &&
         std::all_of(null_assignment.begin(), null_assignment.end(), integral);
}

namespace {

std::vector<WorkerSet> leontief_sets(const Market& m) {
  std::vector<WorkerSet> sets;
  for (std::size_t f = 0; f < m.num_firms(); ++f) sets.push_back(leontief_set(m, f));
  return sets;
}

void check_shape(const FractionalMatching& fm, const Market& m) {
  if (fm.levels.size() != m.num_firms() || fm.null_assignment.size() != m.num_workers()) {
    throw FractionalError("fractional matching has " + std::to_string(fm.levels.size()) + " firm rows and " +
                          std::to_string(fm.null_assignment.size()) + " worker columns; market has " +
                          std::to_string(m.num_firms()) + " and " + std::to_string(m.num_workers()));
  }
  for (const auto& v : fm.levels) {
    if (v < Rational(0)) throw FractionalError("negative firm level " + format_rational(v));
  }
  for (const auto& v : fm.null_assignment) {
    if (v < Rational(0)) throw FractionalError("negative unmatched amount " + format_rational(v));
  }
}

void check_accounting(const FractionalMatching& fm, const Market& m, const std::vector<WorkerSet>& sets) {
  for (std::size_t w = 0; w < m.num_workers(); ++w) {
    Rational total = fm.null_assignment[w];
    for (std::size_t f = 0; f < m.num_firms(); ++f) {
      if (sets[f].contains(w)) total += fm.levels[f];
    }
    if (total != Rational(1)) {
      throw FractionalError("worker type " + m.workers()[w] + " is assigned " + format_rational(total) +
                            " in total, expected 1");
    }
  }
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    if (fm.levels[f] > Rational(1)) throw FractionalError("firm " + m.firms()[f] + " has level above 1");
  }
}

}  // namespace

std::string render(const FractionalMatching& fm, const Market& m) {
  check_shape(fm, m);
  const auto sets = leontief_sets(m);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{""};
  for (const auto& w : m.workers()) header.push_back(w);
  cells.push_back(header);
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    std::vector<std::string> row{m.firms()[f]};
    for (std::size_t w = 0; w < m.num_workers(); ++w) {
      row.push_back(format_rational(sets[f].contains(w) ? fm.levels[f] : Rational(0)));
    }
    cells.push_back(row);
  }
  std::vector<std::string> null_row{"ø"};
  for (const auto& v : fm.null_assignment) null_row.push_back(format_rational(v));
  cells.push_back(null_row);

  std::vector<std::size_t> width(header.size(), 0);
  auto display = [](const std::string& s) {
    // "ø" is two bytes, one column.
    return s == "ø" ? std::size_t{1} : s.size();
  };
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], display(row[c]));
  }
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << (c == 1 ? " | " : "  ");
      os << row[c] << std::string(width[c] - display(row[c]), ' ');
    }
    os << '\n';
  }
  return os.str();
}

FractionalMatching from_matching(const Matching& mu, const Market& m) {
  validate_matching(mu, m);
  const auto sets = leontief_sets(m);
  FractionalMatching fm;
  fm.levels.assign(m.num_firms(), 0);
  fm.null_assignment.assign(m.num_workers(), 0);
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    const WorkerSet held = mu.members(f);
    if (held.empty()) continue;
    if (held != sets[f]) {
      throw FractionalError("firm " + m.firms()[f] + " holds " + m.format_set(held) + ", not its acceptable set");
    }
    fm.levels[f] = 1;
  }
  mu.members(kNullFirm).for_each([&](std::size_t w) { fm.null_assignment[w] = 1; });
  return fm;
}

Matching to_matching(const FractionalMatching& fm, const Market& m) {
  check_shape(fm, m);
  if (!fm.is_integral()) throw FractionalError("fractional matching is not integral");
  const auto sets = leontief_sets(m);
  check_accounting(fm, m, sets);
  std::vector<std::pair<std::size_t, WorkerSet>> held;
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    if (fm.levels[f] == Rational(1)) held.emplace_back(f, sets[f]);
  }
  return Matching::from_firm_sets(m.num_workers(), held);
}

FractionalReport verify_fractional_stability(const FractionalMatching& fm, const Market& m, Accounting accounting) {
  check_shape(fm, m);
  const auto sets = leontief_sets(m);
  if (accounting == Accounting::Full) check_accounting(fm, m, sets);

  FractionalReport report;
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    if (fm.levels[f] == Rational(0)) continue;
    sets[f].for_each([&](std::size_t w) {
      if (!m.accepts(w, f)) {
        report.ir_violations.push_back("worker type " + m.workers()[w] + " is held by " + m.firms()[f] +
                                       ", which it finds unacceptable");
      }
    });
  }
  if (!report.ir_violations.empty()) return report;

  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    if (fm.levels[f] >= Rational(1)) continue;
    FractionalBlock block{f, {}};
    bool draws_all = true;
    sets[f].for_each([&](std::size_t w) {
      Rational available = 0;
      if (m.accepts(w, f)) {
        available = fm.null_assignment[w];
        for (std::size_t g = 0; g < m.num_firms(); ++g) {
          if (g != f && sets[g].contains(w) && m.prefers(w, f, g)) available += fm.levels[g];
        }
      }
      block.available.emplace_back(w, available);
      draws_all = draws_all && available > Rational(0);
    });
    if (draws_all) {
      report.blocking = std::move(block);
      return report;
    }
  }
  return report;
}

std::string describe(const FractionalReport& report, const Market& m) {
  if (report.stable()) return "stable";
  std::ostringstream os;
  for (const auto& v : report.ir_violations) os << "not individually rational: " << v << '\n';
  if (report.blocking) {
    os << "blocking firm " << m.firms()[report.blocking->firm] << " can draw";
    for (const auto& [w, amount] : report.blocking->available) {
      os << ' ' << m.workers()[w] << '=' << format_rational(amount);
    }
    os << '\n';
  }
  return os.str();
}

ConstraintSystem build_constraint_system(const FractionalMatching& fm, const Market& m) {
  check_shape(fm, m);
  const auto sets = leontief_sets(m);
  auto fractional = [](const Rational& r) { return r > Rational(0) && r < Rational(1); };

  ConstraintSystem cs;
  std::vector<std::string> col_labels;
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    if (!fractional(fm.levels[f])) continue;
    cs.columns.push_back({ConstraintColumn::Kind::TakeSet, f});
    cs.columns.push_back({ConstraintColumn::Kind::TakeEmpty, f});
    col_labels.push_back(m.firms()[f] + ":" + m.format_set(sets[f]));
    col_labels.push_back(m.firms()[f] + ":{}");
    cs.point.push_back(fm.levels[f]);
    cs.point.push_back(1 - fm.levels[f]);
  }
  for (std::size_t w = 0; w < m.num_workers(); ++w) {
    if (!fractional(fm.null_assignment[w])) continue;
    cs.columns.push_back({ConstraintColumn::Kind::Null, w});
    col_labels.push_back("ø:" + m.workers()[w]);
    cs.point.push_back(fm.null_assignment[w]);
  }

  std::vector<std::string> row_labels;
  for (const auto& c : cs.columns) {
    if (c.kind == ConstraintColumn::Kind::TakeSet) {
      cs.rows.push_back({ConstraintRow::Kind::Firm, c.index});
      row_labels.push_back(m.firms()[c.index]);
      cs.rhs.push_back(1);
    }
  }
  for (std::size_t w = 0; w < m.num_workers(); ++w) {
    cs.rows.push_back({ConstraintRow::Kind::Worker, w});
    row_labels.push_back(m.workers()[w]);
    long long rhs = 1;
    if (fm.null_assignment[w] == Rational(1)) --rhs;
    for (std::size_t f = 0; f < m.num_firms(); ++f) {
      if (sets[f].contains(w) && fm.levels[f] == Rational(1)) --rhs;
    }
    cs.rhs.push_back(rhs);
  }
  if (cs.columns.empty()) {
    // Nothing left to round: the system is empty.
    cs.rows.clear();
    cs.rhs.clear();
    row_labels.clear();
  }

  cs.matrix = ZeroOneMatrix(row_labels, col_labels);
  for (std::size_t r = 0; r < cs.rows.size(); ++r) {
    const ConstraintRow& row = cs.rows[r];
    for (std::size_t c = 0; c < cs.columns.size(); ++c) {
      const ConstraintColumn& col = cs.columns[c];
      bool one = false;
      if (row.kind == ConstraintRow::Kind::Firm) {
        one = col.kind != ConstraintColumn::Kind::Null && col.index == row.index;
      } else if (col.kind == ConstraintColumn::Kind::TakeSet) {
        one = sets[col.index].contains(row.index);
      } else if (col.kind == ConstraintColumn::Kind::Null) {
        one = col.index == row.index;
      }
      cs.matrix.set(r, c, one);
    }
  }
  return cs;
}

std::string ConstraintSystem::render() const {
  std::ostringstream os;
  os << matrix.render();
  os << "rhs:";
  for (auto v : rhs) os << ' ' << v;
  os << '\n';
  return os.str();
}

ZeroOneMatrix ConstraintSystem::acceptable_set_columns() const {
  std::vector<std::size_t> rs;
  std::vector<std::size_t> cs;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].kind == ConstraintRow::Kind::Worker) rs.push_back(r);
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].kind == ConstraintColumn::Kind::TakeSet) cs.push_back(c);
  }
  return matrix.submatrix(rs, cs);
}

bool satisfies(const ConstraintSystem& cs, const std::vector<int>& z) {
  if (z.size() != cs.columns.size()) return false;
  for (std::size_t r = 0; r < cs.rows.size(); ++r) {
    long long sum = 0;
    for (std::size_t c = 0; c < z.size(); ++c) {
      if (z[c] != 0 && z[c] != 1) return false;
      if (cs.matrix.at(r, c)) sum += z[c];
    }
    if (sum != cs.rhs[r]) return false;
  }
  return true;
}

namespace {

// Depth-first 0/1 assignment with propagation: a row whose remaining free
// columns are all forced (sum already reached, or every free column needed)
// fixes them before the next branch.
class Extractor {
 public:
  explicit Extractor(const ConstraintSystem& cs) : cs_(cs), z_(cs.columns.size(), -1) {
    for (std::size_t r = 0; r < cs.rows.size(); ++r) {
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < cs.columns.size(); ++c) {
        if (cs.matrix.at(r, c)) cols.push_back(c);
      }
      row_cols_.push_back(std::move(cols));
    }
  }

  std::optional<std::vector<int>> run() {
    if (!search()) return std::nullopt;
    return z_;
  }

 private:
  // Returns false on contradiction. Records assignments on the trail.
  bool propagate(std::vector<std::size_t>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t r = 0; r < row_cols_.size(); ++r) {
        long long sum = 0;
        long long free = 0;
        for (auto c : row_cols_[r]) {
          if (z_[c] == 1) ++sum;
          if (z_[c] < 0) ++free;
        }
        const long long need = cs_.rhs[r] - sum;
        if (need < 0 || need > free) return false;
        if (free == 0 || (need != 0 && need != free)) continue;
        const int value = need == 0 ? 0 : 1;
        for (auto c : row_cols_[r]) {
          if (z_[c] < 0) {
            z_[c] = value;
            trail.push_back(c);
          }
        }
        changed = true;
      }
    }
    return true;
  }

  bool search() {
    std::vector<std::size_t> trail;
    if (!propagate(trail)) {
      undo(trail);
      return false;
    }
    const auto next = std::find(z_.begin(), z_.end(), -1);
    if (next == z_.end()) return true;
    const std::size_t c = static_cast<std::size_t>(next - z_.begin());
    for (int value : {1, 0}) {
      z_[c] = value;
      if (search()) return true;
      z_[c] = -1;
    }
    undo(trail);
    return false;
  }

  void undo(const std::vector<std::size_t>& trail) {
    for (auto c : trail) z_[c] = -1;
  }

  const ConstraintSystem& cs_;
  std::vector<int> z_;
  std::vector<std::vector<std::size_t>> row_cols_;
};

}  // namespace

std::optional<std::vector<int>> extract_integral_solution(const ConstraintSystem& cs) {
  auto z = Extractor(cs).run();
  if (z && !satisfies(cs, *z)) throw std::logic_error("extracted vector does not satisfy the system");
  return z;
}

std::string describe(const TransformationStep& step, const Market& m) {
  switch (step.type) {
    case TransformationStep::Type::DropFirm: return "type (i): match " + m.firms()[step.index] + " with 0";
    case TransformationStep::Type::FillFirm:
      return "type (ii): match " + m.firms()[step.index] + " with 1 of each type in " +
             m.format_set(leontief_set(m, step.index));
    case TransformationStep::Type::SetNull:
      return "type (iii): set unmatched " + m.workers()[step.index] + " to " +
             format_rational(step.result.null_assignment[step.index]);
  }
  return "";
}

std::vector<TransformationStep> transformation_chain(const FractionalMatching& fm, const std::vector<int>& z,
                                                     const ConstraintSystem& cs, const Market& m) {
  if (!satisfies(cs, z)) throw std::invalid_argument("z does not satisfy B z = rhs");
  std::vector<TransformationStep> steps;
  FractionalMatching current = fm;
  for (std::size_t c = 0; c < cs.columns.size(); ++c) {
    const ConstraintColumn& col = cs.columns[c];
    if (col.kind == ConstraintColumn::Kind::TakeEmpty) continue;
    TransformationStep step;
    step.index = col.index;
    if (col.kind == ConstraintColumn::Kind::TakeSet) {
      step.type = z[c] == 1 ? TransformationStep::Type::FillFirm : TransformationStep::Type::DropFirm;
      current.levels[col.index] = z[c];
    } else {
      step.type = TransformationStep::Type::SetNull;
      current.null_assignment[col.index] = z[c];
    }
    step.result = current;
    steps.push_back(std::move(step));
  }
  (void)m;
  return steps;
}

FractionalMatching apply_stable_transformations(const FractionalMatching& fm, const std::vector<int>& z,
                                                const ConstraintSystem& cs, const Market& m) {
  const auto steps = transformation_chain(fm, z, cs, m);
  FractionalMatching result = steps.empty() ? fm : steps.back().result;
  for (const auto& step : steps) {
    const auto report = verify_fractional_stability(step.result, m, Accounting::Pseudo);
    if (!report.stable()) {
      throw std::logic_error("stability lost after " + describe(step, m) + ": " + describe(report, m));
    }
  }
  if (!result.is_integral()) throw std::logic_error("transformations left a fractional entry");
  const auto report = verify_fractional_stability(result, m, Accounting::Full);
  if (!report.stable()) throw std::logic_error("integral result is not stable: " + describe(report, m));
  return result;
}

}  // namespace compmatch
