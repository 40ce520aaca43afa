#include "compmatch/stability.hpp"

namespace compmatch {

WorkerSet choose(const Market& m, std::size_t firm, WorkerSet available) {
  m.check_firm(firm, true);
  m.check_workers(available);
  if (firm == kNullFirm) return available;
  for (const WorkerSet& s : m.preference(firm).chain) {
    if (s.is_subset_of(available)) return s;
  }
  return {};
}

bool is_acceptable_set(const Market& m, std::size_t firm, WorkerSet s) {
  m.check_firm(firm, false);
  return !s.empty() && choose(m, firm, s) == s;
}

namespace {

std::vector<IrViolation> ir_violations(const Matching& mu, const Market& m) {
  validate_matching(mu, m);
  std::vector<IrViolation> out;
  for (std::size_t w = 0; w < m.num_workers(); ++w) {
    const std::size_t f = mu.firm_of(w);
    if (f != kNullFirm && !m.accepts(w, f)) {
      out.push_back({IrViolation::Agent::Worker, w,
                     m.workers()[w] + " prefers being unmatched to " + m.firms()[f]});
    }
  }
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    const WorkerSet assigned = mu.members(f);
    const WorkerSet kept = choose(m, f, assigned);
    if (kept != assigned) {
      out.push_back({IrViolation::Agent::Firm, f,
                     m.firms()[f] + " would keep only " + m.format_set(kept) + " of " + m.format_set(assigned)});
    }
  }
  return out;
}

}  // namespace

bool is_individually_rational(const Matching& mu, const Market& m) { return ir_violations(mu, m).empty(); }

BlockReport find_block(const Matching& mu, const Market& m) {
  BlockReport report;
  report.ir_violations = ir_violations(mu, m);
  if (!report.ir_violations.empty()) return report;

  // If (f,S) blocks, so does (f,Ch_f(S)): Ch_f(S) is acceptable, ranks at
  // least as high as S, and inherits the worker condition as a subset of S.
  // Searching acceptable sets is therefore enough.
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    const std::size_t current = m.set_rank(f, mu.members(f));
    const auto& chain = m.preference(f).chain;
    for (std::size_t i = 0; i < chain.size() && i < current; ++i) {
      const WorkerSet candidate = chain[i];
      if (choose(m, f, candidate) != candidate) continue;
      bool willing = true;
      candidate.for_each([&](std::size_t w) {
        if (willing && !m.weakly_prefers(w, f, mu.firm_of(w))) willing = false;
      });
      if (willing) {
        report.blocking = Blocking{f, candidate};
        return report;
      }
    }
  }
  return report;
}

bool is_stable(const Matching& mu, const Market& m) { return find_block(mu, m).empty(); }

std::string describe(const BlockReport& report, const Market& m) {
  if (report.empty()) return "stable";
  std::string out;
  for (const auto& v : report.ir_violations) out += "not individually rational: " + v.reason + "\n";
  if (report.blocking) {
    out += "blocking coalition: " + m.firms()[report.blocking->firm] + " with " +
           m.format_set(report.blocking->workers) + "\n";
  }
  return out;
}

}  // namespace compmatch
