#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compmatch/market.hpp"

namespace compmatch {

/// Ch_f(S): the best chain set contained in S, or ∅. The null firm takes S.
WorkerSet choose(const Market& m, std::size_t firm, WorkerSet available);

/// S is acceptable to f when S is nonempty and Ch_f(S) = S.
bool is_acceptable_set(const Market& m, std::size_t firm, WorkerSet s);

struct IrViolation {
  enum class Agent { Worker, Firm };
  Agent agent;
  std::size_t index;
  std::string reason;
};

struct Blocking {
  std::size_t firm;
  WorkerSet workers;
  friend bool operator==(const Blocking&, const Blocking&) = default;
};

struct BlockReport {
  std::optional<Blocking> blocking;
  std::vector<IrViolation> ir_violations;

  bool empty() const { return !blocking && ir_violations.empty(); }
};

bool is_individually_rational(const Matching& mu, const Market& m);

/// Individual-rationality violations first; otherwise the first blocking
/// coalition in market firm order, acceptable sets best first.
BlockReport find_block(const Matching& mu, const Market& m);

bool is_stable(const Matching& mu, const Market& m);

std::string describe(const BlockReport& report, const Market& m);

}  // namespace compmatch
