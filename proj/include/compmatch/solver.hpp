#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compmatch/balance.hpp"
#include "compmatch/fractional.hpp"
#include "compmatch/pref_analysis.hpp"

namespace compmatch {

/// Every firm's acceptable sets, firm by firm, duplicates dropped.
std::vector<WorkerSet> acceptable_set_family(const Market& m);

/// Primitive acceptable sets of all firms, duplicates dropped.
std::vector<WorkerSet> primitive_set_family(const Market& m);

struct MarketCertificates {
  bool complementary = false;
  bool additive = false;
  ZeroOneMatrix acceptable_sets;
  MatrixCertificate balanced;
  MatrixCertificate totally_unimodular;
  /// Present when every firm is complementary.
  std::optional<ZeroOneMatrix> primitive_sets;
  std::optional<MatrixCertificate> primitive_balanced;
};

MarketCertificates certify_market(const Market& m, std::size_t cap = kDefaultCap);

/// Lines such as "acceptable sets balanced: PASS".
std::string render(const MarketCertificates& c);

enum class Strategy { Direct, Pipeline };
enum class Decompose { Sets, Components };

struct SolveOptions {
  Strategy strategy = Strategy::Direct;
  Decompose decompose = Decompose::Sets;
  /// Required by the pipeline strategy; the market is then the decomposed one.
  std::optional<FractionalMatching> fractional;
  std::size_t cap = kDefaultCap;
};

struct PipelineTrace {
  ConstraintSystem system;
  MatrixCertificate system_balanced;
  std::vector<int> z;
  std::vector<TransformationStep> steps;
  FractionalMatching integral;
  Matching decomposed_matching;
  DecomposedMarket decomposition;
  /// The market the input was decomposed from, rebuilt from `f#k` names.
  Market original;
};

struct SolveResult {
  std::optional<Matching> matching;
  MarketCertificates certificates;
  std::optional<PipelineTrace> pipeline;
  /// Search nodes visited by the direct search.
  std::size_t nodes = 0;
  std::vector<std::string> notes;
};

/// Complete search for a stable matching: firms in market order, each taking
/// one of its acceptable sets (best first) or nothing, sets pairwise
/// disjoint. Branches that already contain a certain blocking coalition are
/// cut. Returns the first stable matching in that order, or nothing after
/// exhausting the space.
std::optional<Matching> find_stable_matching(const Market& m, std::size_t* nodes = nullptr);

/// With Components, searches the component-decomposed market first and lifts
/// the result; falls back to the direct search when that yields nothing
/// stable. Throws MarketError for non-complementary firms in that mode.
std::optional<Matching> find_stable_matching(const Market& m, Decompose decompose, std::size_t* nodes = nullptr,
                                             std::vector<std::string>* notes = nullptr);

/// Throws std::invalid_argument for the pipeline strategy without a
/// fractional input; FractionalError / std::logic_error when the pipeline
/// cannot round the input. For the pipeline strategy the matching is over
/// `pipeline->original`.
SolveResult solve(const Market& m, const SolveOptions& options = {});

}  // namespace compmatch
