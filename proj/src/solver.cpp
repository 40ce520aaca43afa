#include "compmatch/solver.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "compmatch/stability.hpp"

namespace compmatch {

namespace {

void add_unique(std::vector<WorkerSet>& family, WorkerSet s) {
  if (std::find(family.begin(), family.end(), s) == family.end()) family.push_back(s);
}

}  // namespace

std::vector<WorkerSet> acceptable_set_family(const Market& m) {
  std::vector<WorkerSet> family;
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    for (WorkerSet s : acceptable_sets(m, f)) add_unique(family, s);
  }
  return family;
}

std::vector<WorkerSet> primitive_set_family(const Market& m) {
  std::vector<WorkerSet> family;
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    for (WorkerSet s : primitive_acceptable_sets(m, f)) add_unique(family, s);
  }
  return family;
}

MarketCertificates certify_market(const Market& m, std::size_t cap) {
  MarketCertificates c;
  c.complementary = true;
  c.additive = true;
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    c.complementary = c.complementary && is_complementary(m, f);
    c.additive = c.additive && is_additive(m, f);
  }
  c.acceptable_sets = matrix_of_sets(acceptable_set_family(m), m);
  c.balanced = is_balanced(c.acceptable_sets, cap);
  c.totally_unimodular = is_totally_unimodular(c.acceptable_sets, cap);
  if (c.complementary) {
    c.primitive_sets = matrix_of_sets(primitive_set_family(m), m);
    c.primitive_balanced = is_balanced(*c.primitive_sets, cap);
  }
  return c;
}

std::string render(const MarketCertificates& c) {
  std::ostringstream os;
  os << "complementary: " << (c.complementary ? "yes" : "no") << '\n';
  os << "additive: " << (c.additive ? "yes" : "no") << '\n';
  os << "acceptable sets balanced: " << to_string(c.balanced.verdict) << '\n';
  os << "acceptable sets totally unimodular: " << to_string(c.totally_unimodular.verdict) << '\n';
  if (c.primitive_balanced) os << "primitive sets balanced: " << to_string(c.primitive_balanced->verdict) << '\n';
  return os.str();
}

namespace {

class DirectSearch {
 public:
  explicit DirectSearch(const Market& m) : m_(m), mu_(m.num_workers()), chosen_(m.num_firms()) {
    for (std::size_t f = 0; f < m.num_firms(); ++f) {
      std::vector<WorkerSet> opts;
      for (WorkerSet s : acceptable_sets(m, f)) {
        bool willing = true;
        s.for_each([&](std::size_t w) { willing = willing && m.accepts(w, f); });
        if (willing) opts.push_back(s);
      }
      options_.push_back(std::move(opts));
      sets_.push_back(acceptable_sets(m, f));
    }
  }

  std::optional<Matching> run() {
    if (search(0)) return mu_;
    return std::nullopt;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  bool search(std::size_t f) {
    ++nodes_;
    if (f == m_.num_firms()) return is_stable(mu_, m_);
    auto try_set = [&](WorkerSet s) {
      if (s.intersects(taken_)) return false;
      s.for_each([&](std::size_t w) { mu_.assign(w, f); });
      taken_ |= s;
      chosen_[f] = s;
      const bool ok = !certainly_blocked(f) && search(f + 1);
      if (!ok) {
        s.for_each([&](std::size_t w) { mu_.assign(w, kNullFirm); });
        taken_ = taken_ - s;
        chosen_[f] = WorkerSet{};
      }
      return ok;
    };
    for (WorkerSet s : options_[f]) {
      if (try_set(s)) return true;
    }
    return try_set(WorkerSet{});
  }

  // A decided firm g blocks for sure once every worker of one of its better
  // acceptable sets will end up weakly below g whatever happens later.
  bool certainly_blocked(std::size_t decided) const {
    for (std::size_t g = 0; g <= decided; ++g) {
      const std::size_t current = m_.set_rank(g, chosen_[g]);
      for (const WorkerSet& better : sets_[g]) {
        if (m_.set_rank(g, better) >= current) break;
        bool sure = true;
        better.for_each([&](std::size_t w) {
          if (!sure) return;
          if (!m_.accepts(w, g)) {
            sure = false;
          } else if (taken_.contains(w)) {
            sure = m_.weakly_prefers(w, g, mu_.firm_of(w));
          } else {
            for (std::size_t k = decided + 1; k < m_.num_firms() && sure; ++k) {
              if (m_.prefers(w, k, g)) sure = false;
            }
          }
        });
        if (sure) return true;
      }
    }
    return false;
  }

  const Market& m_;
  Matching mu_;
  WorkerSet taken_;
  std::vector<WorkerSet> chosen_;
  std::vector<std::vector<WorkerSet>> options_;
  std::vector<std::vector<WorkerSet>> sets_;
  std::size_t nodes_ = 0;
};

PipelineTrace run_pipeline(const Market& m, const FractionalMatching& fm, std::size_t cap) {
  const auto report = verify_fractional_stability(fm, m);
  if (!report.stable()) throw FractionalError("fractional input is not stable: " + describe(report, m));
  PipelineTrace t;
  t.system = build_constraint_system(fm, m);
  t.system_balanced = is_balanced(t.system.acceptable_set_columns(), cap);
  auto z = extract_integral_solution(t.system);
  if (!z) {
    throw std::logic_error("no 0/1 solution of B z = rhs; acceptable-set columns balanced: " +
                           to_string(t.system_balanced.verdict) + ", full B balanced: " +
                           to_string(is_balanced(t.system.matrix, cap).verdict));
  }
  t.z = *z;
  t.steps = transformation_chain(fm, t.z, t.system, m);
  t.integral = apply_stable_transformations(fm, t.z, t.system, m);
  t.decomposed_matching = to_matching(t.integral, m);
  t.decomposition = recover_decomposition(m);
  t.original = reassemble_market(t.decomposition);
  return t;
}

}  // namespace

std::optional<Matching> find_stable_matching(const Market& m, std::size_t* nodes) {
  DirectSearch search(m);
  auto result = search.run();
  if (nodes) *nodes = search.nodes();
  return result;
}

std::optional<Matching> find_stable_matching(const Market& m, Decompose decompose, std::size_t* nodes,
                                             std::vector<std::string>* notes) {
  std::size_t visited = 0;
  auto note = [&](std::string text) {
    if (notes) notes->push_back(std::move(text));
  };
  if (decompose == Decompose::Components) {
    const DecomposedMarket d = decompose_by_components(m);
    auto sub = find_stable_matching(d.market, &visited);
    if (sub) {
      Matching lifted = lift_matching(*sub, d);
      if (is_stable(lifted, m)) {
        if (nodes) *nodes = visited;
        return lifted;
      }
      note("lifted matching from the component market is not stable; searching directly");
    } else {
      note("component market has no stable matching; searching directly");
    }
  }
  std::size_t direct = 0;
  auto result = find_stable_matching(m, &direct);
  if (nodes) *nodes = visited + direct;
  return result;
}

SolveResult solve(const Market& m, const SolveOptions& options) {
  SolveResult result;
  if (options.strategy == Strategy::Pipeline) {
    if (!options.fractional) throw std::invalid_argument("pipeline strategy needs a fractional matching");
    PipelineTrace trace = run_pipeline(m, *options.fractional, options.cap);
    Matching lifted = lift_matching(trace.decomposed_matching, trace.decomposition);
    if (!is_stable(lifted, trace.original)) result.notes.push_back("lifted matching is not stable in the original market");
    result.matching = std::move(lifted);
    result.certificates = certify_market(trace.original, options.cap);
    result.pipeline = std::move(trace);
    return result;
  }

  result.certificates = certify_market(m, options.cap);
  if (options.decompose == Decompose::Components && !result.certificates.complementary) {
    throw MarketError("component decomposition needs complementary firms");
  }
  result.matching = find_stable_matching(m, options.decompose, &result.nodes, &result.notes);
  return result;
}

}  // namespace compmatch
