#include "compmatch/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "compmatch/hypergraph.hpp"
#include "compmatch/io.hpp"
#include "compmatch/oracle.hpp"
#include "compmatch/solver.hpp"
#include "compmatch/stability.hpp"

namespace compmatch {

namespace {

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int worst(int a, int b) {
  // FAIL outranks INCONCLUSIVE outranks PASS.
  auto rank = [](int c) { return c == exit_code::kFail ? 2 : c == exit_code::kInconclusive ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

int code_of(Verdict v) {
  switch (v) {
    case Verdict::Pass: return exit_code::kPass;
    case Verdict::Fail: return exit_code::kFail;
    case Verdict::Inconclusive: return exit_code::kInconclusive;
  }
  return exit_code::kFail;
}

std::string load(const std::string& path) {
  try {
    return read_file(path);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

// Parse errors carry the file name in front of line:column.
template <class F>
auto parse_file(const std::string& path, F&& parse) {
  const std::string text = load(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    if (e.line() == 0) throw ParseError(path + ": " + e.message(), 0, 0);
    throw ParseError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.message(), 0,
                     0);
  }
}

Json names_of(WorkerSet s, const std::vector<std::string>& names) {
  Json out = Json::array();
  s.for_each([&](std::size_t i) { out.push_back(names[i]); });
  return out;
}

Json matching_json(const Matching& mu, const Market& m) {
  Json out = Json::object();
  for (std::size_t f = 0; f < m.num_firms(); ++f) out[m.firms()[f]] = names_of(mu.members(f), m.workers());
  out["unmatched"] = names_of(mu.members(kNullFirm), m.workers());
  return out;
}

Json certificate_json(const std::string& name, const MatrixCertificate& c, const ZeroOneMatrix& m) {
  Json out{{"check", name}, {"verdict", to_string(c.verdict)}, {"note", c.note}};
  if (c.verdict == Verdict::Fail) {
    Json rows = Json::array();
    Json cols = Json::array();
    for (auto r : c.rows) rows.push_back(m.row_labels()[r]);
    for (auto col : c.cols) cols.push_back(m.col_labels()[col]);
    out["rows"] = rows;
    out["cols"] = cols;
    out["submatrix"] = m.submatrix(c.rows, c.cols).to_rows();
    if (c.determinant) out["determinant"] = *c.determinant;
  }
  return out;
}

Json certificates_json(const MarketCertificates& c) {
  Json out{{"complementary", c.complementary},
           {"additive", c.additive},
           {"balanced", to_string(c.balanced.verdict)},
           {"totally_unimodular", to_string(c.totally_unimodular.verdict)}};
  if (c.primitive_balanced) out["primitive_balanced"] = to_string(c.primitive_balanced->verdict);
  return out;
}

std::string market_list(const Market& m, std::size_t w) {
  std::string out;
  for (auto f : m.preference_list(w)) out += (out.empty() ? "" : " ≻ ") + m.firms()[f];
  return out.empty() ? "(no acceptable firm)" : out;
}

struct Output {
  std::ostream& out;
  bool json;
  Json doc = Json::object();
};

// ---- check ----------------------------------------------------------------

struct CheckFlags {
  std::string path;
  bool balanced = false, tu = false, totally_balanced = false, odd_cycles = false, firm_worker = false,
       complementary = false, additive = false, primitive = false;
  std::size_t cap = kDefaultCap;
};

int run_check(const CheckFlags& flags, Output& o) {
  const Market m = parse_file(flags.path, parse_market);
  const bool none = !(flags.balanced || flags.tu || flags.totally_balanced || flags.odd_cycles || flags.firm_worker ||
                      flags.complementary || flags.additive);
  int code = exit_code::kPass;
  Json results = Json::array();
  std::ostringstream text;

  std::optional<ZeroOneMatrix> matrix;
  auto set_matrix = [&]() -> const ZeroOneMatrix& {
    if (!matrix) {
      if (flags.primitive) {
        for (std::size_t f = 0; f < m.num_firms(); ++f) {
          if (!is_complementary(m, f)) throw MarketError("primitive sets need complementary firms; " + m.firms()[f] + " is not");
        }
        matrix = matrix_of_sets(primitive_set_family(m), m);
      } else {
        matrix = matrix_of_sets(acceptable_set_family(m), m);
      }
      text << (flags.primitive ? "primitive" : "acceptable") << " sets:\n" << matrix->render() << '\n';
    }
    return *matrix;
  };
  auto matrix_check = [&](const std::string& name, MatrixCertificate (*check)(const ZeroOneMatrix&, std::size_t)) {
    const ZeroOneMatrix& mat = set_matrix();
    const MatrixCertificate cert = check(mat, flags.cap);
    text << name << ": " << render(cert, mat);
    results.push_back(certificate_json(name, cert, mat));
    code = worst(code, code_of(cert.verdict));
  };
  auto hypergraph_check = [&](const std::string& name, const Hypergraph& h) {
    const auto cert = check_hypergraph_balanced(h);
    Json j{{"check", name}, {"verdict", to_string(cert.verdict)}};
    text << name << ": " << to_string(cert.verdict);
    if (cert.witness) {
      text << ": odd cycle " << format_cycle(h, *cert.witness);
      Json vs = Json::array();
      Json es = Json::array();
      for (auto v : cert.witness->vertices) vs.push_back(h.vertices[v]);
      for (auto e : cert.witness->edges) es.push_back(h.edges[e].label);
      j["cycle_vertices"] = vs;
      j["cycle_edges"] = es;
    } else {
      text << ": every odd cycle has an edge holding three of its vertices";
    }
    text << '\n';
    results.push_back(j);
    code = worst(code, code_of(cert.verdict));
  };

  if (flags.balanced || none) matrix_check("balanced", is_balanced);
  if (flags.tu) matrix_check("totally unimodular", is_totally_unimodular);
  if (flags.totally_balanced) matrix_check("totally balanced", is_totally_balanced);
  if (flags.odd_cycles) hypergraph_check("acceptable-set hypergraph balanced", acceptable_set_hypergraph(m));
  if (flags.firm_worker) hypergraph_check("firm-worker hypergraph balanced", firm_worker_hypergraph(m));
  if (flags.complementary) {
    Json j{{"check", "complementary"}, {"verdict", "PASS"}};
    text << "complementary:";
    bool ok = true;
    for (std::size_t f = 0; f < m.num_firms(); ++f) {
      if (auto v = complementarity_violation(m, f)) {
        ok = false;
        const std::string why = m.firms()[f] + " drops " + m.workers()[v->dropped] + " when " + m.workers()[v->added] +
                                " joins " + m.format_set(v->available);
        text << "\n  " << why;
        j["witness"] = why;
        break;
      }
    }
    j["verdict"] = ok ? "PASS" : "FAIL";
    text << (ok ? " PASS\n" : "\n  FAIL\n");
    results.push_back(j);
    code = worst(code, ok ? exit_code::kPass : exit_code::kFail);
  }
  if (flags.additive) {
    Json j{{"check", "additive"}, {"verdict", "PASS"}};
    text << "additive:";
    bool ok = true;
    for (std::size_t f = 0; f < m.num_firms(); ++f) {
      if (auto v = additivity_violation(m, f)) {
        ok = false;
        const std::string why = m.firms()[f] + " accepts " + m.format_set(v->first) + " and " +
                                m.format_set(v->second) + " but not their union";
        text << "\n  " << why;
        j["witness"] = why;
        break;
      }
    }
    j["verdict"] = ok ? "PASS" : "FAIL";
    text << (ok ? " PASS\n" : "\n  FAIL\n");
    results.push_back(j);
    code = worst(code, ok ? exit_code::kPass : exit_code::kFail);
  }
  o.doc["results"] = results;
  if (!o.json) o.out << text.str();
  return code;
}

// ---- solve ----------------------------------------------------------------

struct SolveFlags {
  std::string path;
  std::string strategy = "direct";
  std::string fractional;
  std::string decompose = "sets";
  std::size_t cap = kDefaultCap;
};

std::string z_string(const std::vector<int>& z) {
  std::string out = "(";
  for (std::size_t i = 0; i < z.size(); ++i) out += (i ? "," : "") + std::to_string(z[i]);
  return out + ")";
}

int run_solve(const SolveFlags& flags, Output& o) {
  const Market m = parse_file(flags.path, parse_market);
  SolveOptions options;
  options.cap = flags.cap;
  options.decompose = flags.decompose == "components" ? Decompose::Components : Decompose::Sets;
  options.strategy = flags.strategy == "pipeline" ? Strategy::Pipeline : Strategy::Direct;
  if (options.strategy == Strategy::Pipeline) {
    if (flags.fractional.empty()) throw CLI::ValidationError("--fractional", "the pipeline strategy needs --fractional");
    options.fractional = parse_file(flags.fractional, [&](const std::string& t) { return parse_fractional(t, m); });
  }
  const SolveResult r = solve(m, options);
  std::ostringstream text;
  const Market& target = r.pipeline ? r.pipeline->original : m;

  if (r.pipeline) {
    const PipelineTrace& t = *r.pipeline;
    text << "fractional matching M:\n" << render(*options.fractional, m) << '\n';
    text << "constraint system B:\n" << t.system.render() << '\n';
    text << "acceptable-set columns balanced: " << to_string(t.system_balanced.verdict) << '\n';
    text << "z = " << z_string(t.z) << "\n\n";
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      text << "(" << i + 1 << ") " << describe(t.steps[i], m) << '\n' << render(t.steps[i].result, m) << '\n';
    }
    text << "integral matching M':\n" << render(t.integral, m) << '\n';
    text << "matching in the decomposed market:\n" << format_matching(t.decomposed_matching, m) << '\n';
    text << "lifted matching:\n";

    Json steps = Json::array();
    for (const auto& s : t.steps) steps.push_back(describe(s, m));
    o.doc["system"] = {{"rows", t.system.matrix.row_labels()},
                       {"cols", t.system.matrix.col_labels()},
                       {"matrix", t.system.matrix.to_rows()},
                       {"rhs", t.system.rhs}};
    o.doc["acceptable_columns_balanced"] = to_string(t.system_balanced.verdict);
    o.doc["z"] = t.z;
    o.doc["steps"] = steps;
    o.doc["decomposed_matching"] = matching_json(t.decomposed_matching, m);
  }
  for (const auto& n : r.notes) text << "note: " << n << '\n';
  if (r.matching) {
    if (!r.pipeline) text << "stable matching:\n";
    text << format_matching(*r.matching, target) << '\n';
    o.doc["matching"] = matching_json(*r.matching, target);
    o.doc["stable"] = is_stable(*r.matching, target);
  } else {
    text << "NONE: no stable matching exists\n";
    o.doc["matching"] = nullptr;
  }
  text << '\n' << render(r.certificates);
  o.doc["certificates"] = certificates_json(r.certificates);
  o.doc["search_nodes"] = r.nodes;
  if (!o.json) o.out << text.str();
  return r.matching ? exit_code::kPass : exit_code::kFail;
}

// ---- tree -----------------------------------------------------------------

struct TreeFlags {
  std::string path;
  bool validate = false, matrix = false, permute = false, engagement = false, outline = false, json_format = false;
  std::size_t cap = kDefaultCap;
};

int run_tree(const TreeFlags& flags, Output& o) {
  const TechnologyTree t = parse_file(flags.path, [](const std::string& s) { return parse_tree(s); });
  const bool none = !(flags.validate || flags.matrix || flags.permute || flags.engagement || flags.outline ||
                      flags.json_format);
  int code = exit_code::kPass;
  std::ostringstream text;

  if (flags.outline) text << format_tree_outline(t);
  if (flags.json_format) text << format_tree_json(t);
  if (flags.engagement) {
    Json table = Json::object();
    text << "engagement:\n";
    for (std::size_t w = 0; w < t.workers().size(); ++w) {
      Json edges = Json::array();
      text << "  " << t.workers()[w] << ":";
      for (auto e : engagement(t, w)) {
        text << ' ' << t.edge_name(e);
        edges.push_back(t.edge_name(e));
      }
      text << '\n';
      table[t.workers()[w]] = edges;
    }
    o.doc["engagement"] = table;
  }
  if (flags.validate || none) {
    const auto cert = check_neighbour_condition(t);
    text << describe(cert, t) << '\n';
    Json j{{"verdict", to_string(cert.verdict)}};
    if (cert.worker) j["worker"] = t.workers()[*cert.worker];
    if (!cert.separating.empty()) {
      Json edges = Json::array();
      for (auto e : cert.separating) edges.push_back(t.edge_name(e));
      j["separating"] = edges;
    }
    if (!cert.sources.empty()) j["sources"] = {t.vertex(cert.sources[0]).name, t.vertex(cert.sources[1]).name};
    o.doc["neighbour_condition"] = j;
    code = worst(code, code_of(cert.verdict));
  }
  if (flags.permute) {
    const auto r = search_child_orders(t);
    if (r.verdict == Verdict::Pass) {
      text << "permutation search: ordering found\n" << format_tree_outline(*r.tree);
    } else if (r.verdict == Verdict::Fail) {
      text << "permutation search: FAIL: " << r.note << "\n";
    } else {
      text << "permutation search: INCONCLUSIVE (" << r.note << ")\n";
    }
    o.doc["permutation"] = {{"verdict", to_string(r.verdict)}, {"note", r.note}};
    code = worst(code, code_of(r.verdict));
  }
  if (flags.matrix) {
    const ZeroOneMatrix mat = worker_set_matrix(t);
    const auto tb = is_totally_balanced(mat, flags.cap);
    const auto bal = is_balanced(mat, flags.cap);
    text << "worker sets:\n" << mat.render() << "totally balanced: " << render(tb, mat)
         << "balanced: " << render(bal, mat);
    o.doc["matrix"] = {{"rows", mat.row_labels()}, {"cols", mat.col_labels()}, {"entries", mat.to_rows()}};
    o.doc["totally_balanced"] = certificate_json("totally balanced", tb, mat);
    o.doc["balanced"] = certificate_json("balanced", bal, mat);
    code = worst(code, code_of(tb.verdict));
  }
  if (!o.json) o.out << text.str();
  return code;
}

// ---- enumerate / sweep / decompose ----------------------------------------

int run_enumerate(const std::string& path, Output& o) {
  const Market m = parse_file(path, parse_market);
  const auto all = all_stable_matchings(m);
  Json list = Json::array();
  std::ostringstream text;
  text << all.size() << " stable matching" << (all.size() == 1 ? "" : "s") << '\n';
  for (const auto& mu : all) {
    text << '\n' << format_matching(mu, m) << '\n';
    list.push_back(matching_json(mu, m));
  }
  o.doc["count"] = all.size();
  o.doc["matchings"] = list;
  if (!o.json) o.out << text.str();
  return all.empty() ? exit_code::kFail : exit_code::kPass;
}

struct SweepFlags {
  std::string path;
  bool no_truncations = false;
  std::string decompose = "sets";
  std::size_t samples = 0;
  std::uint64_t seed = 1;
};

int run_sweep(const SweepFlags& flags, Output& o) {
  const Market m = parse_file(flags.path, parse_market);
  SweepOptions options;
  options.truncations = !flags.no_truncations;
  options.decompose = flags.decompose == "components" ? Decompose::Components : Decompose::Sets;
  options.allow_sampling = flags.samples > 0;
  options.samples = flags.samples;
  options.seed = flags.seed;
  const SweepResult r = exists_for_all_worker_prefs(m, options);
  std::ostringstream text;
  text << "profiles checked: " << r.checked << " of " << static_cast<unsigned long long>(r.space)
       << (r.sampled ? " (sampled)" : "") << '\n';
  o.doc["space"] = r.space;
  o.doc["checked"] = r.checked;
  o.doc["sampled"] = r.sampled;
  int code = exit_code::kPass;
  if (r.counterexample) {
    text << "FAIL: no stable matching under\n";
    Json prefs = Json::object();
    for (std::size_t w = 0; w < r.counterexample->num_workers(); ++w) {
      text << "  " << m.workers()[w] << ": " << market_list(*r.counterexample, w) << '\n';
      Json list = Json::array();
      for (auto f : r.counterexample->preference_list(w)) list.push_back(m.firms()[f]);
      prefs[m.workers()[w]] = list;
    }
    o.doc["verdict"] = "FAIL";
    o.doc["counterexample"] = prefs;
    code = exit_code::kFail;
  } else if (r.sampled) {
    text << "INCONCLUSIVE: every sampled profile has a stable matching\n";
    o.doc["verdict"] = "INCONCLUSIVE";
    code = exit_code::kInconclusive;
  } else {
    text << "PASS: every profile has a stable matching\n";
    o.doc["verdict"] = "PASS";
  }
  if (!o.json) o.out << text.str();
  return code;
}

int run_decompose(const std::string& path, const std::string& by, Output& o) {
  const Market m = parse_file(path, parse_market);
  const DecomposedMarket d = by == "components" ? decompose_by_components(m) : decompose_by_sets(m);
  const std::string text = format_market(d.market);
  o.doc["market"] = Json::parse(text);
  if (!o.json) o.out << text;
  return exit_code::kPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable matching with complementary and additive firm preferences"};
  app.name("compmatch");
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Emit a machine-readable JSON report");

  CheckFlags check;
  auto* cmd_check = app.add_subcommand("check", "Certify a market's acceptable sets and preferences");
  cmd_check->add_option("market", check.path, "Market file (JSON)")->required();
  cmd_check->add_flag("--balanced", check.balanced, "Acceptable sets form a balanced matrix (default)");
  cmd_check->add_flag("--tu", check.tu, "Acceptable sets form a totally unimodular matrix");
  cmd_check->add_flag("--totally-balanced", check.totally_balanced, "Acceptable sets form a totally balanced matrix");
  cmd_check->add_flag("--odd-cycles", check.odd_cycles, "Odd-cycle test on the acceptable-set hypergraph");
  cmd_check->add_flag("--firm-worker", check.firm_worker, "Odd-cycle test on the firm-worker hypergraph");
  cmd_check->add_flag("--complementary", check.complementary, "Every firm has a complementary preference");
  cmd_check->add_flag("--additive", check.additive, "Every firm has an additive preference");
  cmd_check->add_flag("--primitive", check.primitive, "Use primitive acceptable sets for the matrix checks");
  cmd_check->add_option("--cap", check.cap, "Largest reduced matrix dimension to search")->check(CLI::Range(1, 60));

  SolveFlags solve_flags;
  auto* cmd_solve = app.add_subcommand("solve", "Find a stable matching");
  cmd_solve->add_option("market", solve_flags.path, "Market file (JSON)")->required();
  cmd_solve->add_option("--strategy", solve_flags.strategy, "direct or pipeline")
      ->check(CLI::IsMember({"direct", "pipeline"}));
  cmd_solve->add_option("--fractional", solve_flags.fractional, "Stable fractional matching for the pipeline");
  cmd_solve->add_option("--decompose", solve_flags.decompose, "sets or components")
      ->check(CLI::IsMember({"sets", "components"}));
  cmd_solve->add_option("--cap", solve_flags.cap, "Largest reduced matrix dimension to certify")
      ->check(CLI::Range(1, 60));

  TreeFlags tree;
  auto* cmd_tree = app.add_subcommand("tree", "Inspect a technology tree");
  cmd_tree->add_option("tree", tree.path, "Tree file (outline or JSON)")->required();
  cmd_tree->add_flag("--validate", tree.validate, "Check the neighbour-of-upgrades condition (default)");
  cmd_tree->add_flag("--matrix", tree.matrix, "Print and certify the worker-set matrix");
  cmd_tree->add_flag("--permute", tree.permute, "Search child orderings for one that passes");
  cmd_tree->add_flag("--engagement", tree.engagement, "List the upgrades each worker engages in");
  cmd_tree->add_flag("--outline", tree.outline, "Print the tree as an outline");
  cmd_tree->add_flag("--to-json", tree.json_format, "Print the tree as JSON");
  cmd_tree->add_option("--cap", tree.cap, "Largest reduced matrix dimension to search")->check(CLI::Range(1, 60));

  std::string enumerate_path;
  auto* cmd_enumerate = app.add_subcommand("enumerate", "List every stable matching (brute force)");
  cmd_enumerate->add_option("market", enumerate_path, "Market file (JSON)")->required();

  SweepFlags sweep;
  auto* cmd_sweep = app.add_subcommand("sweep", "Check existence under every worker-preference profile");
  cmd_sweep->add_option("market", sweep.path, "Market file (JSON); worker lists are ignored")->required();
  cmd_sweep->add_flag("--no-truncations", sweep.no_truncations, "Only full rankings of the relevant firms");
  cmd_sweep->add_option("--decompose", sweep.decompose, "sets or components")
      ->check(CLI::IsMember({"sets", "components"}));
  cmd_sweep->add_option("--sample", sweep.samples, "Sample this many profiles when the space is too large");
  cmd_sweep->add_option("--seed", sweep.seed, "Seed for sampling");

  std::string decompose_path;
  std::string decompose_by = "sets";
  auto* cmd_decompose = app.add_subcommand("decompose", "Print the decomposed market");
  cmd_decompose->add_option("market", decompose_path, "Market file (JSON)")->required();
  cmd_decompose->add_option("--by", decompose_by, "sets or components")->check(CLI::IsMember({"sets", "components"}));

  std::vector<std::string> argv_storage{"compmatch"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::kPass;
  } catch (const CLI::ParseError& e) {
    err << "compmatch: " << e.what() << '\n';
    return exit_code::kUsage;
  }

  Output o{out, json};
  int code = exit_code::kPass;
  try {
    if (*cmd_check) {
      o.doc["command"] = "check";
      code = run_check(check, o);
    } else if (*cmd_solve) {
      o.doc["command"] = "solve";
      code = run_solve(solve_flags, o);
    } else if (*cmd_tree) {
      o.doc["command"] = "tree";
      code = run_tree(tree, o);
    } else if (*cmd_enumerate) {
      o.doc["command"] = "enumerate";
      code = run_enumerate(enumerate_path, o);
    } else if (*cmd_sweep) {
      o.doc["command"] = "sweep";
      code = run_sweep(sweep, o);
    } else if (*cmd_decompose) {
      o.doc["command"] = "decompose";
      code = run_decompose(decompose_path, decompose_by, o);
    }
  } catch (const CLI::ValidationError& e) {
    err << "compmatch: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const InputError& e) {
    err << "compmatch: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const ParseError& e) {
    err << "compmatch: " << e.what() << '\n';
    return exit_code::kParse;
  } catch (const BudgetExceeded& e) {
    err << "compmatch: " << e.what() << '\n';
    return exit_code::kInconclusive;
  } catch (const std::invalid_argument& e) {
    // Market, tree and fractional inputs that parse but break model rules.
    err << "compmatch: " << e.what() << '\n';
    return exit_code::kParse;
  } catch (const std::logic_error& e) {
    err << "compmatch: " << e.what() << '\n';
    return exit_code::kFail;
  }
  if (json) {
    o.doc["exit"] = code;
    out << o.doc.dump(2) << '\n';
  }
  return code;
}

}  // namespace compmatch
