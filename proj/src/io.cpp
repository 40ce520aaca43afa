#include "compmatch/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace compmatch {

using Json = nlohmann::ordered_json;

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(line == 0 ? message
                                   : std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

struct Position {
  std::size_t line = 0;
  std::size_t column = 0;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position p{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

// Best effort: where a quoted token first appears, for errors found after
// the JSON itself parsed.
Position locate(std::string_view text, const std::string& token) {
  const std::string quoted = Json(token).dump();
  const auto at = text.find(quoted);
  if (at == std::string_view::npos) return {};
  return position_of(text, at);
}

[[noreturn]] void fail_at(std::string_view text, const std::string& token, const std::string& message) {
  const Position p = locate(text, token);
  throw ParseError(message, p.line, p.column);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    const Position p = position_of(text, offset);
    std::string what = e.what();
    // Drop the library's "[json.exception.parse_error.101] parse error at line L, column C: " prefix.
    if (auto colon = what.find(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw ParseError("invalid JSON: " + what, p.line, p.column);
  }
}

std::vector<std::string> string_array(const Json& j, std::string_view text, const std::string& what) {
  if (!j.is_array()) fail_at(text, what, what + " must be an array of names");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) fail_at(text, what, what + " must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string quote(const std::string& s) { return Json(s).dump(); }

std::string join_quoted(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + quote(items[i]);
  return out + "]";
}

std::vector<std::string> set_names(WorkerSet s, const std::vector<std::string>& workers) {
  std::vector<std::string> out;
  s.for_each([&](std::size_t w) { out.push_back(workers[w]); });
  return out;
}

}  // namespace

Market parse_market(std::string_view text) {
  const Json root = parse_json(text);
  if (!root.is_object()) throw ParseError("market must be a JSON object", 1, 1);
  for (const auto& [key, value] : root.items()) {
    if (key != "workers" && key != "firms" && key != "worker_prefs") fail_at(text, key, "unknown key " + key);
  }
  if (!root.contains("workers")) throw ParseError("market needs \"workers\"", 1, 1);
  if (!root.contains("firms")) throw ParseError("market needs \"firms\"", 1, 1);

  const auto workers = string_array(root["workers"], text, "workers");
  auto worker_at = [&](const std::string& name) {
    const auto it = std::find(workers.begin(), workers.end(), name);
    if (it == workers.end()) fail_at(text, name, "unknown worker " + name);
    return static_cast<std::size_t>(it - workers.begin());
  };

  const Json& firms_json = root["firms"];
  if (!firms_json.is_object()) fail_at(text, "firms", "\"firms\" must map firm names to chains");
  std::vector<std::string> firms;
  std::vector<FirmPreference> prefs;
  for (const auto& [name, chain] : firms_json.items()) {
    if (!chain.is_array()) fail_at(text, name, "chain of " + name + " must be an array of sets");
    FirmPreference p;
    for (const auto& set_json : chain) {
      WorkerSet s;
      for (const auto& w : string_array(set_json, text, name)) {
        const std::size_t idx = worker_at(w);
        if (s.contains(idx)) fail_at(text, name, "worker " + w + " repeated in a set of " + name);
        s.insert(idx);
      }
      if (s.empty()) fail_at(text, name, "empty set in the chain of " + name);
      if (std::find(p.chain.begin(), p.chain.end(), s) != p.chain.end()) {
        fail_at(text, name, "set listed twice in the chain of " + name);
      }
      p.chain.push_back(s);
    }
    firms.push_back(name);
    prefs.push_back(std::move(p));
  }

  std::vector<std::vector<std::size_t>> lists(workers.size());
  if (root.contains("worker_prefs")) {
    const Json& wp = root["worker_prefs"];
    if (!wp.is_object()) fail_at(text, "worker_prefs", "\"worker_prefs\" must map workers to firm lists");
    for (const auto& [name, list] : wp.items()) {
      const std::size_t w = worker_at(name);
      for (const auto& f : string_array(list, text, name)) {
        const auto it = std::find(firms.begin(), firms.end(), f);
        if (it == firms.end()) fail_at(text, f, "unknown firm " + f + " in the list of " + name);
        lists[w].push_back(static_cast<std::size_t>(it - firms.begin()));
      }
    }
  }
  try {
    return Market(workers, firms, std::move(lists), std::move(prefs));
  } catch (const MarketError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

std::string format_market(const Market& m) {
  std::ostringstream os;
  os << "{\n  \"workers\": " << join_quoted(m.workers()) << ",\n  \"firms\": {";
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    os << (f ? ",\n" : "\n") << "    " << quote(m.firms()[f]) << ": [";
    const auto& chain = m.preference(f).chain;
    for (std::size_t i = 0; i < chain.size(); ++i) os << (i ? ", " : "") << join_quoted(set_names(chain[i], m.workers()));
    os << "]";
  }
  os << (m.num_firms() ? "\n  " : "") << "},\n  \"worker_prefs\": {";
  for (std::size_t w = 0; w < m.num_workers(); ++w) {
    std::vector<std::string> names;
    for (auto f : m.preference_list(w)) names.push_back(m.firms()[f]);
    os << (w ? ",\n" : "\n") << "    " << quote(m.workers()[w]) << ": " << join_quoted(names);
  }
  os << (m.num_workers() ? "\n  " : "") << "}\n}\n";
  return os.str();
}

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_tokens(std::string_view line, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = offset;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

std::optional<Rational> parse_number(const std::string& s) {
  auto parse_int = [](std::string_view v) -> std::optional<std::int64_t> {
    std::int64_t x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty()) return std::nullopt;
    return x;
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    auto p = parse_int(std::string_view(s).substr(0, slash));
    auto q = parse_int(std::string_view(s).substr(slash + 1));
    if (!p || !q || *q <= 0) return std::nullopt;
    return Rational(*p, *q);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    const std::string_view whole = std::string_view(s).substr(0, dot);
    const std::string_view frac = std::string_view(s).substr(dot + 1);
    if (frac.empty() || frac.size() > 15) return std::nullopt;
    auto w = whole.empty() ? std::optional<std::int64_t>(0) : parse_int(whole);
    auto f = parse_int(frac);
    if (!w || !f || *w < 0 || *f < 0) return std::nullopt;
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Rational(*w) + Rational(*f, scale);
  }
  if (auto x = parse_int(s)) return Rational(*x);
  return std::nullopt;
}

// Lines with their 1-based numbers, comments and blanks dropped.
std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++number;
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '#') out.emplace_back(number, line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

// "label: rest" → label and the column where rest starts.
std::pair<std::string, std::size_t> split_label(std::string_view line, std::size_t line_no) {
  const auto first = line.find_first_not_of(" \t");
  const auto colon = line.find(':', first);
  if (colon == std::string_view::npos) throw ParseError("expected \"name:\"", line_no, first + 1);
  std::string label(line.substr(first, colon - first));
  while (!label.empty() && (label.back() == ' ' || label.back() == '\t')) label.pop_back();
  if (label.empty()) throw ParseError("missing name before ':'", line_no, first + 1);
  return {label, colon + 1};
}

}  // namespace

FractionalMatching parse_fractional(std::string_view text, const Market& m) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty fractional matching", 1, 1);

  auto [head, head_rest] = split_label(lines[0].second, lines[0].first);
  if (head != "workers") throw ParseError("first line must be \"workers: ...\"", lines[0].first, 1);
  std::vector<std::size_t> column_worker;
  for (const auto& tok : split_tokens(lines[0].second, head_rest)) {
    const auto w = m.find_worker(tok.text);
    if (!w) throw ParseError("unknown worker " + tok.text, lines[0].first, tok.column);
    if (std::find(column_worker.begin(), column_worker.end(), *w) != column_worker.end()) {
      throw ParseError("worker " + tok.text + " listed twice", lines[0].first, tok.column);
    }
    column_worker.push_back(*w);
  }
  if (column_worker.size() != m.num_workers()) {
    throw ParseError("expected all " + std::to_string(m.num_workers()) + " workers of the market", lines[0].first, 1);
  }

  FractionalMatching fm;
  fm.levels.assign(m.num_firms(), 0);
  fm.null_assignment.assign(m.num_workers(), 0);
  std::vector<bool> seen(m.num_firms(), false);
  bool seen_null = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [line_no, line] = lines[i];
    auto [label, rest] = split_label(line, line_no);
    const auto tokens = split_tokens(line, rest);
    if (tokens.size() != m.num_workers()) {
      throw ParseError("row " + label + " needs " + std::to_string(m.num_workers()) + " entries", line_no, rest + 1);
    }
    std::vector<Rational> row(m.num_workers());
    for (std::size_t c = 0; c < tokens.size(); ++c) {
      auto value = parse_number(tokens[c].text);
      if (!value || *value < Rational(0) || *value > Rational(1)) {
        throw ParseError("expected a number in [0,1], got " + tokens[c].text, line_no, tokens[c].column);
      }
      row[column_worker[c]] = *value;
    }
    if (label == "null" || label == "ø") {
      if (seen_null) throw ParseError("null row repeated", line_no, 1);
      seen_null = true;
      fm.null_assignment = row;
      continue;
    }
    const auto f = m.find_firm(label);
    if (!f) throw ParseError("unknown firm " + label, line_no, line.find_first_not_of(" \t") + 1);
    if (seen[*f]) throw ParseError("row for " + label + " repeated", line_no, 1);
    seen[*f] = true;
    WorkerSet set;
    try {
      set = leontief_set(m, *f);
    } catch (const FractionalError& e) {
      throw ParseError(e.what(), line_no, 1);
    }
    std::optional<Rational> level;
    for (std::size_t c = 0; c < tokens.size(); ++c) {
      const std::size_t w = column_worker[c];
      if (!set.contains(w)) {
        if (row[w] != Rational(0)) throw ParseError(label + " cannot hold " + m.workers()[w], line_no, tokens[c].column);
      } else if (!level) {
        level = row[w];
      } else if (*level != row[w]) {
        throw ParseError(label + " must hold equal amounts of every type in its set", line_no, tokens[c].column);
      }
    }
    fm.levels[*f] = level.value_or(0);
  }
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    if (!seen[f]) throw ParseError("missing row for firm " + m.firms()[f], lines.back().first, 1);
  }
  if (!seen_null) throw ParseError("missing null row", lines.back().first, 1);
  return fm;
}

std::string format_fractional(const FractionalMatching& fm, const Market& m) {
  std::ostringstream os;
  os << "workers:";
  for (const auto& w : m.workers()) os << ' ' << w;
  os << '\n';
  for (std::size_t f = 0; f < m.num_firms(); ++f) {
    const WorkerSet set = leontief_set(m, f);
    os << m.firms()[f] << ':';
    for (std::size_t w = 0; w < m.num_workers(); ++w) os << ' ' << format_rational(set.contains(w) ? fm.levels[f] : Rational(0));
    os << '\n';
  }
  os << "null:";
  for (const auto& v : fm.null_assignment) os << ' ' << format_rational(v);
  os << '\n';
  return os.str();
}

namespace {

WorkerSet parse_braced_set(std::string_view line, std::size_t from, std::size_t line_no, const TechnologyTree& t) {
  const auto open = line.find_first_not_of(" \t", from);
  if (open == std::string_view::npos || line[open] != '{') throw ParseError("expected a worker set {..}", line_no, from + 1);
  const auto close = line.find('}', open);
  if (close == std::string_view::npos) throw ParseError("missing '}'", line_no, line.size() + 1);
  if (line.find_first_not_of(" \t", close + 1) != std::string_view::npos) {
    throw ParseError("unexpected text after '}'", line_no, close + 2);
  }
  WorkerSet s;
  std::size_t i = open + 1;
  while (i < close) {
    while (i < close && (line[i] == ' ' || line[i] == ',')) ++i;
    const std::size_t start = i;
    while (i < close && line[i] != ',' && line[i] != ' ') ++i;
    if (i == start) continue;
    const std::string name(line.substr(start, i - start));
    const auto w = t.find_worker(name);
    if (!w) throw ParseError("unknown worker " + name, line_no, start + 1);
    s.insert(*w);
  }
  return s;
}

}  // namespace

TechnologyTree parse_tree_outline(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty tree", 1, 1);
  auto [head, head_rest] = split_label(lines[0].second, lines[0].first);
  if (head != "workers") throw ParseError("first line must be \"workers: ...\"", lines[0].first, 1);
  std::vector<std::string> workers;
  for (const auto& tok : split_tokens(lines[0].second, head_rest)) workers.push_back(tok.text);

  if (lines.size() < 2) throw ParseError("missing root vertex", lines[0].first, 1);
  std::optional<TechnologyTree> tree;
  std::vector<std::size_t> stack;  // vertex at each depth
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [line_no, line] = lines[i];
    const std::size_t indent = line.find_first_not_of(' ');
    if (line[indent] == '\t') throw ParseError("use spaces for indentation", line_no, indent + 1);
    if (indent % 2 != 0) throw ParseError("indentation must be a multiple of two spaces", line_no, indent + 1);
    const std::size_t depth = indent / 2;
    auto [name, rest] = split_label(line, line_no);
    try {
      if (i == 1) {
        if (depth != 0) throw ParseError("the root must not be indented", line_no, 1);
        tree.emplace(workers, name);
        if (!parse_braced_set(line, rest, line_no, *tree).empty()) {
          throw ParseError("the root needs no workers", line_no, rest + 1);
        }
        stack = {0};
        continue;
      }
      if (depth == 0) throw ParseError("only one root allowed", line_no, 1);
      if (depth > stack.size()) throw ParseError("indented more than one level below its parent", line_no, indent + 1);
      stack.resize(depth);
      const WorkerSet s = parse_braced_set(line, rest, line_no, *tree);
      stack.push_back(tree->add_vertex(name, stack.back(), s));
    } catch (const TreeError& e) {
      throw ParseError(e.what(), line_no, indent + 1);
    }
  }
  return *tree;
}

std::string format_tree_outline(const TechnologyTree& t) {
  std::ostringstream os;
  os << "workers:";
  for (const auto& w : t.workers()) os << ' ' << w;
  os << '\n';
  auto rec = [&](auto&& self, std::size_t v, std::size_t depth) -> void {
    os << std::string(2 * depth, ' ') << t.vertex(v).name << ": " << t.format_set(t.vertex(v).workers) << '\n';
    for (auto c : t.vertex(v).children) self(self, c, depth + 1);
  };
  rec(rec, t.root(), 0);
  return os.str();
}

TechnologyTree parse_tree_json(std::string_view text) {
  const Json root = parse_json(text);
  if (!root.is_object()) throw ParseError("tree must be a JSON object", 1, 1);
  if (!root.contains("workers") || !root.contains("vertices")) {
    throw ParseError("tree needs \"workers\" and \"vertices\"", 1, 1);
  }
  const auto workers = string_array(root["workers"], text, "workers");
  std::string root_name = "v0";
  if (root.contains("root")) {
    if (!root["root"].is_string()) fail_at(text, "root", "\"root\" must be a name");
    root_name = root["root"].get<std::string>();
  }
  TechnologyTree t(workers, root_name);
  if (!root["vertices"].is_array()) fail_at(text, "vertices", "\"vertices\" must be an array");
  for (const auto& v : root["vertices"]) {
    if (!v.is_object() || !v.contains("name") || !v.contains("parent") || !v.contains("workers") ||
        !v["name"].is_string() || !v["parent"].is_string()) {
      fail_at(text, "vertices", "each vertex needs \"name\", \"parent\" and \"workers\"");
    }
    const std::string name = v["name"].get<std::string>();
    const auto parent = t.find_vertex(v["parent"].get<std::string>());
    if (!parent) fail_at(text, name, "parent of " + name + " must be listed before it");
    WorkerSet s;
    for (const auto& w : string_array(v["workers"], text, name)) {
      const auto idx = t.find_worker(w);
      if (!idx) fail_at(text, w, "unknown worker " + w);
      s.insert(*idx);
    }
    try {
      t.add_vertex(name, *parent, s);
    } catch (const TreeError& e) {
      fail_at(text, name, e.what());
    }
  }
  return t;
}

std::string format_tree_json(const TechnologyTree& t) {
  std::ostringstream os;
  os << "{\n  \"workers\": " << join_quoted(t.workers()) << ",\n  \"root\": " << quote(t.vertex(t.root()).name)
     << ",\n  \"vertices\": [";
  const auto edges = t.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const TreeVertex& v = t.vertex(edges[i]);
    os << (i ? ",\n" : "\n") << "    {\"name\": " << quote(v.name) << ", \"parent\": " << quote(t.vertex(v.parent).name)
       << ", \"workers\": " << join_quoted(set_names(v.workers, t.workers())) << "}";
  }
  os << (edges.empty() ? "" : "\n  ") << "]\n}\n";
  return os.str();
}

TechnologyTree parse_tree(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_tree_json(text);
  return parse_tree_outline(text);
}

}  // namespace compmatch
