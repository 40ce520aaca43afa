#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "compmatch/fractional.hpp"
#include "compmatch/market.hpp"
#include "compmatch/techtree.hpp"

namespace compmatch {

/// Malformed input. `line` and `column` are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

std::string read_file(const std::string& path);

/// {"workers": [..], "firms": {"f1": [["w1","w2"], ..]}, "worker_prefs": {"w1": ["f1", ..]}}
/// Firm chains are best first. Workers missing from worker_prefs accept no firm.
Market parse_market(std::string_view text);
std::string format_market(const Market& m);

/// "workers: w1 w2 ..." then one row per firm ("f1#1: 1/2 1/2 0 0") and a
/// "null:" row. Rows list the amount of every worker type; a firm's row must
/// be its level on its acceptable set and 0 elsewhere. '#' starts a comment
/// only at the beginning of a line.
FractionalMatching parse_fractional(std::string_view text, const Market& m);
std::string format_fractional(const FractionalMatching& fm, const Market& m);

/// Indented outline, two spaces per level:
///
///   workers: w1 w2 w3
///   v0: {}
///     v1: {w1,w2}
///
/// Children appear in their >_v order.
TechnologyTree parse_tree_outline(std::string_view text);
std::string format_tree_outline(const TechnologyTree& t);

/// {"workers": [..], "root": "v0", "vertices": [{"name","parent","workers"}, ..]}
/// with vertices in preorder.
TechnologyTree parse_tree_json(std::string_view text);
std::string format_tree_json(const TechnologyTree& t);

/// Picks the JSON or outline reader by the first non-blank character.
TechnologyTree parse_tree(std::string_view text);

}  // namespace compmatch
