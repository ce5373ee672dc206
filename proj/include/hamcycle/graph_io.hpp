#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hamcycle/graph.hpp"

namespace hamcycle {

enum class GraphFormat { PaceGr, TsplibHcp };

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Reads a graph. Duplicate edge declarations are merged and reported as a
/// warning string when `warnings` is non-null.
Graph parse_graph(std::istream& in, GraphFormat format,
                  std::vector<std::string>* warnings = nullptr);
Graph parse_graph_file(const std::string& path,
                       std::vector<std::string>* warnings = nullptr);

/// Guesses the format from the extension (.hcp / .tsp → TSPLIB, else PACE).
GraphFormat format_for_path(const std::string& path);

/// Writes PACE .gr text. TSPLIB output is not supported and throws.
void write_graph(std::ostream& out, const Graph& g,
                 GraphFormat format = GraphFormat::PaceGr);
std::string to_pace_string(const Graph& g);

}  // namespace hamcycle
