#include "hamcycle/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hamcycle {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

long parse_int(const std::string& tok, int line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer, got '" + tok + "'");
  }
  if (used != tok.size())
    throw ParseError(line, "expected integer, got '" + tok + "'");
  return v;
}

Vertex checked_vertex(const std::string& tok, long n, int line) {
  long v = parse_int(tok, line);
  if (v < 1 || v > n)
    throw ParseError(line, "vertex id " + tok + " out of range 1.." +
                               std::to_string(n));
  return static_cast<Vertex>(v);
}

Graph finish(int n, std::vector<Edge>& edges, std::vector<std::string>* warnings) {
  std::size_t dups = 0;
  Graph g(n, edges, &dups);
  if (dups > 0 && warnings)
    warnings->push_back(std::to_string(dups) +
                        " duplicate edge declaration(s) merged");
  return g;
}

Graph parse_pace(std::istream& in, std::vector<std::string>* warnings) {
  std::string raw;
  int line = 0;
  long n = -1, m = -1;
  std::vector<Edge> edges;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == 'c' || s[0] == '#') continue;
    std::istringstream ls(s);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok[0] == "p") {
      if (n >= 0) throw ParseError(line, "duplicate header");
      if (tok.size() != 4 || tok[1] != "tw")
        throw ParseError(line, "malformed header, expected 'p tw <n> <m>'");
      n = parse_int(tok[2], line);
      m = parse_int(tok[3], line);
      if (n < 0 || m < 0) throw ParseError(line, "negative count in header");
      continue;
    }
    if (n < 0) throw ParseError(line, "edge line before header");
    if (tok.size() != 2) throw ParseError(line, "malformed edge line '" + s + "'");
    Vertex u = checked_vertex(tok[0], n, line);
    Vertex v = checked_vertex(tok[1], n, line);
    if (u == v) throw ParseError(line, "self-loop at vertex " + tok[0]);
    edges.emplace_back(u, v);
  }
  if (n < 0) throw ParseError(line, "missing 'p tw' header");
  if (static_cast<long>(edges.size()) != m)
    throw ParseError(line, "header declares " + std::to_string(m) +
                               " edges, found " + std::to_string(edges.size()));
  return finish(static_cast<int>(n), edges, warnings);
}

Graph parse_tsplib(std::istream& in, std::vector<std::string>* warnings) {
  std::string raw;
  int line = 0;
  long n = -1;
  std::string edge_format = "EDGE_LIST";
  std::vector<Edge> edges;
  enum class Section { Header, Edges, Skip } section = Section::Header;
  std::vector<long> pending;  // edge-list tokens or adjacency-list run

  auto is_keyword = [](const std::string& s) {
    return !s.empty() && std::isalpha(static_cast<unsigned char>(s[0]));
  };

  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty()) continue;
    if (section != Section::Header && is_keyword(s)) section = Section::Header;
    if (section == Section::Header) {
      std::string key = s, value;
      if (auto colon = s.find(':'); colon != std::string::npos) {
        key = s.substr(0, colon);
        value = trim(s.substr(colon + 1));
      }
      key = upper(trim(key));
      if (key == "EOF") break;
      if (key == "DIMENSION") {
        n = parse_int(value, line);
        if (n < 0) throw ParseError(line, "negative DIMENSION");
      } else if (key == "TYPE") {
        if (upper(value) != "HCP" && upper(value) != "TSP")
          throw ParseError(line, "unsupported TYPE '" + value + "'");
      } else if (key == "EDGE_DATA_FORMAT") {
        edge_format = upper(value);
        if (edge_format != "EDGE_LIST" && edge_format != "ADJ_LIST")
          throw ParseError(line, "unsupported EDGE_DATA_FORMAT '" + value + "'");
      } else if (key == "EDGE_DATA_SECTION") {
        if (n < 0) throw ParseError(line, "EDGE_DATA_SECTION before DIMENSION");
        section = Section::Edges;
        pending.clear();
      } else if (key.ends_with("_SECTION")) {
        section = Section::Skip;
      } else if (key != "NAME" && key != "COMMENT") {
        if (warnings) warnings->push_back("ignored header '" + key + "'");
      }
      continue;
    }
    if (section == Section::Skip) continue;

    std::istringstream ls(s);
    for (std::string t; ls >> t;) {
      long v = parse_int(t, line);
      if (edge_format == "EDGE_LIST") {
        if (v == -1) {
          if (!pending.empty()) throw ParseError(line, "dangling edge endpoint");
          section = Section::Header;
          break;
        }
        pending.push_back(v);
        if (pending.size() == 2) {
          Vertex a = checked_vertex(std::to_string(pending[0]), n, line);
          Vertex b = checked_vertex(std::to_string(pending[1]), n, line);
          if (a == b) throw ParseError(line, "self-loop at vertex " + std::to_string(a));
          edges.emplace_back(a, b);
          pending.clear();
        }
      } else {  // ADJ_LIST: "<u> <v1> <v2> ... -1", whole list ends with -1
        if (v == -1) {
          if (pending.empty()) {
            section = Section::Header;
            break;
          }
          Vertex a = checked_vertex(std::to_string(pending[0]), n, line);
          for (std::size_t i = 1; i < pending.size(); ++i) {
            Vertex b = checked_vertex(std::to_string(pending[i]), n, line);
            if (a == b) throw ParseError(line, "self-loop at vertex " + std::to_string(a));
            edges.emplace_back(a, b);
          }
          pending.clear();
        } else {
          pending.push_back(v);
        }
      }
    }
  }
  if (n < 0) throw ParseError(line, "missing DIMENSION header");
  if (!pending.empty()) throw ParseError(line, "unterminated edge data");
  return finish(static_cast<int>(n), edges, warnings);
}

}  // namespace

Graph parse_graph(std::istream& in, GraphFormat format,
                  std::vector<std::string>* warnings) {
  return format == GraphFormat::PaceGr ? parse_pace(in, warnings)
                                       : parse_tsplib(in, warnings);
}

GraphFormat format_for_path(const std::string& path) {
  std::string p = upper(path);
  if (p.ends_with(".HCP") || p.ends_with(".TSP")) return GraphFormat::TsplibHcp;
  return GraphFormat::PaceGr;
}

Graph parse_graph_file(const std::string& path,
                       std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_graph(in, format_for_path(path), warnings);
}

void write_graph(std::ostream& out, const Graph& g, GraphFormat format) {
  if (format != GraphFormat::PaceGr)
    throw std::invalid_argument("TSPLIB output is not supported");
  out << "p tw " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string to_pace_string(const Graph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

}  // namespace hamcycle
