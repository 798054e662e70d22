#include "dsb/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace dsb {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool is_comment_or_blank(const std::vector<std::string>& toks) {
  return toks.empty() || toks[0][0] == '#' || toks[0][0] == '%';
}

std::optional<double> parse_double(const std::string& s) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return x;
}

}  // namespace

EdgeListResult read_edge_list(std::istream& in, const std::string& source) {
  std::unordered_map<std::string, Vertex> index;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::vector<double> weights;
  std::set<std::pair<Vertex, Vertex>> seen;
  std::size_t weighted_lines = 0;
  EdgeListResult result;

  auto intern = [&](const std::string& tok) {
    auto [it, inserted] = index.emplace(tok, static_cast<Vertex>(labels.size()));
    if (inserted) labels.push_back(tok);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (is_comment_or_blank(toks)) continue;
    if (toks.size() < 2 || toks.size() > 3)
      throw ParseError(source, lineno, "expected 'u v' or 'u v w', got " + std::to_string(toks.size()) + " tokens");
    std::optional<double> w;
    if (toks.size() == 3) {
      w = parse_double(toks[2]);
      if (!w) throw ParseError(source, lineno, "weight '" + toks[2] + "' is not a number");
    }
    if (toks[0] == toks[1]) {
      ++result.self_loops_dropped;
      continue;
    }
    Vertex u = intern(toks[0]);
    Vertex v = intern(toks[1]);
    auto key = std::minmax(u, v);
    if (!seen.emplace(key.first, key.second).second) {
      ++result.duplicates_dropped;
      continue;
    }
    edges.push_back({key.first, key.second});
    if (w) {
      ++weighted_lines;
      weights.push_back(*w);
    } else {
      weights.push_back(0.0);
    }
  }
  if (in.bad()) throw std::runtime_error(source + ": read error");

  if (result.duplicates_dropped + result.self_loops_dropped > 0)
    std::cerr << "warning: " << source << ": dropped " << result.duplicates_dropped << " duplicate edge(s) and "
              << result.self_loops_dropped << " self-loop(s)\n";

  bool all_weighted = !edges.empty() && weighted_lines == edges.size();
  auto n = static_cast<Vertex>(labels.size());
  result.graph = Graph(n, std::move(edges), std::move(labels));
  if (all_weighted) {
    try {
      result.weights = WeightVector(std::move(weights));
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  return result;
}

EdgeListResult load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list " + path.string());
  return read_edge_list(in, path.string());
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
}

WeightVector read_weights(std::istream& in, const Graph& g, const std::string& source) {
  std::unordered_map<std::string, Vertex> index;
  for (Vertex v = 0; v < g.n(); ++v) index.emplace(g.label(v), v);
  std::vector<double> w(static_cast<std::size_t>(g.m()), 0.0);
  std::vector<char> covered(static_cast<std::size_t>(g.m()), 0);

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (is_comment_or_blank(toks)) continue;
    if (toks.size() != 3) throw ParseError(source, lineno, "expected 'u v w'");
    auto iu = index.find(toks[0]);
    auto iv = index.find(toks[1]);
    if (iu == index.end() || iv == index.end())
      throw ParseError(source, lineno, "unknown vertex in '" + toks[0] + " " + toks[1] + "'");
    EdgeIndex e = g.find_edge(iu->second, iv->second);
    if (e < 0) throw ParseError(source, lineno, "edge " + toks[0] + " " + toks[1] + " is not in the graph");
    if (covered[e]) throw ParseError(source, lineno, "edge " + toks[0] + " " + toks[1] + " given twice");
    auto x = parse_double(toks[2]);
    if (!x || !std::isfinite(*x) || *x < 0.0)
      throw ParseError(source, lineno, "weight '" + toks[2] + "' must be a finite number >= 0");
    covered[e] = 1;
    w[e] = *x;
  }
  for (EdgeIndex e = 0; e < g.m(); ++e)
    if (!covered[e])
      throw ParseError(source, lineno,
                       "missing weight for edge " + g.label(g.edge(e).u) + " " + g.label(g.edge(e).v));
  return WeightVector(std::move(w));
}

WeightVector load_weights(const std::filesystem::path& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weight file " + path.string());
  return read_weights(in, g, path.string());
}

void write_weights(std::ostream& out, const Graph& g, const WeightVector& w) {
  check_weights(g, w);
  out << std::setprecision(17);
  for (EdgeIndex e = 0; e < g.m(); ++e)
    out << g.label(g.edge(e).u) << ' ' << g.label(g.edge(e).v) << ' ' << w[e] << '\n';
}

void save_weights(const std::filesystem::path& path, const Graph& g, const WeightVector& w) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    write_weights(out, g, w);
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace dsb
