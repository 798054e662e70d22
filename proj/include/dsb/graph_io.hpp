#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "dsb/graph.hpp"

namespace dsb {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct EdgeListResult {
  Graph graph;
  /// Present only when every edge line carried a third weight column.
  std::optional<WeightVector> weights;
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

/// Reads "u v" or "u v w" lines; '#' and '%' start comment lines.
/// Vertex tokens are arbitrary strings, densely re-indexed by first
/// appearance; edge indices follow first appearance as well. Vertices that
/// only occur in dropped self-loops are not registered.
EdgeListResult read_edge_list(std::istream& in, const std::string& source = "<stream>");
EdgeListResult load_edge_list(const std::filesystem::path& path);

/// Canonical form: one "label_u label_v" line per edge in index order.
void write_edge_list(std::ostream& out, const Graph& g);

/// "u v w" lines keyed by vertex label; every edge must appear exactly once.
WeightVector read_weights(std::istream& in, const Graph& g, const std::string& source = "<stream>");
WeightVector load_weights(const std::filesystem::path& path, const Graph& g);
void write_weights(std::ostream& out, const Graph& g, const WeightVector& w);
void save_weights(const std::filesystem::path& path, const Graph& g, const WeightVector& w);

}  // namespace dsb
