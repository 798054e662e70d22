#pragma once

#include <filesystem>
#include <sstream>
#include <map>
#include <string>
#include <vector>

#include "dsb/dslin.hpp"
#include "dsb/dssr.hpp"
#include "dsb/experiment.hpp"

namespace dsb {

inline constexpr const char* kResultsHeader =
    "algo,graph,seed,budget,quality,opt,out_size,total_queries,single_edge_queries,elapsed_ms";
inline constexpr const char* kHistogramHeader = "query_size,count";

void write_results(std::ostream& out, const std::vector<RunRecord>& records);
/// Throws ParseError on a wrong header or malformed row.
std::vector<RunRecord> read_results(std::istream& in, const std::string& source = "<stream>");
std::vector<RunRecord> load_results(const std::filesystem::path& path);

void write_histogram(std::ostream& out, const std::map<std::size_t, std::uint64_t>& histogram);
std::map<std::size_t, std::uint64_t> read_histogram(std::istream& in, const std::string& source = "<stream>");

void write_aggregate(std::ostream& out, const std::vector<AggregateRow>& rows);

/// phase,survivor_count,f_hat,cumulative_queries,cumulative_single_edge_queries
void write_dssr_trace(std::ostream& out, const std::vector<DssrPhase>& phases);
/// iteration,incumbent_density,radius,estimation_error
void write_dslin_trace(std::ostream& out, const std::vector<DslinTracePoint>& trace);

/// Writes through `writer` into path.tmp, then renames it over path.
template <class Writer>
void write_atomically(const std::filesystem::path& path, Writer&& writer);

void atomic_write_text(const std::filesystem::path& path, const std::string& text);

template <class Writer>
void write_atomically(const std::filesystem::path& path, Writer&& writer) {
  std::ostringstream buf;
  writer(buf);
  atomic_write_text(path, buf.str());
}

}  // namespace dsb
