#include "dsb/results_csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "dsb/graph_io.hpp"

namespace dsb {

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

template <class T>
T parse_uint(const std::string& s, const std::string& source, std::size_t line) {
  T value{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(source, line, "bad integer '" + s + "'");
  return value;
}

double parse_double(const std::string& s, const std::string& source, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(source, line, "bad number '" + s + "'");
  }
}

}  // namespace

void write_results(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kResultsHeader << '\n';
  for (const auto& r : records) {
    out << r.algo << ',' << r.graph << ',' << r.seed << ',' << r.budget << ',' << fmt_double(r.quality) << ','
        << (r.opt ? fmt_double(*r.opt) : std::string()) << ',' << r.out_size << ',' << r.total_queries << ','
        << r.single_edge_queries << ',' << fmt_double(r.elapsed_ms) << '\n';
  }
}

std::vector<RunRecord> read_results(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kResultsHeader)
    throw ParseError(source, 1, "expected header " + std::string(kResultsHeader));
  std::vector<RunRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 10) throw ParseError(source, lineno, "expected 10 fields, got " + std::to_string(f.size()));
    RunRecord r;
    r.algo = f[0];
    r.graph = f[1];
    r.seed = parse_uint<std::uint64_t>(f[2], source, lineno);
    r.budget = parse_uint<std::uint64_t>(f[3], source, lineno);
    r.quality = parse_double(f[4], source, lineno);
    if (!f[5].empty()) r.opt = parse_double(f[5], source, lineno);
    r.out_size = parse_uint<std::size_t>(f[6], source, lineno);
    r.total_queries = parse_uint<std::uint64_t>(f[7], source, lineno);
    r.single_edge_queries = parse_uint<std::uint64_t>(f[8], source, lineno);
    r.elapsed_ms = parse_double(f[9], source, lineno);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RunRecord> load_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_results(in, path.string());
}

void write_histogram(std::ostream& out, const std::map<std::size_t, std::uint64_t>& histogram) {
  out << kHistogramHeader << '\n';
  for (const auto& [size, count] : histogram) out << size << ',' << count << '\n';
}

std::map<std::size_t, std::uint64_t> read_histogram(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kHistogramHeader)
    throw ParseError(source, 1, "expected header " + std::string(kHistogramHeader));
  std::map<std::size_t, std::uint64_t> h;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 2) throw ParseError(source, lineno, "expected 2 fields");
    h[parse_uint<std::size_t>(f[0], source, lineno)] += parse_uint<std::uint64_t>(f[1], source, lineno);
  }
  return h;
}

void write_aggregate(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "algo,graph,runs,quality_mean,quality_std,opt_mean,single_edge_mean,total_queries_mean,elapsed_ms_mean\n";
  for (const auto& r : rows)
    out << r.algo << ',' << r.graph << ',' << r.runs << ',' << fmt_double(r.quality_mean) << ','
        << fmt_double(r.quality_std) << ',' << fmt_double(r.opt_mean) << ',' << fmt_double(r.single_edge_mean) << ','
        << fmt_double(r.total_queries_mean) << ',' << fmt_double(r.elapsed_ms_mean) << '\n';
}

void write_dssr_trace(std::ostream& out, const std::vector<DssrPhase>& phases) {
  out << "phase,survivor_count,f_hat,cumulative_queries,cumulative_single_edge_queries\n";
  for (const auto& p : phases)
    out << p.phase << ',' << p.survivors << ',' << fmt_double(p.empirical_quality) << ',' << p.cumulative_queries
        << ',' << p.cumulative_single_edge << '\n';
}

void write_dslin_trace(std::ostream& out, const std::vector<DslinTracePoint>& trace) {
  out << "iteration,incumbent_density,radius,estimation_error\n";
  for (const auto& p : trace)
    out << p.iteration << ',' << fmt_double(p.incumbent_density) << ',' << fmt_double(p.radius) << ','
        << (p.estimation_error ? fmt_double(*p.estimation_error) : std::string()) << '\n';
}

void atomic_write_text(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace dsb
