#include "dsb/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dsb::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void rank_one_downdate_serial(Eigen::MatrixXd& a, const Eigen::VectorXd& u, double denom) {
  const Eigen::Index m = a.rows();
  for (Eigen::Index j = 0; j < m; ++j) {
    const double uj = u[j] / denom;
    for (Eigen::Index i = 0; i < m; ++i) a(i, j) -= u[i] * uj;
  }
}

void rank_one_downdate(Eigen::MatrixXd& a, const Eigen::VectorXd& u, double denom) {
  const Eigen::Index m = a.rows();
  // Below this size the fork/join costs more than the update.
  if (m < 128) {
    rank_one_downdate_serial(a, u, denom);
    return;
  }
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < m; ++j) {
    const double uj = u[j] / denom;
    for (Eigen::Index i = 0; i < m; ++i) a(i, j) -= u[i] * uj;
  }
}

namespace {

// Scans Gray-code indices [begin, end) over the first m-1 coordinates;
// coordinate m-1 stays at +1.
double corner_range(const Eigen::MatrixXd& q, std::uint64_t begin, std::uint64_t end) {
  const Eigen::Index m = q.rows();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(m);
  const std::uint64_t code = begin ^ (begin >> 1);
  for (Eigen::Index i = 0; i + 1 < m; ++i)
    if ((code >> i) & 1U) x[i] = -1.0;
  Eigen::VectorXd y = q * x;
  double value = x.dot(y);
  double best = value;
  for (std::uint64_t k = begin + 1; k < end; ++k) {
    const auto i = static_cast<Eigen::Index>(std::countr_zero(k));
    const double xi = x[i];
    value += -4.0 * xi * y[i] + 4.0 * q(i, i);
    y.noalias() -= (2.0 * xi) * q.col(i);
    x[i] = -xi;
    best = std::max(best, value);
  }
  return best;
}

void check_corner_size(const Eigen::MatrixXd& q) {
  if (q.rows() != q.cols()) throw std::invalid_argument("max_corner_form: matrix must be square");
  if (q.rows() == 0) throw std::invalid_argument("max_corner_form: empty matrix");
  if (q.rows() > 40) throw std::invalid_argument("max_corner_form: dimension too large to enumerate");
}

}  // namespace

double max_corner_form_serial(const Eigen::MatrixXd& q) {
  check_corner_size(q);
  const std::uint64_t total = std::uint64_t{1} << (q.rows() - 1);
  return corner_range(q, 0, total);
}

double max_corner_form(const Eigen::MatrixXd& q) {
  check_corner_size(q);
  const std::uint64_t total = std::uint64_t{1} << (q.rows() - 1);
  const auto threads = static_cast<std::uint64_t>(max_threads());
  if (threads == 1 || total < 4096) return corner_range(q, 0, total);
  const std::uint64_t chunks = threads * 8;
  const std::uint64_t step = (total + chunks - 1) / chunks;
  double best = -std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(dynamic) reduction(max : best)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const std::uint64_t b = static_cast<std::uint64_t>(c) * step;
    const std::uint64_t e = std::min(total, b + step);
    if (b < e) best = std::max(best, corner_range(q, b, e));
  }
  return best;
}

double abs_entry_sum_serial(const Eigen::MatrixXd& q) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    for (Eigen::Index i = 0; i < q.rows(); ++i) s += std::abs(q(i, j));
  return s;
}

double abs_entry_sum(const Eigen::MatrixXd& q) {
  if (q.size() < 65536) return abs_entry_sum_serial(q);
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    for (Eigen::Index i = 0; i < q.rows(); ++i) s += std::abs(q(i, j));
  return s;
}

bool subset_preferred(const SubsetChoice& a, const SubsetChoice& b) {
  const double scale = std::max({1.0, std::abs(a.density), std::abs(b.density)});
  if (std::abs(a.density - b.density) > 1e-12 * scale) return a.density > b.density;
  const int ca = std::popcount(a.mask);
  const int cb = std::popcount(b.mask);
  if (ca != cb) return ca < cb;
  const std::uint32_t diff = a.mask ^ b.mask;
  if (diff == 0) return false;
  // Same size: the sorted member lists first differ at the lowest differing bit.
  return (a.mask & (diff & (~diff + 1))) != 0;
}

namespace {

SubsetChoice best_in_range(std::span<const double> ws, std::uint32_t begin, std::uint32_t end) {
  SubsetChoice best{begin, ws[begin] / std::popcount(begin)};
  for (std::uint32_t mask = begin + 1; mask < end; ++mask) {
    SubsetChoice c{mask, ws[mask] / std::popcount(mask)};
    if (subset_preferred(c, best)) best = c;
  }
  return best;
}

void check_subset_table(std::span<const double> ws, int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("best_subset: n must be in [1, 20]");
  if (ws.size() != (std::size_t{1} << n)) throw std::invalid_argument("best_subset: table size must be 2^n");
}

}  // namespace

SubsetChoice best_subset_serial(std::span<const double> subset_weight, int n) {
  check_subset_table(subset_weight, n);
  return best_in_range(subset_weight, 1, static_cast<std::uint32_t>(subset_weight.size()));
}

SubsetChoice best_subset(std::span<const double> subset_weight, int n) {
  check_subset_table(subset_weight, n);
  const auto total = static_cast<std::uint32_t>(subset_weight.size());
  const int threads = max_threads();
  if (threads == 1 || total < (1U << 14)) return best_in_range(subset_weight, 1, total);
  const std::uint32_t chunks = static_cast<std::uint32_t>(threads) * 4;
  const std::uint32_t step = (total + chunks - 1) / chunks;
  std::vector<SubsetChoice> local(chunks);
  std::vector<char> used(chunks, 0);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const std::uint32_t b = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(c) * step);
    const std::uint32_t e = std::min(total, static_cast<std::uint32_t>(c + 1) * step);
    if (b < e) {
      local[c] = best_in_range(subset_weight, b, e);
      used[c] = 1;
    }
  }
  SubsetChoice best{};
  bool have = false;
  for (std::uint32_t c = 0; c < chunks; ++c) {
    if (!used[c]) continue;
    if (!have || subset_preferred(local[c], best)) best = local[c];
    have = true;
  }
  return best;
}

}  // namespace dsb::kernels
