#pragma once

// Data-parallel inner loops. Every kernel has a `_serial` twin that is the
// reference used by the tests; the unsuffixed version runs under OpenMP when
// the library is built with it and is otherwise identical to the serial one.

#include <cstdint>
#include <span>

#include <Eigen/Dense>

namespace dsb::kernels {

/// Number of OpenMP threads available (1 without OpenMP).
int max_threads();

/// a <- a - u u^T / denom on a symmetric matrix (Sherman-Morrison step).
void rank_one_downdate_serial(Eigen::MatrixXd& a, const Eigen::VectorXd& u, double denom);
void rank_one_downdate(Eigen::MatrixXd& a, const Eigen::VectorXd& u, double denom);

/// max over x in {-1, +1}^m of x^T q x. Only 2^(m-1) corners are visited
/// (x and -x give the same value); consecutive corners differ in one sign
/// (Gray code), so each step costs O(m).
double max_corner_form_serial(const Eigen::MatrixXd& q);
double max_corner_form(const Eigen::MatrixXd& q);

/// sum_{i,j} |q_ij|.
double abs_entry_sum_serial(const Eigen::MatrixXd& q);
double abs_entry_sum(const Eigen::MatrixXd& q);

struct SubsetChoice {
  std::uint32_t mask = 0;
  double density = 0.0;
};

/// Best nonempty subset given w(S) for every bitmask S over n <= 20 bits.
/// Higher density wins; near-equal densities (relative 1e-12) go to the
/// smaller set, then to the lexicographically smaller member list.
SubsetChoice best_subset_serial(std::span<const double> subset_weight, int n);
SubsetChoice best_subset(std::span<const double> subset_weight, int n);

/// The tie-aware ordering used by best_subset: true if a is preferred to b.
bool subset_preferred(const SubsetChoice& a, const SubsetChoice& b);

}  // namespace dsb::kernels
