#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dsb/graph.hpp"

namespace dsb {

/// Running least-squares state over edge weights:
///   A = lambda I + sum chi chi^T,  b = sum chi r,  w_hat = A^{-1} b.
/// A^{-1} follows each rank-1 update by Sherman-Morrison and log det A by the
/// matrix determinant lemma, so no step costs more than O(m^2).
class DesignState {
 public:
  DesignState(EdgeIndex m, std::size_t arms, double lambda);

  /// Adds one observation of arm `arm`, whose indicator is 1 on `support`.
  /// Throws std::invalid_argument on a non-finite reward.
  void update(std::size_t arm, std::span<const EdgeIndex> support, double reward);

  /// A^{-1} b with negative entries clipped to zero.
  [[nodiscard]] WeightVector estimate() const;
  [[nodiscard]] Eigen::VectorXd raw_estimate() const;

  /// ||chi_F||_{A^{-1}} for the indicator of F.
  [[nodiscard]] double width(std::span<const EdgeIndex> support) const;

  /// max |(A^{-1} A - I)_ij|.
  [[nodiscard]] double inverse_residual() const;
  /// Replaces A^{-1} by a fresh Cholesky inverse of A.
  void refresh_inverse();

  [[nodiscard]] EdgeIndex m() const { return m_; }
  [[nodiscard]] double lambda() const { return lambda_; }
  [[nodiscard]] std::uint64_t t() const { return t_; }
  [[nodiscard]] const std::vector<std::uint64_t>& counts() const { return counts_; }
  [[nodiscard]] const Eigen::MatrixXd& a() const { return a_; }
  [[nodiscard]] const Eigen::MatrixXd& a_inv() const { return a_inv_; }
  [[nodiscard]] const Eigen::VectorXd& b() const { return b_; }
  [[nodiscard]] double logdet() const { return logdet_; }

 private:
  EdgeIndex m_;
  double lambda_;
  std::uint64_t t_ = 0;
  std::vector<std::uint64_t> counts_;
  Eigen::MatrixXd a_;
  Eigen::MatrixXd a_inv_;
  Eigen::VectorXd b_;
  Eigen::VectorXd scratch_;
  double logdet_;
};

/// C_t = R' sqrt(2 log(det(A)^{1/2} / (lambda^{m/2} delta))) + sqrt(lambda) L,
/// evaluated from the running log-determinant (natural log).
/// `r_prime` is sqrt(deg_max) * R. Throws std::logic_error if log det A falls
/// below m log lambda by more than rounding.
double confidence_radius(const DesignState& state, double r_prime, double L, double delta);

struct QpBound {
  enum class Mode { exact, relaxed };
  double value = 0.0;
  Mode mode = Mode::exact;
};

/// Largest dimension solved by corner enumeration.
inline constexpr Eigen::Index kQpExactMaxDim = 22;

/// Certified U >= max_{x in [-1,1]^m} ||x||_Q for symmetric PSD Q.
/// m <= 22: the convex form peaks at a corner, so all 2^(m-1) sign patterns
/// are enumerated and U is the exact maximum. Larger m: U = sqrt(sum |q_ij|),
/// since q_ij x_i x_j <= |q_ij| on the box.
/// Throws DomainError for asymmetric or indefinite input (tolerance 1e-8)
/// when `validate` is set. `mode` overrides the size-based choice; forcing
/// exact above 40 dimensions throws.
QpBound qp_upper_bound(const Eigen::MatrixXd& q, bool validate = true, std::optional<QpBound::Mode> mode = {});

struct StopInputs {
  /// f_{w_hat}(S_hat)
  double best_value = 0.0;
  std::size_t best_size = 1;
  /// ||chi_{E(S_hat)}||_{A^{-1}}
  double width = 0.0;
  double radius = 0.0;
  /// qp_upper_bound value, used in place of Z_t / alpha
  double qp_bound = 0.0;
  double epsilon = 0.0;
  /// Exact second-best density under w_hat; empty selects the conservative
  /// substitute f_{w_hat}(S_hat).
  std::optional<double> second_best;
};

/// f(S_hat) - C width / |S_hat| >= second + C U / 2 - epsilon.
bool check_stop(const StopInputs& in);

}  // namespace dsb
