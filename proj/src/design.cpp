#include "dsb/design.hpp"

#include <cmath>
#include <stdexcept>

#include "dsb/kernels.hpp"

namespace dsb {

DesignState::DesignState(EdgeIndex m, std::size_t arms, double lambda)
    : m_(m),
      lambda_(lambda),
      counts_(arms, 0),
      a_(Eigen::MatrixXd::Identity(m, m) * lambda),
      a_inv_(Eigen::MatrixXd::Identity(m, m) / lambda),
      b_(Eigen::VectorXd::Zero(m)),
      scratch_(m),
      logdet_(static_cast<double>(m) * std::log(lambda)) {
  if (m < 1) throw std::invalid_argument("DesignState needs m >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite and > 0");
}

void DesignState::update(std::size_t arm, std::span<const EdgeIndex> support, double reward) {
  if (!std::isfinite(reward)) throw std::invalid_argument("non-finite reward");
  if (arm >= counts_.size()) throw std::out_of_range("arm index out of range");

  // u = A^{-1} chi, s = chi^T A^{-1} chi
  scratch_.setZero();
  for (EdgeIndex e : support) scratch_ += a_inv_.col(e);
  double s = 0.0;
  for (EdgeIndex e : support) s += scratch_[e];

  logdet_ += std::log1p(s);
  kernels::rank_one_downdate(a_inv_, scratch_, 1.0 + s);
  for (EdgeIndex i : support) {
    for (EdgeIndex j : support) a_(i, j) += 1.0;
    b_[i] += reward;
  }
  ++counts_[arm];
  ++t_;
}

Eigen::VectorXd DesignState::raw_estimate() const { return a_inv_ * b_; }

WeightVector DesignState::estimate() const {
  Eigen::VectorXd raw = raw_estimate();
  std::vector<double> w(static_cast<std::size_t>(m_));
  for (EdgeIndex e = 0; e < m_; ++e) w[e] = raw[e] < 0.0 ? 0.0 : raw[e];
  return WeightVector(std::move(w));
}

double DesignState::width(std::span<const EdgeIndex> support) const {
  double q = 0.0;
  for (EdgeIndex i : support)
    for (EdgeIndex j : support) q += a_inv_(i, j);
  return std::sqrt(std::max(q, 0.0));
}

double DesignState::inverse_residual() const {
  return (a_inv_ * a_ - Eigen::MatrixXd::Identity(m_, m_)).cwiseAbs().maxCoeff();
}

void DesignState::refresh_inverse() {
  a_inv_ = a_.llt().solve(Eigen::MatrixXd::Identity(m_, m_));
}

double confidence_radius(const DesignState& state, double r_prime, double L, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
  const double lambda = state.lambda();
  const double base = static_cast<double>(state.m()) * std::log(lambda);
  double excess = state.logdet() - base;
  if (excess < -1e-9 * std::max(1.0, std::abs(base)))
    throw std::logic_error("log det A fell below m log lambda; design state is inconsistent");
  excess = std::max(excess, 0.0);
  const double inside = 0.5 * excess - std::log(delta);
  return r_prime * std::sqrt(2.0 * std::max(inside, 0.0)) + std::sqrt(lambda) * L;
}

QpBound qp_upper_bound(const Eigen::MatrixXd& q, bool validate, std::optional<QpBound::Mode> mode) {
  if (q.rows() != q.cols() || q.rows() == 0) throw DomainError("qp_upper_bound needs a nonempty square matrix");
  if (validate) {
    const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
    if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) throw DomainError("matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8 * scale) throw DomainError("matrix is not positive semidefinite");
  }
  const auto chosen = mode.value_or(q.rows() <= kQpExactMaxDim ? QpBound::Mode::exact : QpBound::Mode::relaxed);
  if (chosen == QpBound::Mode::exact)
    return {std::sqrt(std::max(0.0, kernels::max_corner_form(q))), QpBound::Mode::exact};
  return {std::sqrt(kernels::abs_entry_sum(q)), QpBound::Mode::relaxed};
}

bool check_stop(const StopInputs& in) {
  const double second = in.second_best.value_or(in.best_value);
  const double lhs = in.best_value - in.radius * in.width / static_cast<double>(in.best_size);
  const double rhs = second + in.radius * in.qp_bound / 2.0 - in.epsilon;
  return lhs >= rhs;
}

}  // namespace dsb
