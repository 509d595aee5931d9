#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "scp/geometry.hpp"

namespace scp {

/// Matern covariance parameters: nugget tau^2, partial sill sigma^2, range phi
/// and smoothness kappa.
struct MaternParams {
  double nugget = 0.0;
  double partial_sill = 1.0;
  double range = 0.1;
  double smoothness = 0.5;

  /// Total variance at distance zero, sigma^2 + tau^2.
  double sill() const { return nugget + partial_sill; }

  /// Throws InvalidArgument unless every field is finite, nugget and partial
  /// sill are nonnegative with a positive sum, and range and smoothness are
  /// positive.
  void validate() const;

  friend bool operator==(const MaternParams&, const MaternParams&) = default;
};

/// Matern correlation
///   rho(d) = 2^(1-kappa) / Gamma(kappa) * u^kappa * K_kappa(u),  u = d sqrt(2 kappa) / range,
/// with rho(0) = 1. Values below 1e-300 are flushed to zero.
double matern_correlation(double distance, double range, double smoothness);

/// Dense symmetric covariance matrix of a location set.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Eigen::MatrixXd values);

  Eigen::Index dim() const { return values_.rows(); }
  const Eigen::MatrixXd& matrix() const { return values_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

  /// Rows and columns `indices` in the given order.
  CovarianceMatrix submatrix(std::span<const std::size_t> indices) const;

 private:
  Eigen::MatrixXd values_;
};

/// Entry (i, j) = sigma^2 rho(|s_i - s_j|) + [i == j] tau^2.
///
/// Coincident locations with a zero nugget make the matrix singular and are
/// rejected with DegenerateCovariance; no jitter is added.
CovarianceMatrix covariance_matrix(std::span<const Point> locations, const MaternParams& params);

class PrecisionMatrix {
 public:
  explicit PrecisionMatrix(Eigen::MatrixXd values);

  Eigen::Index dim() const { return values_.rows(); }
  const Eigen::MatrixXd& matrix() const { return values_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

 private:
  Eigen::MatrixXd values_;
};

/// Cholesky-based access to Q = Sigma^{-1} without forming it.
///
/// Stores the inverse Cholesky factor L^{-1}, so Q = L^{-T} L^{-1}. The
/// diagonal of Q, products Q v and single columns cost O(n^2) each after an
/// O(n^3) setup; immutable and safe to share between threads.
class PrecisionFactor {
 public:
  /// Throws DegenerateCovariance if `covariance` is not numerically positive definite.
  explicit PrecisionFactor(const Eigen::MatrixXd& covariance);
  explicit PrecisionFactor(const CovarianceMatrix& covariance)
      : PrecisionFactor(covariance.matrix()) {}

  Eigen::Index dim() const { return inverse_factor_.rows(); }

  /// q_ii for every i.
  const Eigen::VectorXd& diagonal() const { return diagonal_; }

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  Eigen::VectorXd column(Eigen::Index j) const;
  PrecisionMatrix dense() const;

 private:
  Eigen::MatrixXd inverse_factor_;
  Eigen::VectorXd diagonal_;
};

/// Q = Sigma^{-1} through a symmetric (Cholesky) factorization.
PrecisionMatrix precision_matrix(const CovarianceMatrix& covariance);

}  // namespace scp
