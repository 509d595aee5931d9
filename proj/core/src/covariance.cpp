#include "scp/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>

#include "scp/errors.hpp"
#include "scp/special.hpp"

namespace scp {
namespace {

constexpr double kCorrelationFloor = 1e-300;
// Smallest admissible squared Cholesky pivot relative to the largest diagonal entry.
constexpr double kPivotTolerance = 1e-14;
constexpr Eigen::Index kInverseBlock = 128;

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void MaternParams::validate() const {
  if (!std::isfinite(nugget) || !std::isfinite(partial_sill) || nugget < 0.0 ||
      partial_sill < 0.0) {
    throw InvalidArgument("MaternParams: nugget and partial sill must be finite and >= 0");
  }
  if (!(nugget + partial_sill > 0.0)) {
    throw InvalidArgument("MaternParams: nugget + partial sill must be > 0");
  }
  if (!finite_positive(range) || !finite_positive(smoothness)) {
    throw InvalidArgument("MaternParams: range and smoothness must be finite and > 0");
  }
}

double matern_correlation(double distance, double range, double smoothness) {
  if (!std::isfinite(distance) || distance < 0.0) {
    throw InvalidArgument("matern_correlation: distance must be finite and >= 0");
  }
  if (!finite_positive(range) || !finite_positive(smoothness)) {
    throw InvalidArgument("matern_correlation: range and smoothness must be finite and > 0");
  }
  if (distance == 0.0) {
    return 1.0;
  }
  const double u = distance / range * std::sqrt(2.0 * smoothness);
  // log of 2^(1-k) u^k / Gamma(k) * exp(-u); the Bessel factor stays exp(u)-scaled.
  const double log_prefactor = (1.0 - smoothness) * std::numbers::ln2 -
                               std::lgamma(smoothness) + smoothness * std::log(u) - u;
  const double rho = std::exp(log_prefactor) * special::bessel_k_scaled(smoothness, u);
  if (!std::isfinite(rho) || rho > 1.0) {
    // u so small that u^-kappa overflowed; the correlation is 1 to working precision.
    return 1.0;
  }
  return rho < kCorrelationFloor ? 0.0 : rho;
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw InvalidArgument("CovarianceMatrix: matrix must be square");
  }
}

CovarianceMatrix CovarianceMatrix::submatrix(std::span<const std::size_t> indices) const {
  const auto n = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const auto jc = static_cast<Eigen::Index>(indices[static_cast<std::size_t>(c)]);
    for (Eigen::Index r = 0; r < n; ++r) {
      out(r, c) = values_(static_cast<Eigen::Index>(indices[static_cast<std::size_t>(r)]), jc);
    }
  }
  return CovarianceMatrix(std::move(out));
}

CovarianceMatrix covariance_matrix(std::span<const Point> locations, const MaternParams& params) {
  params.validate();
  const auto n = static_cast<Eigen::Index>(locations.size());
  if (n < 1) {
    throw InvalidArgument("covariance_matrix: no locations");
  }
  Eigen::MatrixXd sigma(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Point pj = locations[static_cast<std::size_t>(j)];
    if (!std::isfinite(pj.x) || !std::isfinite(pj.y)) {
      throw InvalidArgument("covariance_matrix: non-finite location");
    }
    sigma(j, j) = params.sill();
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double d = distance(locations[static_cast<std::size_t>(i)], pj);
      if (d == 0.0 && params.nugget == 0.0) {
        throw DegenerateCovariance("covariance_matrix: locations " + std::to_string(i) + " and " +
                                   std::to_string(j) + " coincide and the nugget is zero");
      }
      const double c = params.partial_sill * matern_correlation(d, params.range, params.smoothness);
      sigma(i, j) = c;
      sigma(j, i) = c;
    }
  }
  return CovarianceMatrix(std::move(sigma));
}

PrecisionMatrix::PrecisionMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw InvalidArgument("PrecisionMatrix: matrix must be square");
  }
}

PrecisionFactor::PrecisionFactor(const Eigen::MatrixXd& covariance) {
  const Eigen::Index n = covariance.rows();
  if (n == 0 || covariance.cols() != n) {
    throw InvalidArgument("PrecisionFactor: covariance must be square and non-empty");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success) {
    throw DegenerateCovariance("covariance matrix is not positive definite");
  }
  const Eigen::MatrixXd& factor = llt.matrixLLT();
  const double scale = covariance.diagonal().cwiseAbs().maxCoeff();
  const double min_pivot = factor.diagonal().cwiseAbs2().minCoeff();
  if (!(min_pivot > kPivotTolerance * scale)) {
    throw DegenerateCovariance("covariance matrix is numerically singular");
  }
  // L^{-1} by column blocks: block j of the inverse only touches the trailing
  // triangle, so the solve cost drops to about n^3 / 3.
  inverse_factor_ = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; j += kInverseBlock) {
    const Eigen::Index w = std::min(kInverseBlock, n - j);
    auto block = inverse_factor_.block(j, j, n - j, w);
    block.topRows(w).setIdentity();
    factor.bottomRightCorner(n - j, n - j).triangularView<Eigen::Lower>().solveInPlace(block);
  }
  diagonal_ = inverse_factor_.colwise().squaredNorm().transpose();
}

Eigen::VectorXd PrecisionFactor::apply(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  if (v.size() != dim()) {
    throw InvalidArgument("PrecisionFactor::apply: dimension mismatch");
  }
  const Eigen::VectorXd w = inverse_factor_.triangularView<Eigen::Lower>() * v;
  return inverse_factor_.triangularView<Eigen::Lower>().transpose() * w;
}

Eigen::VectorXd PrecisionFactor::column(Eigen::Index j) const {
  if (j < 0 || j >= dim()) {
    throw InvalidArgument("PrecisionFactor::column: index out of range");
  }
  // L^{-1} e_j is zero above row j.
  const Eigen::Index tail = dim() - j;
  Eigen::VectorXd out = inverse_factor_.bottomRows(tail).transpose() *
                        inverse_factor_.col(j).tail(tail);
  return out;
}

PrecisionMatrix PrecisionFactor::dense() const {
  const Eigen::Index n = dim();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  q.selfadjointView<Eigen::Lower>().rankUpdate(inverse_factor_.transpose());
  q.triangularView<Eigen::StrictlyUpper>() = q.transpose();
  return PrecisionMatrix(std::move(q));
}

PrecisionMatrix precision_matrix(const CovarianceMatrix& covariance) {
  return PrecisionFactor(covariance).dense();
}

}  // namespace scp
