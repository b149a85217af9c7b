#include "cmrff/evalbench.hpp"

#include "cmrff/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cmrff {

Matrix gram_exact(const SpectralKernel& kernel, ConstMatrixRef rows, ConstMatrixRef cols) {
  require_dim(rows.cols(), kernel.dim(), "gram_exact rows");
  require_dim(cols.cols(), kernel.dim(), "gram_exact cols");
  Matrix out(rows.rows(), cols.rows());
  Vector delta(kernel.dim());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < cols.rows(); ++j) {
      delta = (rows.row(i) - cols.row(j)).transpose();
      out(i, j) = kernel.eval(delta);
    }
  }
  return out;
}

namespace {

// Same points on both sides: the omega/zeta terms are symmetric rank updates,
// and phi_v psi_v^T = (S C^T - C S^T) / M is the skew part of one product.
Matrix gram_approx_square(const FrequencyBank& bank, const MassSet& xi, ConstMatrixRef x) {
  const Eigen::Index n = x.rows();
  Matrix out = Matrix::Zero(n, n);
  auto sym = out.selfadjointView<Eigen::Lower>();
  if (bank.omega.rows() > 0) sym.rankUpdate(phi_features(bank.omega, x), xi.xi1);
  if (bank.zeta.rows() > 0) sym.rankUpdate(phi_features(bank.zeta, x), -xi.xi2);
  out.triangularView<Eigen::StrictlyUpper>() = out.transpose();
  if (bank.nu.rows() > 0) {
    const Eigen::Index m = bank.nu.rows();
    const Matrix f = phi_features(bank.nu, x);
    Matrix p = Matrix::Zero(n, n);
    p.noalias() = f.rightCols(m) * f.leftCols(m).transpose();
    out -= 2.0 * xi.xi3 * (p - p.transpose());
  }
  return out;
}

}  // namespace

Matrix gram_approx(const FeatureMap& map, ConstMatrixRef rows, ConstMatrixRef cols) {
  require_dim(rows.cols(), map.dim(), "gram_approx rows");
  require_dim(cols.cols(), map.dim(), "gram_approx cols");
  const auto& bank = map.bank();
  const auto& xi = map.masses();
  const bool square = rows.data() == cols.data() && rows.rows() == cols.rows() &&
                      rows.outerStride() == cols.outerStride();
  if (square) return gram_approx_square(bank, xi, rows);
  Matrix out = Matrix::Zero(rows.rows(), cols.rows());
  if (bank.omega.rows() > 0) {
    out.noalias() += xi.xi1 * phi_features(bank.omega, rows) * phi_features(bank.omega, cols).transpose();
  }
  if (bank.zeta.rows() > 0) {
    out.noalias() -= xi.xi2 * phi_features(bank.zeta, rows) * phi_features(bank.zeta, cols).transpose();
  }
  if (bank.nu.rows() > 0) {
    out.noalias() -=
        2.0 * xi.xi3 * phi_features(bank.nu, rows) * psi_features(bank.nu, cols).transpose();
  }
  return out;
}

double relative_error(ConstMatrixRef exact, ConstMatrixRef approx) {
  if (exact.rows() != approx.rows() || exact.cols() != approx.cols()) {
    throw DimensionError("relative_error: matrices differ in shape");
  }
  const double denom = exact.norm();
  if (!(denom > 0.0)) throw std::invalid_argument("relative_error: exact matrix has zero norm");
  return (exact - approx).norm() / denom;
}

double beta_d(double d) {
  if (!(d > 0.0)) throw std::invalid_argument("beta_d: d must be positive");
  const double half = 0.5 * d;
  return (std::pow(half, -d / (d + 2.0)) + std::pow(half, 2.0 / (d + 2.0))) *
         std::pow(2.0, (6.0 * d + 2.0) / (d + 2.0));
}

double sigma_mu_squared(const FrequencyBank& bank) {
  auto mean_sq = [](const Matrix& block) {
    return block.rows() > 0 ? block.rowwise().squaredNorm().mean() : 0.0;
  };
  return mean_sq(bank.omega) + mean_sq(bank.zeta) + 2.0 * mean_sq(bank.nu);
}

double alpha_mu(const MassSet& masses, double sigma_mu_sq) {
  const double weight =
      masses.xi1 * masses.xi1 + masses.xi2 * masses.xi2 + 2.0 * masses.xi3 * masses.xi3;
  return std::sqrt(weight * sigma_mu_sq);
}

BoundInputs make_bound_inputs(const SpectralKernel& kernel, const MassSet& masses, double l,
                              double eps, double delta, std::uint64_t seed, int samples) {
  const FrequencyBank bank = sample_bank(kernel, samples, seed);
  BoundInputs in;
  in.d = kernel.dim();
  in.l = l;
  in.eps = eps;
  in.delta = delta;
  in.total_mass = masses.total_mass();
  in.alpha_mu = alpha_mu(masses, sigma_mu_squared(bank));
  in.beta = beta_d(in.d);
  return in;
}

std::int64_t bound_min_features(const BoundInputs& in) {
  if (!(in.delta > 0.0 && in.delta < 1.0)) {
    throw std::invalid_argument("bound_min_features: delta must lie in (0, 1)");
  }
  if (!(in.eps > 0.0) || !(in.l > 0.0) || !(in.total_mass > 0.0) || !(in.alpha_mu > 0.0) ||
      in.d < 1) {
    throw std::invalid_argument("bound_min_features: eps, l, total mass, alpha_mu and d must be positive");
  }
  const double d = in.d;
  const double beta = in.beta > 0.0 ? in.beta : beta_d(d);
  const double lead = 4.0 * (d + 2.0) * in.total_mass * in.total_mass / (in.eps * in.eps);
  const double logs =
      std::log(beta / in.delta) + (2.0 * d / (d + 2.0)) * std::log(in.alpha_mu * in.l / in.eps);
  const double m = lead * logs;
  if (!(m > 0.0)) return 1;
  if (m > 4.0e18) throw std::overflow_error("bound_min_features: bound exceeds int64 range");
  return static_cast<std::int64_t>(std::ceil(m));
}

double sup_error_grid(const SpectralKernel& kernel, const FeatureMap& map, ConstMatrixRef grid) {
  if (grid.rows() == 0) throw std::invalid_argument("sup_error_grid: grid is empty");
  require_dim(grid.cols(), kernel.dim(), "sup_error_grid");
  require_dim(map.dim(), kernel.dim(), "sup_error_grid map");
  const Matrix origin = Matrix::Zero(1, kernel.dim());
  const Matrix approx = gram_approx(map, grid, origin);
  const Matrix exact = gram_exact(kernel, grid, origin);
  return (approx - exact).cwiseAbs().maxCoeff();
}

}  // namespace cmrff
