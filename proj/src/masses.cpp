#include "cmrff/masses.hpp"

#include "cmrff/errors.hpp"
#include "cmrff/evalbench.hpp"
#include "cmrff/features.hpp"
#include "support.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace cmrff {

namespace {

double k_at_zero(const SpectralKernel& kernel) {
  return kernel.eval(Vector::Zero(kernel.dim()));
}

MassSet finish(const SpectralKernel& kernel, double xi1, double xi2, double xi3,
               MassSource source) {
  MassSet m{xi1, xi2, xi3, source, 0.0};
  m.constraint_residual = std::abs(xi1 - xi2 - k_at_zero(kernel));
  return m;
}

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

// E[h(s)] for s ~ N(0, tau^2), integrated piecewise over the support of h.
double wave_expectation(Wave wave, double tau) {
  if (wave == Wave::Zero) return 0.0;
  if (wave == Wave::One) return 1.0;
  const double max_width = std::min(std::numbers::pi / 32.0, tau / 4.0);
  const double norm = 1.0 / (tau * std::sqrt(2.0 * std::numbers::pi));
  double total = 0.0;
  for (const auto& iv : detail::wave_support(wave, tau)) {
    const auto pieces = static_cast<int>(std::ceil((iv.hi - iv.lo) / max_width));
    const double width = (iv.hi - iv.lo) / pieces;
    for (int p = 0; p < pieces; ++p) {
      const double mid = iv.lo + (p + 0.5) * width;
      for (std::size_t q = 0; q < kGlNodes.size(); ++q) {
        const double s = mid + 0.5 * width * kGlNodes[q];
        total += 0.5 * width * kGlWeights[q] * wave_value(wave, s) *
                 std::exp(-0.5 * s * s / (tau * tau));
      }
    }
  }
  return total * norm;
}

double projected_part_mass(const SpectralKernel& kernel, Part part) {
  const Modulation mod = kernel.modulation(part);
  if (mod.wave == Wave::Zero) return 0.0;
  const double tau = mod.direction.norm() / kernel.sigma();
  const double e = wave_expectation(mod.wave, tau);
  if (e == 0.0) return 0.0;
  const double log_mass = mod.log_scale + std::log(e);
  if (log_mass > std::log(std::numeric_limits<double>::max())) {
    throw SpectralOverflowError("total mass overflows for " + kernel.describe());
  }
  return std::exp(log_mass);
}

double frob_dot(const Matrix& a, const Matrix& b) { return (a.array() * b.array()).sum(); }

}  // namespace

int default_quadrature_nodes(int dim) {
  switch (dim) {
    case 1: return 4097;
    case 2: return 1025;
    case 3: return 257;
    default: return 0;
  }
}

std::array<double, 4> part_masses_quadrature(const SpectralKernel& kernel,
                                             const QuadratureOptions& options) {
  const int d = kernel.dim();
  if (d > 3) {
    throw UnsupportedDimensionError("tensor-grid quadrature supports d <= 3 (got d = " +
                                    std::to_string(d) + "); use the subset estimator");
  }
  const int n = options.nodes > 0 ? options.nodes : default_quadrature_nodes(d);
  if (n < 2) throw std::invalid_argument("quadrature needs at least 2 nodes per axis");
  const double half = options.radius / kernel.sigma();
  const double h = 2.0 * half / (n - 1);

  std::vector<double> axis(static_cast<std::size_t>(n));
  std::vector<double> weight(static_cast<std::size_t>(n), h);
  for (int i = 0; i < n; ++i) axis[static_cast<std::size_t>(i)] = -half + i * h;
  weight.front() = weight.back() = 0.5 * h;

  std::array<double, 4> sums{0.0, 0.0, 0.0, 0.0};
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  Vector omega(d);
  while (true) {
    double w = 1.0;
    for (int a = 0; a < d; ++a) {
      const auto i = static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
      omega(a) = axis[i];
      w *= weight[i];
    }
    const auto mu = kernel.density(omega);
    sums[0] += w * std::max(mu.real(), 0.0);
    sums[1] += w * std::max(-mu.real(), 0.0);
    sums[2] += w * std::max(mu.imag(), 0.0);
    sums[3] += w * std::max(-mu.imag(), 0.0);

    int a = 0;
    while (a < d && ++idx[static_cast<std::size_t>(a)] == n) {
      idx[static_cast<std::size_t>(a)] = 0;
      ++a;
    }
    if (a == d) break;
  }
  return sums;
}

MassSet masses_quadrature(const SpectralKernel& kernel, const QuadratureOptions& options) {
  const auto parts = part_masses_quadrature(kernel, options);
  return finish(kernel, parts[0], parts[1], parts[2], MassSource::Quadrature);
}

MassSet masses_analytic(const SpectralKernel& kernel) {
  return finish(kernel, projected_part_mass(kernel, Part::RealPos),
                projected_part_mass(kernel, Part::RealNeg),
                projected_part_mass(kernel, Part::ImagPos), MassSource::Analytic);
}

namespace {

// Gram matrices of the subset problem; B or S stay zero when pinned.
struct SubsetSystem {
  Matrix k;
  Matrix a;  // Phi_w Phi_w^T
  Matrix b;  // Phi_z Phi_z^T
  Matrix s;  // Phi_v Psi_v^T
  double k0 = 0.0;
  bool xi2_free = false;
  bool xi3_free = false;
};

SubsetSystem build_system(const SpectralKernel& kernel, const FrequencyBank& bank,
                          ConstMatrixRef subset) {
  if (subset.rows() < 2) {
    throw std::invalid_argument("masses_subset_ls: subset needs at least 2 rows (got " +
                                std::to_string(subset.rows()) + ")");
  }
  require_dim(subset.cols(), kernel.dim(), "masses_subset_ls subset");
  require_dim(bank.dim, kernel.dim(), "masses_subset_ls bank");
  if (bank.omega.rows() == 0) {
    throw std::invalid_argument("masses_subset_ls: bank has no omega frequencies");
  }
  const Eigen::Index n = subset.rows();
  SubsetSystem sys;
  sys.k0 = k_at_zero(kernel);
  sys.xi2_free = bank.zeta.rows() > 0;
  sys.xi3_free = bank.nu.rows() > 0;
  sys.k = gram_exact(kernel, subset, subset);
  const Matrix phi_w = phi_features(bank.omega, subset);
  sys.a = phi_w * phi_w.transpose();
  sys.b = Matrix::Zero(n, n);
  sys.s = Matrix::Zero(n, n);
  if (sys.xi2_free) {
    const Matrix phi_z = phi_features(bank.zeta, subset);
    sys.b.noalias() = phi_z * phi_z.transpose();
  }
  if (sys.xi3_free) {
    sys.s.noalias() = phi_features(bank.nu, subset) * psi_features(bank.nu, subset).transpose();
  }
  return sys;
}

double objective(const SubsetSystem& sys, double xi1, double xi2, double xi3) {
  return (sys.k - xi1 * sys.a + xi2 * sys.b + 2.0 * xi3 * sys.s).squaredNorm();
}

}  // namespace

MassSet masses_subset_ls(const SpectralKernel& kernel, const FrequencyBank& bank,
                         ConstMatrixRef subset) {
  const SubsetSystem sys = build_system(kernel, bank, subset);
  // With xi1 = xi2 + k(0) the residual is r0 - xi2 p - xi3 q.
  const Matrix r0 = sys.k - sys.k0 * sys.a;
  const Matrix p = sys.a - sys.b;
  const Matrix q = -2.0 * sys.s;
  const double pp = sys.xi2_free ? frob_dot(p, p) : 0.0;
  const double qq = sys.xi3_free ? frob_dot(q, q) : 0.0;
  const double pq = frob_dot(p, q);
  const double rp = frob_dot(r0, p);
  const double rq = frob_dot(r0, q);
  const double tiny = std::numeric_limits<double>::min();

  // Active-set enumeration: {}, {xi2}, {xi3}, {xi2, xi3}.
  double best2 = 0.0;
  double best3 = 0.0;
  double best = r0.squaredNorm();
  auto consider = [&](double x2, double x3) {
    if (!(x2 >= 0.0) || !(x3 >= 0.0)) return;
    const double obj = (r0 - x2 * p - x3 * q).squaredNorm();
    if (obj < best) {
      best = obj;
      best2 = x2;
      best3 = x3;
    }
  };
  if (pp > tiny) consider(std::max(rp / pp, 0.0), 0.0);
  if (qq > tiny) consider(0.0, std::max(rq / qq, 0.0));
  if (pp > tiny && qq > tiny) {
    const double det = pp * qq - pq * pq;
    // Near-singular normal equations fall back to the boundary candidates.
    if (det > 1e-12 * pp * qq) consider((rp * qq - rq * pq) / det, (rq * pp - rp * pq) / det);
  }
  return finish(kernel, best2 + sys.k0, best2, best3, MassSource::SubsetLS);
}

double subset_objective(const SpectralKernel& kernel, const FrequencyBank& bank,
                        ConstMatrixRef subset, const MassSet& masses) {
  const SubsetSystem sys = build_system(kernel, bank, subset);
  return objective(sys, masses.xi1, masses.xi2, masses.xi3);
}

}  // namespace cmrff
