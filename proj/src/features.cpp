#include "cmrff/features.hpp"

#include "cmrff/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace cmrff {

std::string_view to_string(MassSource source) {
  switch (source) {
    case MassSource::Quadrature: return "quadrature";
    case MassSource::SubsetLS: return "subset_ls";
    case MassSource::Analytic: return "analytic";
  }
  return "unknown";
}

MassSource mass_source_from_string(std::string_view name) {
  for (auto s : {MassSource::Quadrature, MassSource::SubsetLS, MassSource::Analytic}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown mass source '" + std::string(name) + "'");
}

Matrix phi_features(ConstMatrixRef freqs, ConstMatrixRef data) {
  require_dim(data.cols(), freqs.cols(), "phi_features");
  const Eigen::Index m = freqs.rows();
  Matrix out(data.rows(), 2 * m);
  if (m == 0) return out;
  const Matrix proj = data * freqs.transpose();
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  out.leftCols(m) = proj.array().cos() * scale;
  out.rightCols(m) = proj.array().sin() * scale;
  return out;
}

Matrix psi_features(ConstMatrixRef freqs, ConstMatrixRef data) {
  require_dim(data.cols(), freqs.cols(), "psi_features");
  const Eigen::Index m = freqs.rows();
  Matrix out(data.rows(), 2 * m);
  if (m == 0) return out;
  const Matrix proj = data * freqs.transpose();
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  out.leftCols(m) = -proj.array().sin() * scale;
  out.rightCols(m) = proj.array().cos() * scale;
  return out;
}

Vector phi_block(ConstMatrixRef freqs, ConstVectorRef x) {
  return phi_features(freqs, x.transpose()).transpose();
}

Vector psi_block(ConstMatrixRef freqs, ConstVectorRef y) {
  return psi_features(freqs, y.transpose()).transpose();
}

FeatureMap::FeatureMap(FrequencyBank bank, MassSet masses)
    : bank_(std::move(bank)), masses_(masses) {
  const double xi[3] = {masses_.xi1, masses_.xi2, masses_.xi3};
  const Matrix* blocks[3] = {&bank_.omega, &bank_.zeta, &bank_.nu};
  const char* names[3] = {"xi1/omega", "xi2/zeta", "xi3/nu"};
  for (int b = 0; b < 3; ++b) {
    if (!std::isfinite(xi[b]) || xi[b] < 0.0) {
      throw std::invalid_argument(std::string("FeatureMap: mass ") + names[b] +
                                  " must be finite and nonnegative");
    }
    if (blocks[b]->rows() > 0) {
      require_dim(blocks[b]->cols(), bank_.dim, "FeatureMap bank block");
    } else if (xi[b] > 0.0) {
      throw std::invalid_argument(std::string("FeatureMap: nonzero mass with empty bank for ") +
                                  names[b]);
    }
  }
}

double FeatureMap::approx_kernel(ConstVectorRef x, ConstVectorRef y) const {
  require_dim(x.size(), dim(), "approx_kernel x");
  require_dim(y.size(), dim(), "approx_kernel y");
  double s = 0.0;
  if (bank_.omega.rows() > 0) {
    s += masses_.xi1 * phi_block(bank_.omega, x).dot(phi_block(bank_.omega, y));
  }
  if (bank_.zeta.rows() > 0) {
    s -= masses_.xi2 * phi_block(bank_.zeta, x).dot(phi_block(bank_.zeta, y));
  }
  if (bank_.nu.rows() > 0) {
    s -= 2.0 * masses_.xi3 * phi_block(bank_.nu, x).dot(psi_block(bank_.nu, y));
  }
  return s;
}

std::vector<FeatureBlock> FeatureMap::layout() const {
  std::vector<FeatureBlock> out;
  auto add = [&](const char* name, const Matrix& freqs, double mass, double sign) {
    if (freqs.rows() > 0) {
      out.push_back({name, static_cast<int>(2 * freqs.rows()), std::sqrt(mass), sign});
    }
  };
  add("omega", bank_.omega, masses_.xi1, 1.0);
  add("zeta", bank_.zeta, masses_.xi2, -1.0);
  add("nu", bank_.nu, 2.0 * masses_.xi3, -1.0);
  return out;
}

Matrix FeatureMap::transform(ConstMatrixRef data, Side side) const {
  require_dim(data.cols(), dim(), "transform");
  const auto blocks = layout();
  int width = 0;
  for (const auto& b : blocks) width += b.width;
  Matrix out(data.rows(), width);
  int col = 0;
  for (const auto& b : blocks) {
    const Matrix& freqs = b.name == "omega" ? bank_.omega : b.name == "zeta" ? bank_.zeta : bank_.nu;
    if (b.name == "nu" && side == Side::Right) {
      out.middleCols(col, b.width) = b.scale * psi_features(freqs, data);
    } else {
      out.middleCols(col, b.width) = b.scale * phi_features(freqs, data);
    }
    col += b.width;
  }
  return out;
}

Matrix FeatureMap::transform_symmetric(ConstMatrixRef data) const {
  require_dim(data.cols(), dim(), "transform_symmetric");
  const Eigen::Index w_omega = 2 * bank_.omega.rows();
  const Eigen::Index w_zeta = 2 * bank_.zeta.rows();
  Matrix out(data.rows(), w_omega + w_zeta);
  if (w_omega > 0) out.leftCols(w_omega) = std::sqrt(masses_.xi1) * phi_features(bank_.omega, data);
  if (w_zeta > 0) out.rightCols(w_zeta) = std::sqrt(masses_.xi2) * phi_features(bank_.zeta, data);
  return out;
}

}  // namespace cmrff

namespace cmrff {

Matrix FeatureMap::transform_concat(ConstMatrixRef data) const {
  require_dim(data.cols(), dim(), "transform_concat");
  const Matrix left = transform(data, Side::Left);
  const Eigen::Index w_nu = 2 * bank_.nu.rows();
  Matrix out(data.rows(), left.cols() + w_nu);
  out.leftCols(left.cols()) = left;
  if (w_nu > 0) out.rightCols(w_nu) = std::sqrt(2.0 * masses_.xi3) * psi_features(bank_.nu, data);
  return out;
}

}  // namespace cmrff
