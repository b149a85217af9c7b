#pragma once

#include "cmrff/mass_set.hpp"
#include "cmrff/sampler.hpp"

#include <array>
#include <string>
#include <vector>

namespace cmrff {

// phi(W, x) = [cos(W x), sin(W x)] / sqrt(M), one row per data point.
Matrix phi_features(ConstMatrixRef freqs, ConstMatrixRef data);
// psi(W, y) = [-sin(W y), cos(W y)] / sqrt(M)
Matrix psi_features(ConstMatrixRef freqs, ConstMatrixRef data);

Vector phi_block(ConstMatrixRef freqs, ConstVectorRef x);
Vector psi_block(ConstMatrixRef freqs, ConstVectorRef y);

enum class Side { Left, Right };

struct FeatureBlock {
  std::string name;  // "omega", "zeta" or "nu"
  int width = 0;
  double scale = 0.0;
  // Sign of this block in s(x, y) = sum_b sign_b <Left_b(x), Right_b(y)>.
  double sign = 1.0;
};

// Random features for s(x, y) = xi1 phi_w(x).phi_w(y) - xi2 phi_z(x).phi_z(y)
//                               - 2 xi3 phi_v(x).psi_v(y).
class FeatureMap {
 public:
  FeatureMap(FrequencyBank bank, MassSet masses);

  const FrequencyBank& bank() const noexcept { return bank_; }
  const MassSet& masses() const noexcept { return masses_; }
  int dim() const noexcept { return bank_.dim; }

  double approx_kernel(ConstVectorRef x, ConstVectorRef y) const;

  // Row i = [sqrt(xi1) phi_w, sqrt(xi2) phi_z, sqrt(2 xi3) phi_v] for Left;
  // the last block is sqrt(2 xi3) psi_v for Right. Empty bank blocks are omitted.
  Matrix transform(ConstMatrixRef data, Side side) const;

  // The omega and zeta blocks only: features of the even part (K + K^T) / 2.
  Matrix transform_symmetric(ConstMatrixRef data) const;

  // One real vector per point for a linear model: the Left blocks followed by
  // sqrt(2 xi3) psi_v, so both halves of the skew part are visible.
  Matrix transform_concat(ConstMatrixRef data) const;

  std::vector<FeatureBlock> layout() const;

 private:
  FrequencyBank bank_;
  MassSet masses_;
};

}  // namespace cmrff
