#pragma once

#include "cmrff/mass_set.hpp"
#include "cmrff/sampler.hpp"

#include <array>

namespace cmrff {

// Tensor-grid trapezoid rule on [-radius/sigma, radius/sigma]^d.
struct QuadratureOptions {
  double radius = 8.0;
  // Nodes per axis; 0 selects default_quadrature_nodes(d).
  int nodes = 0;
};

// 4097 for d = 1, 1025 for d = 2, 257 for d = 3.
int default_quadrature_nodes(int dim);

// Quadrature total masses of all four parts, indexed by Part.
std::array<double, 4> part_masses_quadrature(const SpectralKernel& kernel,
                                             const QuadratureOptions& options = {});

// d <= 3 only; throws UnsupportedDimensionError otherwise.
MassSet masses_quadrature(const SpectralKernel& kernel, const QuadratureOptions& options = {});

// Exact up to 1-D quadrature in any dimension: each part is
// exp(log_scale) * E[h(s)] with s = u.w ~ N(0, |u|^2 / sigma^2).
MassSet masses_analytic(const SpectralKernel& kernel);

// Least-squares fit of the masses to the exact Gram matrix of `subset`:
//
//   min || K - xi1 A + xi2 B + 2 xi3 S ||_F^2
//   s.t. xi1 - xi2 = k(0), xi >= 0
//
// with A = Phi_w Phi_w^T, B = Phi_z Phi_z^T and S = Phi_v Psi_v^T. After
// eliminating xi1 the remaining two-variable NNLS is solved exactly by
// enumerating active sets. Masses of empty bank blocks are pinned to 0.
MassSet masses_subset_ls(const SpectralKernel& kernel, const FrequencyBank& bank,
                         ConstMatrixRef subset);

// The objective above at an arbitrary MassSet.
double subset_objective(const SpectralKernel& kernel, const FrequencyBank& bank,
                        ConstMatrixRef subset, const MassSet& masses);

}  // namespace cmrff
