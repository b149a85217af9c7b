#pragma once

#include "cmrff/features.hpp"
#include "cmrff/mass_set.hpp"

#include <cstdint>

namespace cmrff {

// K(i, j) = k(rows_i - cols_j); asymmetric in general even when rows == cols.
Matrix gram_exact(const SpectralKernel& kernel, ConstMatrixRef rows, ConstMatrixRef cols);

// K~(i, j) = s(rows_i, cols_j), assembled from the three block products.
Matrix gram_approx(const FeatureMap& map, ConstMatrixRef rows, ConstMatrixRef cols);

// ||K - K~||_F / ||K||_F
double relative_error(ConstMatrixRef exact, ConstMatrixRef approx);

// ((d/2)^(-d/(d+2)) + (d/2)^(2/(d+2))) * 2^((6d+2)/(d+2))
double beta_d(double d);

// Inputs of the uniform-convergence sample-size bound.
struct BoundInputs {
  int d = 1;
  double l = 1.0;  // diameter of the difference set
  double eps = 0.1;
  double delta = 0.1;
  double total_mass = 1.0;  // xi1 + xi2 + 2 xi3
  double alpha_mu = 1.0;
  double beta = 0.0;  // beta_d(d) when left at 0
};

// E|w|^2 + E|z|^2 + 2 E|v|^2 over the rows of each bank block.
double sigma_mu_squared(const FrequencyBank& bank);

// sqrt((xi1^2 + xi2^2 + 2 xi3^2) * sigma_mu^2)
double alpha_mu(const MassSet& masses, double sigma_mu_sq);

// Fills BoundInputs for a kernel; sigma_mu^2 is estimated from a fresh bank of
// `samples` frequencies per part.
BoundInputs make_bound_inputs(const SpectralKernel& kernel, const MassSet& masses, double l,
                              double eps, double delta, std::uint64_t seed,
                              int samples = 10'000);

// ceil(4 (d+2) |mu|^2 / eps^2 * (log(beta_d / delta) + 2d/(d+2) log(alpha_mu l / eps))),
// or 1 when that expression is not positive.
std::int64_t bound_min_features(const BoundInputs& inputs);

// max over grid rows D of |s(D, 0) - k(D)|.
double sup_error_grid(const SpectralKernel& kernel, const FeatureMap& map, ConstMatrixRef grid);

}  // namespace cmrff
