#pragma once

#include "cmrff/spectral.hpp"

#include <cstdint>

namespace cmrff {

// Frequencies drawn from the normalized parts mu_R+, mu_R-, mu_I+.
// A block has zero rows when its part carries no mass.
struct FrequencyBank {
  Matrix omega;
  Matrix zeta;
  Matrix nu;
  std::uint64_t seed = 0;
  int m = 0;
  int dim = 0;
};

struct SamplerOptions {
  // Acceptance is checked once after this many proposals.
  std::int64_t probe_batch = 10'000;
  double min_acceptance = 1e-4;
  // Consecutive rejections tolerated for a single accepted sample.
  std::int64_t max_proposals_per_sample = 1'000'000;
};

struct SamplerStats {
  std::int64_t proposals = 0;
  std::int64_t accepted = 0;

  double acceptance_rate() const {
    return proposals > 0 ? static_cast<double>(accepted) / static_cast<double>(proposals) : 0.0;
  }
};

// True when the part is identically zero for this kernel (known analytically).
bool is_degenerate(const SpectralKernel& kernel, Part part);

// Proposal density g: the N(0, sigma^-2 I) envelope shared by every family.
double proposal_density(const SpectralKernel& kernel, ConstVectorRef omega);

// Constant c with f <= c g: 1 for the shift family, exp(s^2 |b|^2 / 2) for the
// sinh/cosh families.
double envelope_constant(const SpectralKernel& kernel, Part part);

// f(w) / (c g(w)), the probability of accepting a proposal at w.
double acceptance_ratio(const SpectralKernel& kernel, Part part, ConstVectorRef omega);

// Envelope probability of the set where the part is positive.
double support_probability(const SpectralKernel& kernel, Part part);

// Draws m rows from part / ||part|| by acceptance-rejection.
//
// Proposals come from the Gaussian envelope conditioned on the support of the
// part (a union of slabs orthogonal to the modulation direction); the accept
// test U < f / (c g) is the usual one, so the output law does not change.
// Deterministic in (kernel, part, m, seed).
Matrix sample_part(const SpectralKernel& kernel, Part part, int m, std::uint64_t seed,
                   const SamplerOptions& options = {}, SamplerStats* stats = nullptr);

// Samples omega ~ mu_R+, zeta ~ mu_R-, nu ~ mu_I+. Parts that are degenerate,
// or whose support has no representable envelope mass, are left empty.
FrequencyBank sample_bank(const SpectralKernel& kernel, int m, std::uint64_t seed,
                          const SamplerOptions& options = {});

}  // namespace cmrff
