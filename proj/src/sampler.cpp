#include "cmrff/sampler.hpp"

#include "cmrff/errors.hpp"
#include "cmrff/rng.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace cmrff {

namespace {

// Envelope N(0, tau^2) on s = u.w conditioned on the support of the wave.
class SupportProposal {
 public:
  SupportProposal(Wave wave, double tau) : tau_(tau), intervals_(detail::wave_support(wave, tau)) {
    cumulative_.reserve(intervals_.size());
    double total = 0.0;
    for (const auto& iv : intervals_) {
      total += detail::normal_mass(iv.lo, iv.hi, tau_);
      cumulative_.push_back(total);
    }
  }

  double mass() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

  double draw(Engine& engine) const {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double pick = uniform(engine) * mass();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), pick);
    if (it == cumulative_.end()) --it;
    const auto& iv = intervals_[static_cast<std::size_t>(it - cumulative_.begin())];
    return detail::truncated_normal_quantile(iv.lo, iv.hi, tau_, uniform(engine));
  }

 private:
  double tau_;
  std::vector<detail::Interval> intervals_;
  std::vector<double> cumulative_;
};

[[noreturn]] void envelope_failure(const SpectralKernel& kernel, Part part,
                                   const SamplerStats& stats, const char* reason) {
  std::ostringstream msg;
  msg << "rejection sampler for " << to_string(part) << " of " << kernel.describe() << ": "
      << reason << " (" << stats.accepted << " accepted of " << stats.proposals << " proposals)";
  throw EnvelopeFailureError(msg.str());
}

}  // namespace

bool is_degenerate(const SpectralKernel& kernel, Part part) {
  return kernel.modulation(part).wave == Wave::Zero;
}

double proposal_density(const SpectralKernel& kernel, ConstVectorRef omega) {
  return std::exp(kernel.log_envelope(omega));
}

double envelope_constant(const SpectralKernel& kernel, Part part) {
  const double log_c = kernel.modulation(part).log_scale;
  if (log_c > std::log(std::numeric_limits<double>::max())) {
    throw SpectralOverflowError("envelope constant overflows for " + kernel.describe());
  }
  return std::exp(log_c);
}

double acceptance_ratio(const SpectralKernel& kernel, Part part, ConstVectorRef omega) {
  const double g = proposal_density(kernel, omega);
  if (g == 0.0) return 0.0;
  return kernel.part_density(part, omega) / (envelope_constant(kernel, part) * g);
}

double support_probability(const SpectralKernel& kernel, Part part) {
  const Modulation mod = kernel.modulation(part);
  if (mod.wave == Wave::Zero) return 0.0;
  if (mod.wave == Wave::One) return 1.0;
  return SupportProposal(mod.wave, mod.direction.norm() / kernel.sigma()).mass();
}

Matrix sample_part(const SpectralKernel& kernel, Part part, int m, std::uint64_t seed,
                   const SamplerOptions& options, SamplerStats* stats) {
  if (m < 1) throw std::invalid_argument("sample_part: m must be at least 1");
  const Modulation mod = kernel.modulation(part);
  if (mod.wave == Wave::Zero) {
    throw DegenerateMeasureError(std::string(to_string(part)) + " of " + kernel.describe() +
                                 " is identically zero");
  }

  const int d = kernel.dim();
  const double inv_sigma = 1.0 / kernel.sigma();
  Engine engine = make_engine(seed, stream::kPartBase + static_cast<std::uint64_t>(part));
  std::normal_distribution<double> normal(0.0, inv_sigma);
  Matrix out(m, d);
  SamplerStats local;

  if (mod.wave == Wave::One) {
    // f = c g: every proposal is accepted, so skip the uniform draw.
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < d; ++j) out(i, j) = normal(engine);
    }
    local.proposals = local.accepted = m;
    if (stats) *stats = local;
    return out;
  }

  const Vector& u = mod.direction;
  const double u_norm2 = u.squaredNorm();
  const SupportProposal proposal(mod.wave, std::sqrt(u_norm2) * inv_sigma);
  if (!(proposal.mass() > 0.0)) {
    throw DegenerateMeasureError(std::string(to_string(part)) + " of " + kernel.describe() +
                                 " has no representable envelope mass");
  }

  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Vector z(d);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::int64_t tries = 1;; ++tries) {
      s = proposal.draw(engine);
      ++local.proposals;
      const bool accept = uniform(engine) < wave_value(mod.wave, s);
      if (accept) ++local.accepted;
      if (local.proposals == options.probe_batch &&
          static_cast<double>(local.accepted) <
              options.min_acceptance * static_cast<double>(local.proposals)) {
        envelope_failure(kernel, part, local, "acceptance rate below threshold after probe batch");
      }
      if (accept) break;
      if (tries >= options.max_proposals_per_sample) {
        envelope_failure(kernel, part, local, "proposal cap reached for a single sample");
      }
    }
    // Envelope draw with its component along u replaced by the accepted s.
    for (int j = 0; j < d; ++j) z(j) = normal(engine);
    out.row(i) = (z + ((s - u.dot(z)) / u_norm2) * u).transpose();
  }
  if (stats) *stats = local;
  return out;
}

FrequencyBank sample_bank(const SpectralKernel& kernel, int m, std::uint64_t seed,
                          const SamplerOptions& options) {
  if (m < 1) throw std::invalid_argument("sample_bank: m must be at least 1");
  FrequencyBank bank;
  bank.seed = seed;
  bank.m = m;
  bank.dim = kernel.dim();
  auto draw = [&](Part part) -> Matrix {
    if (support_probability(kernel, part) > 0.0) {
      return sample_part(kernel, part, m, seed, options);
    }
    return Matrix(0, kernel.dim());
  };
  bank.omega = draw(Part::RealPos);
  bank.zeta = draw(Part::RealNeg);
  bank.nu = draw(Part::ImagPos);
  return bank;
}

}  // namespace cmrff
