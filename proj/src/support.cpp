#include "support.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cmrff::detail {

namespace {

constexpr double kPi = std::numbers::pi;

// P(s > x), s ~ N(0, tau^2)
double upper_tail(double x, double tau) {
  return 0.5 * std::erfc(x / (tau * std::numbers::sqrt2));
}

// x with P(s > x) = q, q in (0, 1)
double upper_quantile(double q, double tau) {
  q = std::clamp(q, std::numeric_limits<double>::min(), 1.0 - 1e-16);
  return tau * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
}

double phase_of(Wave wave) {
  switch (wave) {
    case Wave::PosCos: return -0.5 * kPi;
    case Wave::NegCos: return 0.5 * kPi;
    case Wave::PosSin: return 0.0;
    case Wave::NegSin: return -kPi;
    default: return 0.0;
  }
}

}  // namespace

std::vector<Interval> wave_support(Wave wave, double tau) {
  std::vector<Interval> out;
  if (wave == Wave::Zero || wave == Wave::One || !(tau > 0.0)) return out;
  const double radius = kSupportRadius * tau;
  const double phase = phase_of(wave);
  const auto k_lo = static_cast<long long>(std::floor((-radius - phase - kPi) / (2.0 * kPi)));
  const auto k_hi = static_cast<long long>(std::ceil((radius - phase) / (2.0 * kPi)));
  for (long long k = k_lo; k <= k_hi; ++k) {
    const double lo = std::max(phase + 2.0 * kPi * static_cast<double>(k), -radius);
    const double hi = std::min(phase + 2.0 * kPi * static_cast<double>(k) + kPi, radius);
    if (hi > lo) out.push_back({lo, hi});
  }
  return out;
}

double normal_mass(double lo, double hi, double tau) {
  if (!(hi > lo)) return 0.0;
  if (lo >= 0.0) return upper_tail(lo, tau) - upper_tail(hi, tau);
  if (hi <= 0.0) return upper_tail(-hi, tau) - upper_tail(-lo, tau);
  return 1.0 - upper_tail(hi, tau) - upper_tail(-lo, tau);
}

double truncated_normal_quantile(double lo, double hi, double tau, double u) {
  double s = 0.0;
  if (lo >= 0.0) {
    const double q_hi = upper_tail(hi, tau);
    const double q_lo = upper_tail(lo, tau);
    s = upper_quantile(q_lo - u * (q_lo - q_hi), tau);
  } else if (hi <= 0.0) {
    const double q_hi = upper_tail(-lo, tau);
    const double q_lo = upper_tail(-hi, tau);
    s = -upper_quantile(q_lo - u * (q_lo - q_hi), tau);
  } else {
    // Straddles zero: invert the lower CDF, which is well conditioned here.
    const double p_lo = upper_tail(-lo, tau);  // P(s < lo)
    const double p_hi = 1.0 - upper_tail(hi, tau);
    const double p = p_lo + u * (p_hi - p_lo);
    s = -upper_quantile(p, tau);
  }
  return std::clamp(s, lo, hi);
}

}  // namespace cmrff::detail
