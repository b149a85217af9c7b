#pragma once

// Internal: one-dimensional geometry of the modulation wave. A part density
// is env(w) * scale * h(u.w); under the envelope s = u.w ~ N(0, tau^2) with
// tau = |u| / sigma, and h > 0 exactly on a periodic union of intervals.

#include "cmrff/spectral.hpp"

#include <vector>

namespace cmrff::detail {

struct Interval {
  double lo;
  double hi;
};

// Beyond this many standard deviations the normal mass underflows.
inline constexpr double kSupportRadius = 38.5;

// Intervals of [-kSupportRadius * tau, kSupportRadius * tau] where h > 0.
std::vector<Interval> wave_support(Wave wave, double tau);

// P(lo < s < hi) for s ~ N(0, tau^2), accurate in both tails.
double normal_mass(double lo, double hi, double tau);

// Inverse CDF of N(0, tau^2) truncated to [lo, hi], evaluated at u in [0, 1).
double truncated_normal_quantile(double lo, double hi, double tau, double u);

}  // namespace cmrff::detail
