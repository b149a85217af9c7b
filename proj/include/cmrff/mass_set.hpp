#pragma once

#include <string_view>

namespace cmrff {

enum class MassSource { Quadrature, SubsetLS, Analytic };

std::string_view to_string(MassSource source);
MassSource mass_source_from_string(std::string_view name);

// Total masses xi1 = |mu_R+|, xi2 = |mu_R-|, xi3 = |mu_I+| (= |mu_I-|).
struct MassSet {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double xi3 = 0.0;
  MassSource source = MassSource::Analytic;
  // |xi1 - xi2 - k(0)|
  double constraint_residual = 0.0;

  double total_mass() const noexcept { return xi1 + xi2 + 2.0 * xi3; }
};

}  // namespace cmrff
