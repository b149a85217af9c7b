#pragma once

#include "cmrff/classifier.hpp"
#include "cmrff/features.hpp"
#include "cmrff/mass_set.hpp"
#include "cmrff/sampler.hpp"
#include "cmrff/spectral.hpp"

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace cmrff {

// {"family": "...", "dim": d, "sigma": s, "shift": [...], "skew": [...]}.
// "dim" may be omitted when a vector is given. Throws ConfigError.
SpectralKernel kernel_from_json(const nlohmann::json& config);
nlohmann::json kernel_to_json(const SpectralKernel& kernel);

// {"xi1", "xi2", "xi3", "source", "constraint_residual"}
nlohmann::json masses_to_json(const MassSet& masses);
MassSet masses_from_json(const nlohmann::json& j);

// Three sections, one per bank block. Each is a JSON header line
// {"m", "d", "seed", "part", "rows"} followed by `rows` CSV lines.
void write_bank(std::ostream& out, const FrequencyBank& bank);
FrequencyBank read_bank(std::istream& in);

void write_features_csv(std::ostream& out, ConstMatrixRef features);
// Zero entries are skipped; indices are 1-based.
void write_features_libsvm(std::ostream& out, ConstMatrixRef features,
                           const std::vector<int>& labels);

// {"classes", "layout", "models": [{"weights", "bias", "C"}]}
nlohmann::json classifier_to_json(const Classifier& model);
Classifier classifier_from_json(const nlohmann::json& j);

// Feature-layout descriptor of a map, e.g. "omega:128,zeta:128,nu:128".
std::string layout_descriptor(const FeatureMap& map);

}  // namespace cmrff
