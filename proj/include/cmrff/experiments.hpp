#pragma once

#include "cmrff/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cmrff {

struct DatasetPaths {
  std::string name;
  std::string train;
  std::string test;
};

// Everything a command needs; reproducible from this struct alone.
struct ExperimentConfig {
  // Kernel objects as JSON. A missing "dim" is filled from the data, and
  // scalar "shift"/"skew" values are broadcast. Empty means the default
  // triplet for the data dimension: r = 2/d, sigma = 2, beta = pi/(2d).
  std::vector<nlohmann::json> kernels;
  std::vector<int> m_over_d;  // feature counts as multiples of d
  int n_s = 50;
  std::vector<std::uint64_t> seeds;

  // Synthetic data for masses/approx: "normal" or "uniform" in [0,1]^dim.
  std::string synthetic = "normal";
  int points = 2000;
  int dim = 1;
  std::uint64_t data_seed = 0;

  std::string data_dir;
  std::vector<DatasetPaths> datasets;
  int train_cap = 10'000;  // ignored when full
  bool full = false;
  std::vector<double> c_grid;
  bool timing = true;  // wall-clock columns; off gives byte-identical output
};

// Overrides fields of `base` with the keys of a config object. Unknown keys
// are rejected; "trials" must agree with an explicit "seeds" list.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
nlohmann::json config_to_json(const ExperimentConfig& config);

// Applies defaults per command: masses uses 2000 normal points, N_s = 10 and
// M/d in {2^1..2^10}; approx uses 1000 uniform points in [0,1]^8, N_s = 50
// and the same sweep; classify uses M/d = 2 and N_s = 50. Seeds default to
// 0..trials-1.
ExperimentConfig default_config(const std::string& command);

// base_seed, base_seed + 1, ... (trials entries).
std::vector<std::uint64_t> seed_list(std::uint64_t base_seed, int trials);

// The three asymmetric kernels with r = 2/d, sigma = 2, beta = pi/(2d).
std::vector<SpectralKernel> default_kernels(int dim);
std::vector<SpectralKernel> resolve_kernels(const ExperimentConfig& config, int dim);

Matrix synthetic_points(const ExperimentConfig& config);

// Subset-LS masses per trial and M, with trial mean/std and references.
nlohmann::json cmd_masses(const ExperimentConfig& config);

// CSV: kernel,M,trial,rel_error,sup_error,wall_time_ms. sup_error is the
// largest entrywise Gram error, i.e. the sup over the data's difference set.
std::string cmd_approx(const ExperimentConfig& config);

// Test accuracy mean/std for asymmetric, symmetrized, RBF and linear features.
nlohmann::json cmd_classify(const ExperimentConfig& config);

}  // namespace cmrff
