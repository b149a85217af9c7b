#include "cmrff/experiments.hpp"

#include "cmrff/classifier.hpp"
#include "cmrff/dataio.hpp"
#include "cmrff/errors.hpp"
#include "cmrff/evalbench.hpp"
#include "cmrff/features.hpp"
#include "cmrff/io.hpp"
#include "cmrff/masses.hpp"
#include "cmrff/rng.hpp"
#include "cmrff/sampler.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <set>
#include <sstream>

namespace cmrff {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json summary(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  const double sd = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
  return {{"mean", mean}, {"std", sd}, {"values", v}};
}

template <typename T>
T get_field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config: bad value for '") + key + "'");
  }
}

Matrix rows_of(ConstMatrixRef x, const std::vector<int>& idx) {
  Matrix out(static_cast<Eigen::Index>(idx.size()), x.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(idx[i]);
  return out;
}

struct Scored {
  double accuracy;
  double best_c;
};

Scored fit_and_score(ConstMatrixRef train, const std::vector<int>& ytrain, ConstMatrixRef test,
                     const std::vector<int>& ytest, const std::vector<double>& grid,
                     std::uint64_t seed) {
  const CvResult cv = cv_select(train, ytrain, grid, seed);
  const Classifier model = Classifier::train(train, ytrain, cv.best_c);
  return {evaluate(model, test, ytest), cv.best_c};
}

json scored_summary(const std::vector<Scored>& runs) {
  std::vector<double> acc;
  std::vector<double> cs;
  for (const auto& r : runs) {
    acc.push_back(r.accuracy);
    cs.push_back(r.best_c);
  }
  json j = summary(acc);
  j["best_c"] = cs;
  return j;
}

// Binary label sets become -1/+1 using the classes seen in training.
void map_labels(std::vector<int>& train, std::vector<int>& test) {
  const auto classes = distinct_labels(train);
  if (classes.size() != 2) return;
  auto f = [&](int y) { return y == classes[0] ? -1 : (y == classes[1] ? 1 : y); };
  for (int& y : train) y = f(y);
  for (int& y : test) y = f(y);
}

}  // namespace

std::vector<std::uint64_t> seed_list(std::uint64_t base_seed, int trials) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  std::vector<std::uint64_t> seeds;
  for (int t = 0; t < trials; ++t) seeds.push_back(base_seed + static_cast<std::uint64_t>(t));
  return seeds;
}

ExperimentConfig default_config(const std::string& command) {
  ExperimentConfig c;
  c.seeds = seed_list(0, 10);
  c.c_grid = default_c_grid();
  if (command == "masses") {
    c.synthetic = "normal";
    c.points = 2000;
    c.dim = 1;
    c.n_s = 10;
    for (int e = 1; e <= 10; ++e) c.m_over_d.push_back(1 << e);
  } else if (command == "approx") {
    c.synthetic = "uniform";
    c.points = 1000;
    c.dim = 8;
    c.n_s = 50;
    for (int e = 1; e <= 10; ++e) c.m_over_d.push_back(1 << e);
  } else if (command == "classify") {
    c.n_s = 50;
    c.m_over_d = {2};
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }
  return c;
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "kernel", "kernels", "m_over_d", "n_s", "seeds", "trials", "synthetic", "points", "dim",
      "data_seed", "data_dir", "datasets", "train_cap", "full", "c_grid", "timing"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");
  }
  if (j.contains("kernel")) c.kernels = {j.at("kernel")};
  if (j.contains("kernels")) {
    if (!j.at("kernels").is_array()) throw ConfigError("config: 'kernels' must be an array");
    c.kernels.assign(j.at("kernels").begin(), j.at("kernels").end());
  }
  if (j.contains("m_over_d")) {
    const json& m = j.at("m_over_d");
    c.m_over_d = m.is_array() ? get_field<std::vector<int>>(j, "m_over_d")
                              : std::vector<int>{get_field<int>(j, "m_over_d")};
  }
  if (j.contains("n_s")) c.n_s = get_field<int>(j, "n_s");
  if (j.contains("seeds")) c.seeds = get_field<std::vector<std::uint64_t>>(j, "seeds");
  if (j.contains("trials")) {
    const int trials = get_field<int>(j, "trials");
    if (j.contains("seeds")) {
      if (trials != static_cast<int>(c.seeds.size())) {
        throw ConfigError("config: 'trials' must equal the number of 'seeds'");
      }
    } else {
      c.seeds = seed_list(0, trials);
    }
  }
  if (j.contains("synthetic")) c.synthetic = get_field<std::string>(j, "synthetic");
  if (j.contains("points")) c.points = get_field<int>(j, "points");
  if (j.contains("dim")) c.dim = get_field<int>(j, "dim");
  if (j.contains("data_seed")) c.data_seed = get_field<std::uint64_t>(j, "data_seed");
  if (j.contains("data_dir")) c.data_dir = get_field<std::string>(j, "data_dir");
  if (j.contains("datasets")) {
    c.datasets.clear();
    for (const auto& d : j.at("datasets")) {
      DatasetPaths p;
      p.name = get_field<std::string>(d, "name");
      p.train = d.value("train", p.name + ".train");
      p.test = d.value("test", p.name + ".test");
      c.datasets.push_back(std::move(p));
    }
  }
  if (j.contains("train_cap")) c.train_cap = get_field<int>(j, "train_cap");
  if (j.contains("full")) c.full = get_field<bool>(j, "full");
  if (j.contains("c_grid")) c.c_grid = get_field<std::vector<double>>(j, "c_grid");
  if (j.contains("timing")) c.timing = get_field<bool>(j, "timing");

  if (c.seeds.empty()) throw ConfigError("config: empty seed list");
  if (c.n_s < 2) throw ConfigError("config: 'n_s' must be >= 2");
  if (c.points < 2 || c.dim < 1) throw ConfigError("config: 'points' >= 2 and 'dim' >= 1 required");
  if (c.synthetic != "normal" && c.synthetic != "uniform") {
    throw ConfigError("config: 'synthetic' must be \"normal\" or \"uniform\"");
  }
  for (int m : c.m_over_d) {
    if (m < 1) throw ConfigError("config: 'm_over_d' entries must be >= 1");
  }
  if (c.c_grid.empty()) throw ConfigError("config: empty 'c_grid'");
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json datasets = json::array();
  for (const auto& d : c.datasets) datasets.push_back({{"name", d.name}, {"train", d.train}, {"test", d.test}});
  return {{"kernels", c.kernels},   {"m_over_d", c.m_over_d},   {"n_s", c.n_s},
          {"seeds", c.seeds},       {"synthetic", c.synthetic}, {"points", c.points},
          {"dim", c.dim},           {"data_seed", c.data_seed}, {"data_dir", c.data_dir},
          {"datasets", datasets},   {"train_cap", c.train_cap}, {"full", c.full},
          {"c_grid", c.c_grid},     {"timing", c.timing}};
}

std::vector<SpectralKernel> default_kernels(int dim) {
  const double d = dim;
  return {SpectralKernel::shift_gaussian(2.0, Vector::Constant(dim, 2.0 / d)),
          SpectralKernel::sinh_gaussian(2.0, Vector::Constant(dim, 0.5 * std::numbers::pi / d)),
          SpectralKernel::cosh_gaussian(2.0, Vector::Constant(dim, 0.5 * std::numbers::pi / d))};
}

std::vector<SpectralKernel> resolve_kernels(const ExperimentConfig& config, int dim) {
  if (config.kernels.empty()) return default_kernels(dim);
  std::vector<SpectralKernel> out;
  for (json k : config.kernels) {
    if (!k.contains("dim")) k["dim"] = dim;
    SpectralKernel kernel = kernel_from_json(k);
    if (kernel.dim() != dim) {
      throw ConfigError("kernel dim " + std::to_string(kernel.dim()) +
                        " does not match data dim " + std::to_string(dim));
    }
    out.push_back(std::move(kernel));
  }
  return out;
}

Matrix synthetic_points(const ExperimentConfig& config) {
  Engine engine = make_engine(config.data_seed, stream::kData);
  Matrix x(config.points, config.dim);
  if (config.synthetic == "normal") {
    std::normal_distribution<double> g(0.0, 1.0);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = g(engine);
  } else {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = u(engine);
  }
  return x;
}

json cmd_masses(const ExperimentConfig& config) {
  if (config.n_s > config.points) throw ConfigError("config: 'n_s' exceeds 'points'");
  const Matrix x = synthetic_points(config);
  json report;
  report["config"] = config_to_json(config);
  report["kernels"] = json::array();
  for (const auto& kernel : resolve_kernels(config, config.dim)) {
    json entry;
    entry["kernel"] = kernel_to_json(kernel);
    entry["k0"] = kernel.eval(Vector::Zero(kernel.dim()));
    entry["analytic"] = masses_to_json(masses_analytic(kernel));
    entry["quadrature"] = kernel.dim() <= 3 ? masses_to_json(masses_quadrature(kernel)) : json();
    entry["sweep"] = json::array();
    for (int mod : config.m_over_d) {
      const int m = mod * kernel.dim();
      std::vector<double> xi1, xi2, xi3, resid;
      for (const auto seed : config.seeds) {
        const FrequencyBank bank = sample_bank(kernel, m, seed);
        const auto idx = sample_indices(config.points, config.n_s, seed, stream::kSubset);
        const MassSet ms = masses_subset_ls(kernel, bank, rows_of(x, idx));
        xi1.push_back(ms.xi1);
        xi2.push_back(ms.xi2);
        xi3.push_back(ms.xi3);
        resid.push_back(ms.constraint_residual);
      }
      entry["sweep"].push_back({{"M", m},
                                {"log2_m_over_d", std::log2(static_cast<double>(mod))},
                                {"seeds", config.seeds},
                                {"xi1", summary(xi1)},
                                {"xi2", summary(xi2)},
                                {"xi3", summary(xi3)},
                                {"constraint_residual", resid}});
    }
    report["kernels"].push_back(std::move(entry));
  }
  return report;
}

std::string cmd_approx(const ExperimentConfig& config) {
  if (config.n_s > config.points) throw ConfigError("config: 'n_s' exceeds 'points'");
  const Matrix x = synthetic_points(config);
  std::ostringstream out;
  out << "kernel,M,trial,rel_error,sup_error,wall_time_ms\n";
  char line[256];
  for (const auto& kernel : resolve_kernels(config, config.dim)) {
    const Matrix exact = gram_exact(kernel, x, x);
    const std::string name(to_string(kernel.family()));
    for (int mod : config.m_over_d) {
      const int m = mod * kernel.dim();
      for (std::size_t t = 0; t < config.seeds.size(); ++t) {
        const auto start = Clock::now();
        const auto seed = config.seeds[t];
        FrequencyBank bank = sample_bank(kernel, m, seed);
        const auto idx = sample_indices(config.points, config.n_s, seed, stream::kSubset);
        const MassSet ms = masses_subset_ls(kernel, bank, rows_of(x, idx));
        const FeatureMap map(std::move(bank), ms);
        const Matrix approx = gram_approx(map, x, x);
        const double ms_elapsed = config.timing ? elapsed_ms(start) : 0.0;
        const double rel = relative_error(exact, approx);
        const double sup = (exact - approx).cwiseAbs().maxCoeff();
        std::snprintf(line, sizeof line, "%s,%d,%zu,%.17g,%.17g,%.3f\n", name.c_str(), m, t, rel,
                      sup, ms_elapsed);
        out << line;
      }
    }
  }
  return out.str();
}

json cmd_classify(const ExperimentConfig& config) {
  if (config.datasets.empty()) throw ConfigError("config: classify needs 'datasets'");
  json report;
  report["config"] = config_to_json(config);
  report["datasets"] = json::array();
  for (const auto& paths : config.datasets) {
    const std::filesystem::path dir(config.data_dir);
    auto [train_raw, test_raw] = load_train_test((dir / paths.train).string(), (dir / paths.test).string());
    if (!config.full && train_raw.size() > config.train_cap) {
      const auto keep = sample_indices(static_cast<int>(train_raw.size()), config.train_cap,
                                       config.data_seed, stream::kSplit);
      train_raw = select_rows(train_raw, keep);
    }
    auto [train, test] = normalize_minmax(train_raw, test_raw);
    map_labels(train.y, test.y);
    const int d = static_cast<int>(train.dim());

    json entry = {{"name", paths.name},
                  {"dim", d},
                  {"n_train", train.size()},
                  {"n_test", test.size()},
                  {"classes", distinct_labels(train.y)}};

    std::vector<Scored> linear;
    for (const auto seed : config.seeds) {
      linear.push_back(fit_and_score(train.x, train.y, test.x, test.y, config.c_grid, seed));
    }
    entry["linear"] = scored_summary(linear);

    const auto kernels = resolve_kernels(config, d);
    entry["results"] = json::array();
    for (int mod : config.m_over_d) {
      const int m = mod * d;
      json per_m = {{"M", m}, {"log2_m_over_d", std::log2(static_cast<double>(mod))}};

      const SpectralKernel rbf = SpectralKernel::gaussian(d, 2.0);
      std::vector<Scored> rbf_runs;
      for (const auto seed : config.seeds) {
        const FeatureMap map(sample_bank(rbf, m, seed), masses_analytic(rbf));
        rbf_runs.push_back(fit_and_score(map.transform(train.x, Side::Left), train.y,
                                         map.transform(test.x, Side::Left), test.y,
                                         config.c_grid, seed));
      }
      per_m["rbf"] = scored_summary(rbf_runs);

      per_m["kernels"] = json::array();
      for (const auto& kernel : kernels) {
        std::vector<Scored> asym;
        std::vector<Scored> sym;
        std::vector<double> sampling_ms;
        for (const auto seed : config.seeds) {
          const auto start = Clock::now();
          FrequencyBank bank = sample_bank(kernel, m, seed);
          sampling_ms.push_back(config.timing ? elapsed_ms(start) : 0.0);
          const int n_s = std::min<int>(config.n_s, static_cast<int>(train.size()));
          const auto idx = sample_indices(static_cast<int>(train.size()), n_s, seed, stream::kSubset);
          const MassSet ms = masses_subset_ls(kernel, bank, rows_of(train.x, idx));
          const FeatureMap map(std::move(bank), ms);
          asym.push_back(fit_and_score(map.transform_concat(train.x), train.y,
                                       map.transform_concat(test.x), test.y, config.c_grid, seed));
          sym.push_back(fit_and_score(map.transform_symmetric(train.x), train.y,
                                      map.transform_symmetric(test.x), test.y, config.c_grid, seed));
        }
        per_m["kernels"].push_back({{"kernel", kernel_to_json(kernel)},
                                    {"family", std::string(to_string(kernel.family()))},
                                    {"asym", scored_summary(asym)},
                                    {"sym", scored_summary(sym)},
                                    {"sampling_ms", summary(sampling_ms)}});
      }
      entry["results"].push_back(std::move(per_m));
    }
    report["datasets"].push_back(std::move(entry));
  }
  return report;
}

}  // namespace cmrff
