// cmrff: masses / approx / classify experiments. Output is JSON or CSV.
#include "cmrff/errors.hpp"
#include "cmrff/experiments.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using nlohmann::json;

struct Flags {
  std::string config;
  std::string data_dir;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  bool full = false;
  bool no_timing = false;
};

cmrff::ExperimentConfig build_config(const std::string& command, const Flags& flags) {
  cmrff::ExperimentConfig config = cmrff::default_config(command);
  if (!flags.config.empty()) {
    std::ifstream in(flags.config);
    if (!in) throw cmrff::ConfigError("cannot open config file '" + flags.config + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw cmrff::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    config = cmrff::config_from_json(j, config);
  }
  if (!flags.data_dir.empty()) config.data_dir = flags.data_dir;
  if (flags.seed || flags.trials) {
    const int trials = flags.trials.value_or(static_cast<int>(config.seeds.size()));
    const std::uint64_t base = flags.seed.value_or(config.seeds.front());
    config.seeds = cmrff::seed_list(base, trials);
  }
  if (flags.full) config.full = true;
  if (flags.no_timing) config.timing = false;
  return config;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

int report_error(const char* kind, const std::exception& e) {
  std::cerr << json{{"error", {{"type", kind}, {"message", e.what()}}}}.dump() << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random Fourier features for asymmetric kernels"};
  app.require_subcommand(1);
  Flags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "Experiment config (JSON)");
    sub->add_option("--data-dir", flags.data_dir, "Directory holding dataset files");
    sub->add_option("--out", flags.out, "Output file (default: stdout)");
    sub->add_option("--seed", flags.seed, "First seed; seeds are seed..seed+trials-1");
    sub->add_option("--trials", flags.trials, "Number of trials")->check(CLI::PositiveNumber);
    sub->add_flag("--full", flags.full, "Do not subsample large training sets");
    sub->add_flag("--no-timing", flags.no_timing, "Write 0 for wall-clock columns");
  };
  auto* masses = app.add_subcommand("masses", "Subset least-squares total masses per trial");
  auto* approx = app.add_subcommand("approx", "Gram approximation error sweep (CSV)");
  auto* classify = app.add_subcommand("classify", "Linear classification on random features");
  for (auto* sub : {masses, approx, classify}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump() << '\n';
    return 1;
  }

  try {
    if (*masses) {
      emit(cmrff::cmd_masses(build_config("masses", flags)).dump(2) + "\n", flags.out);
    } else if (*approx) {
      emit(cmrff::cmd_approx(build_config("approx", flags)), flags.out);
    } else if (*classify) {
      emit(cmrff::cmd_classify(build_config("classify", flags)).dump(2) + "\n", flags.out);
    }
  } catch (const cmrff::ConfigError& e) {
    return report_error("config", e);
  } catch (const cmrff::ParseError& e) {
    return report_error("parse", e);
  } catch (const std::exception& e) {
    return report_error("runtime", e);
  }
  return 0;
}
