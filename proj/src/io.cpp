#include "cmrff/io.hpp"

#include "cmrff/errors.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace cmrff {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Vector vector_field(const json& config, const char* key, int dim) {
  if (!config.contains(key)) return Vector::Zero(dim);
  const json& v = config.at(key);
  if (v.is_number()) return Vector::Constant(dim, v.get<double>());
  if (!v.is_array()) throw ConfigError(std::string("'") + key + "' must be an array or number");
  if (static_cast<int>(v.size()) != dim) {
    throw ConfigError(std::string("'") + key + "' has " + std::to_string(v.size()) +
                      " entries, expected dim = " + std::to_string(dim));
  }
  Vector out(dim);
  for (int i = 0; i < dim; ++i) {
    if (!v[static_cast<std::size_t>(i)].is_number()) {
      throw ConfigError(std::string("'") + key + "' entries must be numbers");
    }
    out(i) = v[static_cast<std::size_t>(i)].get<double>();
  }
  return out;
}

json vector_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Matrix read_rows(std::istream& in, int rows, int dim) {
  Matrix out(rows, dim);
  std::string line;
  for (int i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("bank file: truncated block");
    std::istringstream ss(line);
    std::string cell;
    for (int j = 0; j < dim; ++j) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("bank file: short row");
      out(i, j) = std::stod(cell);
    }
  }
  return out;
}

}  // namespace

SpectralKernel kernel_from_json(const json& config) {
  if (!config.is_object()) throw ConfigError("kernel config must be a JSON object");
  if (!config.contains("family") || !config.at("family").is_string()) {
    throw ConfigError("kernel config needs a string 'family'");
  }
  KernelFamily family;
  try {
    family = family_from_string(config.at("family").get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (!config.contains("sigma") || !config.at("sigma").is_number()) {
    throw ConfigError("kernel config needs a numeric 'sigma'");
  }
  const double sigma = config.at("sigma").get<double>();

  int dim = 0;
  if (config.contains("dim")) {
    if (!config.at("dim").is_number_integer()) throw ConfigError("'dim' must be an integer");
    dim = config.at("dim").get<int>();
  } else {
    for (const char* key : {"shift", "skew"}) {
      if (config.contains(key) && config.at(key).is_array()) dim = static_cast<int>(config.at(key).size());
    }
  }
  if (dim < 1) throw ConfigError("kernel config: 'dim' must be >= 1");

  try {
    switch (family) {
      case KernelFamily::Gaussian:
        return SpectralKernel::gaussian(dim, sigma);
      case KernelFamily::ShiftGaussian:
        return SpectralKernel::shift_gaussian(sigma, vector_field(config, "shift", dim));
      case KernelFamily::SinhGaussian:
        return SpectralKernel::sinh_gaussian(sigma, vector_field(config, "skew", dim));
      case KernelFamily::CoshGaussian:
        return SpectralKernel::cosh_gaussian(sigma, vector_field(config, "skew", dim));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown kernel family");
}

json kernel_to_json(const SpectralKernel& kernel) {
  json j;
  j["family"] = std::string(to_string(kernel.family()));
  j["dim"] = kernel.dim();
  j["sigma"] = kernel.sigma();
  if (kernel.family() == KernelFamily::ShiftGaussian) j["shift"] = vector_json(kernel.shift());
  if (kernel.family() == KernelFamily::SinhGaussian || kernel.family() == KernelFamily::CoshGaussian) {
    j["skew"] = vector_json(kernel.skew());
  }
  return j;
}

json masses_to_json(const MassSet& masses) {
  return {{"xi1", masses.xi1},
          {"xi2", masses.xi2},
          {"xi3", masses.xi3},
          {"source", std::string(to_string(masses.source))},
          {"constraint_residual", masses.constraint_residual}};
}

MassSet masses_from_json(const json& j) {
  try {
    MassSet m;
    m.xi1 = j.at("xi1").get<double>();
    m.xi2 = j.at("xi2").get<double>();
    m.xi3 = j.at("xi3").get<double>();
    m.source = mass_source_from_string(j.at("source").get<std::string>());
    m.constraint_residual = j.value("constraint_residual", 0.0);
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("mass set: ") + e.what());
  }
}

void write_bank(std::ostream& out, const FrequencyBank& bank) {
  const std::pair<Part, const Matrix*> blocks[] = {
      {Part::RealPos, &bank.omega}, {Part::RealNeg, &bank.zeta}, {Part::ImagPos, &bank.nu}};
  for (const auto& [part, mat] : blocks) {
    json header = {{"m", bank.m},
                   {"d", bank.dim},
                   {"seed", bank.seed},
                   {"part", std::string(to_string(part))},
                   {"rows", mat->rows()}};
    out << header.dump() << '\n';
    for (Eigen::Index i = 0; i < mat->rows(); ++i) {
      for (Eigen::Index j = 0; j < mat->cols(); ++j) {
        if (j > 0) out << ',';
        out << fmt17((*mat)(i, j));
      }
      out << '\n';
    }
  }
}

FrequencyBank read_bank(std::istream& in) {
  FrequencyBank bank;
  std::string line;
  for (int k = 0; k < 3; ++k) {
    if (!std::getline(in, line)) throw std::runtime_error("bank file: missing block header");
    json header;
    try {
      header = json::parse(line);
    } catch (const json::exception& e) {
      throw std::runtime_error(std::string("bank file: bad header: ") + e.what());
    }
    bank.m = header.at("m").get<int>();
    bank.dim = header.at("d").get<int>();
    bank.seed = header.at("seed").get<std::uint64_t>();
    const Part part = part_from_string(header.at("part").get<std::string>());
    Matrix rows = read_rows(in, header.at("rows").get<int>(), bank.dim);
    switch (part) {
      case Part::RealPos: bank.omega = std::move(rows); break;
      case Part::RealNeg: bank.zeta = std::move(rows); break;
      case Part::ImagPos: bank.nu = std::move(rows); break;
      case Part::ImagNeg: throw std::runtime_error("bank file: imag_neg is not stored");
    }
  }
  return bank;
}

void write_features_csv(std::ostream& out, ConstMatrixRef features) {
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
      if (j > 0) out << ',';
      out << fmt17(features(i, j));
    }
    out << '\n';
  }
}

void write_features_libsvm(std::ostream& out, ConstMatrixRef features,
                           const std::vector<int>& labels) {
  require_dim(static_cast<std::ptrdiff_t>(labels.size()), features.rows(), "write_features_libsvm");
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    out << labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
      if (features(i, j) != 0.0) out << ' ' << j + 1 << ':' << fmt17(features(i, j));
    }
    out << '\n';
  }
}

json classifier_to_json(const Classifier& model) {
  json models = json::array();
  for (const auto& m : model.models()) {
    models.push_back({{"weights", vector_json(m.weights)}, {"bias", m.bias}, {"C", m.C}});
  }
  return {{"classes", model.classes()}, {"layout", model.layout()}, {"models", models}};
}

Classifier classifier_from_json(const json& j) {
  try {
    std::vector<LinearModel> models;
    for (const auto& m : j.at("models")) {
      const auto w = m.at("weights").get<std::vector<double>>();
      LinearModel lm;
      lm.weights = Eigen::Map<const Vector>(w.data(), static_cast<Eigen::Index>(w.size()));
      lm.bias = m.at("bias").get<double>();
      lm.C = m.at("C").get<double>();
      models.push_back(std::move(lm));
    }
    return Classifier(j.at("classes").get<std::vector<int>>(), std::move(models),
                      j.value("layout", std::string()));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("classifier: ") + e.what());
  }
}

std::string layout_descriptor(const FeatureMap& map) {
  std::string out;
  for (const auto& b : map.layout()) {
    if (!out.empty()) out += ',';
    out += b.name + ':' + std::to_string(b.width);
  }
  return out;
}

}  // namespace cmrff
