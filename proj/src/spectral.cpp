#include "cmrff/spectral.hpp"

#include "cmrff/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace cmrff {

namespace {

const double kMaxLog = std::log(std::numeric_limits<double>::max());

void require_positive_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("kernel bandwidth sigma must be positive and finite");
  }
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Gaussian: return "gaussian";
    case KernelFamily::ShiftGaussian: return "shift_gaussian";
    case KernelFamily::SinhGaussian: return "sinh_gaussian";
    case KernelFamily::CoshGaussian: return "cosh_gaussian";
  }
  return "unknown";
}

std::string_view to_string(Part part) {
  switch (part) {
    case Part::RealPos: return "real_pos";
    case Part::RealNeg: return "real_neg";
    case Part::ImagPos: return "imag_pos";
    case Part::ImagNeg: return "imag_neg";
  }
  return "unknown";
}

KernelFamily family_from_string(std::string_view name) {
  for (auto f : {KernelFamily::Gaussian, KernelFamily::ShiftGaussian, KernelFamily::SinhGaussian,
                 KernelFamily::CoshGaussian}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown kernel family '" + std::string(name) + "'");
}

Part part_from_string(std::string_view name) {
  for (auto p : {Part::RealPos, Part::RealNeg, Part::ImagPos, Part::ImagNeg}) {
    if (to_string(p) == name) return p;
  }
  throw std::invalid_argument("unknown part '" + std::string(name) + "'");
}

double wave_value(Wave wave, double s) {
  switch (wave) {
    case Wave::Zero: return 0.0;
    case Wave::One: return 1.0;
    case Wave::PosCos: return std::max(std::cos(s), 0.0);
    case Wave::NegCos: return std::max(-std::cos(s), 0.0);
    case Wave::PosSin: return std::max(std::sin(s), 0.0);
    case Wave::NegSin: return std::max(-std::sin(s), 0.0);
  }
  return 0.0;
}

SpectralKernel::SpectralKernel(KernelFamily family, int dim, double sigma, Vector shift, Vector skew)
    : family_(family),
      dim_(dim),
      sigma_(sigma),
      shift_(std::move(shift)),
      skew_(std::move(skew)),
      log_norm_(dim * std::log(sigma / std::sqrt(2.0 * std::numbers::pi))) {}

SpectralKernel SpectralKernel::gaussian(int dim, double sigma) {
  if (dim < 1) throw std::invalid_argument("kernel dimension must be positive");
  require_positive_sigma(sigma);
  return {KernelFamily::Gaussian, dim, sigma, Vector(), Vector()};
}

SpectralKernel SpectralKernel::shift_gaussian(double sigma, Vector shift) {
  if (shift.size() < 1) throw std::invalid_argument("shift vector must be non-empty");
  require_positive_sigma(sigma);
  require_finite(shift, "shift");
  const int dim = static_cast<int>(shift.size());
  return {KernelFamily::ShiftGaussian, dim, sigma, std::move(shift), Vector()};
}

SpectralKernel SpectralKernel::sinh_gaussian(double sigma, Vector skew) {
  if (skew.size() < 1) throw std::invalid_argument("skew vector must be non-empty");
  require_positive_sigma(sigma);
  require_finite(skew, "skew");
  const int dim = static_cast<int>(skew.size());
  return {KernelFamily::SinhGaussian, dim, sigma, Vector(), std::move(skew)};
}

SpectralKernel SpectralKernel::cosh_gaussian(double sigma, Vector skew) {
  if (skew.size() < 1) throw std::invalid_argument("skew vector must be non-empty");
  require_positive_sigma(sigma);
  require_finite(skew, "skew");
  const int dim = static_cast<int>(skew.size());
  return {KernelFamily::CoshGaussian, dim, sigma, Vector(), std::move(skew)};
}

double SpectralKernel::log_skew_scale() const noexcept {
  if (family_ == KernelFamily::SinhGaussian || family_ == KernelFamily::CoshGaussian) {
    return 0.5 * sigma_ * sigma_ * skew_.squaredNorm();
  }
  return 0.0;
}

double SpectralKernel::log_envelope(ConstVectorRef omega) const {
  require_dim(omega.size(), dim_, "log_envelope");
  return log_norm_ - 0.5 * sigma_ * sigma_ * omega.squaredNorm();
}

double SpectralKernel::amplitude(double log_amp) const {
  if (log_amp > kMaxLog) {
    std::ostringstream msg;
    msg << "spectral density overflows double precision (log amplitude " << log_amp << ") for "
        << describe();
    throw SpectralOverflowError(msg.str());
  }
  return std::exp(log_amp);
}

double SpectralKernel::eval(ConstVectorRef delta) const {
  require_dim(delta.size(), dim_, "kernel_eval");
  const double inv2s2 = 0.5 / (sigma_ * sigma_);
  double value = 0.0;
  switch (family_) {
    case KernelFamily::Gaussian:
      value = std::exp(-inv2s2 * delta.squaredNorm());
      break;
    case KernelFamily::ShiftGaussian:
      value = std::exp(-inv2s2 * (delta + shift_).squaredNorm());
      break;
    case KernelFamily::SinhGaussian: {
      // exp(-q) (1 + sinh b) = exp(-q) + (exp(b - q) - exp(-b - q)) / 2
      const double q = inv2s2 * delta.squaredNorm();
      const double b = skew_.dot(delta);
      value = std::exp(-q) + 0.5 * (std::exp(b - q) - std::exp(-b - q));
      break;
    }
    case KernelFamily::CoshGaussian:
      value = std::exp(skew_.dot(delta) - inv2s2 * delta.squaredNorm());
      break;
  }
  if (!std::isfinite(value)) {
    throw SpectralOverflowError("kernel value overflows double precision for " + describe());
  }
  return value;
}

std::complex<double> SpectralKernel::density(ConstVectorRef omega) const {
  const double log_env = log_envelope(omega);
  switch (family_) {
    case KernelFamily::Gaussian:
      return {amplitude(log_env), 0.0};
    case KernelFamily::ShiftGaussian: {
      const double env = amplitude(log_env);
      const double a = shift_.dot(omega);
      return {env * std::cos(a), env * std::sin(a)};
    }
    case KernelFamily::SinhGaussian: {
      const double env = amplitude(log_env);
      const double scaled = amplitude(log_env + log_skew_scale());
      const double a = sigma_ * sigma_ * skew_.dot(omega);
      return {env, -scaled * std::sin(a)};
    }
    case KernelFamily::CoshGaussian: {
      const double scaled = amplitude(log_env + log_skew_scale());
      const double a = sigma_ * sigma_ * skew_.dot(omega);
      return {scaled * std::cos(a), -scaled * std::sin(a)};
    }
  }
  return {0.0, 0.0};
}

double SpectralKernel::part_density(Part part, ConstVectorRef omega) const {
  const auto mu = density(omega);
  switch (part) {
    case Part::RealPos: return std::max(mu.real(), 0.0);
    case Part::RealNeg: return std::max(-mu.real(), 0.0);
    case Part::ImagPos: return std::max(mu.imag(), 0.0);
    case Part::ImagNeg: return std::max(-mu.imag(), 0.0);
  }
  return 0.0;
}

Modulation SpectralKernel::modulation(Part part) const {
  Modulation m;
  m.direction = Vector::Zero(dim_);
  switch (family_) {
    case KernelFamily::Gaussian:
      m.wave = part == Part::RealPos ? Wave::One : Wave::Zero;
      return m;
    case KernelFamily::ShiftGaussian:
      m.direction = shift_;
      switch (part) {
        case Part::RealPos: m.wave = Wave::PosCos; break;
        case Part::RealNeg: m.wave = Wave::NegCos; break;
        case Part::ImagPos: m.wave = Wave::PosSin; break;
        case Part::ImagNeg: m.wave = Wave::NegSin; break;
      }
      break;
    case KernelFamily::SinhGaussian:
      m.direction = sigma_ * sigma_ * skew_;
      switch (part) {
        case Part::RealPos: m.wave = Wave::One; break;
        case Part::RealNeg: m.wave = Wave::Zero; break;
        case Part::ImagPos: m.wave = Wave::NegSin; m.log_scale = log_skew_scale(); break;
        case Part::ImagNeg: m.wave = Wave::PosSin; m.log_scale = log_skew_scale(); break;
      }
      break;
    case KernelFamily::CoshGaussian:
      m.direction = sigma_ * sigma_ * skew_;
      m.log_scale = log_skew_scale();
      switch (part) {
        case Part::RealPos: m.wave = Wave::PosCos; break;
        case Part::RealNeg: m.wave = Wave::NegCos; break;
        case Part::ImagPos: m.wave = Wave::NegSin; break;
        case Part::ImagNeg: m.wave = Wave::PosSin; break;
      }
      break;
  }
  // A zero direction makes the wave constant: cos(0) = 1, sin(0) = 0.
  if (m.wave != Wave::One && m.wave != Wave::Zero && m.direction.squaredNorm() == 0.0) {
    m.wave = wave_value(m.wave, 0.0) > 0.0 ? Wave::One : Wave::Zero;
  }
  if (m.wave == Wave::Zero) m.log_scale = 0.0;
  return m;
}

std::string SpectralKernel::describe() const {
  std::ostringstream out;
  out << to_string(family_) << "(d=" << dim_ << ", sigma=" << sigma_;
  const Eigen::IOFormat fmt(Eigen::StreamPrecision, Eigen::DontAlignCols, ", ", ", ", "", "", "[",
                            "]");
  if (shift_.size() > 0) out << ", shift=" << shift_.transpose().format(fmt);
  if (skew_.size() > 0) out << ", skew=" << skew_.transpose().format(fmt);
  out << ")";
  return out.str();
}

}  // namespace cmrff
