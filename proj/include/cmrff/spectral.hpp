#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <string_view>

namespace cmrff {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ConstVectorRef = Eigen::Ref<const Eigen::VectorXd>;
using ConstMatrixRef = Eigen::Ref<const Eigen::MatrixXd>;

enum class KernelFamily { Gaussian, ShiftGaussian, SinhGaussian, CoshGaussian };

// Jordan parts of the complex spectral measure mu = mu_R + i mu_I.
enum class Part { RealPos, RealNeg, ImagPos, ImagNeg };

std::string_view to_string(KernelFamily family);
std::string_view to_string(Part part);
KernelFamily family_from_string(std::string_view name);
Part part_from_string(std::string_view name);

// Every part-density of the supported families factors as
//
//   f(w) = envelope(w) * exp(log_scale) * wave(direction . w)
//
// where envelope is the N(0, sigma^-2 I) density and wave is bounded by 1.
// The sampler and the projected mass integrals rely on this form.
enum class Wave { Zero, One, PosCos, NegCos, PosSin, NegSin };

double wave_value(Wave wave, double s);

struct Modulation {
  Wave wave = Wave::Zero;
  Vector direction;
  double log_scale = 0.0;
};

// Shift-invariant kernel k(x, y) = k(x - y) together with its Fourier
// transform mu(w), normalized so that k(D) = int exp(i w.D) mu(w) dw.
//
//   Gaussian       k = exp(-|D|^2 / 2s^2)
//   ShiftGaussian  k = exp(-|D + r|^2 / 2s^2)
//   SinhGaussian   k = exp(-|D|^2 / 2s^2) * (1 + sinh(b.D))
//   CoshGaussian   k = exp(-|D|^2 / 2s^2) * exp(b.D)
//
// The sinh/cosh names are kept as they appear in the literature even though
// the kernels are 1 + sinh and exp = cosh + sinh respectively.
class SpectralKernel {
 public:
  static SpectralKernel gaussian(int dim, double sigma);
  static SpectralKernel shift_gaussian(double sigma, Vector shift);
  static SpectralKernel sinh_gaussian(double sigma, Vector skew);
  static SpectralKernel cosh_gaussian(double sigma, Vector skew);

  KernelFamily family() const noexcept { return family_; }
  int dim() const noexcept { return dim_; }
  double sigma() const noexcept { return sigma_; }
  const Vector& shift() const noexcept { return shift_; }
  const Vector& skew() const noexcept { return skew_; }

  double eval(ConstVectorRef delta) const;

  // (Re mu(w), Im mu(w)), unnormalized, including the (s / sqrt(2 pi))^d factor.
  std::complex<double> density(ConstVectorRef omega) const;

  double part_density(Part part, ConstVectorRef omega) const;

  Modulation modulation(Part part) const;

  // log of the N(0, sigma^-2 I) density.
  double log_envelope(ConstVectorRef omega) const;

  // s^2 |b|^2 / 2 for the sinh/cosh families, 0 otherwise.
  double log_skew_scale() const noexcept;

  std::string describe() const;

 private:
  SpectralKernel(KernelFamily family, int dim, double sigma, Vector shift, Vector skew);

  double amplitude(double log_amp) const;

  KernelFamily family_;
  int dim_;
  double sigma_;
  Vector shift_;
  Vector skew_;
  double log_norm_;  // d * log(s / sqrt(2 pi))
};

inline double kernel_eval(const SpectralKernel& k, ConstVectorRef delta) { return k.eval(delta); }

inline std::complex<double> density_complex(const SpectralKernel& k, ConstVectorRef omega) {
  return k.density(omega);
}

inline double part_density_eval(const SpectralKernel& k, Part part, ConstVectorRef omega) {
  return k.part_density(part, omega);
}

}  // namespace cmrff
