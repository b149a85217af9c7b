#include "cmrff/errors.hpp"
#include "cmrff/spectral.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cmrff;
using oracle::v1;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<SpectralKernel> all_1d() {
  return {SpectralKernel::gaussian(1, 2.0), SpectralKernel::shift_gaussian(2.0, v1(2.0)),
          SpectralKernel::sinh_gaussian(2.0, v1(kPi / 2)),
          SpectralKernel::cosh_gaussian(2.0, v1(kPi / 2))};
}

std::vector<SpectralKernel> all_3d() {
  const Vector u = (Vector(3) << 0.3, -0.2, 0.5).finished();
  return {SpectralKernel::gaussian(3, 1.5), SpectralKernel::shift_gaussian(1.5, u),
          SpectralKernel::sinh_gaussian(1.5, u), SpectralKernel::cosh_gaussian(1.5, u)};
}

}  // namespace

TEST(KernelEval, ShiftVanishesAtMinusShift) {
  const auto k = SpectralKernel::shift_gaussian(2.0, v1(2.0));
  EXPECT_DOUBLE_EQ(k.eval(v1(-2.0)), 1.0);
}

TEST(KernelEval, SinhAtZeroIsOne) {
  const auto k = SpectralKernel::sinh_gaussian(2.0, v1(kPi / 2));
  EXPECT_DOUBLE_EQ(k.eval(v1(0.0)), 1.0);
}

TEST(KernelEval, SinhAtOneMatchesArithmetic) {
  const auto k = SpectralKernel::sinh_gaussian(2.0, v1(kPi / 2));
  const double expected = std::exp(-1.0 / 8.0) * (1.0 + std::sinh(kPi / 2));
  EXPECT_NEAR(k.eval(v1(1.0)), expected, 1e-14);
  EXPECT_NEAR(k.eval(v1(1.0)), 2.9134, 5e-5);
}

TEST(KernelEval, CoshMatchesClosedForm) {
  const Vector b = (Vector(2) << 0.4, -0.1).finished();
  const auto k = SpectralKernel::cosh_gaussian(1.3, b);
  const Vector d = (Vector(2) << 0.7, 1.1).finished();
  EXPECT_NEAR(k.eval(d), std::exp(-d.squaredNorm() / (2 * 1.69)) * std::exp(b.dot(d)), 1e-14);
}

TEST(KernelEval, DimensionMismatchThrows) {
  const auto k = SpectralKernel::shift_gaussian(2.0, Vector::Ones(3));
  EXPECT_THROW(k.eval(Vector::Zero(2)), DimensionError);
  EXPECT_THROW(k.density(Vector::Zero(4)), DimensionError);
  EXPECT_THROW(k.part_density(Part::RealPos, Vector::Zero(1)), DimensionError);
}

TEST(KernelConstruction, RejectsBadParameters) {
  EXPECT_THROW(SpectralKernel::gaussian(0, 1.0), std::invalid_argument);
  EXPECT_THROW(SpectralKernel::gaussian(1, 0.0), std::invalid_argument);
  EXPECT_THROW(SpectralKernel::gaussian(1, -1.0), std::invalid_argument);
  EXPECT_THROW(SpectralKernel::shift_gaussian(1.0, Vector()), std::invalid_argument);
  EXPECT_THROW(SpectralKernel::sinh_gaussian(1.0, v1(NAN)), std::invalid_argument);
}

TEST(KernelConstruction, NamesRoundTrip) {
  for (auto f : {KernelFamily::Gaussian, KernelFamily::ShiftGaussian, KernelFamily::SinhGaussian,
                 KernelFamily::CoshGaussian}) {
    EXPECT_EQ(family_from_string(to_string(f)), f);
  }
  for (auto p : {Part::RealPos, Part::RealNeg, Part::ImagPos, Part::ImagNeg}) {
    EXPECT_EQ(part_from_string(to_string(p)), p);
  }
  EXPECT_THROW(family_from_string("laplace"), std::invalid_argument);
}

TEST(Density, GaussianImaginaryPartIsExactlyZero) {
  const auto k = SpectralKernel::gaussian(2, 1.0);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int i = 0; i < 100; ++i) {
    const Vector w = (Vector(2) << g(rng), g(rng)).finished();
    EXPECT_EQ(k.density(w).imag(), 0.0);
  }
}

TEST(Density, ShiftAtOrigin) {
  const auto k = SpectralKernel::shift_gaussian(2.0, v1(2.0));
  const auto mu = k.density(v1(0.0));
  EXPECT_NEAR(mu.real(), 2.0 / std::sqrt(2.0 * kPi), 1e-15);
  EXPECT_EQ(mu.imag(), 0.0);
}

TEST(Density, ConjugateSymmetry) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 0.7);
  for (const auto& k : all_1d()) {
    for (int i = 0; i < 1000; ++i) {
      const double w = g(rng);
      const auto a = k.density(v1(-w));
      const auto b = std::conj(k.density(v1(w)));
      EXPECT_LT(std::abs(a - b), 1e-12) << k.describe();
    }
  }
  for (const auto& k : all_3d()) {
    for (int i = 0; i < 200; ++i) {
      const Vector w = (Vector(3) << g(rng), g(rng), g(rng)).finished();
      EXPECT_LT(std::abs(k.density(-w) - std::conj(k.density(w))), 1e-12);
    }
  }
}

TEST(Density, OverflowIsExplicit) {
  // sigma^2 |beta|^2 / 2 far beyond log(DBL_MAX).
  const auto k = SpectralKernel::cosh_gaussian(30.0, v1(2.0));
  EXPECT_THROW(k.density(v1(0.0)), SpectralOverflowError);
}

TEST(PartDensity, JordanSplitIdentities) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 0.8);
  for (const auto& k : all_1d()) {
    for (int i = 0; i < 500; ++i) {
      const Vector w = v1(g(rng));
      const auto mu = k.density(w);
      const double rp = k.part_density(Part::RealPos, w);
      const double rn = k.part_density(Part::RealNeg, w);
      const double ip = k.part_density(Part::ImagPos, w);
      const double in = k.part_density(Part::ImagNeg, w);
      EXPECT_GE(rp, 0.0);
      EXPECT_GE(rn, 0.0);
      EXPECT_GE(ip, 0.0);
      EXPECT_GE(in, 0.0);
      EXPECT_NEAR(rp - rn, mu.real(), 1e-13 * (1 + std::abs(mu.real())));
      EXPECT_NEAR(ip - in, mu.imag(), 1e-13 * (1 + std::abs(mu.imag())));
      // Odd imaginary part: the positive part at -w is the negative part at w.
      EXPECT_DOUBLE_EQ(k.part_density(Part::ImagPos, -w), in);
    }
  }
}

TEST(PartDensity, SinhRealNegIsZero) {
  const auto k = SpectralKernel::sinh_gaussian(2.0, v1(kPi / 2));
  for (double w = -4.0; w <= 4.0; w += 0.01) EXPECT_EQ(k.part_density(Part::RealNeg, v1(w)), 0.0);
}

TEST(PartDensity, CoshRealPosVanishesWhereCosineNegative) {
  const auto k = SpectralKernel::cosh_gaussian(2.0, v1(kPi / 2));
  for (double w = -3.0; w <= 3.0; w += 0.013) {
    if (std::cos(4.0 * (kPi / 2) * w) < 0.0) {
      EXPECT_EQ(k.part_density(Part::RealPos, v1(w)), 0.0) << w;
    } else {
      EXPECT_GE(k.part_density(Part::RealPos, v1(w)), 0.0);
    }
  }
}

TEST(Spectral, InverseTransformReproducesKernel1d) {
  for (const auto& k : all_1d()) {
    for (int i = 0; i <= 100; ++i) {
      const double d = -3.0 + 6.0 * i / 100.0;
      EXPECT_NEAR(oracle::inverse_transform_1d(k, d), k.eval(v1(d)), 1e-6) << k.describe() << " D=" << d;
    }
  }
}

TEST(Spectral, MassConstraints1d) {
  for (const auto& k : all_1d()) {
    const double rp = oracle::part_mass_1d(k, Part::RealPos);
    const double rn = oracle::part_mass_1d(k, Part::RealNeg);
    const double ip = oracle::part_mass_1d(k, Part::ImagPos);
    const double in = oracle::part_mass_1d(k, Part::ImagNeg);
    EXPECT_NEAR(rp - rn, k.eval(v1(0.0)), 1e-6) << k.describe();
    EXPECT_NEAR(ip, in, 1e-6) << k.describe();
  }
}

TEST(Spectral, FrozenReferenceMassesAgreeWithOracle) {
  const auto shift = SpectralKernel::shift_gaussian(2.0, v1(2.0));
  EXPECT_NEAR(oracle::part_mass_1d(shift, Part::RealPos), oracle::frozen::kShiftXi1, 1e-8);
  EXPECT_NEAR(oracle::part_mass_1d(shift, Part::RealNeg), oracle::frozen::kShiftXi2, 1e-8);
  EXPECT_NEAR(oracle::part_mass_1d(shift, Part::ImagPos), oracle::frozen::kShiftXi3, 1e-8);
  const auto cosh = SpectralKernel::cosh_gaussian(2.0, v1(kPi / 2));
  EXPECT_NEAR(oracle::part_mass_1d(cosh, Part::ImagPos), oracle::frozen::kSkewXi3, 1e-6);
  EXPECT_NEAR(oracle::part_mass_1d(cosh, Part::RealPos), oracle::frozen::kCoshXi1, 1e-6);
}

TEST(Modulation, FactorizationMatchesDensity) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 0.6);
  for (const auto& k : all_3d()) {
    for (auto p : {Part::RealPos, Part::RealNeg, Part::ImagPos, Part::ImagNeg}) {
      const Modulation mod = k.modulation(p);
      for (int i = 0; i < 50; ++i) {
        const Vector w = (Vector(3) << g(rng), g(rng), g(rng)).finished();
        const double s = mod.direction.size() ? mod.direction.dot(w) : 0.0;
        const double f = std::exp(k.log_envelope(w) + mod.log_scale) * wave_value(mod.wave, s);
        EXPECT_NEAR(f, k.part_density(p, w), 1e-12 * (1 + f));
      }
    }
  }
}
