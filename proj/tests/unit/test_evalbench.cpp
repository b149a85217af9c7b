#include "cmrff/errors.hpp"
#include "cmrff/evalbench.hpp"
#include "cmrff/masses.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace cmrff;
using oracle::v1;

namespace {

constexpr double kPi = std::numbers::pi;

MassSet masses(double a, double b, double c) {
  MassSet m;
  m.xi1 = a;
  m.xi2 = b;
  m.xi3 = c;
  return m;
}

BoundInputs base_inputs() {
  BoundInputs b;
  b.d = 2;
  b.l = 3.0;
  b.eps = 0.1;
  b.delta = 0.1;
  b.total_mass = 2.0;
  b.alpha_mu = 1.5;
  return b;
}

}  // namespace

TEST(GramExact, GaussianSymmetricUnitDiagonal) {
  const auto k = SpectralKernel::gaussian(3, 1.2);
  const Matrix x = Matrix::Random(6, 3);
  const Matrix g = gram_exact(k, x, x);
  EXPECT_TRUE(g.isApprox(g.transpose(), 1e-15));
  for (int i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(g(i, i), 1.0);
}

TEST(GramExact, CoshProductCancelsOddPart) {
  const double sigma = 1.7;
  const auto k = SpectralKernel::cosh_gaussian(sigma, (Vector(2) << 0.5, -0.3).finished());
  const Matrix x = Matrix::Random(7, 2) * 2.0;
  const Matrix g = gram_exact(k, x, x);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      const double d2 = (x.row(i) - x.row(j)).squaredNorm();
      EXPECT_NEAR(g(i, j) * g(j, i), std::exp(-d2 / (sigma * sigma)), 1e-13);
    }
  }
  EXPECT_GT((g - g.transpose()).norm(), 1e-3);
}

TEST(GramExact, SinglePairAndErrors) {
  const auto k = SpectralKernel::shift_gaussian(2.0, v1(2.0));
  const Matrix x = (Matrix(1, 1) << 0.4).finished();
  EXPECT_DOUBLE_EQ(gram_exact(k, x, x)(0, 0), k.eval(v1(0.0)));
  EXPECT_THROW(gram_exact(k, Matrix::Zero(2, 2), x), DimensionError);
}

TEST(GramApprox, MatchesScalarPath) {
  const auto k = SpectralKernel::shift_gaussian(1.5, (Vector(2) << 0.6, 0.2).finished());
  const FeatureMap map(sample_bank(k, 40, 3), masses(0.8, 0.1, 0.35));
  const Matrix x = Matrix::Random(5, 2);
  const Matrix y = Matrix::Random(5, 2);
  for (const auto& [rows, cols] : {std::pair{&x, &y}, std::pair{&x, &x}}) {
    const Matrix g = gram_approx(map, *rows, *cols);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        EXPECT_NEAR(g(i, j), map.approx_kernel(rows->row(i).transpose(), cols->row(j).transpose()), 1e-10);
  }
}

TEST(GramApprox, SquareFastPathEqualsGeneralPath) {
  const auto k = SpectralKernel::cosh_gaussian(2.0, Vector::Constant(3, 0.3));
  const FeatureMap map(sample_bank(k, 50, 1), masses(2.0, 1.0, 1.4));
  const Matrix x = Matrix::Random(30, 3);
  const Matrix copy = x;
  EXPECT_TRUE(gram_approx(map, x, x).isApprox(gram_approx(map, x, copy), 1e-12));
}

TEST(GramApprox, DiagonalIsKAtZeroWithExactMasses) {
  const auto k = SpectralKernel::cosh_gaussian(2.0, v1(kPi / 2));
  const FeatureMap map(sample_bank(k, 64, 0), masses_quadrature(k));
  const Matrix x = Matrix::Random(8, 1);
  const Matrix g = gram_approx(map, x, x);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(g(i, i), 1.0, 1e-10);
}

TEST(GramApprox, GaussianIsClassicRffGram) {
  const auto k = SpectralKernel::gaussian(2, 1.0);
  const FeatureMap map(sample_bank(k, 30, 2), masses(1, 0, 0));
  const Matrix x = Matrix::Random(6, 2);
  const Matrix z = phi_features(map.bank().omega, x);
  EXPECT_TRUE(gram_approx(map, x, x).isApprox(z * z.transpose(), 1e-12));
}

TEST(RelativeError, ScalingIdentities) {
  const Matrix k = Matrix::Random(4, 4) + Matrix::Identity(4, 4);
  EXPECT_EQ(relative_error(k, k), 0.0);
  EXPECT_DOUBLE_EQ(relative_error(k, Matrix::Zero(4, 4)), 1.0);
  EXPECT_DOUBLE_EQ(relative_error(k, 2.0 * k), 1.0);
  EXPECT_THROW(relative_error(Matrix::Zero(3, 3), k.topLeftCorner(3, 3)), std::invalid_argument);
  EXPECT_THROW(relative_error(k, Matrix::Zero(3, 4)), DimensionError);
}

TEST(BetaD, Values) {
  auto formula = [](double d) {
    return (std::pow(d / 2, -d / (d + 2)) + std::pow(d / 2, 2 / (d + 2))) *
           std::pow(2.0, (6 * d + 2) / (d + 2));
  };
  EXPECT_NEAR(beta_d(1), formula(1), 1e-12);
  EXPECT_NEAR(beta_d(64), 66.0, 0.5);
  EXPECT_GT(beta_d(1e6), 64.0);
  EXPECT_LT(beta_d(1e6), 64.1);
  // The maximum over integer d sits at d = 64.
  double best = 0;
  int arg = 0;
  for (int d = 1; d <= 5000; ++d) {
    if (beta_d(d) > best) {
      best = beta_d(d);
      arg = d;
    }
  }
  EXPECT_NEAR(arg, 64, 10);
}

TEST(BoundMinFeatures, FormulaAndValidation) {
  BoundInputs b = base_inputs();
  const double d = 2;
  const double want = 4 * (d + 2) * 4.0 / 0.01 *
                      (std::log(beta_d(2) / 0.1) + (2 * d / (d + 2)) * std::log(1.5 * 3.0 / 0.1));
  EXPECT_EQ(bound_min_features(b), static_cast<std::int64_t>(std::ceil(want)));

  for (double bad : {0.0, 1.0, -0.1, 1.5}) {
    b.delta = bad;
    EXPECT_THROW(bound_min_features(b), std::invalid_argument);
  }
  b = base_inputs();
  b.eps = 0.0;
  EXPECT_THROW(bound_min_features(b), std::invalid_argument);

  // Nonpositive expression.
  b = base_inputs();
  b.d = 1;
  b.eps = 1e12;
  b.alpha_mu = 1e-3;
  EXPECT_EQ(bound_min_features(b), 1);
}

TEST(BoundMinFeatures, MassPrefactorQuadruples) {
  BoundInputs b = base_inputs();
  b.eps = 1e-4;
  const double m1 = static_cast<double>(bound_min_features(b));
  b.total_mass *= 2;
  const double m2 = static_cast<double>(bound_min_features(b));
  EXPECT_NEAR(m2 / m1, 4.0, 1e-6);
}

TEST(BoundMinFeatures, Monotone) {
  const BoundInputs b = base_inputs();
  const auto m0 = bound_min_features(b);
  auto with = [&](auto f) {
    BoundInputs c = b;
    f(c);
    return bound_min_features(c);
  };
  EXPECT_LE(with([](BoundInputs& c) { c.eps *= 2; }), m0);
  EXPECT_LE(with([](BoundInputs& c) { c.delta /= 0.5; c.delta = std::min(c.delta, 0.9); }), m0);
  EXPECT_GE(with([](BoundInputs& c) { c.d = 3; }), m0);
  EXPECT_GE(with([](BoundInputs& c) { c.l *= 2; }), m0);
  EXPECT_GE(with([](BoundInputs& c) { c.total_mass *= 1.1; }), m0);
}

TEST(BoundInputsTest, SigmaMuAndAlpha) {
  FrequencyBank bank;
  bank.dim = 1;
  bank.omega = (Matrix(2, 1) << 1.0, 3.0).finished();  // mean square 5
  bank.zeta = Matrix(0, 1);
  bank.nu = (Matrix(1, 1) << 2.0).finished();  // 4
  EXPECT_DOUBLE_EQ(sigma_mu_squared(bank), 5.0 + 2.0 * 4.0);
  EXPECT_DOUBLE_EQ(alpha_mu(masses(1.0, 0.0, 2.0), 2.0), std::sqrt((1.0 + 8.0) * 2.0));

  const auto k = SpectralKernel::shift_gaussian(2.0, v1(2.0));
  const MassSet ms = masses_quadrature(k);
  const BoundInputs in = make_bound_inputs(k, ms, 6.0, 0.2, 0.1, 0);
  EXPECT_EQ(in.d, 1);
  EXPECT_DOUBLE_EQ(in.total_mass, ms.total_mass());
  EXPECT_DOUBLE_EQ(in.beta, beta_d(1));
  // Oracle: second moments of each normalized part by quadrature.
  auto second_moment = [&](Part p) {
    const double r = 10.0 / k.sigma();
    const double mass = oracle::simpson([&](double w) { return k.part_density(p, v1(w)); }, -r, r, 200000);
    return oracle::simpson([&](double w) { return w * w * k.part_density(p, v1(w)); }, -r, r, 200000) / mass;
  };
  const double s2 = second_moment(Part::RealPos) + second_moment(Part::RealNeg) +
                    2.0 * second_moment(Part::ImagPos);
  const double weight = ms.xi1 * ms.xi1 + ms.xi2 * ms.xi2 + 2 * ms.xi3 * ms.xi3;
  EXPECT_NEAR(in.alpha_mu * in.alpha_mu / weight, s2, 0.03 * s2);
}

TEST(SupErrorGrid, ZeroAtOriginAndErrors) {
  const auto k = SpectralKernel::sinh_gaussian(2.0, v1(kPi / 2));
  const FeatureMap map(sample_bank(k, 32, 0), masses_quadrature(k));
  EXPECT_NEAR(sup_error_grid(k, map, Matrix::Zero(1, 1)), 0.0, 1e-10);
  EXPECT_THROW(sup_error_grid(k, map, Matrix(0, 1)), std::invalid_argument);
  EXPECT_THROW(sup_error_grid(k, map, Matrix::Zero(3, 2)), DimensionError);
  Matrix grid(101, 1);
  for (int i = 0; i <= 100; ++i) grid(i, 0) = -3.0 + 0.06 * i;
  double direct = 0.0;
  for (int i = 0; i <= 100; ++i) {
    direct = std::max(direct, std::abs(map.approx_kernel(grid.row(i).transpose(), Vector::Zero(1)) -
                                       k.eval(grid.row(i).transpose())));
  }
  EXPECT_NEAR(sup_error_grid(k, map, grid), direct, 1e-10);
}
