#include "cmrff/errors.hpp"
#include "cmrff/io.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <sstream>

using namespace cmrff;
using nlohmann::json;

TEST(KernelJson, ParsesAndRoundTrips) {
  const auto k = kernel_from_json(json::parse(R"({"family": "shift_gaussian", "dim": 2, "sigma": 2.0, "shift": [1.0, -0.5]})"));
  EXPECT_EQ(k.family(), KernelFamily::ShiftGaussian);
  EXPECT_EQ(k.dim(), 2);
  EXPECT_EQ(k.shift()(1), -0.5);
  const auto back = kernel_from_json(kernel_to_json(k));
  EXPECT_EQ(back.shift(), k.shift());
  EXPECT_EQ(back.sigma(), k.sigma());

  const auto inferred = kernel_from_json(json::parse(R"({"family": "sinh_gaussian", "sigma": 1, "skew": [0.1, 0.2, 0.3]})"));
  EXPECT_EQ(inferred.dim(), 3);
  const auto broadcast = kernel_from_json(json::parse(R"({"family": "cosh_gaussian", "dim": 4, "sigma": 2, "skew": 0.25})"));
  EXPECT_EQ(broadcast.skew(), Vector::Constant(4, 0.25));
}

TEST(KernelJson, Errors) {
  for (const char* bad : {
           R"({"sigma": 1})",
           R"({"family": "laplace", "sigma": 1, "dim": 1})",
           R"({"family": "gaussian", "dim": 1})",
           R"({"family": "gaussian", "sigma": -1, "dim": 1})",
           R"({"family": "shift_gaussian", "sigma": 1, "dim": 2, "shift": [1, 2, 3]})",
           R"({"family": "gaussian", "sigma": 1})",
           R"([1, 2])"}) {
    EXPECT_THROW(kernel_from_json(json::parse(bad)), ConfigError) << bad;
  }
}

TEST(MassJson, RoundTrip) {
  MassSet m;
  m.xi1 = 1.25;
  m.xi2 = 0.25;
  m.xi3 = 3.5;
  m.source = MassSource::SubsetLS;
  m.constraint_residual = 1e-17;
  const json j = masses_to_json(m);
  EXPECT_EQ(j.at("source"), "subset_ls");
  const MassSet back = masses_from_json(j);
  EXPECT_EQ(back.xi3, 3.5);
  EXPECT_EQ(back.source, MassSource::SubsetLS);
  EXPECT_THROW(masses_from_json(json::parse(R"({"xi1": 1})")), ConfigError);
}

TEST(BankFile, RoundTripIsBitExact) {
  const auto k = SpectralKernel::shift_gaussian(1.5, (Vector(3) << 0.2, 0.4, -0.1).finished());
  const FrequencyBank bank = sample_bank(k, 20, 7);
  std::stringstream ss;
  write_bank(ss, bank);
  const std::string first = ss.str().substr(0, ss.str().find('\n'));
  const json header = json::parse(first);
  EXPECT_EQ(header.at("m"), 20);
  EXPECT_EQ(header.at("d"), 3);
  EXPECT_EQ(header.at("seed"), 7);
  EXPECT_EQ(header.at("part"), "real_pos");
  const FrequencyBank back = read_bank(ss);
  EXPECT_EQ(back.omega, bank.omega);
  EXPECT_EQ(back.zeta, bank.zeta);
  EXPECT_EQ(back.nu, bank.nu);
  EXPECT_EQ(back.seed, 7u);

  std::stringstream truncated(ss.str().substr(0, 200));
  EXPECT_THROW(read_bank(truncated), std::runtime_error);
}

TEST(FeaturesOut, CsvAndLibsvm) {
  const Matrix f = (Matrix(2, 3) << 0.5, 0.0, -1.0, 0.0, 0.0, 2.0).finished();
  std::ostringstream csv, svm;
  write_features_csv(csv, f);
  write_features_libsvm(svm, f, {1, -1});
  EXPECT_EQ(csv.str(), "0.5,0,-1\n0,0,2\n");
  EXPECT_EQ(svm.str(), "1 1:0.5 3:-1\n-1 3:2\n");
}

TEST(ClassifierJson, RoundTrip) {
  LinearModel a{(Vector(2) << 0.5, -0.25).finished(), 0.125, 2.0};
  Classifier c({-1, 1}, {a}, "omega:4,nu:4");
  const json j = classifier_to_json(c);
  const Classifier back = classifier_from_json(j);
  EXPECT_EQ(back.classes(), c.classes());
  EXPECT_EQ(back.models()[0].weights, a.weights);
  EXPECT_EQ(back.models()[0].bias, a.bias);
  EXPECT_EQ(back.C(), 2.0);
  EXPECT_EQ(back.layout(), "omega:4,nu:4");
  EXPECT_THROW(classifier_from_json(json::parse(R"({"classes": [0, 1]})")), ConfigError);
}
