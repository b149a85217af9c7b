#pragma once

#include "cmrff/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cmrff {

// Binary L2-regularized squared-hinge linear classifier; labels are -1/+1.
// The bias is not regularized.
struct LinearModel {
  Vector weights;
  double bias = 0.0;
  double C = 1.0;
};

struct TrainOptions {
  // Stop when |grad| <= tolerance * max(1, |grad at zero|).
  double tolerance = 1e-6;
  int max_newton_iterations = 200;
  int max_cg_iterations = 500;
};

// 0.5 |w|^2 + C sum_i max(0, 1 - y_i (w.x_i + b))^2
double svm_objective(const LinearModel& model, ConstMatrixRef features,
                     const std::vector<int>& labels);

// Truncated Newton with conjugate gradients and Armijo backtracking. `warm`
// seeds the iterate; the result is deterministic in its inputs.
LinearModel train_binary(ConstMatrixRef features, const std::vector<int>& labels, double C,
                         const TrainOptions& options = {}, const LinearModel* warm = nullptr);

// One binary model for two classes, one-vs-rest otherwise.
class Classifier {
 public:
  Classifier() = default;
  Classifier(std::vector<int> classes, std::vector<LinearModel> models, std::string layout = {});

  static Classifier train(ConstMatrixRef features, const std::vector<int>& labels, double C,
                          const TrainOptions& options = {}, const Classifier* warm = nullptr);

  std::vector<int> predict(ConstMatrixRef features) const;
  double C() const;
  int width() const;

  const std::vector<int>& classes() const noexcept { return classes_; }
  const std::vector<LinearModel>& models() const noexcept { return models_; }
  const std::string& layout() const noexcept { return layout_; }
  void set_layout(std::string layout) { layout_ = std::move(layout); }

 private:
  std::vector<int> classes_;
  std::vector<LinearModel> models_;
  std::string layout_;
};

// Fraction of correctly predicted labels.
double evaluate(const Classifier& model, ConstMatrixRef features, const std::vector<int>& labels);

struct CvResult {
  double best_c = 0.0;
  // accuracy(g, f): grid value g, validation fold f.
  Matrix accuracy;
  Vector mean_accuracy;
};

// Highest mean validation accuracy over `folds` folds; ties go to the smaller C.
CvResult cv_select(ConstMatrixRef features, const std::vector<int>& labels,
                   const std::vector<double>& grid, std::uint64_t seed, int folds = 5,
                   const TrainOptions& options = {});

// 2^-5, 2^-4, ..., 2^5
std::vector<double> default_c_grid();

}  // namespace cmrff
