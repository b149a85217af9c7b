#include "cmrff/classifier.hpp"

#include "cmrff/dataio.hpp"
#include "cmrff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmrff {

namespace {

Vector signed_labels(const std::vector<int>& labels) {
  Vector y(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1 && labels[i] != -1) {
      throw std::invalid_argument("binary labels must be -1 or +1");
    }
    y(static_cast<Eigen::Index>(i)) = labels[i];
  }
  return y;
}

// Objective, gradient and generalized-Hessian products at a fixed iterate.
class SquaredHinge {
 public:
  SquaredHinge(ConstMatrixRef x, const Vector& y, double C) : x_(x), y_(y), c_(C) {}

  double value(const Vector& w, double b, const Vector& z) const {
    const Vector slack = (1.0 - (y_.array() * (z.array() + b))).max(0.0);
    return 0.5 * w.squaredNorm() + c_ * slack.squaredNorm();
  }

  // Updates the active set from margins z = X w; returns the gradient.
  Vector gradient(const Vector& w, double b, const Vector& z) {
    const Eigen::Index n = x_.rows();
    active_.clear();
    Vector coef = Vector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double slack = 1.0 - y_(i) * (z(i) + b);
      if (slack > 0.0) {
        active_.push_back(i);
        coef(i) = -2.0 * c_ * y_(i) * slack;
      }
    }
    Vector g(w.size() + 1);
    g.head(w.size()) = w + x_.transpose() * coef;
    g(w.size()) = coef.sum();
    return g;
  }

  Vector hessian_times(const Vector& v) const {
    const Eigen::Index p = x_.cols();
    Vector xv = x_ * v.head(p);
    Vector t = Vector::Zero(x_.rows());
    for (const Eigen::Index i : active_) t(i) = xv(i) + v(p);
    Vector out(p + 1);
    out.head(p) = v.head(p) + 2.0 * c_ * (x_.transpose() * t);
    // Tiny damping keeps the bias direction well posed when no point is active.
    out(p) = 2.0 * c_ * t.sum() + 1e-12 * v(p);
    return out;
  }

 private:
  ConstMatrixRef x_;
  const Vector& y_;
  double c_;
  std::vector<Eigen::Index> active_;
};

Vector conjugate_gradient(const SquaredHinge& f, const Vector& g, int max_iter) {
  Vector d = Vector::Zero(g.size());
  Vector r = -g;
  Vector p = r;
  double rr = r.squaredNorm();
  const double stop = 0.1 * g.norm();
  for (int it = 0; it < max_iter && std::sqrt(rr) > stop; ++it) {
    const Vector hp = f.hessian_times(p);
    const double php = p.dot(hp);
    if (php <= 0.0) break;
    const double alpha = rr / php;
    d += alpha * p;
    r -= alpha * hp;
    const double rr_new = r.squaredNorm();
    p = r + (rr_new / rr) * p;
    rr = rr_new;
  }
  return d;
}

}  // namespace

double svm_objective(const LinearModel& model, ConstMatrixRef features,
                     const std::vector<int>& labels) {
  require_dim(features.cols(), model.weights.size(), "svm_objective");
  const Vector y = signed_labels(labels);
  require_dim(static_cast<std::ptrdiff_t>(labels.size()), features.rows(), "svm_objective labels");
  SquaredHinge f(features, y, model.C);
  return f.value(model.weights, model.bias, features * model.weights);
}

LinearModel train_binary(ConstMatrixRef features, const std::vector<int>& labels, double C,
                         const TrainOptions& options, const LinearModel* warm) {
  const Eigen::Index n = features.rows();
  const Eigen::Index p = features.cols();
  require_dim(static_cast<std::ptrdiff_t>(labels.size()), n, "train labels");
  if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("C must be positive");
  if (n < 2) throw std::invalid_argument("train: need at least 2 samples");
  const Vector y = signed_labels(labels);
  if ((y.array() > 0).all() || (y.array() < 0).all()) {
    throw std::invalid_argument("train: both classes must be present");
  }

  SquaredHinge f(features, y, C);
  Vector w = Vector::Zero(p);
  double b = 0.0;
  const double g0 = f.gradient(w, b, Vector::Zero(n)).norm();
  if (warm != nullptr) {
    require_dim(warm->weights.size(), p, "train warm start");
    w = warm->weights;
    b = warm->bias;
  }
  const double tol = options.tolerance * std::max(1.0, g0);

  Vector z = features * w;
  double fval = f.value(w, b, z);
  for (int it = 0; it < options.max_newton_iterations; ++it) {
    const Vector g = f.gradient(w, b, z);
    if (g.norm() <= tol) break;
    const Vector d = conjugate_gradient(f, g, options.max_cg_iterations);
    const double slope = g.dot(d);
    if (!(slope < 0.0)) break;
    const Vector zd = features * d.head(p);
    const Vector wd = d.head(p);
    const double bd = d(p);
    double step = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      const Vector wn = w + step * wd;
      const Vector zn = z + step * zd;
      const double fn = f.value(wn, b + step * bd, zn);
      if (fn <= fval + 0.01 * step * slope) {
        w = wn;
        z = zn;
        b += step * bd;
        fval = fn;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return {std::move(w), b, C};
}

Classifier::Classifier(std::vector<int> classes, std::vector<LinearModel> models,
                       std::string layout)
    : classes_(std::move(classes)), models_(std::move(models)), layout_(std::move(layout)) {
  const std::size_t want = classes_.size() == 2 ? 1 : classes_.size();
  if (classes_.size() < 2 || models_.size() != want) {
    throw std::invalid_argument("Classifier: model count does not match class count");
  }
  for (const auto& m : models_) {
    require_dim(m.weights.size(), models_.front().weights.size(), "Classifier models");
  }
}

Classifier Classifier::train(ConstMatrixRef features, const std::vector<int>& labels, double C,
                             const TrainOptions& options, const Classifier* warm) {
  auto classes = distinct_labels(labels);
  if (classes.size() < 2) throw std::invalid_argument("train: single-class input");
  const std::size_t count = classes.size() == 2 ? 1 : classes.size();
  std::vector<LinearModel> models;
  models.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    // Two classes: the larger label is the positive one.
    const int positive = count == 1 ? classes[1] : classes[k];
    std::vector<int> y(labels.size());
    std::transform(labels.begin(), labels.end(), y.begin(),
                   [&](int v) { return v == positive ? 1 : -1; });
    const LinearModel* seed =
        warm != nullptr && warm->classes() == classes ? &warm->models()[k] : nullptr;
    models.push_back(train_binary(features, y, C, options, seed));
  }
  return Classifier(std::move(classes), std::move(models));
}

std::vector<int> Classifier::predict(ConstMatrixRef features) const {
  require_dim(features.cols(), width(), "predict");
  std::vector<int> out(static_cast<std::size_t>(features.rows()));
  if (models_.size() == 1) {
    const Vector score = (features * models_[0].weights).array() + models_[0].bias;
    for (Eigen::Index i = 0; i < score.size(); ++i) {
      out[static_cast<std::size_t>(i)] = score(i) > 0.0 ? classes_[1] : classes_[0];
    }
    return out;
  }
  Matrix scores(features.rows(), static_cast<Eigen::Index>(models_.size()));
  for (std::size_t k = 0; k < models_.size(); ++k) {
    scores.col(static_cast<Eigen::Index>(k)) =
        (features * models_[k].weights).array() + models_[k].bias;
  }
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index best = 0;
    scores.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = classes_[static_cast<std::size_t>(best)];
  }
  return out;
}

double Classifier::C() const { return models_.empty() ? 0.0 : models_.front().C; }

int Classifier::width() const {
  return models_.empty() ? 0 : static_cast<int>(models_.front().weights.size());
}

double evaluate(const Classifier& model, ConstMatrixRef features, const std::vector<int>& labels) {
  require_dim(static_cast<std::ptrdiff_t>(labels.size()), features.rows(), "evaluate labels");
  if (labels.empty()) throw std::invalid_argument("evaluate: empty label set");
  const auto pred = model.predict(features);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) hits += pred[i] == labels[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

CvResult cv_select(ConstMatrixRef features, const std::vector<int>& labels,
                   const std::vector<double>& grid, std::uint64_t seed, int folds,
                   const TrainOptions& options) {
  if (grid.empty()) throw std::invalid_argument("cv_select: empty C grid");
  require_dim(static_cast<std::ptrdiff_t>(labels.size()), features.rows(), "cv_select labels");
  const auto split = kfold_split(static_cast<int>(labels.size()), folds, seed);

  // Visit C in ascending order so each fold can warm-start from the previous C.
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return grid[a] < grid[b]; });

  CvResult result;
  result.accuracy = Matrix::Zero(static_cast<Eigen::Index>(grid.size()), folds);
  for (int f = 0; f < folds; ++f) {
    const auto& fold = split[static_cast<std::size_t>(f)];
    Matrix xt(static_cast<Eigen::Index>(fold.train.size()), features.cols());
    Matrix xv(static_cast<Eigen::Index>(fold.validation.size()), features.cols());
    std::vector<int> yt;
    std::vector<int> yv;
    for (std::size_t i = 0; i < fold.train.size(); ++i) {
      xt.row(static_cast<Eigen::Index>(i)) = features.row(fold.train[i]);
      yt.push_back(labels[static_cast<std::size_t>(fold.train[i])]);
    }
    for (std::size_t i = 0; i < fold.validation.size(); ++i) {
      xv.row(static_cast<Eigen::Index>(i)) = features.row(fold.validation[i]);
      yv.push_back(labels[static_cast<std::size_t>(fold.validation[i])]);
    }
    Classifier previous;
    bool have_previous = false;
    for (const std::size_t g : order) {
      Classifier model = Classifier::train(xt, yt, grid[g], options,
                                           have_previous ? &previous : nullptr);
      result.accuracy(static_cast<Eigen::Index>(g), f) = evaluate(model, xv, yv);
      previous = std::move(model);
      have_previous = true;
    }
  }
  result.mean_accuracy = result.accuracy.rowwise().mean();
  double best_acc = -1.0;
  for (const std::size_t g : order) {
    const double acc = result.mean_accuracy(static_cast<Eigen::Index>(g));
    if (acc > best_acc) {
      best_acc = acc;
      result.best_c = grid[g];
    }
  }
  return result;
}

std::vector<double> default_c_grid() {
  std::vector<double> grid;
  for (int e = -5; e <= 5; ++e) grid.push_back(std::ldexp(1.0, e));
  return grid;
}

}  // namespace cmrff
