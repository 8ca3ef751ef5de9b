#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rolevec/matrix.hpp"
#include "rolevec/rng.hpp"

namespace rolevec {

struct LogisticConfig {
  double l2_strength = 1.0;
  int iterations = 500;
  double learning_rate = 0.1;  // halved whenever a step raises the loss
};

/// One-vs-rest L2-regularized logistic regression trained by full-batch
/// gradient descent. Features are z-scored with statistics from the
/// training rows; the bias column is not regularized.
class OneVsRestLogistic {
 public:
  void fit(const Matrix<double>& features, const std::vector<int>& labels,
           const std::vector<int>& train_rows, const LogisticConfig& cfg = {}) {
    const int d = features.cols;
    const std::size_t n = train_rows.size();
    if (n == 0) throw std::invalid_argument("empty training set");

    classes_.clear();
    for (int r : train_rows) classes_.push_back(labels[r]);
    std::sort(classes_.begin(), classes_.end());
    classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());

    // z-score transform fitted on the training rows
    feature_mean_.assign(d, 0.0);
    feature_scale_.assign(d, 1.0);
    for (int r : train_rows)
      for (int j = 0; j < d; ++j) feature_mean_[j] += features.at(r, j);
    for (int j = 0; j < d; ++j) feature_mean_[j] /= static_cast<double>(n);
    std::vector<double> var(d, 0.0);
    for (int r : train_rows)
      for (int j = 0; j < d; ++j) {
        double dx = features.at(r, j) - feature_mean_[j];
        var[j] += dx * dx;
      }
    for (int j = 0; j < d; ++j) {
      double s = std::sqrt(var[j] / static_cast<double>(n));
      feature_scale_[j] = s > 1e-12 ? s : 1.0;
    }

    Matrix<double> x(static_cast<int>(n), d + 1);  // bias last
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j)
        x.at(static_cast<int>(i), j) =
            (features.at(train_rows[i], j) - feature_mean_[j]) / feature_scale_[j];
      x.at(static_cast<int>(i), d) = 1.0;
    }

    weights_ = Matrix<double>(static_cast<int>(classes_.size()), d + 1);
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      std::vector<double> y(n);
      for (std::size_t i = 0; i < n; ++i)
        y[i] = labels[train_rows[i]] == classes_[c] ? 1.0 : 0.0;
      fit_binary(x, y, weights_.row(static_cast<int>(c)), cfg);
    }
  }

  int predict(const Matrix<double>& features, int row) const {
    const int d = static_cast<int>(feature_mean_.size());
    double best = -1e300;
    int best_class = classes_.front();
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      const double* w = weights_.row(static_cast<int>(c));
      double z = w[d];
      for (int j = 0; j < d; ++j)
        z += w[j] * (features.at(row, j) - feature_mean_[j]) / feature_scale_[j];
      if (z > best) {
        best = z;
        best_class = classes_[c];
      }
    }
    return best_class;
  }

  const std::vector<int>& classes() const { return classes_; }

 private:
  static void fit_binary(const Matrix<double>& x, const std::vector<double>& y, double* w,
                         const LogisticConfig& cfg) {
    const int cols = x.cols;
    const std::size_t n = y.size();
    std::vector<double> grad(cols), backup(cols);
    double lr = cfg.learning_rate;
    double loss = binary_loss(x, y, w, cfg.l2_strength);
    for (int it = 0; it < cfg.iterations; ++it) {
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double* xi = x.row(static_cast<int>(i));
        double z = 0.0;
        for (int j = 0; j < cols; ++j) z += w[j] * xi[j];
        double p = 1.0 / (1.0 + std::exp(-std::clamp(z, -35.0, 35.0)));
        double err = p - y[i];
        for (int j = 0; j < cols; ++j) grad[j] += err * xi[j];
      }
      for (int j = 0; j < cols - 1; ++j) grad[j] += cfg.l2_strength * w[j];  // bias unpenalized
      std::copy(w, w + cols, backup.begin());
      for (int j = 0; j < cols; ++j) w[j] -= lr * grad[j] / static_cast<double>(n);
      double new_loss = binary_loss(x, y, w, cfg.l2_strength);
      if (new_loss > loss) {
        std::copy(backup.begin(), backup.end(), w);
        lr *= 0.5;
        if (lr < 1e-12) break;
      } else {
        loss = new_loss;
      }
    }
  }

  static double binary_loss(const Matrix<double>& x, const std::vector<double>& y,
                            const double* w, double l2) {
    const int cols = x.cols;
    double loss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double* xi = x.row(static_cast<int>(i));
      double z = 0.0;
      for (int j = 0; j < cols; ++j) z += w[j] * xi[j];
      // log(1 + exp(-yz)) with the sign folded in, computed stably
      double m = y[i] > 0.5 ? z : -z;
      loss += m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
    }
    double reg = 0.0;
    for (int j = 0; j < cols - 1; ++j) reg += w[j] * w[j];
    return (loss + 0.5 * l2 * reg) / static_cast<double>(y.size());
  }

  std::vector<int> classes_;
  std::vector<double> feature_mean_, feature_scale_;
  Matrix<double> weights_;
};

/// Mean accuracy of one-vs-rest logistic regression over `repeats` random
/// train/test splits. Splits missing a class in the training part are
/// redrawn.
inline double classification_accuracy(const Matrix<double>& features,
                                      const std::vector<int>& labels, double train_fraction,
                                      int repeats, std::uint64_t seed,
                                      const LogisticConfig& cfg = {},
                                      std::vector<double>* per_repeat = nullptr) {
  const int n = features.rows;
  if (static_cast<int>(labels.size()) != n) throw std::invalid_argument("label count mismatch");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("train_fraction must be in (0, 1)");

  std::vector<int> all_classes(labels);
  std::sort(all_classes.begin(), all_classes.end());
  all_classes.erase(std::unique(all_classes.begin(), all_classes.end()), all_classes.end());

  const int train_size = std::max(1, static_cast<int>(std::lround(train_fraction * n)));
  if (train_size >= n) throw std::invalid_argument("train split leaves no test rows");

  double total_acc = 0.0;
  for (int rep = 0; rep < repeats; ++rep) {
    Rng rng(stream_seed(seed, 0x636c6673ULL, static_cast<std::uint64_t>(rep)));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> train_rows, test_rows;
    for (int attempt = 0;; ++attempt) {
      for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
      train_rows.assign(perm.begin(), perm.begin() + train_size);
      test_rows.assign(perm.begin() + train_size, perm.end());
      std::vector<int> seen;
      for (int r : train_rows) seen.push_back(labels[r]);
      std::sort(seen.begin(), seen.end());
      seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
      if (seen.size() == all_classes.size()) break;
      if (attempt > 1000) throw std::runtime_error("cannot draw a split covering every class");
    }
    OneVsRestLogistic model;
    model.fit(features, labels, train_rows, cfg);
    int correct = 0;
    for (int r : test_rows)
      if (model.predict(features, r) == labels[r]) ++correct;
    double acc = static_cast<double>(correct) / static_cast<double>(test_rows.size());
    if (per_repeat) per_repeat->push_back(acc);
    total_acc += acc;
  }
  return total_acc / static_cast<double>(repeats);
}

}  // namespace rolevec
