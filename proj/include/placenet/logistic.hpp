#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

namespace placenet {

struct LogisticModel {
  Eigen::VectorXd weights;  // on standardized inputs
  double bias = 0.0;
  double l2_lambda = 1.0;
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;
  std::vector<double> loss_history;  // objective after each epoch, nonincreasing
  double gradient_norm = 0.0;
};

struct LogisticOptions {
  double l2_lambda = 1.0;
  int max_epochs = 500;
  double gradient_tolerance = 1e-6;
};

/// L2-regularised logistic regression on standardized features, fit by
/// full-batch gradient descent with backtracking line search from zero.
/// Objective: mean log-loss + lambda / (2 n) * |w|^2 (bias unpenalised).
/// Rows of `features` are samples; labels are 0/1 and must contain both classes.
LogisticModel train_logistic(const Eigen::MatrixXd& features, std::span<const int> labels,
                             const LogisticOptions& options = {});

/// Probability of the positive class for one raw feature vector.
double score_logistic(const LogisticModel& model, const Eigen::VectorXd& x);

}  // namespace placenet
