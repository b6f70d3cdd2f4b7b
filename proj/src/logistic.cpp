#include "placenet/logistic.hpp"

#include <cmath>

#include "placenet/error.hpp"

namespace placenet {

namespace {

double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

struct Objective {
  const Eigen::MatrixXd& x;
  const Eigen::VectorXd& y;
  double lambda;

  double value(const Eigen::VectorXd& w, double b) const {
    const Eigen::VectorXd z = (x * w).array() + b;
    double loss = 0.0;
    for (Eigen::Index k = 0; k < z.size(); ++k) loss += softplus(z[k]) - y[k] * z[k];
    const auto n = static_cast<double>(x.rows());
    return loss / n + 0.5 * lambda / n * w.squaredNorm();
  }

  void gradient(const Eigen::VectorXd& w, double b, Eigen::VectorXd& gw, double& gb) const {
    const Eigen::VectorXd z = (x * w).array() + b;
    Eigen::VectorXd r = z.unaryExpr([](double v) { return sigmoid(v); }) - y;
    const auto n = static_cast<double>(x.rows());
    gw = x.transpose() * r / n + lambda / n * w;
    gb = r.sum() / n;
  }
};

}  // namespace

LogisticModel train_logistic(const Eigen::MatrixXd& features, std::span<const int> labels,
                             const LogisticOptions& options) {
  if (features.rows() != static_cast<Eigen::Index>(labels.size())) {
    throw DomainError("feature rows and labels differ in length");
  }
  Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
  std::size_t positives = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] != 0 && labels[k] != 1) throw DomainError("labels must be 0 or 1");
    y[static_cast<Eigen::Index>(k)] = labels[k];
    positives += labels[k] == 1;
  }
  if (positives == 0 || positives == labels.size()) throw DomainError("logistic regression needs both classes");

  LogisticModel model;
  model.l2_lambda = options.l2_lambda;
  const auto n = static_cast<double>(features.rows());
  model.mean = features.colwise().mean();
  const Eigen::MatrixXd centered = features.rowwise() - model.mean.transpose();
  model.scale = (centered.colwise().squaredNorm() / n).cwiseSqrt();
  for (Eigen::Index c = 0; c < model.scale.size(); ++c) {
    if (!(model.scale[c] > 0.0)) model.scale[c] = 1.0;
  }
  const Eigen::MatrixXd x = centered.array().rowwise() / model.scale.transpose().array();

  const Objective objective{x, y, options.l2_lambda};
  Eigen::VectorXd w = Eigen::VectorXd::Zero(x.cols());
  double b = 0.0;
  double f = objective.value(w, b);
  Eigen::VectorXd gw;
  double gb = 0.0;
  double step = 1.0;
  for (int epoch = 0; epoch < options.max_epochs; ++epoch) {
    objective.gradient(w, b, gw, gb);
    const double g2 = gw.squaredNorm() + gb * gb;
    model.gradient_norm = std::sqrt(g2);
    if (model.gradient_norm < options.gradient_tolerance) break;
    step = std::min(1.0, step * 2.0);
    Eigen::VectorXd w_next;
    double b_next = 0.0, f_next = 0.0;
    for (;;) {
      w_next = w - step * gw;
      b_next = b - step * gb;
      f_next = objective.value(w_next, b_next);
      if (f_next <= f - 0.5 * step * g2 || step < 1e-12) break;
      step *= 0.5;
    }
    if (f_next > f) break;  // no descent possible at machine precision
    w = std::move(w_next);
    b = b_next;
    f = f_next;
    model.loss_history.push_back(f);
  }
  objective.gradient(w, b, gw, gb);
  model.gradient_norm = std::sqrt(gw.squaredNorm() + gb * gb);
  model.weights = std::move(w);
  model.bias = b;
  return model;
}

double score_logistic(const LogisticModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.weights.size()) {
    throw DomainError("logistic model expects " + std::to_string(model.weights.size()) + " features, got " +
                      std::to_string(x.size()));
  }
  const Eigen::VectorXd z = (x - model.mean).cwiseQuotient(model.scale);
  return sigmoid(z.dot(model.weights) + model.bias);
}

}  // namespace placenet
