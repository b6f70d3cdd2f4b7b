#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "placenet/logistic.hpp"
#include "placenet/predict.hpp"
#include "placenet/snapshot.hpp"

namespace placenet {

enum class CandidateMode { full, sampled };

inline constexpr std::size_t kFullCandidateLimit = 2000;

struct CandidateOptions {
  CandidateMode mode = CandidateMode::sampled;
  std::size_t negative_ratio = 10;
  std::uint64_t seed = 42;
  bool new_edges_only = false;
};

/// Ordered venue pairs over V^t labelled by presence in E^{t+1}, sorted by pair.
struct CandidateSet {
  std::vector<EdgeKey> pairs;
  std::vector<int> labels;
  CandidateOptions options;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

/// Positives are test edges with both endpoints in the training node set (only
/// edges absent from training when new_edges_only; training edges then leave the
/// candidate universe entirely). Full mode takes every other ordered pair as a
/// negative and requires |V^t| <= 2000; sampled mode draws negative_ratio x
/// positives negatives uniformly without replacement (all of them if fewer exist).
CandidateSet generate_candidates(const PlaceGraph& train, const PlaceGraph& test, const CandidateOptions& options);

/// Mann-Whitney AUC with midranks: P(score+ > score-) + 0.5 P(tie).
double auc(std::span<const double> scores, std::span<const int> labels);

struct EvalConfig {
  CandidateOptions candidates;
  std::vector<Predictor> predictors{kAllPredictors.begin(), kAllPredictors.end()};
  int T = 168;
  double beta = 1.0;
  Seconds utc_offset = 0;
  Seconds gap_threshold = kDefaultGapThreshold;
  double l2_lambda = 1.0;
  std::size_t threads = 1;
  int pagerank_max_iter = 100;
};

inline constexpr std::string_view kRandomPredictor = "Random";
inline constexpr std::string_view kLogisticPredictor = "LogisticReg";

struct EvalReport {
  std::size_t train_index = 0;
  TimeWindow train_window;
  TimeWindow test_window;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::vector<std::pair<std::string, double>> auc;  // in predictor order

  /// Throws DomainError when the predictor was not evaluated.
  double auc_of(std::string_view name) const;
};

/// One evaluated (train, test) pair with its per-candidate data.
struct EvalResult {
  EvalReport report;
  CandidateSet candidates;
  std::vector<PairFeatures> features;
  std::vector<std::string> score_names;
  Eigen::MatrixXd scores;  // candidates x score_names
};

/// Features for every candidate pair, computed on `threads` workers.
std::vector<PairFeatures> compute_candidate_features(const FeatureContext& ctx, const CandidateSet& candidates,
                                                     std::size_t threads = 1);

/// Scores the candidates of (train, test) with every configured predictor, the
/// Random control, and `model` when given.
EvalResult evaluate_pair(const PlaceGraph& train, const PlaceGraph& test, const CheckinStream& stream,
                         const EvalConfig& config, const LogisticModel* model = nullptr,
                         std::size_t train_index = 0);

/// Fits the supervised baseline on (train, test) labels.
LogisticModel train_pair_model(const PlaceGraph& train, const PlaceGraph& test, const CheckinStream& stream,
                               const EvalConfig& config);

/// Runs every adjacent (train, test) pair. The supervised row appears from the
/// second pair on, trained on the pair before it.
std::vector<EvalResult> temporal_cross_validation(std::span<const PlaceGraph> snapshots,
                                                  const CheckinStream& stream, const EvalConfig& config);

}  // namespace placenet
