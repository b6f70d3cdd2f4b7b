#include "placenet/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "placenet/error.hpp"
#include "placenet/parallel.hpp"

namespace placenet {

namespace {

constexpr std::uint64_t kRandomControlSalt = 0x5eed'0f'c0'47'20'11ULL;

}  // namespace

CandidateSet generate_candidates(const PlaceGraph& train, const PlaceGraph& test, const CandidateOptions& options) {
  const auto& nodes = train.nodes();
  const auto n = static_cast<std::uint64_t>(nodes.size());
  auto local = [&](VenueIndex v) -> std::optional<std::uint64_t> {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
    if (it == nodes.end() || *it != v) return std::nullopt;
    return static_cast<std::uint64_t>(it - nodes.begin());
  };

  std::unordered_set<std::uint64_t> excluded;
  if (options.new_edges_only) {
    for (const auto& e : train.edges()) excluded.insert(*local(e.origin) * n + *local(e.dest));
  }
  std::unordered_set<std::uint64_t> positive;
  for (const auto& e : test.edges()) {
    const auto o = local(e.origin);
    const auto d = local(e.dest);
    if (!o || !d) continue;
    const auto code = *o * n + *d;
    if (!excluded.count(code)) positive.insert(code);
  }
  if (positive.empty()) throw DomainError("no positive candidate pairs between the two snapshots");

  const std::uint64_t universe = n * (n - 1);
  const std::uint64_t available = universe - positive.size() - excluded.size();
  auto usable_negative = [&](std::uint64_t code) {
    const auto i = code / n;
    const auto j = code % n;
    return i != j && !positive.count(code) && !excluded.count(code);
  };

  std::vector<std::uint64_t> negatives;
  if (options.mode == CandidateMode::full) {
    if (nodes.size() > kFullCandidateLimit) {
      throw DomainError("full candidate enumeration is limited to " + std::to_string(kFullCandidateLimit) +
                        " nodes, training snapshot has " + std::to_string(nodes.size()));
    }
    negatives.reserve(available);
    for (std::uint64_t code = 0; code < n * n; ++code) {
      if (usable_negative(code)) negatives.push_back(code);
    }
  } else {
    const std::uint64_t wanted = std::min<std::uint64_t>(options.negative_ratio * positive.size(), available);
    std::mt19937_64 rng(options.seed);
    if (2 * wanted > available) {
      std::vector<std::uint64_t> all;
      all.reserve(available);
      for (std::uint64_t code = 0; code < n * n; ++code) {
        if (usable_negative(code)) all.push_back(code);
      }
      std::sample(all.begin(), all.end(), std::back_inserter(negatives), wanted, rng);
    } else {
      std::uniform_int_distribution<std::uint64_t> pick(0, n * n - 1);
      std::unordered_set<std::uint64_t> chosen;
      chosen.reserve(wanted * 2);
      while (chosen.size() < wanted) {
        const auto code = pick(rng);
        if (usable_negative(code) && chosen.insert(code).second) negatives.push_back(code);
      }
    }
  }

  std::vector<std::pair<std::uint64_t, int>> coded;
  coded.reserve(positive.size() + negatives.size());
  for (const auto code : positive) coded.emplace_back(code, 1);
  for (const auto code : negatives) coded.emplace_back(code, 0);
  std::sort(coded.begin(), coded.end());

  CandidateSet set;
  set.options = options;
  set.positives = positive.size();
  set.negatives = negatives.size();
  set.pairs.reserve(coded.size());
  set.labels.reserve(coded.size());
  for (const auto& [code, label] : coded) {
    set.pairs.push_back({nodes[code / n], nodes[code % n]});
    set.labels.push_back(label);
  }
  return set;
}

double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw DomainError("scores and labels differ in length");
  std::size_t pos = 0;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (std::isnan(scores[k])) throw DomainError("AUC scores must not be NaN");
    pos += labels[k] != 0;
  }
  const std::size_t neg = scores.size() - pos;
  if (pos == 0 || neg == 0) throw DomainError("AUC needs at least one positive and one negative");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double rank_sum = 0.0;  // multiples of 0.5, exact in double
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start;
    while (end < order.size() && scores[order[end]] == scores[order[start]]) ++end;
    const double midrank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) {
      if (labels[order[k]] != 0) rank_sum += midrank;
    }
    start = end;
  }
  const double p = static_cast<double>(pos);
  const double u = rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(neg));
}

double EvalReport::auc_of(std::string_view name) const {
  for (const auto& [n, v] : auc) {
    if (n == name) return v;
  }
  throw DomainError("predictor '" + std::string(name) + "' was not evaluated");
}

std::vector<PairFeatures> compute_candidate_features(const FeatureContext& ctx, const CandidateSet& candidates,
                                                     std::size_t threads) {
  std::vector<PairFeatures> features(candidates.pairs.size());
  parallel_for(features.size(), threads, [&](std::size_t k) {
    features[k] = compute_features(ctx, candidates.pairs[k].origin, candidates.pairs[k].dest);
  });
  return features;
}

LogisticModel train_pair_model(const PlaceGraph& train, const PlaceGraph& test, const CheckinStream& stream,
                               const EvalConfig& config) {
  const FeatureContext ctx(train, stream, config.utc_offset, config.T, config.beta, config.gap_threshold,
                           config.pagerank_max_iter);
  const auto candidates = generate_candidates(train, test, config.candidates);
  const auto features = compute_candidate_features(ctx, candidates, config.threads);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(features.size()), kLogisticInputs);
  for (std::size_t k = 0; k < features.size(); ++k) x.row(static_cast<Eigen::Index>(k)) = logistic_inputs(features[k]);
  return train_logistic(x, candidates.labels, LogisticOptions{config.l2_lambda});
}

EvalResult evaluate_pair(const PlaceGraph& train, const PlaceGraph& test, const CheckinStream& stream,
                         const EvalConfig& config, const LogisticModel* model, std::size_t train_index) {
  const FeatureContext ctx(train, stream, config.utc_offset, config.T, config.beta, config.gap_threshold,
                           config.pagerank_max_iter);
  EvalResult result;
  result.candidates = generate_candidates(train, test, config.candidates);
  result.features = compute_candidate_features(ctx, result.candidates, config.threads);

  for (const auto p : config.predictors) result.score_names.emplace_back(predictor_name(p));
  if (model) result.score_names.emplace_back(kLogisticPredictor);
  result.score_names.emplace_back(kRandomPredictor);

  const auto rows = static_cast<Eigen::Index>(result.features.size());
  result.scores.resize(rows, static_cast<Eigen::Index>(result.score_names.size()));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& f = result.features[static_cast<std::size_t>(r)];
    Eigen::Index c = 0;
    for (const auto p : config.predictors) result.scores(r, c++) = predictor_score(p, f);
    if (model) result.scores(r, c++) = score_logistic(*model, logistic_inputs(f));
  }
  std::mt19937_64 rng(config.candidates.seed ^ kRandomControlSalt);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const auto random_col = result.scores.cols() - 1;
  for (Eigen::Index r = 0; r < rows; ++r) result.scores(r, random_col) = uniform(rng);

  auto& report = result.report;
  report.train_index = train_index;
  report.train_window = train.window();
  report.test_window = test.window();
  report.positives = result.candidates.positives;
  report.negatives = result.candidates.negatives;
  std::vector<double> column(static_cast<std::size_t>(rows));
  for (Eigen::Index c = 0; c < result.scores.cols(); ++c) {
    Eigen::Map<Eigen::VectorXd>(column.data(), rows) = result.scores.col(c);
    report.auc.emplace_back(result.score_names[static_cast<std::size_t>(c)], auc(column, result.candidates.labels));
  }
  return result;
}

std::vector<EvalResult> temporal_cross_validation(std::span<const PlaceGraph> snapshots,
                                                  const CheckinStream& stream, const EvalConfig& config) {
  if (snapshots.size() < 2) throw DomainError("temporal cross-validation needs at least two snapshots");
  std::vector<EvalResult> results;
  for (std::size_t t = 0; t + 1 < snapshots.size(); ++t) {
    std::optional<LogisticModel> model;
    if (t > 0) model = train_pair_model(snapshots[t - 1], snapshots[t], stream, config);
    results.push_back(
        evaluate_pair(snapshots[t], snapshots[t + 1], stream, config, model ? &*model : nullptr, t));
  }
  return results;
}

}  // namespace placenet
