#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "placenet/error.hpp"
#include "placenet/eval.hpp"

using namespace placenet;
using doctest::Approx;

namespace {

PlaceGraph graph(std::vector<WeightedEdge> edges) { return PlaceGraph({0, 1}, std::move(edges)); }

constexpr Timestamp kStart = 1356998400;

// Two-window stream of users wandering among 40 venues.
CheckinStream two_window_stream(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> venue(0, 39);
  std::uniform_int_distribution<Seconds> gap(60, 3 * kHour);
  std::vector<CheckinEvent> events;
  for (int u = 0; u < 40; ++u) {
    Timestamp t = kStart + u * 600;
    while (t < kStart + 20 * kDay) {
      events.push_back({"u" + std::to_string(u), static_cast<VenueIndex>(venue(rng)), t});
      t += gap(rng);
    }
  }
  return CheckinStream(std::move(events), oracle::grid_registry(40));
}

}  // namespace

TEST_CASE("auc: hand examples") {
  const std::vector<double> s{0.9, 0.4, 0.5, 0.1};
  const std::vector<int> y{1, 1, 0, 0};
  CHECK(auc(s, y) == 0.75);
  const std::vector<double> perfect{3, 4, 1, 2};
  CHECK(auc(perfect, y) == 1.0);
  const std::vector<double> flat{1, 1, 1, 1};
  CHECK(auc(flat, y) == 0.5);
  CHECK_THROWS_AS(auc(flat, std::vector<int>{1, 1, 1, 1}), DomainError);
  CHECK_THROWS_AS(auc(std::vector<double>{std::nan(""), 1.0}, std::vector<int>{1, 0}), DomainError);
}

TEST_CASE("auc: rank sum equals the pairwise oracle, with symmetry and monotone invariance") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 199;
    std::uniform_int_distribution<int> coarse(0, 1 + trial % 5);  // heavy ties
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t k = 0; k < n; ++k) {
      s[k] = trial % 2 ? coarse(rng) : std::uniform_real_distribution<double>(0, 1)(rng);
      y[k] = static_cast<int>(rng() % 3 == 0);
    }
    y[0] = 1;
    y[1] = 0;
    const double a = auc(s, y);
    CHECK(std::abs(a - oracle::pairwise_auc(s, y)) <= 1e-12);
    std::vector<double> neg(n), cube(n);
    for (std::size_t k = 0; k < n; ++k) {
      neg[k] = -s[k];
      cube[k] = std::exp(3.0 * s[k]) + 2.0;
    }
    CHECK(a + auc(neg, y) == 1.0);
    CHECK(auc(cube, y) == a);
  }
}

TEST_CASE("candidates: full mode") {
  const auto train = graph({{0, 1, 1}, {1, 2, 1}});
  const auto test = graph({{0, 1, 2}, {3, 0, 1}});
  const auto c = generate_candidates(train, test, {.mode = CandidateMode::full});
  CHECK(c.positives == 1);
  CHECK(c.negatives == 5);
  CHECK(c.pairs.size() == 6);
  for (std::size_t k = 0; k < c.pairs.size(); ++k) {
    CHECK(c.pairs[k].origin != c.pairs[k].dest);
    CHECK(c.labels[k] == test.has_edge(c.pairs[k].origin, c.pairs[k].dest));
  }
}

TEST_CASE("candidates: new edges only drops training edges from the universe") {
  const auto train = graph({{0, 1, 1}, {1, 2, 1}});
  const auto test = graph({{0, 1, 2}, {2, 0, 1}});
  const auto c = generate_candidates(train, test, {.mode = CandidateMode::full, .new_edges_only = true});
  CHECK(c.positives == 1);
  CHECK(c.negatives == 3);
  for (const auto& p : c.pairs) CHECK_FALSE(train.has_edge(p.origin, p.dest));
}

TEST_CASE("candidates: sampled mode counts, uniqueness and determinism") {
  const auto train = oracle::random_graph(120, 0.05, 1);
  const auto test = oracle::random_graph(120, 0.05, 2);
  const CandidateOptions opts{.mode = CandidateMode::sampled, .negative_ratio = 10, .seed = 5};
  const auto c = generate_candidates(train, test, opts);
  CHECK(c.negatives == 10 * c.positives);
  std::set<EdgeKey> unique(c.pairs.begin(), c.pairs.end());
  CHECK(unique.size() == c.pairs.size());
  for (std::size_t k = 0; k < c.pairs.size(); ++k) {
    CHECK(train.has_node(c.pairs[k].origin));
    CHECK(train.has_node(c.pairs[k].dest));
    CHECK(c.labels[k] == test.has_edge(c.pairs[k].origin, c.pairs[k].dest));
  }
  const auto again = generate_candidates(train, test, opts);
  CHECK(again.pairs == c.pairs);
  CHECK(again.labels == c.labels);
  auto other = opts;
  other.seed = 6;
  CHECK(generate_candidates(train, test, other).pairs != c.pairs);
}

TEST_CASE("candidates: sampled mode takes everything when short of negatives") {
  const auto train = graph({{0, 1, 1}, {1, 2, 1}});
  const auto test = graph({{0, 1, 2}});
  const auto c = generate_candidates(train, test, {.mode = CandidateMode::sampled, .negative_ratio = 100});
  CHECK(c.negatives == 5);
}

TEST_CASE("candidates: errors") {
  const auto train = graph({{0, 1, 1}});
  CHECK_THROWS_AS(generate_candidates(train, graph({{5, 6, 1}}), {}), DomainError);
  std::vector<WeightedEdge> chain;
  for (VenueIndex v = 0; v < 2100; ++v) chain.push_back({v, v + 1, 1});
  const auto big = graph(chain);
  CHECK_THROWS_AS(generate_candidates(big, big, {.mode = CandidateMode::full}), DomainError);
}

TEST_CASE("evaluate pair: oracle predictor and random control") {
  const auto s = two_window_stream(3);
  const auto graphs = window_stream(s, 10 * kDay, kStart);
  REQUIRE(graphs.size() == 2);
  EvalConfig cfg;
  cfg.candidates.mode = CandidateMode::full;
  const auto r = evaluate_pair(graphs[0], graphs[1], s, cfg);
  CHECK(r.scores.rows() == static_cast<Eigen::Index>(r.candidates.pairs.size()));
  CHECK(r.score_names.back() == kRandomPredictor);
  for (const auto& [name, value] : r.report.auc) {
    CHECK(value >= 0.0);
    CHECK(value <= 1.0);
  }
  std::vector<double> label_scores(r.candidates.labels.begin(), r.candidates.labels.end());
  CHECK(auc(label_scores, r.candidates.labels) == 1.0);
  CHECK(r.report.auc_of("Random") == Approx(0.5).epsilon(0.1));
  CHECK_THROWS_AS(r.report.auc_of("LogisticReg"), DomainError);

  auto threaded = cfg;
  threaded.threads = 3;
  const auto r3 = evaluate_pair(graphs[0], graphs[1], s, threaded);
  CHECK(r3.scores == r.scores);
}

TEST_CASE("temporal cross validation: supervised row from the second pair") {
  const auto s = two_window_stream(4);
  const auto graphs = window_stream(s, 6 * kDay, kStart);
  REQUIRE(graphs.size() >= 3);
  EvalConfig cfg;
  const auto results = temporal_cross_validation(graphs, s, cfg);
  REQUIRE(results.size() == graphs.size() - 1);
  CHECK_THROWS_AS(results[0].report.auc_of(kLogisticPredictor), DomainError);
  CHECK(results[1].report.auc_of(kLogisticPredictor) >= 0.0);
  CHECK(results[1].report.train_index == 1);
  CHECK(results[1].report.train_window == graphs[1].window());
  CHECK(results[1].report.test_window == graphs[2].window());
  CHECK_THROWS_AS(temporal_cross_validation(std::span(graphs).first(1), s, cfg), DomainError);
}
