#include "placenet/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>

#include "placenet/error.hpp"

namespace placenet {

namespace {

std::vector<EdgeKey> edge_set(const PlaceGraph& g) {
  std::vector<EdgeKey> keys;
  keys.reserve(g.edge_count());
  for (const auto& e : g.edges()) keys.push_back(e.key());
  return keys;  // already sorted
}

template <typename T>
std::vector<T> intersect(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <typename T>
std::size_t difference_size(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out.size();
}

void check_horizon(std::span<const PlaceGraph> snapshots, std::size_t base, std::size_t horizon) {
  if (horizon == 0) throw DomainError("longevity horizon must be at least 1");
  if (base + horizon >= snapshots.size()) {
    throw DomainError("longevity needs " + std::to_string(horizon + 1) + " snapshots from index " +
                      std::to_string(base));
  }
}

template <typename Set, typename Extract>
std::optional<PersistenceSeries> running_intersection(std::span<const PlaceGraph> snapshots, std::size_t base,
                                                      std::size_t horizon, PersistenceKind kind,
                                                      Extract&& extract) {
  check_horizon(snapshots, base, horizon);
  Set running = extract(snapshots[base]);
  const auto total = running.size();
  if (total == 0) return std::nullopt;
  PersistenceSeries series{kind, base, {}};
  for (std::size_t h = 1; h <= horizon; ++h) {
    running = intersect(running, extract(snapshots[base + h]));
    series.probabilities.push_back({running.size(), total});
  }
  return series;
}

}  // namespace

GrowthCurve fit_densification(std::vector<GrowthPoint> points, double cutoff) {
  GrowthCurve curve;
  curve.points = std::move(points);
  if (curve.points.empty()) throw DomainError("growth curve has no points");
  const double limit = cutoff * static_cast<double>(curve.points.back().nodes);
  std::vector<double> xs, ys;
  for (const auto& p : curve.points) {
    if (p.nodes == 0 || p.edges == 0 || static_cast<double>(p.nodes) >= limit) continue;
    xs.push_back(std::log(static_cast<double>(p.nodes)));
    ys.push_back(std::log(static_cast<double>(p.edges)));
  }
  curve.fit_points = xs.size();
  if (xs.size() < kMinGrowthFitPoints) {
    throw DomainError("densification fit needs at least 10 pre-saturation points, got " +
                      std::to_string(xs.size()));
  }
  const auto m = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd design(m, 2);
  design.col(0) = Eigen::Map<const Eigen::VectorXd>(xs.data(), m);
  design.col(1).setOnes();
  const Eigen::Map<const Eigen::VectorXd> y(ys.data(), m);
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(y);
  curve.alpha = coef[0];
  if (m > 2) {
    const double sse = (design * coef - y).squaredNorm();
    const double sxx = (design.col(0).array() - design.col(0).mean()).square().sum();
    curve.alpha_stderr = sxx > 0.0 ? std::sqrt(sse / static_cast<double>(m - 2) / sxx) : 0.0;
  }
  return curve;
}

GrowthCurve growth_curve(const CheckinStream& stream, Timestamp t0, Seconds gap_threshold) {
  if (stream.empty()) throw DomainError("growth curve needs a nonempty stream");
  auto transitions = extract_transitions(stream, gap_threshold);
  std::stable_sort(transitions.begin(), transitions.end(),
                   [](const Transition& a, const Transition& b) { return a.t_origin < b.t_origin; });
  std::set<VenueIndex> nodes;
  std::set<EdgeKey> edges;
  std::vector<GrowthPoint> points;
  for (const auto& t : transitions) {
    if (t.t_origin < t0) continue;
    const bool new_origin = nodes.insert(t.origin).second;
    const bool new_dest = nodes.insert(t.dest).second;
    edges.insert({t.origin, t.dest});
    if (new_origin || new_dest) points.push_back({nodes.size(), edges.size()});
  }
  if (!points.empty() && points.back().edges != edges.size()) points.push_back({nodes.size(), edges.size()});
  return fit_densification(std::move(points));
}

std::optional<Fraction> new_venue_fraction(const CheckinStream& stream, Timestamp t0, int week_index) {
  if (week_index < 2) throw DomainError("week index must be at least 2");
  const Timestamp week_start = t0 + static_cast<Timestamp>(week_index - 1) * 7 * kDay;
  const Timestamp week_end = week_start + 7 * kDay;
  std::set<VenueIndex> earlier, this_week;
  for (const auto& e : stream.events()) {
    if (e.timestamp < t0) continue;
    if (e.timestamp < week_start) {
      earlier.insert(e.venue);
    } else if (e.timestamp < week_end) {
      this_week.insert(e.venue);
    }
  }
  if (this_week.empty()) return std::nullopt;
  std::size_t fresh = 0;
  for (const auto v : this_week) fresh += earlier.count(v) == 0;
  return Fraction{fresh, this_week.size()};
}

std::optional<Fraction> new_edge_probability(const PlaceGraph& current, const PlaceGraph& next) {
  if (next.empty()) return std::nullopt;
  return Fraction{difference_size(edge_set(next), edge_set(current)), next.edge_count()};
}

std::optional<PersistenceSeries> edge_longevity(std::span<const PlaceGraph> snapshots, std::size_t base,
                                                std::size_t horizon) {
  return running_intersection<std::vector<EdgeKey>>(snapshots, base, horizon, PersistenceKind::edge, edge_set);
}

std::optional<Fraction> weight_persistence(const PlaceGraph& current, const PlaceGraph& next, std::int64_t w) {
  std::size_t heavy = 0, kept = 0;
  for (const auto& e : current.edges()) {
    if (e.weight < w) continue;
    ++heavy;
    kept += next.has_edge(e.origin, e.dest);
  }
  if (heavy == 0) return std::nullopt;
  return Fraction{kept, heavy};
}

NodeTurnover node_turnover(std::span<const PlaceGraph> snapshots, std::size_t base, std::size_t horizon) {
  check_horizon(snapshots, base, horizon);
  NodeTurnover out;
  const auto& current = snapshots[base].nodes();
  const auto& next = snapshots[base + 1].nodes();
  if (!next.empty()) out.new_node = Fraction{difference_size(next, current), next.size()};
  out.longevity = running_intersection<std::vector<VenueIndex>>(
      snapshots, base, horizon, PersistenceKind::node, [](const PlaceGraph& g) { return g.nodes(); });
  return out;
}

}  // namespace placenet
