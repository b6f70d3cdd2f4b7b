#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "placenet/snapshot.hpp"

namespace placenet {

/// Exact ratio of two set cardinalities.
struct Fraction {
  std::size_t numerator = 0;
  std::size_t denominator = 1;

  double value() const noexcept { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  bool operator==(const Fraction&) const = default;
};

struct GrowthPoint {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  bool operator==(const GrowthPoint&) const = default;
};

struct GrowthCurve {
  std::vector<GrowthPoint> points;
  double alpha = 0.0;
  double alpha_stderr = 0.0;
  std::size_t fit_points = 0;
};

inline constexpr double kSaturationCutoff = 0.95;
inline constexpr std::size_t kMinGrowthFitPoints = 10;

/// Least-squares slope of log e against log n over points with
/// n < cutoff * (last point's n). Throws DomainError with fewer than 10 such points.
GrowthCurve fit_densification(std::vector<GrowthPoint> points, double cutoff = kSaturationCutoff);

/// Replays transitions with t_origin >= t0 in time order and records (n, e)
/// after every transition that adds a node, then fits the exponent.
GrowthCurve growth_curve(const CheckinStream& stream, Timestamp t0,
                         Seconds gap_threshold = kDefaultGapThreshold);

/// Share of venues seen in week `week_index` (1-based, weeks start at t0) that
/// had not been seen in any earlier week. nullopt for an empty week.
std::optional<Fraction> new_venue_fraction(const CheckinStream& stream, Timestamp t0, int week_index);

/// |E^{t+1} \ E^t| / |E^{t+1}| on directed (origin, dest) pairs.
std::optional<Fraction> new_edge_probability(const PlaceGraph& current, const PlaceGraph& next);

enum class PersistenceKind { edge, node };

struct PersistenceSeries {
  PersistenceKind kind = PersistenceKind::edge;
  std::size_t base = 0;
  std::vector<Fraction> probabilities;  // horizons 1..n
};

/// |E^t ∩ ... ∩ E^{t+n}| / |E^t| for n = 1..horizon. nullopt when E^t is empty.
std::optional<PersistenceSeries> edge_longevity(std::span<const PlaceGraph> snapshots, std::size_t base,
                                                std::size_t horizon);

/// Share of edges of weight >= w in `current` that reappear in `next`.
std::optional<Fraction> weight_persistence(const PlaceGraph& current, const PlaceGraph& next, std::int64_t w);

struct NodeTurnover {
  std::optional<Fraction> new_node;              // |V^{t+1} \ V^t| / |V^{t+1}|
  std::optional<PersistenceSeries> longevity;    // |V^t ∩ ... ∩ V^{t+n}| / |V^t|
};

NodeTurnover node_turnover(std::span<const PlaceGraph> snapshots, std::size_t base, std::size_t horizon);

}  // namespace placenet
