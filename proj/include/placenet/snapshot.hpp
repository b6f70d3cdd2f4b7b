#pragma once

#include <Eigen/Core>
#include <compare>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "placenet/types.hpp"

namespace placenet {

inline constexpr Seconds kDefaultGapThreshold = 3 * kHour;
inline constexpr Seconds kDefaultWindowLength = 90 * kDay;

/// One direct movement of a user between two distinct venues.
struct Transition {
  VenueIndex origin = 0;
  VenueIndex dest = 0;
  std::string user;
  Timestamp t_origin = 0;
  Timestamp t_dest = 0;
};

/// Half-open interval [start, end).
struct TimeWindow {
  Timestamp start = 0;
  Timestamp end = 0;

  bool contains(Timestamp t) const noexcept { return t >= start && t < end; }
  bool operator==(const TimeWindow&) const = default;
};

struct EdgeKey {
  VenueIndex origin = 0;
  VenueIndex dest = 0;

  auto operator<=>(const EdgeKey&) const = default;
};

struct WeightedEdge {
  VenueIndex origin = 0;
  VenueIndex dest = 0;
  std::int64_t weight = 0;

  EdgeKey key() const noexcept { return {origin, dest}; }
  bool operator==(const WeightedEdge&) const = default;
};

/// Directed weighted place network for one time window. Edges are sorted by
/// (origin, dest) and nodes are exactly the endpoints of the edges.
class PlaceGraph {
 public:
  PlaceGraph() = default;
  /// Merges repeated (origin, dest) entries by summing weights. Self-loops and
  /// non-positive weights are rejected.
  PlaceGraph(TimeWindow window, std::vector<WeightedEdge> edges);

  const TimeWindow& window() const noexcept { return window_; }
  const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }
  const std::vector<VenueIndex>& nodes() const noexcept { return nodes_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  bool has_node(VenueIndex v) const;
  bool has_edge(VenueIndex origin, VenueIndex dest) const;
  /// Weight of the directed edge, 0 when absent.
  std::int64_t weight(VenueIndex origin, VenueIndex dest) const;
  std::int64_t total_weight() const;

  bool operator==(const PlaceGraph&) const = default;

 private:
  TimeWindow window_;
  std::vector<WeightedEdge> edges_;
  std::vector<VenueIndex> nodes_;
};

/// Consecutive check-ins of one user at distinct venues with
/// 0 < t_dest - t_origin <= gap_threshold. Output is ordered by (user, t_origin).
std::vector<Transition> extract_transitions(const CheckinStream& stream,
                                            Seconds gap_threshold = kDefaultGapThreshold);

/// Aggregates transitions whose t_origin falls inside the window.
PlaceGraph build_graph(std::span<const Transition> transitions, TimeWindow window);

/// Consecutive windows [t0 + k L, t0 + (k+1) L) up to and including the one
/// holding the stream's last check-in. At least one window is always returned.
std::vector<TimeWindow> make_windows(const CheckinStream& stream, Seconds window_length, Timestamp t0);

std::vector<PlaceGraph> window_stream(const CheckinStream& stream, Seconds window_length, Timestamp t0,
                                      Seconds gap_threshold = kDefaultGapThreshold);

/// Local hour slot of a timestamp. T = 24 gives hour of day; T = 168 gives hour
/// of week with Monday 00:00 as slot 0.
int hour_slot(Timestamp t, Seconds utc_offset, int T);

/// Per-venue activity vectors for one window. Rows are registry indices, columns
/// hour slots. Stored as doubles; all entries are integral counts.
struct ActivityProfiles {
  int T = 0;
  Eigen::MatrixXd checkins;
  Eigen::MatrixXd out_strength;
  Eigen::MatrixXd in_strength;

  std::size_t venue_count() const noexcept { return static_cast<std::size_t>(checkins.rows()); }
  /// Total check-ins of a venue in the window.
  double popularity(VenueIndex v) const { return checkins.row(v).sum(); }
};

/// Profiles for the graph's window. Check-ins are binned by local hour; strength
/// vectors bin the weight of each transition counted in the graph by the local
/// hour of t_origin (out) and t_dest (in).
ActivityProfiles activity_profiles(const CheckinStream& stream, const PlaceGraph& graph, int T,
                                   Seconds utc_offset, Seconds gap_threshold = kDefaultGapThreshold);

/// Earliest hour with the largest check-in count in a T = 24 profile row.
int peak_hour(const ActivityProfiles& day_profiles, VenueIndex v);

/// Edge list as `origin<TAB>dest<TAB>weight` lines using registry ids.
void write_snapshot_tsv(std::ostream& out, const PlaceGraph& graph, const VenueRegistry& registry);
/// JSON sidecar with window bounds, node and edge counts.
std::string snapshot_sidecar_json(const PlaceGraph& graph);

/// Reads `<stem>.tsv` and `<stem>.json` written by the CLI.
PlaceGraph read_snapshot(const std::filesystem::path& tsv_path, const VenueRegistry& registry);

}  // namespace placenet
