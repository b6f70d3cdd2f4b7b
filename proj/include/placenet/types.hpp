#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace placenet {

/// Position of a venue inside its registry. Registries keep venues sorted by
/// venue_id, so index order equals lexicographic id order.
using VenueIndex = std::uint32_t;

using Timestamp = std::int64_t;  // UTC epoch seconds
using Seconds = std::int64_t;

inline constexpr Seconds kHour = 3600;
inline constexpr Seconds kDay = 24 * kHour;

enum class Category : std::uint8_t { food, travel, nightlife, shop, work, outdoors, other };

inline constexpr int kCategoryCount = 7;

std::string_view to_string(Category c);
/// Exact label match; nullopt for anything outside the seven labels.
std::optional<Category> parse_category(std::string_view label);

struct Venue {
  std::string id;
  double lat = 0.0;
  double lon = 0.0;
  Category category = Category::other;

  bool operator==(const Venue&) const = default;
};

class VenueRegistry {
 public:
  VenueRegistry() = default;
  /// Sorts by id. Throws DomainError on duplicate ids or out-of-range coordinates.
  explicit VenueRegistry(std::vector<Venue> venues);

  std::size_t size() const noexcept { return venues_.size(); }
  bool empty() const noexcept { return venues_.empty(); }
  const Venue& operator[](VenueIndex i) const { return venues_[i]; }
  const Venue& at(VenueIndex i) const { return venues_.at(i); }
  const std::vector<Venue>& venues() const noexcept { return venues_; }

  std::optional<VenueIndex> find(std::string_view id) const;

  /// Number of rows whose category label was not recognised and fell back to `other`.
  std::size_t unknown_categories() const noexcept { return unknown_categories_; }
  void set_unknown_categories(std::size_t n) noexcept { unknown_categories_ = n; }

  bool operator==(const VenueRegistry& o) const { return venues_ == o.venues_; }

 private:
  std::vector<Venue> venues_;
  std::size_t unknown_categories_ = 0;
};

using RegistryPtr = std::shared_ptr<const VenueRegistry>;

struct CheckinEvent {
  std::string user;
  VenueIndex venue = 0;
  Timestamp timestamp = 0;

  auto operator<=>(const CheckinEvent&) const = default;
};

/// Per-file bookkeeping from load_checkins.
struct LoadCounters {
  std::size_t raw_records = 0;
  std::size_t dropped_unknown_venue = 0;
  std::size_t dropped_duplicate = 0;

  std::size_t dropped() const noexcept { return dropped_unknown_venue + dropped_duplicate; }
};

/// Check-ins sorted by (user, timestamp, venue) with duplicate triples removed.
class CheckinStream {
 public:
  CheckinStream() = default;
  /// Normalizes: sorts, drops duplicate triples, computes the time span.
  /// Every event's venue must be a valid registry index.
  CheckinStream(std::vector<CheckinEvent> events, RegistryPtr registry);

  const std::vector<CheckinEvent>& events() const noexcept { return events_; }
  const VenueRegistry& registry() const { return *registry_; }
  const RegistryPtr& registry_ptr() const noexcept { return registry_; }
  bool empty() const noexcept { return events_.empty(); }
  std::size_t size() const noexcept { return events_.size(); }
  Timestamp min_time() const noexcept { return min_ts_; }
  Timestamp max_time() const noexcept { return max_ts_; }

  /// Duplicates removed while normalizing.
  std::size_t duplicates_removed() const noexcept { return duplicates_removed_; }

  bool operator==(const CheckinStream& o) const { return events_ == o.events_; }

 private:
  std::vector<CheckinEvent> events_;
  RegistryPtr registry_;
  Timestamp min_ts_ = 0;
  Timestamp max_ts_ = 0;
  std::size_t duplicates_removed_ = 0;
};

}  // namespace placenet
