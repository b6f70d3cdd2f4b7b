#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "placenet/types.hpp"

namespace placenet {

/// Seeded synthetic city.
struct CityConfig {
  std::size_t n_venues = 2000;
  std::size_t n_users = 500;
  double lat_min = 51.40;
  double lat_max = 51.60;
  double lon_min = -0.25;
  double lon_max = 0.05;
  // food, travel, nightlife, shop, work, outdoors, other
  std::array<double, kCategoryCount> category_mix = {0.40, 0.04, 0.12, 0.16, 0.12, 0.08, 0.08};
  // Attractiveness multiplier per category.
  std::array<double, kCategoryCount> category_mass = {1.0, 3.25, 1.0, 1.0, 1.0, 1.0, 1.0};
  double zipf_exponent = 1.0;
  double decay_exponent = 1.0;     // shape of exp(-(d / decay_length)^decay_exponent)
  double decay_length_km = 2.0;
  double profile_floor = 0.02;    // off-peak level of the peaked category profiles
  double gap_median_hours = 2.0;
  double gap_sigma = 0.75;         // log-normal shape of inter-check-in gaps
  double span_days = 180.0;
  Timestamp start = 1356998400;    // 2013-01-01T00:00:00Z
  Seconds utc_offset = 0;
  std::uint64_t seed = 42;

  /// Throws DomainError on an invalid configuration.
  void validate() const;
};

/// Venues scattered around n_venues / 50 Gaussian centres (sigma = 1% of the
/// bounding-box diagonal), categories drawn from the mix. Ids are v00000, v00001, ...
VenueRegistry generate_city(const CityConfig& config);

/// Independent per-user random walks: the next venue is drawn proportionally to
/// zipf popularity x category mass x distance decay x category hour profile.
CheckinStream generate_checkins(RegistryPtr registry, const CityConfig& config);

/// Relative activity of a category at a local hour-of-week slot (Monday 00:00 = 0).
double category_hour_profile(Category c, int hour_of_week, double floor = 0.02);

/// Applies `key=value` lines (blank lines and `#` comments ignored).
void apply_config_file(std::istream& in, CityConfig& config);
void apply_config_value(const std::string& key, const std::string& value, CityConfig& config);

}  // namespace placenet
