#pragma once

#include <filesystem>
#include <iosfwd>

#include "placenet/types.hpp"

namespace placenet {

/// Reads a `venue_id,lat,lon,category` CSV (header required).
/// Duplicate ids and out-of-range coordinates are hard errors; unknown
/// categories become `other` and are counted in unknown_categories().
VenueRegistry load_registry(const std::filesystem::path& path);
VenueRegistry parse_registry(std::istream& in);

struct LoadedCheckins {
  CheckinStream stream;
  LoadCounters counters;
};

/// Reads one JSON object per line with keys `user`, `venue`, `ts`.
/// Lines starting with `#` and blank lines are skipped.
LoadedCheckins load_checkins(const std::filesystem::path& path, RegistryPtr registry);
LoadedCheckins parse_checkins(std::istream& in, RegistryPtr registry);

void write_registry(std::ostream& out, const VenueRegistry& registry);
void write_checkins(std::ostream& out, const CheckinStream& stream);

}  // namespace placenet
