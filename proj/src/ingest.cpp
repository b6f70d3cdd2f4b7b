#include "placenet/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <unordered_set>

#include "json.hpp"
#include "placenet/error.hpp"

namespace placenet {

namespace {

constexpr std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "food", "travel", "nightlife", "shop", "work", "outdoors", "other"};

bool valid_coordinates(double lat, double lon) {
  return lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_double(std::string_view s, std::size_t line, const char* field) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(std::string("invalid ") + field + " '" + std::string(s) + "'", line);
  }
  return v;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file: " + path.string());
  return in;
}

}  // namespace

std::string_view to_string(Category c) { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::optional<Category> parse_category(std::string_view label) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == label) return static_cast<Category>(i);
  }
  return std::nullopt;
}

VenueRegistry::VenueRegistry(std::vector<Venue> venues) : venues_(std::move(venues)) {
  std::sort(venues_.begin(), venues_.end(),
            [](const Venue& a, const Venue& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < venues_.size(); ++i) {
    if (i > 0 && venues_[i].id == venues_[i - 1].id) {
      throw DomainError("duplicate venue_id '" + venues_[i].id + "'");
    }
    if (!valid_coordinates(venues_[i].lat, venues_[i].lon)) {
      throw DomainError("coordinates out of range for venue '" + venues_[i].id + "'");
    }
  }
}

std::optional<VenueIndex> VenueRegistry::find(std::string_view id) const {
  const auto it = std::lower_bound(venues_.begin(), venues_.end(), id,
                                   [](const Venue& v, std::string_view key) { return v.id < key; });
  if (it == venues_.end() || it->id != id) return std::nullopt;
  return static_cast<VenueIndex>(it - venues_.begin());
}

CheckinStream::CheckinStream(std::vector<CheckinEvent> events, RegistryPtr registry)
    : events_(std::move(events)), registry_(std::move(registry)) {
  if (!registry_) throw DomainError("check-in stream requires a venue registry");
  std::sort(events_.begin(), events_.end(), [](const CheckinEvent& a, const CheckinEvent& b) {
    if (a.user != b.user) return a.user < b.user;
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.venue < b.venue;
  });
  const auto before = events_.size();
  events_.erase(std::unique(events_.begin(), events_.end()), events_.end());
  duplicates_removed_ = before - events_.size();
  for (const auto& e : events_) {
    if (e.venue >= registry_->size()) throw DomainError("check-in references unknown venue index");
    if (e.timestamp <= 0) throw DomainError("check-in timestamp must be positive");
  }
  if (!events_.empty()) {
    const auto [lo, hi] = std::minmax_element(
        events_.begin(), events_.end(),
        [](const CheckinEvent& a, const CheckinEvent& b) { return a.timestamp < b.timestamp; });
    min_ts_ = lo->timestamp;
    max_ts_ = hi->timestamp;
  }
}

VenueRegistry parse_registry(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<Venue> venues;
  std::set<std::string, std::less<>> seen;
  std::size_t unknown = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty()) continue;
    const auto fields = split_csv(content);
    if (!header_seen) {
      if (fields.size() != 4 || fields[0] != "venue_id" || fields[1] != "lat" || fields[2] != "lon" ||
          fields[3] != "category") {
        throw ParseError("expected header 'venue_id,lat,lon,category'", line_no);
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 4) throw ParseError("expected 4 fields", line_no);
    if (fields[0].empty()) throw ParseError("empty venue_id", line_no);
    Venue v;
    v.id = std::string(fields[0]);
    v.lat = parse_double(fields[1], line_no, "lat");
    v.lon = parse_double(fields[2], line_no, "lon");
    if (!valid_coordinates(v.lat, v.lon)) {
      throw ParseError("coordinate out of range for venue '" + v.id + "'", line_no);
    }
    if (const auto c = parse_category(fields[3])) {
      v.category = *c;
    } else {
      v.category = Category::other;
      ++unknown;
    }
    if (!seen.insert(v.id).second) throw ParseError("duplicate venue_id '" + v.id + "'", line_no);
    venues.push_back(std::move(v));
  }
  if (!header_seen) throw ParseError("missing header 'venue_id,lat,lon,category'", 0);
  VenueRegistry registry(std::move(venues));
  registry.set_unknown_categories(unknown);
  return registry;
}

VenueRegistry load_registry(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_registry(in);
}

LoadedCheckins parse_checkins(std::istream& in, RegistryPtr registry) {
  if (!registry) throw DomainError("load_checkins requires a venue registry");
  LoadCounters counters;
  std::vector<CheckinEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    ++counters.raw_records;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception&) {
      throw ParseError("malformed JSON record", line_no);
    }
    if (!record.is_object() || !record.contains("user") || !record.contains("venue") ||
        !record.contains("ts")) {
      throw ParseError("record must be an object with keys user, venue, ts", line_no);
    }
    const auto& user = record["user"];
    const auto& venue = record["venue"];
    const auto& ts = record["ts"];
    if (!user.is_string() || !venue.is_string() || !ts.is_number_integer()) {
      throw ParseError("user and venue must be strings and ts an integer", line_no);
    }
    const auto t = ts.get<std::int64_t>();
    if (t <= 0) throw ParseError("timestamp must be positive", line_no);
    const auto idx = registry->find(venue.get_ref<const std::string&>());
    if (!idx) {
      ++counters.dropped_unknown_venue;
      continue;
    }
    events.push_back({user.get<std::string>(), *idx, t});
  }
  CheckinStream stream(std::move(events), std::move(registry));
  counters.dropped_duplicate = stream.duplicates_removed();
  return {std::move(stream), counters};
}

LoadedCheckins load_checkins(const std::filesystem::path& path, RegistryPtr registry) {
  auto in = open_input(path);
  return parse_checkins(in, std::move(registry));
}

void write_registry(std::ostream& out, const VenueRegistry& registry) {
  out << "venue_id,lat,lon,category\n";
  for (const auto& v : registry.venues()) {
    out << v.id << ',' << format_double(v.lat) << ',' << format_double(v.lon) << ','
        << to_string(v.category) << '\n';
  }
}

void write_checkins(std::ostream& out, const CheckinStream& stream) {
  const auto& reg = stream.registry();
  for (const auto& e : stream.events()) {
    nlohmann::json record = {{"user", e.user}, {"venue", reg[e.venue].id}, {"ts", e.timestamp}};
    out << record.dump() << '\n';
  }
}

}  // namespace placenet
