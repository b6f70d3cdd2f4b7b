#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "placenet/error.hpp"
#include "placenet/ingest.hpp"

using namespace placenet;

namespace {

RegistryPtr parse_shared(const std::string& text) {
  std::istringstream in(text);
  return std::make_shared<const VenueRegistry>(parse_registry(in));
}

const char* kVenues =
    "venue_id,lat,lon,category\n"
    "b,51.5,-0.1,food\n"
    "a,51.6,-0.2,travel\n"
    "c,51.4,0.0,nightlife\n";

}  // namespace

TEST_CASE("registry: rows preserved and sorted by id") {
  const auto reg = parse_shared(kVenues);
  REQUIRE(reg->size() == 3);
  CHECK(reg->at(0).id == "a");
  CHECK(reg->at(0).category == Category::travel);
  CHECK(reg->find("c") == VenueIndex{2});
  CHECK_FALSE(reg->find("zz").has_value());
  CHECK(reg->unknown_categories() == 0);
}

TEST_CASE("registry: out-of-range latitude cites its line") {
  std::istringstream in("venue_id,lat,lon,category\nx,91,0,food\n");
  try {
    parse_registry(in);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("registry: duplicate id names the id") {
  std::istringstream in("venue_id,lat,lon,category\ndup,1,1,food\ndup,2,2,food\n");
  try {
    parse_registry(in);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("dup") != std::string::npos);
  }
}

TEST_CASE("registry: unknown category falls back to other") {
  std::istringstream in("venue_id,lat,lon,category\nm,51.5,-0.1,museum\n");
  const auto reg = parse_registry(in);
  REQUIRE(reg.size() == 1);
  CHECK(reg[0].category == Category::other);
  CHECK(reg.unknown_categories() == 1);
}

TEST_CASE("registry: header is required") {
  std::istringstream in("m,51.5,-0.1,food\n");
  CHECK_THROWS_AS(parse_registry(in), ParseError);
}

TEST_CASE("registry: round trip through the writer") {
  const auto reg = parse_shared(kVenues);
  std::ostringstream out;
  write_registry(out, *reg);
  std::istringstream back(out.str());
  CHECK(parse_registry(back) == *reg);
}

TEST_CASE("checkins: unknown venue dropped and counted") {
  const auto reg = parse_shared(kVenues);
  std::istringstream in(
      R"({"user":"u1","venue":"a","ts":100}
{"user":"u1","venue":"b","ts":200}
{"user":"u1","venue":"nope","ts":300}
{"user":"u2","venue":"c","ts":150}
{"user":"u2","venue":"a","ts":160}
)");
  const auto loaded = parse_checkins(in, reg);
  CHECK(loaded.stream.size() == 4);
  CHECK(loaded.counters.dropped_unknown_venue == 1);
  CHECK(loaded.counters.raw_records == 5);
  CHECK(loaded.counters.dropped() + loaded.stream.size() == loaded.counters.raw_records);
}

TEST_CASE("checkins: unsorted input is sorted by user then time") {
  const auto reg = parse_shared(kVenues);
  std::istringstream in(
      R"({"user":"u2","venue":"a","ts":500}
{"user":"u1","venue":"b","ts":400}
{"user":"u2","venue":"c","ts":100}
{"user":"u1","venue":"a","ts":50}
)");
  const auto s = parse_checkins(in, reg).stream;
  const auto& ev = s.events();
  REQUIRE(ev.size() == 4);
  for (std::size_t k = 1; k < ev.size(); ++k) {
    CHECK(std::tie(ev[k - 1].user, ev[k - 1].timestamp) <= std::tie(ev[k].user, ev[k].timestamp));
  }
  CHECK(s.min_time() == 50);
  CHECK(s.max_time() == 500);
}

TEST_CASE("checkins: identical lines kept once") {
  const auto reg = parse_shared(kVenues);
  std::istringstream in(
      R"({"user":"u1","venue":"a","ts":100}
{"user":"u1","venue":"a","ts":100}
)");
  const auto loaded = parse_checkins(in, reg);
  CHECK(loaded.stream.size() == 1);
  CHECK(loaded.counters.dropped_duplicate == 1);
  CHECK(loaded.counters.dropped() + loaded.stream.size() == loaded.counters.raw_records);
}

TEST_CASE("checkins: empty input is an empty stream") {
  const auto reg = parse_shared(kVenues);
  std::istringstream in("");
  const auto loaded = parse_checkins(in, reg);
  CHECK(loaded.stream.empty());
}

TEST_CASE("checkins: malformed line reports its number") {
  const auto reg = parse_shared(kVenues);
  std::istringstream in("{\"user\":\"u1\",\"venue\":\"a\",\"ts\":100}\n{not json\n");
  try {
    parse_checkins(in, reg);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream bad_ts("{\"user\":\"u1\",\"venue\":\"a\",\"ts\":0}\n");
  CHECK_THROWS_AS(parse_checkins(bad_ts, reg), ParseError);
}

TEST_CASE("checkins: loading serialized output is idempotent") {
  const auto reg = oracle::grid_registry(30);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> venue(0, 29);
  std::uniform_int_distribution<Timestamp> ts(1, 1'000'000);
  std::vector<CheckinEvent> events;
  for (int k = 0; k < 500; ++k) {
    events.push_back({"u" + std::to_string(k % 13), static_cast<VenueIndex>(venue(rng)), ts(rng)});
  }
  const CheckinStream s(events, reg);
  std::ostringstream out;
  write_checkins(out, s);
  std::istringstream back(out.str());
  const auto again = parse_checkins(back, reg);
  CHECK(again.stream == s);
  CHECK(again.counters.dropped() == 0);
  std::ostringstream out2;
  write_checkins(out2, again.stream);
  CHECK(out2.str() == out.str());
}
