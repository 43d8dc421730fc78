// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <sstream>

#include "common/error.hpp"
#include "stream/pamap2.hpp"
#include "stream/replay.hpp"
#include "stream/stream_io.hpp"
#include "stream/synthetic.hpp"

namespace nwa::stream {
namespace {

TEST(SensorAddressTest, IndexRoundTripsOverUniverse) {
  for (int i = 0; i < kAddressUniverse; ++i) {
    EXPECT_EQ(SensorAddress::from_index(i).index(), i);
  }
}

TEST(SensorAddressTest, StringRoundTrip) {
  const SensorAddress a{Position::kRight, Location::kWrist, Sensor::kAccelerometer16g, Axis::kZ};
  EXPECT_EQ(a.str(), "right-wrist-accelerometer16g-z");
  auto parsed = SensorAddress::parse(a.str());
  ASSERT_TRUE(parsed);
  EXPECT_EQ(*parsed, a);
  EXPECT_FALSE(SensorAddress::parse("right-wrist-barometer-z"));
}

TEST(SensorAddressTest, ScalarSensorsRequireScalarAxis) {
  EXPECT_TRUE((SensorAddress{Position::kNone, Location::kChest, Sensor::kHeartRate, Axis::kScalar}.valid()));
  EXPECT_FALSE((SensorAddress{Position::kNone, Location::kChest, Sensor::kHeartRate, Axis::kX}.valid()));
  EXPECT_FALSE((SensorAddress{Position::kLeft, Location::kWrist, Sensor::kGyroscope, Axis::kScalar}.valid()));
}

TEST(AddressSetTest, Cardinalities) {
  EXPECT_EQ(nwgti_addresses().size(), 54u);
  EXPECT_EQ(pamap2_addresses().size(), 40u);
  for (const auto& a : pamap2_addresses()) EXPECT_TRUE(a.valid()) << a.str();
}

TEST(SyntheticTest, SingleClassSchedule) {
  const std::vector<ScheduleSegment> schedule = {{0, 60.0}};
  auto s = generate_synthetic(42, schedule);
  EXPECT_EQ(s.slots.size(), 1500u);
  for (const auto& slot : s.slots) {
    ASSERT_TRUE(slot.ground_truth);
    EXPECT_EQ(*slot.ground_truth, 0);
  }
  EXPECT_NO_THROW(validate(s));
}

TEST(SyntheticTest, DeterministicBytes) {
  const std::vector<ScheduleSegment> schedule = {{0, 20.0}, {1, 20.0}, {2, 20.0}};
  std::ostringstream a, b;
  dump_stream(generate_synthetic(7, schedule), a);
  dump_stream(generate_synthetic(7, schedule), b);
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream c;
  dump_stream(generate_synthetic(8, schedule), c);
  EXPECT_NE(a.str(), c.str());
}

TEST(SyntheticTest, ClassCountsMatchDurations) {
  // Proportions of the reference distribution, scaled down by 10.
  const std::vector<ScheduleSegment> schedule = {
      {0, 3072.2 / 25.0}, {1, 3333.0 / 25.0}, {2, 3029.6 / 25.0}};
  auto s = generate_synthetic(3, schedule);
  std::array<long, 3> counts{};
  for (const auto& slot : s.slots) ++counts[*slot.ground_truth];
  EXPECT_NEAR(counts[0], 3072.2, 1.0);
  EXPECT_NEAR(counts[1], 3333.0, 1.0);
  EXPECT_NEAR(counts[2], 3029.6, 1.0);
}

TEST(SyntheticTest, MultiRateHonesty) {
  const std::vector<ScheduleSegment> schedule = {{0, 30.0}, {1, 30.0}};
  auto s = generate_synthetic(11, schedule);
  const double span = 60.0;
  for (std::size_t c = 0; c < s.descriptor.addresses.size(); ++c) {
    long present = 0;
    for (const auto& slot : s.slots) present += slot.values[c].has_value();
    const double rate = s.descriptor.rate_of(s.descriptor.addresses[c].sensor);
    EXPECT_NEAR(static_cast<double>(present), rate * span, 1.0) << s.descriptor.addresses[c].str();
  }
}

TEST(SyntheticTest, ZeroDurationIsConfigError) {
  const std::vector<ScheduleSegment> schedule = {{0, 0.0}};
  try {
    generate_synthetic(1, schedule);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
}

TEST(SyntheticTest, ParseSchedule) {
  auto s = parse_schedule("c0:120,c2:30.5");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].label, 2);
  EXPECT_DOUBLE_EQ(s[1].duration_s, 30.5);
  EXPECT_THROW(parse_schedule("c0-120"), Error);
}

TEST(StreamIoTest, DumpLoadRoundTrip) {
  const std::vector<ScheduleSegment> schedule = {{1, 5.0}};
  auto s = generate_synthetic(5, schedule);
  std::stringstream buf;
  dump_stream(s, buf);
  auto back = load_stream(buf);
  EXPECT_EQ(back.descriptor, s.descriptor);
  EXPECT_EQ(back.slots, s.slots);
}

std::string pamap2_row(double t, int activity, const std::string& hr) {
  std::ostringstream os;
  os << t << ' ' << activity << ' ' << hr;
  for (int i = 3; i < kPamap2Columns; ++i) os << ' ' << (i * 0.5 + t);
  os << '\n';
  return os.str();
}

TEST(Pamap2Test, FixtureWithMissingHeartRate) {
  const std::string bytes = pamap2_row(5.00, 7, "100") + pamap2_row(5.01, 7, "NaN") +
                            pamap2_row(5.02, 7, "101");
  Pamap2Filter filter;
  filter.min_nordic_walking_s = 0.0;
  auto s = parse_pamap2(bytes, filter);
  ASSERT_EQ(s.slots.size(), 3u);
  EXPECT_EQ(s.descriptor.addresses.size(), 40u);
  const int hr = s.descriptor.channel_of({Position::kNone, Location::kChest, Sensor::kHeartRate, Axis::kScalar});
  ASSERT_GE(hr, 0);
  EXPECT_EQ(s.slots[0].values[hr], 100.0);
  EXPECT_FALSE(s.slots[1].values[hr].has_value());
  EXPECT_EQ(s.slots[2].values[hr], 101.0);
  for (const auto& slot : s.slots) EXPECT_EQ(slot.ground_truth, ClassLabel{0});
}

TEST(Pamap2Test, OnlyNonTargetActivitiesIsDataError) {
  const std::string bytes = pamap2_row(1.0, 1, "80") + pamap2_row(1.01, 1, "80");
  try {
    parse_pamap2(bytes);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kData);
  }
}

TEST(Pamap2Test, MalformedLineReportsLineNumber) {
  const std::string bytes = pamap2_row(1.0, 7, "80") + "1.01 7 80 oops\n";
  try {
    Pamap2Filter filter;
    filter.min_nordic_walking_s = 0.0;
    parse_pamap2(bytes, filter);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kData);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Pamap2Test, DurationRuleDropsShortActivities) {
  std::string bytes;
  for (int i = 0; i < 300; ++i) bytes += pamap2_row(i * 0.01, 7, "90");
  for (int i = 0; i < 100; ++i) bytes += pamap2_row(3.0 + i * 0.01, 12, "95");
  Pamap2Filter filter;
  filter.min_nordic_walking_s = 2.0;
  filter.min_stairs_s = 2.0;
  auto s = parse_pamap2(bytes, filter);
  EXPECT_EQ(s.slots.size(), 300u);
}

TEST(Pamap2Test, SerializeParseRoundTrip) {
  std::string bytes;
  for (int i = 0; i < 50; ++i) bytes += pamap2_row(i * 0.01, i < 25 ? 7 : 12, i % 10 ? "NaN" : "88");
  Pamap2Filter filter;
  filter.min_nordic_walking_s = 0.0;
  filter.min_stairs_s = 0.0;
  auto s = parse_pamap2(bytes, filter);
  auto again = parse_pamap2(serialize_pamap2(s, filter), filter);
  EXPECT_EQ(again.slots, s.slots);
  EXPECT_EQ(again.descriptor, s.descriptor);
}

TEST(Pamap2Test, MissingDirectoryNamesPath) {
  try {
    load_pamap2("missing/");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kData);
    EXPECT_NE(std::string(e.what()).find("missing/"), std::string::npos);
  }
}

TEST(ReplayTest, TimedEmission) {
  const std::vector<ScheduleSegment> schedule = {{0, 0.4}};
  auto s = generate_synthetic(1, schedule);
  s.slots.resize(10);
  std::vector<std::uint64_t> seen;
  const auto start = std::chrono::steady_clock::now();
  replay(s, 1.0, [&](const RawSlot& slot) { seen.push_back(slot.n); });
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ASSERT_EQ(seen.size(), 10u);
  for (std::size_t i = 1; i < seen.size(); ++i) EXPECT_LT(seen[i - 1], seen[i]);
  EXPECT_NEAR(elapsed, 0.36, 0.05);
}

TEST(ReplayTest, InfiniteSpeedHasNoDelay) {
  const std::vector<ScheduleSegment> schedule = {{0, 10.0}};
  auto s = generate_synthetic(1, schedule);
  std::size_t count = 0;
  const auto start = std::chrono::steady_clock::now();
  replay(s, kAsFastAsPossible, [&](const RawSlot&) { ++count; });
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(count, s.slots.size());
  EXPECT_LT(elapsed, 0.1);
}

}  // namespace
}  // namespace nwa::stream
