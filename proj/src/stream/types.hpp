// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nwa::stream {

enum class Position : std::uint8_t { kLeft, kRight, kNone };
enum class Location : std::uint8_t { kWrist, kAnkle, kPole, kHand, kChest };
enum class Sensor : std::uint8_t {
  kAccelerometer16g,
  kAccelerometer6g,
  kGyroscope,
  kMagnetometer,
  kHeartRate,
  kTemperature,
};
enum class Axis : std::uint8_t { kX, kY, kZ, kScalar };

inline constexpr int kPositionCount = 3;
inline constexpr int kLocationCount = 5;
inline constexpr int kSensorCount = 6;
inline constexpr int kAxisCount = 4;
inline constexpr int kAddressUniverse =
    kPositionCount * kLocationCount * kSensorCount * kAxisCount;

std::string_view to_string(Position p);
std::string_view to_string(Location l);
std::string_view to_string(Sensor s);
std::string_view to_string(Axis a);

/// Identifies one scalar channel: (position, location, sensor, axis).
struct SensorAddress {
  Position position = Position::kNone;
  Location location = Location::kWrist;
  Sensor sensor = Sensor::kAccelerometer16g;
  Axis axis = Axis::kX;

  /// Dense index in [0, kAddressUniverse).
  int index() const {
    return ((static_cast<int>(position) * kLocationCount + static_cast<int>(location)) *
                kSensorCount +
            static_cast<int>(sensor)) *
               kAxisCount +
           static_cast<int>(axis);
  }
  static SensorAddress from_index(int index);

  /// `position-location-sensor-axis`, e.g. `right-wrist-accelerometer16g-z`.
  std::string str() const;
  static std::optional<SensorAddress> parse(std::string_view text);

  bool valid() const;

  friend bool operator==(const SensorAddress&, const SensorAddress&) = default;
  friend auto operator<=>(const SensorAddress& a, const SensorAddress& b) {
    return a.index() <=> b.index();
  }
};

/// Class labels are small indices; the symbol is `c<index>`.
using ClassLabel = std::uint8_t;

std::string label_symbol(ClassLabel label);
std::optional<ClassLabel> parse_label_symbol(std::string_view text);

enum class DatasetKind { kSynthetic, kPamap2 };

struct ClassSet {
  std::vector<std::string> display_names;

  std::size_t size() const { return display_names.size(); }
  bool contains(ClassLabel label) const { return label < display_names.size(); }

  friend bool operator==(const ClassSet&, const ClassSet&) = default;
  static ClassSet nwgti() { return {{"correct", "cheating", "incorrect"}}; }
  static ClassSet pamap2() { return {{"nordic_walking", "climbing_stairs"}}; }
};

/// One master-clock tick. `values` is aligned with StreamDescriptor::addresses;
/// an empty optional means the channel produced no sample at this slot.
struct RawSlot {
  std::uint64_t n = 0;
  double timestamp = 0.0;
  std::vector<std::optional<double>> values;
  std::optional<ClassLabel> ground_truth;

  friend bool operator==(const RawSlot&, const RawSlot&) = default;
};

struct StreamDescriptor {
  DatasetKind dataset = DatasetKind::kSynthetic;
  std::vector<SensorAddress> addresses;
  std::map<Sensor, double> rates_hz;
  double r_min = 0.0;
  double r_max = 0.0;
  ClassSet classes;
  std::uint64_t slot_count = 0;

  double master_rate() const { return r_max; }
  double rate_of(Sensor s) const;
  /// Position of `addr` in `addresses`, or -1.
  int channel_of(const SensorAddress& addr) const;

  friend bool operator==(const StreamDescriptor&, const StreamDescriptor&) = default;
};

struct Stream {
  StreamDescriptor descriptor;
  std::vector<RawSlot> slots;
};

/// Address sets used by the two dataset families.
std::vector<SensorAddress> nwgti_addresses();
std::vector<SensorAddress> pamap2_addresses();

/// Checks the RawSlot / StreamDescriptor invariants; throws Error(kData).
void validate(const Stream& stream);

}  // namespace nwa::stream
