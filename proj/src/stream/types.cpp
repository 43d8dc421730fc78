// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "stream/types.hpp"

#include <algorithm>
#include <charconv>

#include "common/error.hpp"

namespace nwa::stream {
namespace {

constexpr std::array<std::string_view, kPositionCount> kPositionNames = {"left", "right",
                                                                         "none"};
constexpr std::array<std::string_view, kLocationCount> kLocationNames = {
    "wrist", "ankle", "pole", "hand", "chest"};
constexpr std::array<std::string_view, kSensorCount> kSensorNames = {
    "accelerometer16g", "accelerometer6g", "gyroscope",
    "magnetometer",     "heart_rate",      "temperature"};
constexpr std::array<std::string_view, kAxisCount> kAxisNames = {"x", "y", "z", "scalar"};

template <std::size_t N>
int lookup(const std::array<std::string_view, N>& names, std::string_view s) {
  auto it = std::find(names.begin(), names.end(), s);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

bool is_scalar_sensor(Sensor s) { return s == Sensor::kHeartRate || s == Sensor::kTemperature; }

}  // namespace

std::string_view to_string(Position p) { return kPositionNames[static_cast<int>(p)]; }
std::string_view to_string(Location l) { return kLocationNames[static_cast<int>(l)]; }
std::string_view to_string(Sensor s) { return kSensorNames[static_cast<int>(s)]; }
std::string_view to_string(Axis a) { return kAxisNames[static_cast<int>(a)]; }

SensorAddress SensorAddress::from_index(int index) {
  SensorAddress a;
  a.axis = static_cast<Axis>(index % kAxisCount);
  index /= kAxisCount;
  a.sensor = static_cast<Sensor>(index % kSensorCount);
  index /= kSensorCount;
  a.location = static_cast<Location>(index % kLocationCount);
  index /= kLocationCount;
  a.position = static_cast<Position>(index);
  return a;
}

std::string SensorAddress::str() const {
  std::string out;
  out.reserve(40);
  out.append(to_string(position)).append("-");
  out.append(to_string(location)).append("-");
  out.append(to_string(sensor)).append("-");
  out.append(to_string(axis));
  return out;
}

std::optional<SensorAddress> SensorAddress::parse(std::string_view text) {
  std::array<std::string_view, 4> parts;
  for (int i = 0; i < 4; ++i) {
    const auto dash = text.find('-');
    if (i < 3 && dash == std::string_view::npos) return std::nullopt;
    parts[i] = i < 3 ? text.substr(0, dash) : text;
    if (i < 3) text.remove_prefix(dash + 1);
  }
  const int p = lookup(kPositionNames, parts[0]);
  const int l = lookup(kLocationNames, parts[1]);
  const int s = lookup(kSensorNames, parts[2]);
  const int a = lookup(kAxisNames, parts[3]);
  if (p < 0 || l < 0 || s < 0 || a < 0) return std::nullopt;
  SensorAddress addr{static_cast<Position>(p), static_cast<Location>(l),
                     static_cast<Sensor>(s), static_cast<Axis>(a)};
  if (!addr.valid()) return std::nullopt;
  return addr;
}

bool SensorAddress::valid() const {
  return is_scalar_sensor(sensor) == (axis == Axis::kScalar);
}

std::string label_symbol(ClassLabel label) { return "c" + std::to_string(label); }

std::optional<ClassLabel> parse_label_symbol(std::string_view text) {
  if (text.size() < 2 || text[0] != 'c') return std::nullopt;
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value > 7) return std::nullopt;
  return static_cast<ClassLabel>(value);
}

double StreamDescriptor::rate_of(Sensor s) const {
  auto it = rates_hz.find(s);
  return it == rates_hz.end() ? 0.0 : it->second;
}

int StreamDescriptor::channel_of(const SensorAddress& addr) const {
  auto it = std::find(addresses.begin(), addresses.end(), addr);
  return it == addresses.end() ? -1 : static_cast<int>(it - addresses.begin());
}

std::vector<SensorAddress> nwgti_addresses() {
  std::vector<SensorAddress> out;
  for (auto p : {Position::kLeft, Position::kRight}) {
    for (auto l : {Location::kWrist, Location::kAnkle, Location::kPole}) {
      for (auto s : {Sensor::kAccelerometer16g, Sensor::kGyroscope, Sensor::kMagnetometer}) {
        for (auto a : {Axis::kX, Axis::kY, Axis::kZ}) out.push_back({p, l, s, a});
      }
    }
  }
  return out;
}

std::vector<SensorAddress> pamap2_addresses() {
  // Column order of the dataset: heart rate, then hand / chest / ankle IMUs,
  // each carrying temperature, 16g accel, 6g accel, gyroscope, magnetometer.
  std::vector<SensorAddress> out;
  out.push_back({Position::kNone, Location::kChest, Sensor::kHeartRate, Axis::kScalar});
  for (auto l : {Location::kHand, Location::kChest, Location::kAnkle}) {
    out.push_back({Position::kNone, l, Sensor::kTemperature, Axis::kScalar});
    for (auto s : {Sensor::kAccelerometer16g, Sensor::kAccelerometer6g, Sensor::kGyroscope,
                   Sensor::kMagnetometer}) {
      for (auto a : {Axis::kX, Axis::kY, Axis::kZ}) out.push_back({Position::kNone, l, s, a});
    }
  }
  return out;
}

void validate(const Stream& stream) {
  const auto& d = stream.descriptor;
  for (const auto& a : d.addresses) {
    if (!a.valid()) fail(ErrorKind::kData, "invalid sensor address " + a.str());
  }
  for (const auto& [sensor, rate] : d.rates_hz) {
    if (rate < d.r_min || rate > d.r_max) {
      fail(ErrorKind::kData, "rate of " + std::string(to_string(sensor)) +
                                 " outside [r_min, r_max]");
    }
  }
  bool first = true;
  std::uint64_t last = 0;
  for (const auto& slot : stream.slots) {
    if (!first && slot.n <= last) fail(ErrorKind::kData, "slot indices must strictly increase");
    if (slot.values.size() != d.addresses.size()) {
      fail(ErrorKind::kData, "slot " + std::to_string(slot.n) + " has wrong channel count");
    }
    if (std::none_of(slot.values.begin(), slot.values.end(),
                     [](const auto& v) { return v.has_value(); })) {
      fail(ErrorKind::kData, "slot " + std::to_string(slot.n) + " has no present value");
    }
    if (slot.ground_truth && !d.classes.contains(*slot.ground_truth)) {
      fail(ErrorKind::kData, "slot " + std::to_string(slot.n) + " has an undeclared label");
    }
    first = false;
    last = slot.n;
  }
}

}  // namespace nwa::stream
