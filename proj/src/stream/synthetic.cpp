// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "stream/synthetic.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "common/error.hpp"
#include "common/rng.hpp"

namespace nwa::stream {
namespace {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Mat3 random_rotation(Rng& rng) {
  // Uniform unit quaternion from four normals.
  double q[4];
  double norm = 0.0;
  for (double& v : q) {
    v = rng.normal();
    norm += v * v;
  }
  norm = std::sqrt(norm);
  const double w = q[0] / norm, x = q[1] / norm, y = q[2] / norm, z = q[3] / norm;
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
           {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
           {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
}

Vec3 rotate(const Mat3& m, const Vec3& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
          m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
          m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

// Zero-mean periodic pulse marking pole ground contact.
double contact_spike(double theta) {
  constexpr double kWidth = 0.25;
  double phase = std::fmod(theta, kTwoPi);
  if (phase < 0) phase += kTwoPi;
  const double d = phase - std::numbers::pi / 2;
  const double mean = kWidth * std::sqrt(kTwoPi) / kTwoPi;
  return std::exp(-d * d / (2 * kWidth * kWidth)) - mean;
}

Vec3 body_signal(Sensor sensor, double amplitude, double cadence, double theta, bool spikes) {
  const double a = amplitude;
  switch (sensor) {
    case Sensor::kAccelerometer16g: {
      Vec3 v{a * std::sin(theta), 0.5 * a * std::sin(2 * theta + 0.3), 0.35 * a * std::cos(theta)};
      if (spikes) v[2] += 1.5 * a * contact_spike(theta);
      return v;
    }
    case Sensor::kGyroscope: {
      const double rate = a * kTwoPi * cadence;
      return {0.8 * rate * std::cos(theta), 0.4 * rate * std::sin(theta + 0.7),
              0.25 * rate * std::cos(2 * theta)};
    }
    default:
      return {0.6 * a * std::sin(theta + 1.1), 0.45 * a * std::cos(theta + 0.4),
              0.3 * a * std::sin(2 * theta)};
  }
}

// A sensor with rate r produces a sample at slot n when floor(n r / R) advances.
bool sample_due(std::uint64_t n, double rate, double master) {
  if (n == 0) return true;
  const double ratio = rate / master;
  return std::floor(static_cast<double>(n) * ratio + 1e-9) !=
         std::floor(static_cast<double>(n - 1) * ratio + 1e-9);
}

}  // namespace

Stream generate_synthetic(std::uint64_t seed, std::span<const ScheduleSegment> schedule,
                          const SyntheticConfig& config) {
  if (schedule.empty()) fail(ErrorKind::kConfig, "synthetic schedule is empty");
  for (const auto& seg : schedule) {
    if (!(seg.duration_s > 0.0)) fail(ErrorKind::kConfig, "schedule segment with zero duration");
    if (seg.label >= config.regimes.size()) {
      fail(ErrorKind::kConfig, "schedule label " + label_symbol(seg.label) + " not in c0..c2");
    }
  }

  Stream out;
  auto& d = out.descriptor;
  d.dataset = DatasetKind::kSynthetic;
  d.addresses = nwgti_addresses();
  d.rates_hz = {{Sensor::kAccelerometer16g, config.accel_rate_hz},
                {Sensor::kGyroscope, config.gyro_rate_hz},
                {Sensor::kMagnetometer, config.mag_rate_hz}};
  d.r_min = std::min({config.accel_rate_hz, config.gyro_rate_hz, config.mag_rate_hz});
  d.r_max = std::max({config.accel_rate_hz, config.gyro_rate_hz, config.mag_rate_hz});
  d.classes = ClassSet::nwgti();
  const double master = d.r_max;

  Rng rng(seed);
  // One rotation per IMU (position x location), shared by its three sensors.
  std::array<Mat3, 6> rotations;
  for (auto& r : rotations) {
    r = config.rotate_axes ? random_rotation(rng)
                           : Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  }

  // Segment boundaries in slots.
  std::vector<std::uint64_t> ends;
  double elapsed = 0.0;
  for (const auto& seg : schedule) {
    elapsed += seg.duration_s;
    ends.push_back(static_cast<std::uint64_t>(std::llround(elapsed * master)));
  }
  const std::uint64_t total = ends.back();
  out.slots.reserve(total);

  double theta = 0.0;
  std::size_t segment = 0;
  const double dt = 1.0 / master;
  for (std::uint64_t n = 0; n < total; ++n) {
    while (n >= ends[segment]) ++segment;
    const ClassLabel label = schedule[segment].label;
    const Regime& regime = config.regimes[label];
    theta += kTwoPi * regime.cadence_hz * dt;

    RawSlot slot;
    slot.n = n;
    slot.timestamp = static_cast<double>(n) / master;
    slot.ground_truth = label;
    slot.values.resize(d.addresses.size());

    std::size_t channel = 0;
    for (int side = 0; side < 2; ++side) {
      for (int loc = 0; loc < 3; ++loc) {
        // Opposite arm and leg swing together; left and right alternate.
        const bool leading = (loc == 1) ? side == 1 : side == 0;
        const double limb_theta = theta + (leading ? 0.0 : std::numbers::pi);
        const double amplitude = regime.amplitude[loc];
        const bool spikes = loc == 2 && regime.pole_contact_spikes;
        const Mat3& rot = rotations[side * 3 + loc];
        for (Sensor sensor : {Sensor::kAccelerometer16g, Sensor::kGyroscope, Sensor::kMagnetometer}) {
          if (!sample_due(n, d.rate_of(sensor), master)) {
            channel += 3;
            continue;
          }
          Vec3 v = rotate(rot, body_signal(sensor, amplitude, regime.cadence_hz, limb_theta, spikes));
          for (int axis = 0; axis < 3; ++axis) {
            double noise = rng.normal(0.0, config.noise_stddev);
            if (loc == 2 && regime.pole_drag_noise > 0.0) noise += rng.normal(0.0, regime.pole_drag_noise);
            slot.values[channel++] = v[axis] + noise;
          }
        }
      }
    }
    out.slots.push_back(std::move(slot));
  }
  d.slot_count = out.slots.size();
  return out;
}

std::vector<ScheduleSegment> parse_schedule(std::string_view text) {
  std::vector<ScheduleSegment> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      fail(ErrorKind::kConfig, "schedule item '" + std::string(item) + "' is not label:seconds");
    }
    auto label = parse_label_symbol(item.substr(0, colon));
    double seconds = 0.0;
    auto rest = item.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), seconds);
    if (!label || ec != std::errc{} || ptr != rest.data() + rest.size()) {
      fail(ErrorKind::kConfig, "schedule item '" + std::string(item) + "' is not label:seconds");
    }
    out.push_back({*label, seconds});
  }
  if (out.empty()) fail(ErrorKind::kConfig, "synthetic schedule is empty");
  return out;
}

std::vector<ScheduleSegment> default_schedule() { return {{0, 200.0}, {1, 150.0}, {2, 150.0}}; }

}  // namespace nwa::stream
