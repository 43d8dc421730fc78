// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "stream/stream_io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "common/error.hpp"

namespace nwa::stream {
namespace {

std::string number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <typename T>
T parse_number(std::string_view token, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    fail(ErrorKind::kData, "bad " + std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto at = s.find(sep);
    if (!s.substr(0, at).empty()) out.push_back(s.substr(0, at));
    if (at == std::string_view::npos) break;
    s.remove_prefix(at + 1);
  }
  return out;
}

std::optional<Sensor> parse_sensor(std::string_view name) {
  for (int i = 0; i < kSensorCount; ++i) {
    if (to_string(static_cast<Sensor>(i)) == name) return static_cast<Sensor>(i);
  }
  return std::nullopt;
}

}  // namespace

std::string format_slot(const StreamDescriptor& d, const RawSlot& slot) {
  std::string line = std::to_string(slot.n);
  line += ' ';
  line += number(slot.timestamp);
  line += ' ';
  line += slot.ground_truth ? label_symbol(*slot.ground_truth) : "-";
  for (std::size_t i = 0; i < slot.values.size(); ++i) {
    if (!slot.values[i]) continue;
    line += ' ';
    line += d.addresses[i].str();
    line += '=';
    line += number(*slot.values[i]);
  }
  return line;
}

RawSlot parse_slot(const StreamDescriptor& d, std::string_view line) {
  const auto tokens = split(line, ' ');
  if (tokens.size() < 3) fail(ErrorKind::kData, "slot record needs n, timestamp and label");
  RawSlot slot;
  slot.n = parse_number<std::uint64_t>(tokens[0], "slot index");
  slot.timestamp = parse_number<double>(tokens[1], "timestamp");
  if (tokens[2] != "-") {
    auto label = parse_label_symbol(tokens[2]);
    if (!label || !d.classes.contains(*label)) {
      fail(ErrorKind::kData, "bad label '" + std::string(tokens[2]) + "'");
    }
    slot.ground_truth = label;
  }
  slot.values.resize(d.addresses.size());
  for (std::size_t i = 3; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string_view::npos) fail(ErrorKind::kData, "bad value field '" + std::string(tokens[i]) + "'");
    auto addr = SensorAddress::parse(tokens[i].substr(0, eq));
    const int channel = addr ? d.channel_of(*addr) : -1;
    if (channel < 0) fail(ErrorKind::kData, "unknown address '" + std::string(tokens[i].substr(0, eq)) + "'");
    slot.values[channel] = parse_number<double>(tokens[i].substr(eq + 1), "value");
  }
  return slot;
}

std::string format_header(const StreamDescriptor& d) {
  std::string h = "# nwa-stream dataset=";
  h += d.dataset == DatasetKind::kPamap2 ? "pamap2" : "synthetic";
  h += " rates=";
  bool first = true;
  for (const auto& [sensor, rate] : d.rates_hz) {
    if (!first) h += ',';
    h += to_string(sensor);
    h += ':';
    h += number(rate);
    first = false;
  }
  h += " classes=";
  for (std::size_t i = 0; i < d.classes.size(); ++i) {
    if (i) h += ',';
    h += d.classes.display_names[i];
  }
  h += " addresses=";
  for (std::size_t i = 0; i < d.addresses.size(); ++i) {
    if (i) h += ',';
    h += d.addresses[i].str();
  }
  return h;
}

StreamDescriptor parse_header(std::string_view line) {
  if (!line.starts_with("# nwa-stream")) fail(ErrorKind::kData, "missing nwa-stream header");
  StreamDescriptor d;
  for (auto field : split(line.substr(12), ' ')) {
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) continue;
    const auto key = field.substr(0, eq);
    const auto value = field.substr(eq + 1);
    if (key == "dataset") {
      d.dataset = value == "pamap2" ? DatasetKind::kPamap2 : DatasetKind::kSynthetic;
    } else if (key == "rates") {
      for (auto item : split(value, ',')) {
        const auto colon = item.find(':');
        auto sensor = parse_sensor(item.substr(0, colon));
        if (!sensor || colon == std::string_view::npos) fail(ErrorKind::kData, "bad rate entry");
        d.rates_hz[*sensor] = parse_number<double>(item.substr(colon + 1), "rate");
      }
    } else if (key == "classes") {
      for (auto item : split(value, ',')) d.classes.display_names.emplace_back(item);
    } else if (key == "addresses") {
      for (auto item : split(value, ',')) {
        auto addr = SensorAddress::parse(item);
        if (!addr) fail(ErrorKind::kData, "bad address '" + std::string(item) + "'");
        d.addresses.push_back(*addr);
      }
    }
  }
  if (d.rates_hz.empty() || d.addresses.empty() || d.classes.size() == 0) {
    fail(ErrorKind::kData, "incomplete nwa-stream header");
  }
  d.r_min = d.rates_hz.begin()->second;
  d.r_max = d.r_min;
  for (const auto& [s, r] : d.rates_hz) {
    d.r_min = std::min(d.r_min, r);
    d.r_max = std::max(d.r_max, r);
  }
  return d;
}

void dump_stream(const Stream& stream, std::ostream& out) {
  out << format_header(stream.descriptor) << '\n';
  for (const auto& slot : stream.slots) out << format_slot(stream.descriptor, slot) << '\n';
}

Stream load_stream(std::istream& in) {
  Stream stream;
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::kData, "empty stream file");
  stream.descriptor = parse_header(line);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    stream.slots.push_back(parse_slot(stream.descriptor, line));
  }
  stream.descriptor.slot_count = stream.slots.size();
  validate(stream);
  return stream;
}

}  // namespace nwa::stream
