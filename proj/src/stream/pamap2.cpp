// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include "stream/pamap2.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace nwa::stream {
namespace {

// Column (0-based) of every address in pamap2_addresses() order.
std::array<int, 40> channel_columns() {
  std::array<int, 40> cols{};
  std::size_t i = 0;
  cols[i++] = 2;  // heart rate
  for (int imu = 0; imu < 3; ++imu) {
    const int base = 3 + imu * 17;
    for (int c = 0; c < 13; ++c) cols[i++] = base + c;  // temp, acc16 x3, acc6 x3, gyro x3, mag x3
  }
  return cols;
}

struct Row {
  double timestamp;
  int activity;
  std::array<double, kPamap2Columns> fields;
};

bool parse_field(std::string_view token, double& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

StreamDescriptor pamap2_descriptor() {
  StreamDescriptor d;
  d.dataset = DatasetKind::kPamap2;
  d.addresses = pamap2_addresses();
  d.rates_hz = {{Sensor::kHeartRate, 9.0},        {Sensor::kTemperature, 100.0},
                {Sensor::kAccelerometer16g, 100.0}, {Sensor::kAccelerometer6g, 100.0},
                {Sensor::kGyroscope, 100.0},        {Sensor::kMagnetometer, 100.0}};
  d.r_min = 9.0;
  d.r_max = 100.0;
  d.classes = ClassSet::pamap2();
  return d;
}

}  // namespace

Stream parse_pamap2(std::string_view bytes, const Pamap2Filter& filter, std::uint64_t first_slot) {
  std::vector<Row> rows;
  std::size_t line_no = 0;
  while (!bytes.empty()) {
    const auto eol = bytes.find('\n');
    std::string_view line = bytes.substr(0, eol);
    bytes = eol == std::string_view::npos ? std::string_view{} : bytes.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    Row row{};
    int col = 0;
    std::size_t pos = 0;
    while (true) {
      pos = line.find_first_not_of(" \t", pos);
      if (pos == std::string_view::npos) break;
      const auto end = std::min(line.find_first_of(" \t", pos), line.size());
      if (col >= kPamap2Columns) {
        fail(ErrorKind::kData, "line " + std::to_string(line_no) + ": more than 54 columns");
      }
      if (!parse_field(line.substr(pos, end - pos), row.fields[col])) {
        fail(ErrorKind::kData, "line " + std::to_string(line_no) + ": column " +
                                   std::to_string(col + 1) + " is not a number");
      }
      ++col;
      pos = end;
    }
    if (col != kPamap2Columns) {
      fail(ErrorKind::kData, "line " + std::to_string(line_no) + ": expected 54 columns, got " +
                                 std::to_string(col));
    }
    if (std::isnan(row.fields[0]) || std::isnan(row.fields[1])) {
      fail(ErrorKind::kData,
           "line " + std::to_string(line_no) + ": timestamp and activity must be present");
    }
    row.timestamp = row.fields[0];
    row.activity = static_cast<int>(row.fields[1]);
    rows.push_back(row);
  }

  std::size_t nordic = 0, stairs = 0;
  for (const auto& r : rows) {
    nordic += r.activity == filter.nordic_walking_id;
    stairs += r.activity == filter.stairs_id;
  }
  const bool keep_nordic = nordic > 0 && nordic / filter.row_rate_hz >= filter.min_nordic_walking_s;
  const bool keep_stairs = stairs > 0 && stairs / filter.row_rate_hz >= filter.min_stairs_s;

  Stream out;
  out.descriptor = pamap2_descriptor();
  static const auto columns = channel_columns();
  std::uint64_t n = first_slot;
  for (const auto& r : rows) {
    std::optional<ClassLabel> label;
    if (keep_nordic && r.activity == filter.nordic_walking_id) label = 0;
    if (keep_stairs && r.activity == filter.stairs_id) label = 1;
    if (!label) continue;
    RawSlot slot;
    slot.n = n++;
    slot.timestamp = r.timestamp;
    slot.ground_truth = label;
    slot.values.reserve(columns.size());
    bool any = false;
    for (int c : columns) {
      const double v = r.fields[c];
      if (std::isnan(v)) {
        slot.values.emplace_back();
      } else {
        slot.values.emplace_back(v);
        any = true;
      }
    }
    if (any) out.slots.push_back(std::move(slot));
    else --n;
  }
  if (out.slots.empty()) {
    fail(ErrorKind::kData, "no qualifying Nordic walking or stair-climbing samples");
  }
  out.descriptor.slot_count = out.slots.size();
  return out;
}

std::vector<Subject> load_pamap2_subjects(const std::filesystem::path& dir, const Pamap2Filter& filter) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    fail(ErrorKind::kData, "PAMAP2 path not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".dat") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) fail(ErrorKind::kData, "no .dat files in " + dir.string());

  std::vector<Subject> out;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) fail(ErrorKind::kData, "cannot read " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      out.push_back({file.stem().string(), parse_pamap2(buffer.str(), filter)});
    } catch (const Error& e) {
      if (std::string_view(e.what()).starts_with("no qualifying")) continue;
      throw Error(e.kind(), file.filename().string() + ": " + e.what());
    }
  }
  if (out.empty()) fail(ErrorKind::kData, "no qualifying subjects in " + dir.string());
  return out;
}

Stream load_pamap2(const std::filesystem::path& dir, const Pamap2Filter& filter) {
  auto subjects = load_pamap2_subjects(dir, filter);
  Stream out;
  out.descriptor = subjects.front().stream.descriptor;
  double time_offset = 0.0;
  for (auto& subject : subjects) {
    const double shift = time_offset - subject.stream.slots.front().timestamp;
    for (auto& s : subject.stream.slots) {
      s.n = out.slots.size();
      s.timestamp += shift;
      out.slots.push_back(std::move(s));
    }
    time_offset = out.slots.back().timestamp + 1.0 / filter.row_rate_hz;
  }
  out.descriptor.slot_count = out.slots.size();
  return out;
}

std::string serialize_pamap2(const Stream& stream, const Pamap2Filter& filter) {
  static const auto columns = channel_columns();
  std::string out;
  char buf[64];
  for (const auto& slot : stream.slots) {
    std::array<double, kPamap2Columns> fields;
    fields.fill(0.0);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      fields[columns[i]] = slot.values[i] ? *slot.values[i] : std::nan("");
    }
    fields[0] = slot.timestamp;
    fields[1] = slot.ground_truth == 1 ? filter.stairs_id : filter.nordic_walking_id;
    for (int c = 0; c < kPamap2Columns; ++c) {
      if (c) out += ' ';
      if (std::isnan(fields[c])) {
        out += "NaN";
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", fields[c]);
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace nwa::stream
