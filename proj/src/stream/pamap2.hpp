// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stream/types.hpp"

namespace nwa::stream {

/// Activity selection. Ids follow the dataset documentation: 7 = Nordic
/// walking, 12 = ascending stairs. A subject contributes an activity only if
/// it performed that activity for at least the stated duration.
struct Pamap2Filter {
  int nordic_walking_id = 7;
  int stairs_id = 12;
  double min_nordic_walking_s = 250.0;
  double min_stairs_s = 150.0;
  double row_rate_hz = 100.0;
};

inline constexpr int kPamap2Columns = 54;

/// Parses one subject file (whitespace-separated, 54 columns, `NaN` for
/// missing values). Slots are re-indexed from `first_slot` over kept rows.
Stream parse_pamap2(std::string_view bytes, const Pamap2Filter& filter = {},
                    std::uint64_t first_slot = 0);

struct Subject {
  std::string name;
  Stream stream;
};

/// Parses every `*.dat` file under `dir` (sorted by name) into one stream per
/// qualifying subject, each indexed from slot 0.
std::vector<Subject> load_pamap2_subjects(const std::filesystem::path& dir, const Pamap2Filter& filter = {});

/// Parses every `*.dat` file under `dir` (sorted by name) and concatenates the
/// qualifying subjects. Timestamps are shifted so they keep increasing.
Stream load_pamap2(const std::filesystem::path& dir, const Pamap2Filter& filter = {});

/// Writes slots back in the dataset column layout (orientation columns are
/// written as zeros; they are not used).
std::string serialize_pamap2(const Stream& stream, const Pamap2Filter& filter = {});

}  // namespace nwa::stream
