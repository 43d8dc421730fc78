// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "stream/types.hpp"

namespace nwa::stream {

/// Line format: `n timestamp label addr1=v1 addr2=v2 ...`; absent values are
/// omitted and a missing label is written as `-`. A leading `#` header line
/// carries the descriptor so that `load_stream` can restore it.
std::string format_slot(const StreamDescriptor& d, const RawSlot& slot);
RawSlot parse_slot(const StreamDescriptor& d, std::string_view line);

std::string format_header(const StreamDescriptor& d);
StreamDescriptor parse_header(std::string_view line);

void dump_stream(const Stream& stream, std::ostream& out);
Stream load_stream(std::istream& in);

}  // namespace nwa::stream
