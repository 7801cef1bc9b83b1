#pragma once

#include "pcs/events.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pcs::wire {

// Line-delimited trace format, one record per line, UTF-8. The first line is
// a header carrying the format name and a version integer.

inline constexpr int kTraceVersion = 1;

std::string trace_header();
/// Throws DecodeError when the header line does not announce a supported version.
void check_trace_header(const std::string& line, std::uint64_t lineNo = 1);

std::string encode_event(const Event& e);
Event decode_event(const std::string& line, std::uint64_t lineNo = 0);

std::string encode_record(const SerializationRecord& r);
std::string encode_sb_snapshot(const SbSnapshot& s);
std::string encode_static_constant(const StaticConstantNote& n);

using TraceLine = std::variant<Event, SerializationRecord, SbSnapshot, StaticConstantNote>;

/// Decodes any non-header trace line.
TraceLine decode_line(const std::string& line, std::uint64_t lineNo = 0);

struct TraceFile {
    std::vector<Event> events;
    std::vector<SerializationRecord> records;
    std::vector<SbSnapshot> snapshots;
    std::vector<StaticConstantNote> staticConstants;
};

TraceFile read_trace(std::istream& in);
TraceFile read_trace_file(const std::string& path);

} // namespace pcs::wire
