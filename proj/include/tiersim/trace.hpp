// Trace file format, one event per line, fields space separated:
//   T <delta_ns> | A <thread> <site> <bytes> | F <obj> | R <obj> <offset>
//   | W <obj> <offset>
// Lines starting with '#' are comments. Object ids are implicit: the
// N-th A line creates object N.
#pragma once

#include <istream>
#include <string>
#include <vector>

#include "tiersim/types.hpp"

namespace tiersim {

enum class EventKind : std::uint8_t { Time, Alloc, Free, Read, Write };

struct TraceEvent {
  EventKind kind = EventKind::Time;
  ThreadId thread = 0;    // Alloc
  SiteId site = 0;        // Alloc
  std::uint64_t bytes = 0;  // Alloc
  ObjectId object = 0;    // Free / Read / Write
  std::uint64_t offset = 0;  // Read / Write
  Nanos delta_ns = 0;     // Time
};

/// Parses and validates a trace: every referenced object must be live
/// and offsets must fall inside the object. Throws TraceError with the
/// offending line number.
std::vector<TraceEvent> parse_trace(std::istream& in);
std::vector<TraceEvent> parse_trace(const std::string& text);

/// FNV-1a over the raw trace bytes; identifies a trace across runs.
std::uint64_t trace_hash(const std::string& bytes);

}  // namespace tiersim
