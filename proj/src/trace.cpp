#include "tiersim/trace.hpp"

#include <charconv>
#include <sstream>
#include <string_view>

namespace tiersim {
namespace {

struct ObjectState {
  std::uint64_t size_bytes = 0;
  bool live = false;
};

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw TraceError("line " + std::to_string(line_no) + ": " + what);
}

// Splits on single spaces/tabs; empty tokens are malformed.
std::vector<std::string_view> tokens_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::uint64_t parse_u64(std::string_view tok, std::size_t line_no,
                        const char* field) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    fail(line_no, std::string("malformed ") + field + " '" +
                      std::string(tok) + "'");
  return value;
}

}  // namespace

std::vector<TraceEvent> parse_trace(std::istream& in) {
  std::vector<TraceEvent> events;
  std::vector<ObjectState> objects;  // index = object id - 1
  std::string line;
  std::size_t line_no = 0;

  auto live_object = [&](std::uint64_t id) -> ObjectState& {
    if (id == 0 || id > objects.size())
      fail(line_no, "unknown object " + std::to_string(id));
    ObjectState& st = objects[id - 1];
    if (!st.live)
      fail(line_no, "object " + std::to_string(id) + " is not live");
    return st;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;

    TraceEvent ev;
    const std::string_view op = toks[0];
    if (op == "T") {
      if (toks.size() != 2) fail(line_no, "T expects 1 field");
      ev.kind = EventKind::Time;
      ev.delta_ns = parse_u64(toks[1], line_no, "delta_ns");
    } else if (op == "A") {
      if (toks.size() != 4) fail(line_no, "A expects 3 fields");
      ev.kind = EventKind::Alloc;
      ev.thread =
          static_cast<ThreadId>(parse_u64(toks[1], line_no, "thread"));
      const std::uint64_t site = parse_u64(toks[2], line_no, "site");
      if (site == 0) fail(line_no, "site id must be positive");
      ev.site = static_cast<SiteId>(site);
      ev.bytes = parse_u64(toks[3], line_no, "bytes");
      if (ev.bytes == 0) fail(line_no, "allocation size must be > 0");
      objects.push_back({ev.bytes, true});
      ev.object = objects.size();
    } else if (op == "F") {
      if (toks.size() != 2) fail(line_no, "F expects 1 field");
      ev.kind = EventKind::Free;
      ev.object = parse_u64(toks[1], line_no, "object");
      live_object(ev.object).live = false;
    } else if (op == "R" || op == "W") {
      if (toks.size() != 3) fail(line_no, "R/W expects 2 fields");
      ev.kind = op == "R" ? EventKind::Read : EventKind::Write;
      ev.object = parse_u64(toks[1], line_no, "object");
      ev.offset = parse_u64(toks[2], line_no, "offset");
      const ObjectState& st = live_object(ev.object);
      if (ev.offset >= st.size_bytes)
        fail(line_no, "offset " + std::to_string(ev.offset) +
                          " out of range for object of " +
                          std::to_string(st.size_bytes) + " bytes");
    } else {
      fail(line_no, "unknown event '" + std::string(op) + "'");
    }
    events.push_back(ev);
  }
  return events;
}

std::vector<TraceEvent> parse_trace(const std::string& text) {
  std::istringstream in(text);
  return parse_trace(in);
}

std::uint64_t trace_hash(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace tiersim
