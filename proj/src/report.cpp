#include "tiersim/report.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tiersim {
namespace {

// Shortest representation that round-trips the double exactly.
std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view tok) {
  // std::from_chars for doubles is available on this toolchain; strtod
  // would accept locale-dependent input.
  double v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw SimError("invalid CSV number '" + std::string(tok) + "'");
  return v;
}

std::string hash_hex(std::uint64_t h) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

Summary make_summary(const RunResult& r) {
  Summary s;
  s.policy = std::string(policy_name(r.policy));
  s.total_sim_ns = r.total_sim_ns;
  s.migration_bytes_up = r.pages_migrated_up * r.page_bytes;
  s.migration_bytes_down = r.pages_migrated_down * r.page_bytes;
  s.fast_accesses = r.fast_accesses;
  s.slow_accesses = r.slow_accesses;
  s.peak_rss_pages = r.peak_rss_pages;
  s.trace_hash = r.trace_hash;
  s.final_site_tiers = r.final_site_tiers;
  return s;
}

double compare(const Summary& baseline, const Summary& candidate) {
  if (baseline.trace_hash != candidate.trace_hash)
    throw SimError("cannot compare runs of different traces (hash mismatch)");
  if (candidate.total_sim_ns == 0)
    throw SimError("cannot compare against a zero-length run");
  return static_cast<double>(baseline.total_sim_ns) /
         static_cast<double>(candidate.total_sim_ns);
}

std::string intervals_to_csv(const std::vector<IntervalRecord>& intervals) {
  std::ostringstream out;
  out << "interval_end_ns,fast_accesses,slow_accesses,bytes_up,bytes_down,"
         "bandwidth_bps\n";
  for (const IntervalRecord& r : intervals) {
    out << r.interval_end_ns << ',' << r.fast_accesses << ','
        << r.slow_accesses << ',' << r.bytes_migrated_up << ','
        << r.bytes_migrated_down << ','
        << format_double(r.est_bandwidth_bytes_per_s) << "\n";
  }
  return out.str();
}

std::vector<IntervalRecord> intervals_from_csv(const std::string& text) {
  std::vector<IntervalRecord> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 6) throw SimError("invalid CSV row: " + line);
    IntervalRecord r;
    r.interval_end_ns = std::stoull(fields[0]);
    r.fast_accesses = std::stoull(fields[1]);
    r.slow_accesses = std::stoull(fields[2]);
    r.bytes_migrated_up = std::stoull(fields[3]);
    r.bytes_migrated_down = std::stoull(fields[4]);
    r.est_bandwidth_bytes_per_s = parse_double(fields[5]);
    out.push_back(r);
  }
  return out;
}

std::string summary_to_json(const Summary& s) {
  nlohmann::ordered_json j;
  j["policy"] = s.policy;
  j["total_sim_ns"] = s.total_sim_ns;
  j["migration_bytes_up"] = s.migration_bytes_up;
  j["migration_bytes_down"] = s.migration_bytes_down;
  j["fast_accesses"] = s.fast_accesses;
  j["slow_accesses"] = s.slow_accesses;
  j["peak_rss_pages"] = s.peak_rss_pages;
  j["trace_hash"] = hash_hex(s.trace_hash);
  if (s.relative_throughput)
    j["relative_throughput"] = *s.relative_throughput;
  nlohmann::ordered_json tiers = nlohmann::ordered_json::object();
  for (const auto& [site, tier] : s.final_site_tiers)
    tiers[std::to_string(site)] = tier_name(tier);
  j["final_site_tiers"] = std::move(tiers);
  return j.dump(2) + "\n";
}

std::string decisions_to_jsonl(const std::vector<MigrationDecision>& ds) {
  std::ostringstream out;
  for (const MigrationDecision& d : ds) {
    nlohmann::ordered_json j;
    j["t_ns"] = d.when_ns;
    j["rental_cost_ns"] = d.rental_cost_ns;
    j["purchase_cost_ns"] = d.purchase_cost_ns;
    j["migrate"] = d.migrate;
    j["pages_up"] = d.pages_up;
    j["pages_down"] = d.pages_down;
    j["shortfall_pages"] = d.shortfall_pages;
    if (d.migrate) j["fast_sites"] = d.fast_sites_after;
    out << j.dump() << "\n";
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec)
      throw SimError("cannot create directory '" +
                     target.parent_path().string() + "': " + ec.message());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SimError("cannot open '" + tmp.string() + "' for write");
    out << content;
    if (!out) throw SimError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec)
    throw SimError("cannot rename '" + tmp.string() + "' to '" + path +
                   "': " + ec.message());
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_reports(const RunResult& result, const std::string& output_prefix) {
  write_text_file(output_prefix + ".intervals.csv",
                  intervals_to_csv(result.intervals));
  write_text_file(output_prefix + ".summary.json",
                  summary_to_json(make_summary(result)));
  if (result.policy == PolicyKind::OnlineGuided)
    write_text_file(output_prefix + ".decisions.jsonl",
                    decisions_to_jsonl(result.decisions));
}

}  // namespace tiersim
