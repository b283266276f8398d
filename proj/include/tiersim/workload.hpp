// Deterministic synthetic workload generation: per-site allocations
// followed by a power-law access stream, optionally shifting the hot set
// across phases.
#pragma once

#include <string>

#include "tiersim/types.hpp"

namespace tiersim {

struct WorkloadSpec {
  std::uint32_t sites = 8;
  std::uint32_t objects_per_site = 4;
  std::uint64_t object_bytes_min = 64 * 1024;
  std::uint64_t object_bytes_max = 2 * 1024 * 1024;
  double skew = 1.0;  // power-law exponent over site hotness ranks
  std::uint32_t phases = 1;
  std::uint32_t threads = 1;
  std::uint64_t accesses = 100000;
  double read_fraction = 0.75;
  // Compute time modeled between accesses; emitted as batched T events.
  Nanos time_per_access_ns = 500;
};

/// Validates the spec; throws ConfigError naming the bad field.
void validate_workload_spec(const WorkloadSpec& spec);

/// Produces the trace text. Byte-identical for identical (spec, seed).
std::string generate_workload(const WorkloadSpec& spec, std::uint64_t seed);

}  // namespace tiersim
