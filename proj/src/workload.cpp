#include "tiersim/workload.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace tiersim {
namespace {

constexpr std::uint64_t kTimeBatch = 16;  // accesses per emitted T event

// All randomness goes through these helpers so traces stay byte-identical
// across standard library implementations.
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
  return n <= 1 ? 0 : rng() % n;
}

double rand_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Cumulative distribution over sites with weight rank^-skew, where the
// rank permutation rotates with the phase to shift the hot set.
std::vector<double> zipf_cdf(std::uint32_t sites, double skew,
                             std::uint32_t phase, std::uint32_t shift) {
  std::vector<double> weights(sites);
  for (std::uint32_t s = 0; s < sites; ++s) {
    const std::uint32_t rank = (s + phase * shift) % sites + 1;
    weights[s] = std::pow(static_cast<double>(rank), -skew);
  }
  std::vector<double> cdf(sites);
  double total = 0;
  for (std::uint32_t s = 0; s < sites; ++s) total += weights[s];
  double acc = 0;
  for (std::uint32_t s = 0; s < sites; ++s) {
    acc += weights[s] / total;
    cdf[s] = acc;
  }
  cdf.back() = 1.0;
  return cdf;
}

std::uint32_t draw_site(std::mt19937_64& rng, const std::vector<double>& cdf) {
  const double u = rand_unit(rng);
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  return static_cast<std::uint32_t>(it - cdf.begin());
}

}  // namespace

void validate_workload_spec(const WorkloadSpec& spec) {
  if (spec.sites == 0) throw ConfigError("workload: sites must be >= 1");
  if (spec.objects_per_site == 0)
    throw ConfigError("workload: objects_per_site must be >= 1");
  if (spec.object_bytes_min == 0)
    throw ConfigError("workload: object_bytes_min must be >= 1");
  if (spec.object_bytes_min > spec.object_bytes_max)
    throw ConfigError("workload: object_bytes_min exceeds object_bytes_max");
  if (!(spec.skew >= 0.0) || !std::isfinite(spec.skew))
    throw ConfigError("workload: skew must be a finite value >= 0");
  if (spec.phases == 0) throw ConfigError("workload: phases must be >= 1");
  if (spec.threads == 0) throw ConfigError("workload: threads must be >= 1");
  if (!(spec.read_fraction >= 0.0 && spec.read_fraction <= 1.0))
    throw ConfigError("workload: read_fraction must be in [0, 1]");
}

std::string generate_workload(const WorkloadSpec& spec, std::uint64_t seed) {
  validate_workload_spec(spec);
  std::mt19937_64 rng(seed);
  std::ostringstream out;
  out << "# tiersim workload: sites=" << spec.sites
      << " objects_per_site=" << spec.objects_per_site
      << " skew=" << spec.skew << " phases=" << spec.phases
      << " accesses=" << spec.accesses << " seed=" << seed << "\n";

  // Allocation prologue, round-robin across sites so first-touch capacity
  // cuts through every site rather than whole sites in file order.
  const std::uint64_t object_count =
      static_cast<std::uint64_t>(spec.sites) * spec.objects_per_site;
  std::vector<std::uint64_t> object_size(object_count);
  for (std::uint32_t k = 0; k < spec.objects_per_site; ++k) {
    for (std::uint32_t s = 0; s < spec.sites; ++s) {
      const std::uint64_t span =
          spec.object_bytes_max - spec.object_bytes_min + 1;
      const std::uint64_t size = spec.object_bytes_min + rand_below(rng, span);
      const std::uint64_t id =
          static_cast<std::uint64_t>(k) * spec.sites + s;  // object id - 1
      object_size[id] = size;
      out << "A " << s % spec.threads << ' ' << s + 1 << ' ' << size << "\n";
    }
  }

  std::vector<std::vector<double>> cdfs(spec.phases);
  const std::uint32_t shift = std::max(1u, spec.sites / spec.phases);
  for (std::uint32_t p = 0; p < spec.phases; ++p)
    cdfs[p] = zipf_cdf(spec.sites, spec.skew, p, shift);

  for (std::uint64_t i = 0; i < spec.accesses; ++i) {
    const std::uint32_t phase = static_cast<std::uint32_t>(
        spec.phases == 1 ? 0 : i * spec.phases / spec.accesses);
    const std::uint32_t site = draw_site(rng, cdfs[phase]);
    const std::uint64_t k = rand_below(rng, spec.objects_per_site);
    const std::uint64_t id = k * spec.sites + site + 1;
    const std::uint64_t offset = rand_below(rng, object_size[id - 1]);
    const bool is_read = rand_unit(rng) < spec.read_fraction;
    out << (is_read ? 'R' : 'W') << ' ' << id << ' ' << offset << "\n";
    if (spec.time_per_access_ns > 0 && (i + 1) % kTimeBatch == 0)
      out << "T " << spec.time_per_access_ns * kTimeBatch << "\n";
  }
  return out.str();
}

}  // namespace tiersim
