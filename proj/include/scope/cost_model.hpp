#pragma once

#include <filesystem>
#include <vector>

#include "scope/catalog.hpp"
#include "scope/compression.hpp"
#include "scope/money.hpp"

namespace scope {

// A storage tier. Tier 0 has the lowest latency; the last tier is archival.
struct TierSpec {
  int id = 0;
  std::string name;
  Money storage_cost;  // cents per GB per billing period
  Money read_cost;     // cents per GB read
  Money write_cost;    // cents per GB written (= change cost from "new")
  double ttfb = 0;     // seconds, time to first byte
  double capacity_gb = 0;  // may be +infinity

  bool unlimited() const { return std::isinf(capacity_gb); }
};

// How decompression seconds/GB enter the objective and latency constraint:
// per_gb keeps them as-is (per unit data); scaled_by_span multiplies by the
// compressed partition size. The source material does not pin the unit, so
// both are selectable from the cost config.
enum class DecompUnits { per_gb, scaled_by_span };

struct CostParams {
  std::vector<TierSpec> tiers;
  // (L+1) x L matrix of per-GB change costs; row L holds the "new data" row.
  std::vector<std::vector<Money>> tier_change;
  Money compute_cost;  // cents per second
  int billing_periods = 1;
  DecompUnits decomp_units = DecompUnits::per_gb;

  std::size_t levels() const { return tiers.size(); }
  const TierSpec& tier(int id) const;
  // from = -1 means newly ingested data.
  Money change_cost(int from, int to) const;
  void validate() const;
};

struct Weights {
  double alpha = 1;  // storage
  double beta = 1;   // access (read + decompression compute)
  double gamma = 1;  // tier change
  double pushdown_fraction = 0;  // f: share of accesses served without decompression

  void validate() const;
};

struct CostBreakdown {
  Money storage;
  Money tier_change;
  Money read;
  Money decompress_compute;
  Money total;
  double ttfb = 0;                    // seconds
  double expected_decomp_latency = 0; // seconds per access

  CostBreakdown& operator+=(const CostBreakdown& o) {
    storage += o.storage;
    tier_change += o.tier_change;
    read += o.read;
    decompress_compute += o.decompress_compute;
    total += o.total;
    return *this;
  }
};

// Loads the key-value cost config (see README for the schema) and fills in
// the default tier-change matrix where none is given.
CostParams load_cost_config(const std::filesystem::path& path);
void write_cost_config(const CostParams& params, const std::filesystem::path& path);

// Cost of placing partition p on `tier` with the given compression profile:
//   storage            = alpha * Cs * Sp/R        (per billing period)
//   tier_change        = gamma * delta * Sp/R
//   read               = beta * (1-f) * rho * Cr * Sp/R
//   decompress_compute = beta * (1-f) * rho * Cc * D
CostBreakdown assignment_cost(const Partition& p, int tier, const CompressionProfile& profile,
                              const CostParams& params, const Weights& w);

// Latency term checked against T(p): decompression time plus tier TTFB.
double assignment_latency(const Partition& p, int tier, const CompressionProfile& profile,
                          const CostParams& params);

}  // namespace scope
