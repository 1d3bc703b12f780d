#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "scope/catalog.hpp"

namespace scope {

// A stored union of initial partitions. Read cost grows with span times
// total accesses, so merges trade duplicated bytes against scan volume.
struct Merge {
  std::string id;                    // smallest member partition id
  std::vector<std::string> members;  // sorted initial partition ids
  std::vector<std::string> files;    // sorted union of member file ids
  double span_gb = 0;
  double accesses = 0;

  double cost() const { return span_gb * accesses; }
};

struct MergePlan {
  std::vector<Merge> merges;

  double total_space() const;
  double total_cost() const;
};

struct FeasibilityCriteria {
  double rho_ratio = 3;    // access-frequency ratio bound (>= 1)
  double rho_diff = 10;    // absolute access-frequency difference bound
  double span_soft_cap = std::numeric_limits<double>::infinity();  // GB
  // When set, a candidate merge is feasible only if every pair of original
  // members satisfies the criteria, not just the two nodes being merged.
  bool strict_pairwise = false;

  void validate() const;
};

// Shared volume: Sp(p1) + Sp(p2) - Sp(p1 union p2).
double overlap_gb(const Partition& p1, const Partition& p2, const Catalog& catalog);

// True iff the access frequencies are within the ratio bound or within the
// absolute difference bound. Zero frequencies fall back to the difference.
bool feasible_pair(double rho1, double rho2, const FeasibilityCriteria& criteria);

// Greedy merging: max-heap on fractional overlap over feasible pairs; the
// popped pair merges if both nodes are still live, and the merged node is
// re-enqueued while its span stays under the soft cap. Produces a disjoint
// cover of the initial partitions.
MergePlan gpart(const std::vector<Partition>& parts, const FeasibilityCriteria& criteria,
                const Catalog& catalog);

// Exact small-instance oracle: enumerates covers of the partitions by
// feasible merges (singletons always allowed, coverage >= 1), minimizing
// total space subject to total cost <= cost_threshold.
MergePlan solve_merge_exact(const std::vector<Partition>& parts, double cost_threshold,
                            const FeasibilityCriteria& criteria, const Catalog& catalog,
                            std::uint64_t budget = 10'000'000);

// Timestamped partitions: sort by end time and split into independent chains
// wherever the next start does not precede the current end.
std::vector<std::vector<Partition>> order_and_split(std::vector<Partition> parts);

// Pseudo-polynomial DP over contiguous merges of an ordered chain. Costs are
// rounded up to `granularity` integer units across [0, cost_threshold];
// instances whose merge costs and threshold are already integers within the
// granularity are solved exactly.
MergePlan dp_ordered(const std::vector<Partition>& chain, double cost_threshold,
                     const Catalog& catalog, int granularity = 10'000);

// Epsilon-scaled DP: costs rounded up to multiples of epsilon * cost_threshold
// and the unit budget extended by N, so the result is never larger in space
// than the exact optimum at cost_threshold and overruns the cost budget by at
// most (1 + N * epsilon).
MergePlan dp_ordered_approx(const std::vector<Partition>& chain, double cost_threshold,
                            double epsilon, const Catalog& catalog);

// Fraction of stored volume that is redundant across merges:
// 1 - distinct volume / total stored volume.
double duplication(const MergePlan& plan, const Catalog& catalog);

// Single merge covering every partition, and the identity (no-merge) plan.
MergePlan merge_all_plan(const std::vector<Partition>& parts, const Catalog& catalog);
MergePlan no_merge_plan(const std::vector<Partition>& parts, const Catalog& catalog);

// Final partitions for the assignment stage: merged data is rewritten, so it
// is fresh (tier -1), unfrozen, with the strictest member latency threshold.
std::vector<Partition> plan_to_partitions(const MergePlan& plan,
                                          const std::vector<Partition>& initial,
                                          const Catalog& catalog);

void write_merge_plan(const MergePlan& plan, const std::filesystem::path& path);
MergePlan read_merge_plan(const std::filesystem::path& path);

}  // namespace scope
