#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scope/cost_model.hpp"

namespace scope {

// Available (scheme -> profile) choices per partition id. Every partition
// must at least offer Scheme::none.
using ProfileTable = std::map<std::string, std::map<Scheme, CompressionProfile>>;

ProfileTable none_only_profiles(const std::vector<Partition>& parts);

struct Assignment {
  struct Choice {
    int tier = 0;
    Scheme scheme = Scheme::none;
  };
  std::map<std::string, Choice> choices;
  std::map<std::string, CostBreakdown> breakdowns;
  CostBreakdown total;
};

struct CapacityPolicy {
  enum class Kind { unbounded, per_layer, total, per_customer };
  Kind kind = Kind::unbounded;
  double total_gb = 0;                       // for Kind::total
  std::map<std::string, double> customer_gb; // for Kind::per_customer, keyed by Partition::owner

  static CapacityPolicy unbounded() { return {}; }
  static CapacityPolicy per_layer() { return {Kind::per_layer, 0, {}}; }
  static CapacityPolicy total(double gb) { return {Kind::total, gb, {}}; }
};

// Candidate ordering at equal cost: lower ttfb, then lower tier id, then
// scheme "none" first, then scheme name. Keeps solver output deterministic.
bool candidate_before(const CostBreakdown& a, int tier_a, Scheme scheme_a,
                      const CostBreakdown& b, int tier_b, Scheme scheme_b);

// Per-partition independent minimum; optimal when capacities are unbounded.
// Throws InfeasibleError naming every partition with no latency-feasible
// (tier, scheme) pair.
Assignment solve_greedy_unbounded(const std::vector<Partition>& parts,
                                  const ProfileTable& profiles, const CostParams& params,
                                  const Weights& weights);

// Equal spans, no compression, no prior placement: minimum-weight perfect
// matching on a bipartite graph with floor(capacity/span) copies per tier.
Assignment solve_matching_equal_sized(const std::vector<Partition>& parts,
                                      const CostParams& params, const Weights& weights);

// Exhaustive search over all feasible assignments; the test oracle. The
// candidate-combination count is capped by `budget`.
Assignment solve_exact(const std::vector<Partition>& parts, const ProfileTable& profiles,
                       const CostParams& params, const Weights& weights,
                       const CapacityPolicy& capacity, std::uint64_t budget = 10'000'000);

// Multiplies every latency threshold by factor (> 1, strictly relaxing).
std::vector<Partition> relax_latency(std::vector<Partition> parts, double factor);

// Runs a solver, relaxing latency thresholds by `factor` up to `max_rounds`
// times on infeasibility. Returns the assignment and the rounds used.
template <typename Solver>
std::pair<Assignment, int> solve_with_relaxation(std::vector<Partition> parts, Solver&& solver,
                                                 double factor = 1.5, int max_rounds = 10) {
  for (int round = 0;; ++round) {
    try {
      return {solver(parts), round};
    } catch (const InfeasibleError&) {
      if (round == max_rounds) throw;
      parts = relax_latency(std::move(parts), factor);
    }
  }
}

// Independent re-check of a solved assignment: coverage, frozen schemes,
// latency, capacity, and per-partition breakdowns recomputed from scratch.
// Returns the recomputed grand total; throws on any violation.
CostBreakdown validate_assignment(const std::vector<Partition>& parts,
                                  const Assignment& assignment, const ProfileTable& profiles,
                                  const CostParams& params, const Weights& weights,
                                  const CapacityPolicy& capacity);

namespace detail {
// Min-cost assignment of n rows to m >= n columns (Jonker-Volgenant style
// shortest augmenting paths). Forbidden edges carry kForbidden; if any ends
// up matched there is no feasible perfect matching.
inline constexpr std::int64_t kForbidden = 1'000'000'000'000'000'000LL / 4;
std::vector<int> min_cost_assignment(const std::vector<std::vector<std::int64_t>>& cost);
}  // namespace detail

}  // namespace scope
