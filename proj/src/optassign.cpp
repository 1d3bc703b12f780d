#include "scope/optassign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scope {

namespace {

constexpr double kCapacityEps = 1e-9;

int scheme_rank(Scheme s) { return s == Scheme::none ? 0 : 1; }

struct Candidate {
  int tier;
  Scheme scheme;
  CostBreakdown breakdown;
  double stored_gb;
};

std::vector<Candidate> feasible_candidates(const Partition& p, const ProfileTable& profiles,
                                           const CostParams& params, const Weights& weights) {
  auto it = profiles.find(p.id);
  if (it == profiles.end()) throw ConfigError("no compression profiles for partition " + p.id);
  if (!it->second.count(Scheme::none))
    throw ConfigError("partition " + p.id + " is missing the 'none' profile");
  std::vector<Candidate> out;
  for (const auto& [scheme, profile] : it->second) {
    if (p.frozen_scheme && scheme != *p.frozen_scheme) continue;
    for (const TierSpec& t : params.tiers) {
      if (assignment_latency(p, t.id, profile, params) > p.latency_threshold) continue;
      Candidate c{t.id, scheme, assignment_cost(p, t.id, profile, params, weights),
                  p.span_gb / profile.ratio};
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return candidate_before(a.breakdown, a.tier, a.scheme, b.breakdown, b.tier, b.scheme);
  });
  return out;
}

void check_unique_ids(const std::vector<Partition>& parts) {
  std::map<std::string, int> seen;
  for (const auto& p : parts)
    if (++seen[p.id] > 1) throw ConfigError("duplicate partition id: " + p.id);
}

}  // namespace

ProfileTable none_only_profiles(const std::vector<Partition>& parts) {
  ProfileTable t;
  for (const auto& p : parts) t[p.id][Scheme::none] = no_compression();
  return t;
}

bool candidate_before(const CostBreakdown& a, int tier_a, Scheme scheme_a,
                      const CostBreakdown& b, int tier_b, Scheme scheme_b) {
  if (a.total != b.total) return a.total < b.total;
  if (a.ttfb != b.ttfb) return a.ttfb < b.ttfb;
  if (tier_a != tier_b) return tier_a < tier_b;
  if (scheme_rank(scheme_a) != scheme_rank(scheme_b))
    return scheme_rank(scheme_a) < scheme_rank(scheme_b);
  return scheme_name(scheme_a) < scheme_name(scheme_b);
}

Assignment solve_greedy_unbounded(const std::vector<Partition>& parts,
                                  const ProfileTable& profiles, const CostParams& params,
                                  const Weights& weights) {
  params.validate();
  weights.validate();
  check_unique_ids(parts);
  Assignment result;
  std::vector<std::string> infeasible;
  for (const Partition& p : parts) {
    auto cands = feasible_candidates(p, profiles, params, weights);
    if (cands.empty()) {
      infeasible.push_back(p.id);
      continue;
    }
    const Candidate& best = cands.front();
    result.choices[p.id] = {best.tier, best.scheme};
    result.breakdowns[p.id] = best.breakdown;
    result.total += best.breakdown;
  }
  if (!infeasible.empty()) {
    std::string msg = "no latency-feasible (tier, scheme) for partition(s):";
    for (const auto& id : infeasible) msg += " " + id;
    throw InfeasibleError(msg, infeasible);
  }
  return result;
}

namespace detail {

std::vector<int> min_cost_assignment(const std::vector<std::vector<std::int64_t>>& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) return {};
  const int m = static_cast<int>(cost[0].size());
  if (m < n) throw InfeasibleError("fewer tier slots than partitions");

  const std::int64_t INF = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(n + 1), v(m + 1);
  std::vector<int> p(m + 1), way(m + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<std::int64_t> minv(m + 1, INF);
    std::vector<char> used(m + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = 0;
      std::int64_t delta = INF;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        std::int64_t cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace detail

Assignment solve_matching_equal_sized(const std::vector<Partition>& parts,
                                      const CostParams& params, const Weights& weights) {
  params.validate();
  weights.validate();
  check_unique_ids(parts);
  if (parts.empty()) return {};

  const double span = parts.front().span_gb;
  for (const Partition& p : parts) {
    if (std::abs(p.span_gb - span) > 1e-12 * std::max(1.0, span))
      throw ConfigError("matching solver requires equal partition spans");
    if (p.current_tier != -1)
      throw ConfigError("matching solver requires fresh data (current_tier = -1)");
    if (p.frozen_scheme && *p.frozen_scheme != Scheme::none)
      throw ConfigError("matching solver handles no compression schemes");
  }

  const int n = static_cast<int>(parts.size());
  std::vector<int> col_tier;  // tier copies
  for (const TierSpec& t : params.tiers) {
    long copies = t.unlimited()
                      ? n
                      : std::min<long>(n, static_cast<long>(
                                              std::floor(t.capacity_gb / span + kCapacityEps)));
    for (long c = 0; c < copies; ++c) col_tier.push_back(t.id);
  }
  if (static_cast<int>(col_tier.size()) < n)
    throw InfeasibleError("tier capacities admit fewer partitions than required");

  const CompressionProfile none = no_compression();
  std::vector<std::vector<std::int64_t>> cost(n,
                                              std::vector<std::int64_t>(col_tier.size()));
  std::vector<std::vector<CostBreakdown>> breakdowns(n);
  for (int i = 0; i < n; ++i) {
    breakdowns[i].resize(params.levels());
    for (const TierSpec& t : params.tiers)
      breakdowns[i][t.id] = assignment_cost(parts[i], t.id, none, params, weights);
    for (std::size_t j = 0; j < col_tier.size(); ++j) {
      int tier = col_tier[j];
      bool ok = params.tier(tier).ttfb <= parts[i].latency_threshold;
      cost[i][j] = ok ? breakdowns[i][tier].total.micro() : detail::kForbidden;
    }
  }

  std::vector<int> match = detail::min_cost_assignment(cost);
  Assignment result;
  for (int i = 0; i < n; ++i) {
    if (match[i] < 0 || cost[i][match[i]] >= detail::kForbidden)
      throw InfeasibleError("no perfect matching satisfies the latency thresholds");
    int tier = col_tier[match[i]];
    result.choices[parts[i].id] = {tier, Scheme::none};
    result.breakdowns[parts[i].id] = breakdowns[i][tier];
    result.total += breakdowns[i][tier];
  }
  return result;
}

Assignment solve_exact(const std::vector<Partition>& parts, const ProfileTable& profiles,
                       const CostParams& params, const Weights& weights,
                       const CapacityPolicy& capacity, std::uint64_t budget) {
  params.validate();
  weights.validate();
  check_unique_ids(parts);

  const std::size_t n = parts.size();
  std::vector<std::vector<Candidate>> cands(n);
  std::vector<std::string> infeasible;
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < n; ++i) {
    cands[i] = feasible_candidates(parts[i], profiles, params, weights);
    if (cands[i].empty()) infeasible.push_back(parts[i].id);
    if (combos > budget / std::max<std::uint64_t>(1, cands[i].size()))
      throw BudgetExceededError("exact enumeration would exceed the budget of " +
                                std::to_string(budget) + " combinations");
    combos *= std::max<std::uint64_t>(1, cands[i].size());
  }
  if (!infeasible.empty()) {
    std::string msg = "no latency-feasible (tier, scheme) for partition(s):";
    for (const auto& id : infeasible) msg += " " + id;
    throw InfeasibleError(msg, infeasible);
  }

  // Admissible lower bound: sum of unconstrained per-partition minima below i.
  std::vector<Money> suffix_min(n + 1);
  for (std::size_t i = n; i-- > 0;)
    suffix_min[i] = suffix_min[i + 1] + cands[i].front().breakdown.total;

  std::vector<double> layer_used(params.levels(), 0);
  std::map<std::string, double> customer_used;
  double total_used = 0;

  auto fits = [&](const Partition& p, const Candidate& c) {
    switch (capacity.kind) {
      case CapacityPolicy::Kind::unbounded:
        return true;
      case CapacityPolicy::Kind::per_layer: {
        const TierSpec& t = params.tier(c.tier);
        return t.unlimited() ||
               layer_used[c.tier] + c.stored_gb <= t.capacity_gb + kCapacityEps;
      }
      case CapacityPolicy::Kind::total:
        return total_used + c.stored_gb <= capacity.total_gb + kCapacityEps;
      case CapacityPolicy::Kind::per_customer: {
        auto it = capacity.customer_gb.find(p.owner);
        if (it == capacity.customer_gb.end()) return true;  // no quota for this owner
        return customer_used[p.owner] + c.stored_gb <= it->second + kCapacityEps;
      }
    }
    return true;
  };

  std::vector<int> pick(n, -1), best_pick;
  Money best_total;
  bool have_best = false;

  auto dfs = [&](auto&& self, std::size_t i, Money acc) -> void {
    if (have_best && acc + suffix_min[i] >= best_total) return;
    if (i == n) {
      best_total = acc;
      best_pick = pick;
      have_best = true;
      return;
    }
    const Partition& p = parts[i];
    for (std::size_t c = 0; c < cands[i].size(); ++c) {
      const Candidate& cand = cands[i][c];
      if (!fits(p, cand)) continue;
      pick[i] = static_cast<int>(c);
      layer_used[cand.tier] += cand.stored_gb;
      total_used += cand.stored_gb;
      customer_used[p.owner] += cand.stored_gb;
      self(self, i + 1, acc + cand.breakdown.total);
      layer_used[cand.tier] -= cand.stored_gb;
      total_used -= cand.stored_gb;
      customer_used[p.owner] -= cand.stored_gb;
      pick[i] = -1;
    }
  };
  dfs(dfs, 0, Money{});

  if (!have_best)
    throw InfeasibleError("no assignment satisfies the capacity and latency constraints jointly");

  Assignment result;
  for (std::size_t i = 0; i < n; ++i) {
    const Candidate& c = cands[i][best_pick[i]];
    result.choices[parts[i].id] = {c.tier, c.scheme};
    result.breakdowns[parts[i].id] = c.breakdown;
    result.total += c.breakdown;
  }
  return result;
}

std::vector<Partition> relax_latency(std::vector<Partition> parts, double factor) {
  if (!(factor > 1.0)) throw ConfigError("latency relaxation factor must be > 1");
  for (Partition& p : parts) p.latency_threshold *= factor;
  return parts;
}

CostBreakdown validate_assignment(const std::vector<Partition>& parts,
                                  const Assignment& assignment, const ProfileTable& profiles,
                                  const CostParams& params, const Weights& weights,
                                  const CapacityPolicy& capacity) {
  if (assignment.choices.size() != parts.size())
    throw std::runtime_error("assignment does not cover every partition exactly once");

  std::vector<double> layer_used(params.levels(), 0);
  std::map<std::string, double> customer_used;
  double total_used = 0;
  CostBreakdown sum;

  for (const Partition& p : parts) {
    auto it = assignment.choices.find(p.id);
    if (it == assignment.choices.end())
      throw std::runtime_error("partition " + p.id + " missing from assignment");
    const auto& [tier, scheme] = it->second;
    if (p.frozen_scheme && scheme != *p.frozen_scheme)
      throw std::runtime_error("partition " + p.id + " violates its frozen compression scheme");
    const CompressionProfile& profile = profiles.at(p.id).at(scheme);
    if (assignment_latency(p, tier, profile, params) > p.latency_threshold)
      throw std::runtime_error("partition " + p.id + " violates its latency threshold");
    CostBreakdown fresh = assignment_cost(p, tier, profile, params, weights);
    auto rep = assignment.breakdowns.find(p.id);
    if (rep == assignment.breakdowns.end() || rep->second.total != fresh.total ||
        rep->second.storage != fresh.storage || rep->second.tier_change != fresh.tier_change ||
        rep->second.read != fresh.read ||
        rep->second.decompress_compute != fresh.decompress_compute)
      throw std::runtime_error("breakdown mismatch for partition " + p.id);
    double stored = p.span_gb / profile.ratio;
    layer_used[tier] += stored;
    total_used += stored;
    customer_used[p.owner] += stored;
    sum += fresh;
  }

  switch (capacity.kind) {
    case CapacityPolicy::Kind::unbounded:
      break;
    case CapacityPolicy::Kind::per_layer:
      for (const TierSpec& t : params.tiers)
        if (!t.unlimited() && layer_used[t.id] > t.capacity_gb + kCapacityEps)
          throw std::runtime_error("tier " + t.name + " over capacity");
      break;
    case CapacityPolicy::Kind::total:
      if (total_used > capacity.total_gb + kCapacityEps)
        throw std::runtime_error("total capacity exceeded");
      break;
    case CapacityPolicy::Kind::per_customer:
      for (const auto& [owner, used] : customer_used) {
        auto it = capacity.customer_gb.find(owner);
        if (it != capacity.customer_gb.end() && used > it->second + kCapacityEps)
          throw std::runtime_error("customer " + owner + " over capacity");
      }
      break;
  }

  if (sum.total != assignment.total.total)
    throw std::runtime_error("assignment grand total does not match the sum of breakdowns");
  return sum;
}

}  // namespace scope
