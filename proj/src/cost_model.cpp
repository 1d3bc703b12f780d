#include "scope/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace scope {

const TierSpec& CostParams::tier(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tiers.size())
    throw ConfigError("unknown tier id: " + std::to_string(id));
  return tiers[id];
}

Money CostParams::change_cost(int from, int to) const {
  tier(to);
  std::size_t row = from < 0 ? levels() : static_cast<std::size_t>(from);
  if (row > levels()) throw ConfigError("unknown tier id: " + std::to_string(from));
  return tier_change[row][to];
}

void CostParams::validate() const {
  if (tiers.empty()) throw ConfigError("no tiers configured");
  for (std::size_t i = 0; i < tiers.size(); ++i) {
    const TierSpec& t = tiers[i];
    if (t.id != static_cast<int>(i))
      throw ConfigError("tier ids must be 0..L-1 without gaps; got " + std::to_string(t.id) +
                        " at position " + std::to_string(i));
    if (t.storage_cost.negative() || t.read_cost.negative() || t.write_cost.negative())
      throw ConfigError("tier " + t.name + " has a negative cost");
    if (t.ttfb < 0) throw ConfigError("tier " + t.name + " has negative ttfb");
    if (!(t.capacity_gb > 0)) throw ConfigError("tier " + t.name + " needs capacity > 0 or inf");
  }
  if (!tiers.back().unlimited())
    throw ConfigError("the highest (archive) tier must have infinite capacity");
  if (tier_change.size() != levels() + 1)
    throw ConfigError("tier_change must have L+1 rows (last row = new data)");
  for (std::size_t u = 0; u < tier_change.size(); ++u) {
    if (tier_change[u].size() != levels()) throw ConfigError("tier_change row has wrong width");
    for (std::size_t v = 0; v < levels(); ++v) {
      if (tier_change[u][v].negative()) throw ConfigError("negative tier change cost");
      if (u == v && tier_change[u][v] != Money{})
        throw ConfigError("tier_change diagonal must be 0 (self-transfer is free)");
    }
  }
  if (compute_cost.negative()) throw ConfigError("compute_cost must be >= 0");
  if (billing_periods < 1) throw ConfigError("billing_periods must be >= 1");
}

void Weights::validate() const {
  if (alpha < 0 || beta < 0 || gamma < 0) throw ConfigError("weights must be >= 0");
  if (pushdown_fraction < 0 || pushdown_fraction > 1)
    throw ConfigError("pushdown_fraction must be in [0,1]");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_capacity(const std::string& v) {
  if (v == "inf" || v == "infinite") return std::numeric_limits<double>::infinity();
  try {
    return std::stod(v);
  } catch (const std::exception&) {
    throw ConfigError("bad capacity: '" + v + "'");
  }
}

double parse_seconds(const std::string& v, const std::string& what) {
  try {
    return std::stod(v);
  } catch (const std::exception&) {
    throw ConfigError("bad " + what + ": '" + v + "'");
  }
}

}  // namespace

CostParams load_cost_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open cost config: " + path.string());

  CostParams params;
  std::vector<std::pair<std::string, Money>> change_rows;  // row key -> values
  std::vector<std::pair<int, std::vector<Money>>> explicit_rows;
  std::vector<Money> new_row;
  bool have_new_row = false;

  std::string line, section;
  int cur_tier = -1;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      if (section.rfind("tier ", 0) == 0) {
        cur_tier = std::stoi(section.substr(5));
        if (cur_tier != static_cast<int>(params.tiers.size()))
          throw ConfigError("tier blocks must appear in order 0..L-1; got [" + section + "]");
        TierSpec t;
        t.id = cur_tier;
        t.capacity_gb = std::numeric_limits<double>::infinity();
        params.tiers.push_back(t);
      } else if (section != "tier_change") {
        throw ConfigError("unknown section [" + section + "] at line " + std::to_string(lineno));
      }
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value' at line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    if (section.rfind("tier ", 0) == 0) {
      TierSpec& t = params.tiers.back();
      if (key == "name")
        t.name = value;
      else if (key == "storage_cost")
        t.storage_cost = Money::parse(value);
      else if (key == "read_cost")
        t.read_cost = Money::parse(value);
      else if (key == "write_cost")
        t.write_cost = Money::parse(value);
      else if (key == "ttfb")
        t.ttfb = parse_seconds(value, "ttfb");
      else if (key == "capacity")
        t.capacity_gb = parse_capacity(value);
      else
        throw ConfigError("unknown tier key '" + key + "' at line " + std::to_string(lineno));
    } else if (section == "tier_change") {
      std::vector<Money> row;
      for (const auto& tok : csv::split(value, ' '))
        if (!tok.empty()) row.push_back(Money::parse(tok));
      if (key == "new") {
        new_row = row;
        have_new_row = true;
      } else if (key.rfind("row ", 0) == 0) {
        explicit_rows.emplace_back(std::stoi(key.substr(4)), row);
      } else {
        throw ConfigError("unknown tier_change key '" + key + "'");
      }
    } else {
      if (key == "compute_cost")
        params.compute_cost = Money::parse(value);
      else if (key == "billing_periods")
        params.billing_periods = std::stoi(value);
      else if (key == "decomp_units")
        params.decomp_units =
            value == "scaled_by_span" ? DecompUnits::scaled_by_span : DecompUnits::per_gb;
      else
        throw ConfigError("unknown key '" + key + "' at line " + std::to_string(lineno));
    }
  }

  const std::size_t L = params.tiers.size();
  if (L == 0) throw ConfigError("cost config defines no tiers");

  // Default change matrix: read from u plus write to v, diagonal free, and
  // the new-data row is just the write cost.
  params.tier_change.assign(L + 1, std::vector<Money>(L));
  for (std::size_t u = 0; u < L; ++u)
    for (std::size_t v = 0; v < L; ++v)
      if (u != v) params.tier_change[u][v] = params.tiers[u].read_cost + params.tiers[v].write_cost;
  for (std::size_t v = 0; v < L; ++v) params.tier_change[L][v] = params.tiers[v].write_cost;

  for (const auto& [u, row] : explicit_rows) {
    if (u < 0 || static_cast<std::size_t>(u) >= L) throw ConfigError("tier_change row out of range");
    if (row.size() != L) throw ConfigError("tier_change row must have L entries");
    params.tier_change[u] = row;
  }
  if (have_new_row) {
    if (new_row.size() != L) throw ConfigError("tier_change 'new' row must have L entries");
    params.tier_change[L] = new_row;
    for (std::size_t v = 0; v < L; ++v) params.tiers[v].write_cost = new_row[v];
  }

  params.validate();
  return params;
}

void write_cost_config(const CostParams& params, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "compute_cost = " << params.compute_cost.str() << "\n";
  out << "billing_periods = " << params.billing_periods << "\n";
  if (params.decomp_units == DecompUnits::scaled_by_span) out << "decomp_units = scaled_by_span\n";
  for (const TierSpec& t : params.tiers) {
    out << "\n[tier " << t.id << "]\n";
    out << "name = " << t.name << "\n";
    out << "storage_cost = " << t.storage_cost.str() << "\n";
    out << "read_cost = " << t.read_cost.str() << "\n";
    out << "write_cost = " << t.write_cost.str() << "\n";
    std::ostringstream ttfb;
    ttfb << t.ttfb;
    out << "ttfb = " << ttfb.str() << "\n";
    if (t.unlimited()) {
      out << "capacity = inf\n";
    } else {
      std::ostringstream cap;
      cap << t.capacity_gb;
      out << "capacity = " << cap.str() << "\n";
    }
  }
  out << "\n[tier_change]\n";
  for (std::size_t u = 0; u <= params.levels(); ++u) {
    if (u == params.levels())
      out << "new =";
    else
      out << "row " << u << " =";
    for (const Money& m : params.tier_change[u]) out << " " << m.str();
    out << "\n";
  }
}

CostBreakdown assignment_cost(const Partition& p, int tier, const CompressionProfile& profile,
                              const CostParams& params, const Weights& w) {
  profile.validate();
  const TierSpec& t = params.tier(tier);
  const double R = profile.ratio;
  const double stored_gb = p.span_gb / R;
  const double f = w.pushdown_fraction;
  const double decomp_factor =
      params.decomp_units == DecompUnits::scaled_by_span ? stored_gb : 1.0;

  CostBreakdown b;
  b.storage = t.storage_cost.scaled(w.alpha * stored_gb * params.billing_periods);
  b.tier_change = params.change_cost(p.current_tier, tier).scaled(w.gamma * stored_gb);
  // Access terms are scaled by (1-f) as a separate final step so that the
  // pushdown split is exact in fixed point.
  b.read = t.read_cost.scaled(w.beta * p.accesses * stored_gb).scaled(1.0 - f);
  b.decompress_compute =
      params.compute_cost
          .scaled(w.beta * p.accesses * profile.decomp_seconds_per_gb * decomp_factor)
          .scaled(1.0 - f);
  b.total = b.storage + b.tier_change + b.read + b.decompress_compute;
  b.ttfb = t.ttfb;
  b.expected_decomp_latency =
      profile.scheme == Scheme::none ? 0.0 : profile.decomp_seconds_per_gb * stored_gb;
  return b;
}

double assignment_latency(const Partition& p, int tier, const CompressionProfile& profile,
                          const CostParams& params) {
  profile.validate();
  const TierSpec& t = params.tier(tier);
  if (profile.scheme == Scheme::none) return t.ttfb;
  double d = profile.decomp_seconds_per_gb;
  if (params.decomp_units == DecompUnits::scaled_by_span) d *= p.span_gb / profile.ratio;
  return d + t.ttfb;
}

}  // namespace scope
