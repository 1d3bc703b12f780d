#include "scope/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace scope {

void Catalog::add(FileRef f) {
  if (f.id.empty()) throw ConfigError("file with empty id");
  if (!(f.size_gb > 0)) throw ConfigError("file " + f.id + " has non-positive size");
  if (has(f.id)) throw ConfigError("duplicate file id: " + f.id);
  index_[f.id] = files_.size();
  files_.push_back(std::move(f));
}

const FileRef& Catalog::file(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ConfigError("unknown file id: " + id);
  return files_[it->second];
}

double Catalog::span_of(const std::vector<std::string>& file_ids) const {
  double total = 0;
  for (const auto& id : file_ids) total += file(id).size_gb;
  return total;
}

namespace csv {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::vector<std::string>> read_table(const std::filesystem::path& path,
                                                 const std::vector<std::string>& expected_header) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty file: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split(line, ',');
  if (header != expected_header) {
    std::string want;
    for (const auto& h : expected_header) want += (want.empty() ? "" : ",") + h;
    throw ConfigError(path.string() + ": expected header '" + want + "', got '" + line + "'");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto row = split(line, ',');
    if (row.size() != expected_header.size())
      throw ConfigError(path.string() + ": row with " + std::to_string(row.size()) +
                        " fields, expected " + std::to_string(expected_header.size()));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace csv

namespace {

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad " + what + ": '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ConfigError("bad " + what + ": '" + s + "'");
  return v;
}

}  // namespace

Catalog ingest_catalog(const std::filesystem::path& path) {
  Catalog catalog;
  for (const auto& row : csv::read_table(path, {"id", "size_gb", "dataset_id", "created_month"})) {
    FileRef f;
    f.id = row[0];
    f.size_gb = parse_double(row[1], "size_gb");
    f.dataset_id = row[2];
    f.created_month = parse_int(row[3], "created_month");
    catalog.add(std::move(f));
  }
  return catalog;
}

std::vector<QueryFamily> group_queries(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& rows,
    const Catalog& catalog) {
  // key: canonical sorted unique file-id tuple
  std::map<std::vector<std::string>, double> freq;
  for (const auto& [qid, files] : rows) {
    if (files.empty()) throw ConfigError("query " + qid + " scans no files");
    std::vector<std::string> key = files;
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    for (const auto& f : key)
      if (!catalog.has(f)) throw ConfigError("query " + qid + " references unknown file " + f);
    freq[key] += 1;
  }
  std::vector<QueryFamily> out;
  std::size_t i = 0;
  for (const auto& [files, count] : freq) {
    QueryFamily fam;
    fam.id = "qf" + std::to_string(i++);
    fam.files = files;
    fam.frequency = count;
    int lo = catalog.file(files.front()).created_month, hi = lo;
    for (const auto& f : files) {
      lo = std::min(lo, catalog.file(f).created_month);
      hi = std::max(hi, catalog.file(f).created_month);
    }
    fam.start_time = lo;
    fam.end_time = hi + 1;
    out.push_back(std::move(fam));
  }
  return out;
}

std::vector<QueryFamily> ingest_query_log(const std::filesystem::path& path,
                                          const Catalog& catalog) {
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
  for (const auto& row : csv::read_table(path, {"query_id", "files"})) {
    auto files = csv::split(row[1], ';');
    files.erase(std::remove(files.begin(), files.end(), std::string{}), files.end());
    rows.emplace_back(row[0], std::move(files));
  }
  return group_queries(rows, catalog);
}

std::vector<AccessRecord> ingest_access_log(const std::filesystem::path& path) {
  std::vector<AccessRecord> out;
  for (const auto& row :
       csv::read_table(path, {"dataset_id", "month", "reads", "writes", "bytes_read_gb"})) {
    AccessRecord r;
    r.dataset_id = row[0];
    r.month = parse_int(row[1], "month");
    r.reads = parse_double(row[2], "reads");
    r.writes = parse_double(row[3], "writes");
    r.bytes_read_gb = parse_double(row[4], "bytes_read_gb");
    if (r.reads < 0 || r.writes < 0 || r.bytes_read_gb < 0)
      throw ConfigError("negative access counts for " + r.dataset_id);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Partition> build_initial_partitions(
    const std::vector<QueryFamily>& families, const Catalog& catalog,
    double default_latency_threshold,
    const std::unordered_map<std::string, double>& latency_overrides) {
  std::vector<Partition> parts;
  parts.reserve(families.size());
  for (const auto& fam : families) {
    Partition p;
    p.id = fam.id;
    p.files = fam.files;
    p.span_gb = catalog.span_of(fam.files);
    p.accesses = fam.frequency;
    auto it = latency_overrides.find(fam.id);
    p.latency_threshold = it != latency_overrides.end() ? it->second : default_latency_threshold;
    if (!(p.latency_threshold > 0))
      throw ConfigError("partition " + p.id + " needs a positive latency threshold");
    p.current_tier = -1;
    p.start_time = fam.start_time;
    p.end_time = fam.end_time;
    // owner = dataset holding the largest share of the partition's volume
    std::map<std::string, double> by_dataset;
    for (const auto& f : fam.files) by_dataset[catalog.file(f).dataset_id] += catalog.file(f).size_gb;
    double best = -1;
    for (const auto& [ds, vol] : by_dataset)
      if (vol > best) {
        best = vol;
        p.owner = ds;
      }
    parts.push_back(std::move(p));
  }
  return parts;
}

}  // namespace scope
