#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "scope/compression.hpp"
#include "scope/errors.hpp"

namespace scope {

// One stored file. Size in GB doubles as the record volume of the file.
struct FileRef {
  std::string id;
  double size_gb = 0;
  std::string dataset_id;
  int created_month = 0;
};

class Catalog {
 public:
  void add(FileRef f);
  bool has(const std::string& id) const { return index_.count(id) > 0; }
  const FileRef& file(const std::string& id) const;
  const std::vector<FileRef>& files() const { return files_; }
  std::size_t size() const { return files_.size(); }

  // Total volume of a file-id set, each file counted once.
  double span_of(const std::vector<std::string>& file_ids) const;

 private:
  std::vector<FileRef> files_;
  std::unordered_map<std::string, std::size_t> index_;
};

// All queries that scan the same file set collapse into one family.
struct QueryFamily {
  std::string id;
  std::vector<std::string> files;  // sorted, unique
  double frequency = 0;
  std::optional<double> start_time;
  std::optional<double> end_time;
};

struct Partition {
  std::string id;
  std::vector<std::string> files;  // sorted, unique
  double span_gb = 0;              // always recomputed from files via the catalog
  double accesses = 0;
  double latency_threshold = 0;  // seconds
  int current_tier = -1;         // -1 = newly ingested
  std::optional<Scheme> frozen_scheme;
  std::optional<double> start_time;
  std::optional<double> end_time;
  std::string owner;  // customer / dataset owning the bulk of the data
};

struct AccessRecord {
  std::string dataset_id;
  int month = 0;
  double reads = 0;
  double writes = 0;
  double bytes_read_gb = 0;
};

Catalog ingest_catalog(const std::filesystem::path& path);
std::vector<QueryFamily> ingest_query_log(const std::filesystem::path& path, const Catalog& catalog);
std::vector<AccessRecord> ingest_access_log(const std::filesystem::path& path);

// One partition per family: span = summed file sizes, accesses = family
// frequency, fresh data (tier -1), no frozen scheme.
std::vector<Partition> build_initial_partitions(
    const std::vector<QueryFamily>& families, const Catalog& catalog,
    double default_latency_threshold,
    const std::unordered_map<std::string, double>& latency_overrides = {});

// Group query rows by identical file set; frequency = row count per set.
std::vector<QueryFamily> group_queries(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& rows,
    const Catalog& catalog);

namespace csv {
// Minimal delimited-text helpers shared by the ingestion and emission paths.
std::vector<std::string> split(const std::string& line, char sep);
std::vector<std::vector<std::string>> read_table(const std::filesystem::path& path,
                                                 const std::vector<std::string>& expected_header);
}  // namespace csv

}  // namespace scope
