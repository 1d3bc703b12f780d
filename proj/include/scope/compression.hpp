#pragma once

#include <string>
#include <string_view>

#include "scope/errors.hpp"

namespace scope {

enum class Scheme { none, gzip, snappy, lz4 };
enum class Layout { row_store, column_store };

constexpr Scheme kAllSchemes[] = {Scheme::none, Scheme::gzip, Scheme::snappy, Scheme::lz4};
constexpr Layout kAllLayouts[] = {Layout::row_store, Layout::column_store};

std::string scheme_name(Scheme s);
Scheme scheme_from_name(std::string_view name);
std::string layout_name(Layout l);
Layout layout_from_name(std::string_view name);

// Per (partition, scheme, layout) compression performance, ground truth or
// predicted. ratio = uncompressed / compressed bytes; decompression time is
// normalized to seconds per GB of uncompressed data.
struct CompressionProfile {
  Scheme scheme = Scheme::none;
  Layout layout = Layout::row_store;
  double ratio = 1.0;
  double decomp_seconds_per_gb = 0.0;

  void validate() const {
    if (!(ratio > 0)) throw ConfigError("compression ratio must be > 0");
    if (decomp_seconds_per_gb < 0) throw ConfigError("decompression speed must be >= 0");
    if (scheme == Scheme::none && (ratio != 1.0 || decomp_seconds_per_gb != 0.0))
      throw ConfigError("scheme 'none' must have ratio 1 and decompression time 0");
  }
};

inline CompressionProfile no_compression() { return CompressionProfile{}; }

// Raw byte-buffer codecs. gzip is backed by zlib; snappy and lz4 are
// self-contained implementations of the respective block formats.
std::string compress_bytes(Scheme s, std::string_view raw);
std::string decompress_bytes(Scheme s, std::string_view compressed, std::size_t raw_size);

}  // namespace scope
