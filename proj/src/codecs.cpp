#include <zlib.h>

#include <cstring>
#include <vector>

#include "scope/compression.hpp"

namespace scope {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::none:
      return "none";
    case Scheme::gzip:
      return "gzip";
    case Scheme::snappy:
      return "snappy";
    case Scheme::lz4:
      return "lz4";
  }
  throw ConfigError("unknown scheme");
}

Scheme scheme_from_name(std::string_view name) {
  if (name == "none") return Scheme::none;
  if (name == "gzip") return Scheme::gzip;
  if (name == "snappy") return Scheme::snappy;
  if (name == "lz4") return Scheme::lz4;
  throw ConfigError("unknown compression scheme: " + std::string(name));
}

std::string layout_name(Layout l) {
  return l == Layout::row_store ? "row_store" : "column_store";
}

Layout layout_from_name(std::string_view name) {
  if (name == "row_store") return Layout::row_store;
  if (name == "column_store") return Layout::column_store;
  throw ConfigError("unknown layout: " + std::string(name));
}

namespace {

std::string gzip_compress(std::string_view raw) {
  z_stream strm{};
  if (deflateInit2(&strm, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK)
    throw std::runtime_error("deflateInit2 failed");
  std::string out;
  out.resize(deflateBound(&strm, raw.size()) + 32);
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(raw.data()));
  strm.avail_in = static_cast<uInt>(raw.size());
  strm.next_out = reinterpret_cast<Bytef*>(out.data());
  strm.avail_out = static_cast<uInt>(out.size());
  int rc = deflate(&strm, Z_FINISH);
  deflateEnd(&strm);
  if (rc != Z_STREAM_END) throw std::runtime_error("gzip compression failed");
  out.resize(out.size() - strm.avail_out);
  return out;
}

std::string gzip_decompress(std::string_view compressed, std::size_t raw_size) {
  z_stream strm{};
  if (inflateInit2(&strm, 15 + 16) != Z_OK) throw std::runtime_error("inflateInit2 failed");
  std::string out;
  out.resize(raw_size);
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  strm.avail_in = static_cast<uInt>(compressed.size());
  strm.next_out = reinterpret_cast<Bytef*>(out.data());
  strm.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&strm, Z_FINISH);
  inflateEnd(&strm);
  if (rc != Z_STREAM_END) throw std::runtime_error("gzip decompression failed");
  out.resize(out.size() - strm.avail_out);
  return out;
}

inline std::uint32_t read32(const char* p) {
  std::uint32_t v;
  std::memcpy(&v, p, 4);
  return v;
}

inline std::uint32_t hash32(std::uint32_t v) { return (v * 2654435761u) >> 19; }  // 13-bit table

constexpr int kHashBits = 13;
constexpr std::size_t kHashSize = 1u << kHashBits;

// ---- LZ4 block format ----
// token: high nibble literal length, low nibble match length - 4, both with
// 255-byte extensions; matches are (2-byte LE offset, length >= 4). The last
// five bytes of a block are always literals and no match may start within the
// last twelve.

std::string lz4_compress(std::string_view raw) {
  const char* src = raw.data();
  const std::size_t n = raw.size();
  std::string out;
  out.reserve(n + n / 255 + 16);

  auto emit_sequence = [&](std::size_t lit_begin, std::size_t lit_len, std::size_t offset,
                           std::size_t match_len) {
    std::size_t ml_token = match_len >= 4 ? match_len - 4 : 0;
    unsigned char token = static_cast<unsigned char>(
        (lit_len >= 15 ? 15u : static_cast<unsigned>(lit_len)) << 4 |
        (match_len == 0 ? 0u : (ml_token >= 15 ? 15u : static_cast<unsigned>(ml_token))));
    out.push_back(static_cast<char>(token));
    if (lit_len >= 15) {
      std::size_t rest = lit_len - 15;
      while (rest >= 255) {
        out.push_back(static_cast<char>(0xFF));
        rest -= 255;
      }
      out.push_back(static_cast<char>(rest));
    }
    out.append(src + lit_begin, lit_len);
    if (match_len == 0) return;  // final literal run
    out.push_back(static_cast<char>(offset & 0xFF));
    out.push_back(static_cast<char>((offset >> 8) & 0xFF));
    if (ml_token >= 15) {
      std::size_t rest = ml_token - 15;
      while (rest >= 255) {
        out.push_back(static_cast<char>(0xFF));
        rest -= 255;
      }
      out.push_back(static_cast<char>(rest));
    }
  };

  if (n < 13) {
    emit_sequence(0, n, 0, 0);
    return out;
  }

  std::vector<std::int64_t> table(kHashSize, -1);
  const std::size_t mf_limit = n - 12;   // last position a match may start
  const std::size_t match_limit = n - 5; // matches must not reach the last 5 bytes
  std::size_t anchor = 0, pos = 0;
  while (pos < mf_limit) {
    std::uint32_t h = hash32(read32(src + pos)) & (kHashSize - 1);
    std::int64_t cand = table[h];
    table[h] = static_cast<std::int64_t>(pos);
    if (cand >= 0 && pos - static_cast<std::size_t>(cand) <= 65535 &&
        read32(src + cand) == read32(src + pos)) {
      std::size_t len = 4;
      while (pos + len < match_limit && src[cand + len] == src[pos + len]) ++len;
      emit_sequence(anchor, pos - anchor, pos - static_cast<std::size_t>(cand), len);
      pos += len;
      anchor = pos;
    } else {
      ++pos;
    }
  }
  emit_sequence(anchor, n - anchor, 0, 0);
  return out;
}

std::string lz4_decompress(std::string_view compressed, std::size_t raw_size) {
  std::string out;
  out.reserve(raw_size);
  const unsigned char* p = reinterpret_cast<const unsigned char*>(compressed.data());
  const unsigned char* end = p + compressed.size();

  auto read_len_ext = [&](std::size_t base) {
    std::size_t len = base;
    if (base == 15) {
      unsigned char b;
      do {
        if (p >= end) throw std::runtime_error("lz4: truncated length");
        b = *p++;
        len += b;
      } while (b == 0xFF);
    }
    return len;
  };

  while (p < end) {
    unsigned char token = *p++;
    std::size_t lit_len = read_len_ext(token >> 4);
    if (p + lit_len > end) throw std::runtime_error("lz4: truncated literals");
    out.append(reinterpret_cast<const char*>(p), lit_len);
    p += lit_len;
    if (p >= end) break;  // final sequence carries no match
    if (p + 2 > end) throw std::runtime_error("lz4: truncated offset");
    std::size_t offset = p[0] | (static_cast<std::size_t>(p[1]) << 8);
    p += 2;
    if (offset == 0 || offset > out.size()) throw std::runtime_error("lz4: bad offset");
    std::size_t match_len = read_len_ext(token & 0x0F) + 4;
    std::size_t from = out.size() - offset;
    for (std::size_t i = 0; i < match_len; ++i) out.push_back(out[from + i]);
  }
  if (out.size() != raw_size) throw std::runtime_error("lz4: size mismatch");
  return out;
}

// ---- Snappy format ----
// varint uncompressed length, then elements tagged literal / copy with 1-, 2-
// or 4-byte offsets.

void snappy_emit_literal(std::string& out, const char* data, std::size_t len) {
  while (len > 0) {
    std::size_t chunk = len;
    if (chunk <= 60) {
      out.push_back(static_cast<char>((chunk - 1) << 2));
    } else {
      std::size_t v = chunk - 1;
      int bytes = v < (1u << 8) ? 1 : v < (1u << 16) ? 2 : v < (1u << 24) ? 3 : 4;
      out.push_back(static_cast<char>((59 + bytes) << 2));
      for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    out.append(data, chunk);
    data += chunk;
    len -= chunk;
  }
}

void snappy_emit_copy(std::string& out, std::size_t offset, std::size_t len) {
  // split into <=64 byte copies, two-byte offset form; keep a >=4 byte tail
  while (len > 0) {
    std::size_t chunk = len > 64 ? (len - 64 >= 4 ? 64 : 60) : len;
    out.push_back(static_cast<char>(0x02 | ((chunk - 1) << 2)));
    out.push_back(static_cast<char>(offset & 0xFF));
    out.push_back(static_cast<char>((offset >> 8) & 0xFF));
    len -= chunk;
  }
}

std::string snappy_compress(std::string_view raw) {
  std::string out;
  std::size_t v = raw.size();
  while (v >= 0x80) {
    out.push_back(static_cast<char>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));

  const char* src = raw.data();
  const std::size_t n = raw.size();
  if (n < 8) {
    if (n > 0) snappy_emit_literal(out, src, n);
    return out;
  }
  std::vector<std::int64_t> table(kHashSize, -1);
  std::size_t anchor = 0, pos = 0;
  while (pos + 4 <= n) {
    std::uint32_t h = hash32(read32(src + pos)) & (kHashSize - 1);
    std::int64_t cand = table[h];
    table[h] = static_cast<std::int64_t>(pos);
    if (cand >= 0 && pos - static_cast<std::size_t>(cand) <= 65535 &&
        read32(src + cand) == read32(src + pos)) {
      std::size_t len = 4;
      while (pos + len < n && src[cand + len] == src[pos + len]) ++len;
      if (pos > anchor) snappy_emit_literal(out, src + anchor, pos - anchor);
      snappy_emit_copy(out, pos - static_cast<std::size_t>(cand), len);
      pos += len;
      anchor = pos;
    } else {
      ++pos;
    }
  }
  if (anchor < n) snappy_emit_literal(out, src + anchor, n - anchor);
  return out;
}

std::string snappy_decompress(std::string_view compressed, std::size_t raw_size) {
  const unsigned char* p = reinterpret_cast<const unsigned char*>(compressed.data());
  const unsigned char* end = p + compressed.size();
  std::size_t expected = 0;
  int shift = 0;
  while (true) {
    if (p >= end) throw std::runtime_error("snappy: truncated preamble");
    unsigned char b = *p++;
    expected |= static_cast<std::size_t>(b & 0x7F) << shift;
    if (!(b & 0x80)) break;
    shift += 7;
  }
  std::string out;
  out.reserve(expected);
  while (p < end) {
    unsigned char tag = *p++;
    switch (tag & 0x03) {
      case 0x00: {  // literal
        std::size_t len = tag >> 2;
        if (len >= 60) {
          int bytes = static_cast<int>(len) - 59;
          len = 0;
          for (int i = 0; i < bytes; ++i) {
            if (p >= end) throw std::runtime_error("snappy: truncated literal length");
            len |= static_cast<std::size_t>(*p++) << (8 * i);
          }
        }
        len += 1;
        if (p + len > end) throw std::runtime_error("snappy: truncated literal");
        out.append(reinterpret_cast<const char*>(p), len);
        p += len;
        break;
      }
      case 0x01: {  // copy, 1-byte offset
        std::size_t len = ((tag >> 2) & 0x07) + 4;
        if (p >= end) throw std::runtime_error("snappy: truncated copy");
        std::size_t offset = (static_cast<std::size_t>(tag >> 5) << 8) | *p++;
        if (offset == 0 || offset > out.size()) throw std::runtime_error("snappy: bad offset");
        std::size_t from = out.size() - offset;
        for (std::size_t i = 0; i < len; ++i) out.push_back(out[from + i]);
        break;
      }
      case 0x02:
      case 0x03: {  // copy, 2- or 4-byte offset
        std::size_t len = (tag >> 2) + 1;
        int bytes = (tag & 0x03) == 0x02 ? 2 : 4;
        std::size_t offset = 0;
        for (int i = 0; i < bytes; ++i) {
          if (p >= end) throw std::runtime_error("snappy: truncated offset");
          offset |= static_cast<std::size_t>(*p++) << (8 * i);
        }
        if (offset == 0 || offset > out.size()) throw std::runtime_error("snappy: bad offset");
        std::size_t from = out.size() - offset;
        for (std::size_t i = 0; i < len; ++i) out.push_back(out[from + i]);
        break;
      }
    }
  }
  if (out.size() != expected || out.size() != raw_size)
    throw std::runtime_error("snappy: size mismatch");
  return out;
}

}  // namespace

std::string compress_bytes(Scheme s, std::string_view raw) {
  switch (s) {
    case Scheme::none:
      return std::string(raw);
    case Scheme::gzip:
      return gzip_compress(raw);
    case Scheme::snappy:
      return snappy_compress(raw);
    case Scheme::lz4:
      return lz4_compress(raw);
  }
  throw ConfigError("unknown scheme");
}

std::string decompress_bytes(Scheme s, std::string_view compressed, std::size_t raw_size) {
  switch (s) {
    case Scheme::none:
      return std::string(compressed);
    case Scheme::gzip:
      return gzip_decompress(compressed, raw_size);
    case Scheme::snappy:
      return snappy_decompress(compressed, raw_size);
    case Scheme::lz4:
      return lz4_decompress(compressed, raw_size);
  }
  throw ConfigError("unknown scheme");
}

}  // namespace scope
