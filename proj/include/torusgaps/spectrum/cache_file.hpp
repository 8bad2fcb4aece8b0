#pragma once

// Binary spectrum cache, little-endian:
//
//   offset  size  field
//   0       4     magic "TGSP"
//   4       4     version (u32) = 1
//   8       1     class (u8): 0 generic, 1 rectangular
//   9       3     zero padding
//   12      8     a1 (f64)
//   20      8     a2 (f64)
//   28      8     a3 (f64)
//   36      8     cutoff N (f64)
//   44      8     count (u64)
//   52      8*c   values (f64)
//   52+8c   4     CRC-32 (zlib polynomial) of bytes [0, 52+8c)

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include <unistd.h>
#include <zlib.h>

#include "torusgaps/spectrum/spectrum.hpp"

namespace torusgaps {

inline constexpr char kCacheMagic[4] = {'T', 'G', 'S', 'P'};
inline constexpr std::uint32_t kCacheVersion = 1;
inline constexpr std::size_t kCacheHeaderSize = 52;

namespace detail {

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.insert(out.end(), bytes, bytes + sizeof(T));
}

template <typename T>
T get_le(const unsigned char* p) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

inline std::uint32_t crc32_of(const unsigned char* data, std::size_t size) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  while (size > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(size, 1u << 30));
    crc = ::crc32(crc, data, chunk);
    data += chunk;
    size -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

inline std::atomic<std::uint64_t> temp_counter{0};

}  // namespace detail

inline std::vector<unsigned char> encode_spectrum(const Spectrum& spectrum) {
  std::vector<unsigned char> out;
  out.reserve(kCacheHeaderSize + 8 * spectrum.count() + 4);
  out.insert(out.end(), kCacheMagic, kCacheMagic + 4);
  detail::put_le<std::uint32_t>(out, kCacheVersion);
  out.push_back(spectrum.form().symmetry_class() == SymmetryClass::Generic ? 0 : 1);
  out.insert(out.end(), 3, 0);
  detail::put_le<double>(out, spectrum.form().a1());
  detail::put_le<double>(out, spectrum.form().a2());
  detail::put_le<double>(out, spectrum.form().a3());
  detail::put_le<double>(out, spectrum.cutoff());
  detail::put_le<std::uint64_t>(out, spectrum.count());
  for (double v : spectrum.values()) detail::put_le<double>(out, v);
  detail::put_le<std::uint32_t>(out, detail::crc32_of(out.data(), out.size()));
  return out;
}

inline Spectrum decode_spectrum(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kCacheMagic, 4) != 0) {
    throw Error(Errc::BadMagic, "not a spectrum cache file");
  }
  if (bytes.size() < kCacheHeaderSize) throw Error(Errc::TruncatedFile, "header is incomplete");
  const auto version = detail::get_le<std::uint32_t>(bytes.data() + 4);
  if (version != kCacheVersion) {
    throw Error(Errc::VersionMismatch, "cache version " + std::to_string(version));
  }
  const auto count = detail::get_le<std::uint64_t>(bytes.data() + 44);
  if (count > (bytes.size() - kCacheHeaderSize) / 8) throw Error(Errc::TruncatedFile, "value block is incomplete");
  const std::size_t payload = kCacheHeaderSize + 8 * count;
  if (bytes.size() < payload + 4) throw Error(Errc::TruncatedFile, "checksum is missing");
  if (bytes.size() > payload + 4) throw Error(Errc::ChecksumMismatch, "trailing bytes after checksum");
  const auto stored = detail::get_le<std::uint32_t>(bytes.data() + payload);
  if (stored != detail::crc32_of(bytes.data(), payload)) throw Error(Errc::ChecksumMismatch, "CRC-32 mismatch");

  const std::uint8_t cls = bytes[8];
  if (cls > 1) throw Error(Errc::ChecksumMismatch, "unknown symmetry class byte");
  const auto form = validate_form(detail::get_le<double>(bytes.data() + 12), detail::get_le<double>(bytes.data() + 20),
                                  detail::get_le<double>(bytes.data() + 28),
                                  cls == 0 ? SymmetryClass::Generic : SymmetryClass::Rectangular);
  const double cutoff = detail::get_le<double>(bytes.data() + 36);
  std::vector<double> values(count);
  for (std::uint64_t i = 0; i < count; ++i) values[i] = detail::get_le<double>(bytes.data() + kCacheHeaderSize + 8 * i);
  return Spectrum(form, cutoff, std::move(values));
}

/// Writes atomically: the bytes go to a sibling temporary file that is then
/// renamed over `path`, so concurrent readers see either the old or new file.
inline void write_cache(const Spectrum& spectrum, const std::filesystem::path& path) {
  const auto bytes = encode_spectrum(spectrum);
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(detail::temp_counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot open " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(Errc::IoError, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::IoError, "rename to " + path.string() + " failed");
  }
}

inline Spectrum read_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0, std::ios::beg);
  std::vector<unsigned char> bytes(size);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size));
  if (!in) throw Error(Errc::IoError, "read failed for " + path.string());
  return decode_spectrum(bytes);
}

}  // namespace torusgaps
