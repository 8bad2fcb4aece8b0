#pragma once

#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "torusgaps/spectrum/cache_file.hpp"

namespace torusgaps {

namespace fs = std::filesystem;

/// Cache directory: $TORUSGAPS_CACHE if set and nonempty, else `configured`.
inline fs::path resolve_cache_dir(const std::string& configured) {
  if (const char* env = std::getenv("TORUSGAPS_CACHE"); env != nullptr && *env != '\0') return fs::path(env);
  return fs::path(configured);
}

/// Files are named <class>_<a1>_<a2>_<a3>_N<N>.tgsp with 17-digit values.
inline std::string cache_stem(const ReducedForm& form) {
  return std::string(class_name(form.symmetry_class())) + "_" + format_double(form.a1()) + "_" +
         format_double(form.a2()) + "_" + format_double(form.a3()) + "_N";
}

inline std::string cache_file_name(const ReducedForm& form, double n) {
  return cache_stem(form) + format_double(n) + ".tgsp";
}

struct CacheDecision {
  fs::path path;        // file to read on a hit, or to write on a miss
  bool hit = false;
  double cached_cutoff = 0.0;
};

/// Looks for a cached spectrum of `form` with cutoff >= n; the smallest such
/// cutoff wins. On a miss the path names the file to create for cutoff n.
inline CacheDecision cache_policy(const fs::path& dir, const ReducedForm& form, double n) {
  CacheDecision decision{dir / cache_file_name(form, n), false, 0.0};
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return decision;
  const std::string stem = cache_stem(form);
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.size() <= stem.size() + 5 || name.compare(0, stem.size(), stem) != 0) continue;
    if (name.compare(name.size() - 5, 5, ".tgsp") != 0) continue;
    const std::string number = name.substr(stem.size(), name.size() - stem.size() - 5);
    char* end = nullptr;
    const double cutoff = std::strtod(number.c_str(), &end);
    if (end != number.c_str() + number.size() || !(cutoff >= n)) continue;
    if (!decision.hit || cutoff < decision.cached_cutoff) {
      decision = {entry.path(), true, cutoff};
    }
  }
  return decision;
}

/// Spectrum source backed by a cache directory. Hits are truncated to the
/// requested cutoff; unreadable files are recomputed and replaced, with a
/// warning recorded.
class SpectrumCache {
 public:
  explicit SpectrumCache(std::optional<fs::path> dir) : dir_(std::move(dir)) {}

  Spectrum get(const ReducedForm& form, double n) {
    if (!dir_) return enumerate(form, n);
    const CacheDecision decision = cache_policy(*dir_, form, n);
    if (decision.hit) {
      try {
        Spectrum cached = read_cache(decision.path);
        if (!(cached.form() == form) || cached.cutoff() < n) {
          throw Error(Errc::ChecksumMismatch, "cache contents do not match the file name");
        }
        count_hit();
        return cached.cutoff() == n ? cached : cached.truncated(n);
      } catch (const Error& e) {
        warn("cache file " + decision.path.string() + " unusable (" + e.what() + "); recomputing");
        std::error_code ec;
        fs::remove(decision.path, ec);
      }
    }
    Spectrum fresh = enumerate(form, n);
    try {
      std::error_code ec;
      fs::create_directories(*dir_, ec);
      write_cache(fresh, *dir_ / cache_file_name(form, n));
      count_miss();
    } catch (const Error& e) {
      warn(std::string("cache write failed: ") + e.what());
    }
    return fresh;
  }

  std::vector<std::string> warnings() const {
    std::lock_guard lock(mutex_);
    return warnings_;
  }
  std::size_t hits() const {
    std::lock_guard lock(mutex_);
    return hits_;
  }
  std::size_t misses() const {
    std::lock_guard lock(mutex_);
    return misses_;
  }

 private:
  void warn(std::string message) {
    std::lock_guard lock(mutex_);
    warnings_.push_back(std::move(message));
  }
  void count_hit() {
    std::lock_guard lock(mutex_);
    ++hits_;
  }
  void count_miss() {
    std::lock_guard lock(mutex_);
    ++misses_;
  }

  std::optional<fs::path> dir_;
  mutable std::mutex mutex_;
  std::vector<std::string> warnings_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace torusgaps
