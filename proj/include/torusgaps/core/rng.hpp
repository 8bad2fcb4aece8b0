#pragma once

#include <cstdint>

namespace torusgaps {

// Counter-based generator: draw i of stream s under root seed k is
// mix(key(k, s) + (i + 1) * golden), where mix is the SplitMix64 finalizer.
// Streams for sample j of an experiment are RngState{seed, j}; nested streams
// use RngState::child. No state is shared between draws, so any draw can be
// recomputed from (seed, stream, index) alone.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix_finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  constexpr std::uint64_t key() const noexcept {
    return splitmix_finalize(seed ^ splitmix_finalize(stream + kGolden));
  }

  constexpr std::uint64_t draw(std::uint64_t index) const noexcept {
    return splitmix_finalize(key() + (index + 1) * kGolden);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t index) const noexcept {
    return static_cast<double>(draw(index) >> 11) * 0x1.0p-53;
  }

  constexpr RngState child(std::uint64_t i) const noexcept {
    return RngState{seed, splitmix_finalize(stream * kGolden + i + 1)};
  }

  friend constexpr bool operator==(const RngState&, const RngState&) = default;
};

/// Sequential view over one stream.
class RngCursor {
 public:
  explicit constexpr RngCursor(RngState state) noexcept : state_(state) {}

  constexpr std::uint64_t next_u64() noexcept { return state_.draw(index_++); }
  constexpr double next_uniform() noexcept { return state_.uniform(index_++); }

  /// Uniform integer in [lo, hi] (inclusive); hi - lo must be < 2^63.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    // Lemire's multiply-shift reduction; bias < 2^-40 for the spans used here.
    const auto r = static_cast<unsigned __int128>(next_u64()) * span;
    return lo + static_cast<std::int64_t>(r >> 64);
  }

  constexpr std::uint64_t consumed() const noexcept { return index_; }
  constexpr const RngState& state() const noexcept { return state_; }

 private:
  RngState state_;
  std::uint64_t index_ = 0;
};

}  // namespace torusgaps
