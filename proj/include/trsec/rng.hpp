#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace trsec {

/// Deterministic random stream addressed by (master_seed, stream_id).
///
/// The draw sequence is a pure function of the two ids: the engine is a
/// std::mt19937_64 (output sequence fixed by the standard) seeded with a
/// splitmix64-style mix of both ids, and all real-valued draws are mapped
/// from raw 64-bit words in-house (Box-Muller for Gaussians). This keeps
/// results bit-identical across runs, thread counts and schedulers; only
/// libm differences between build environments can change them.
///
/// Sub-streams are derived with substream(key): stream_id' = mix(stream_id,
/// key), master unchanged. Workers must own distinct (stream_id, key) paths.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  /// Child stream for a fixed purpose key; independent of draw state.
  RngStream substream(std::uint64_t key) const;

  std::uint64_t master_seed() const { return master_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64();

  /// Uniform on (0,1], 53-bit resolution. Never 0, so log() is safe.
  double uniform01();

  /// Standard normal N(0,1).
  double gaussian();

  /// Circular complex Gaussian CN(0,1): E[|z|^2] = 1.
  std::complex<double> cgaussian();

  /// Equiprobable +1 / -1.
  int sign_pm1();

  /// One fair bit.
  int bit();

 private:
  std::uint64_t master_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

namespace detail {
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);
}

}  // namespace trsec
