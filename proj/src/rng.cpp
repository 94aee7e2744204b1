#include "trsec/rng.hpp"

#include <cmath>
#include <numbers>

namespace trsec {

namespace detail {

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over a simple combine; only needs to scatter
  // structured (small-integer) ids apart.
  std::uint64_t z = a ^ (b * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_(master_seed),
      stream_(stream_id),
      engine_(detail::mix64(master_seed, stream_id)) {}

RngStream RngStream::substream(std::uint64_t key) const {
  return RngStream(master_, detail::mix64(stream_, key));
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform01() {
  // Top 53 bits, shifted into (0,1].
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::gaussian() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> RngStream::cgaussian() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  // Radius scaled so that E[|z|^2] = 1 (variance 1/2 per component).
  const double r = std::sqrt(-std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

int RngStream::sign_pm1() { return (next_u64() >> 63) ? 1 : -1; }

int RngStream::bit() { return static_cast<int>(next_u64() >> 63); }

}  // namespace trsec
