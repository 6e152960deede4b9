#pragma once

#include <cstdint>
#include <random>

namespace aif {

/// Reproducible random stream identified by (seed, stream_id).
///
/// Pinned algorithms, so a given (seed, stream_id) yields the same sequence on
/// every conforming platform:
///  - engine: std::mt19937_64, seeded through std::seed_seq over the four 32-bit
///    halves of seed and stream_id (both fully specified by the C++ standard);
///  - uniform doubles: top 53 bits of one engine output times 2^-53, in [0, 1);
///  - bounded integers: rejection sampling on the engine output (no modulo bias);
///  - standard normals: Marsaglia polar method, caching the second variate.
/// The normal variates call std::log and std::sqrt; sqrt is correctly rounded
/// everywhere, log is as accurate as the platform libm.
///
/// Single owner; parallel callers use distinct stream ids.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t NextU64() { return engine_(); }
  /// Uniform on [0, 1).
  double Uniform01();
  /// Uniform on [lo, hi]; returns lo when lo == hi.
  double Uniform(double lo, double hi);
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t Below(std::uint64_t bound);
  double StandardNormal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace aif
