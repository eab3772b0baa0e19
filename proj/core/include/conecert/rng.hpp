#pragma once

#include <array>
#include <cstdint>

namespace conecert {

// Philox4x32-10 block function (Salmon et al., SC'11). Counter-based: the
// output depends only on (key, counter), so any stream can be replayed or
// split across threads without shared state.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// Reproducible random stream addressed by (master_seed, stream_index).
// The seed is the Philox key; the stream index occupies the high half of the
// 128-bit counter and a block counter the low half. Identical addresses give
// identical sequences on every platform.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();
  // Standard normal via Box-Muller (one output per call).
  double gaussian();
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace conecert
