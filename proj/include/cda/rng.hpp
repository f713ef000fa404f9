#pragma once

// Philox4x32-10 counter-based generator. Every (seed, stream, index) triple
// names an independent reproducible sequence.

#include <array>
#include <cstdint>

namespace cda {

class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block counter, Key key);

  Philox4x32(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform on (0, 1), 53 bits.
  double next_open01();
  double next_normal();
  /// Uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound);

 private:
  Key key_;
  Block counter_;
  Block buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cda
