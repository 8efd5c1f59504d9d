#pragma once

#include <cstdint>
#include <random>

namespace gamred {

// Seeded RNG with platform-independent draws (std::mt19937_64 is fully
// specified; the distribution helpers avoid the implementation-defined
// std::uniform_int_distribution).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    std::size_t uniform_index(std::size_t size) {
        return static_cast<std::size_t>(next_u64() % size);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace gamred
