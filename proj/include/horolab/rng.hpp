#pragma once

#include <cstdint>

namespace horolab {

// SplitMix64 stream. Substreams are derived as stream(seed, worker_id), so
// every logical chunk of work draws from its own generator and results do not
// depend on thread scheduling. The generator is pinned here (not std::mt19937)
// so that golden files are portable across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t stream) : state_(mix(seed) ^ mix(stream * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull)) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        // rejection to avoid modulo bias
        std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n + 1) % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v > limit);
        return v % n;
    }

    std::int64_t next_in(std::int64_t lo, std::int64_t hi) {  // inclusive range
        return lo + std::int64_t(next_below(std::uint64_t(hi - lo + 1)));
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDull;
        z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ull;
        return z ^ (z >> 33);
    }

    std::uint64_t state_;
};

}  // namespace horolab
