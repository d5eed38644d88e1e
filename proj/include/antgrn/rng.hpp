#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace antgrn {

/// One splitmix64 step. Used to derive well-separated stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Folds a list of words (trial, iteration, ant index, ...) into a master
/// seed, producing an independent sub-stream seed. Serial and parallel
/// execution hand the same words to the same ant, so draws are identical
/// regardless of worker count.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> words) noexcept {
    std::uint64_t h = splitmix64(master ^ 0xA3EC4E9F0D1B2C55ull);
    for (std::uint64_t w : words) {
        h = splitmix64(h ^ w);
    }
    return h;
}

/// Deterministic random stream. Wraps std::mt19937_64 (the engine itself is
/// pinned by the standard) but never touches std::*_distribution, whose
/// output is implementation-defined; doubles and bounded ints are extracted
/// manually so streams replay bit-identically on any platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Rejection-sampled, so unbiased for any n.
    std::uint64_t next_index(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[next_index(i)]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace antgrn
