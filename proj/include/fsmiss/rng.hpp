#ifndef FSMISS_RNG_HPP
#define FSMISS_RNG_HPP

/*
 Pinned pseudo-random generator.

 xoshiro256** (Blackman & Vigna, 2018) with its 256-bit state filled by four
 consecutive SplitMix64 outputs of the 64-bit seed. Both generators are
 defined purely in terms of 64-bit unsigned arithmetic, so a given seed gives
 the same stream on every platform and in any language that reimplements them.

 Derived draws:
   uniform01()     (next() >> 11) * 2^-53, in [0, 1)
   below(n)        unbiased integer in [0, n) by masked rejection sampling
   shuffle(range)  Fisher-Yates from the back using below()

 Reference vectors (checked in tests/unit/test_rng.cpp):
   SplitMix64(1234567): 6457827717110365317, 3203168211198807973, ...
   xoshiro256** state {1,2,3,4}: 11520, 0, 1509978240, 1215971899390074240, ...
*/

#include <array>
#include <cstdint>
#include <utility>

namespace fsmiss {

class SplitMix64 {
 public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

 private:
    std::uint64_t state_;
};

class Rng {
 public:
    using result_type = std::uint64_t;

    explicit constexpr Rng(std::uint64_t seed) noexcept {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    /// Construct directly from a raw state (used for reference-vector checks).
    static constexpr Rng from_state(const std::array<std::uint64_t, 4>& state) noexcept {
        Rng r(0);
        r.s_ = state;
        return r;
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type next() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    constexpr result_type operator()() noexcept { return next(); }

    constexpr double uniform01() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be positive.
    constexpr std::uint64_t below(std::uint64_t n) noexcept {
        // smallest all-ones mask covering n-1, then reject
        std::uint64_t mask = n - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            const std::uint64_t v = next() & mask;
            if (v < n) return v;
        }
    }

    template <class RandomIt>
    constexpr void shuffle(RandomIt first, RandomIt last) noexcept {
        const auto count = static_cast<std::uint64_t>(last - first);
        for (std::uint64_t i = count; i > 1; --i) {
            const auto j = below(i);
            using std::swap;
            swap(first[i - 1], first[j]);
        }
    }

    constexpr const std::array<std::uint64_t, 4>& state() const noexcept { return s_; }

 private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
};

inline Rng make_rng(std::uint64_t seed) noexcept { return Rng(seed); }

}  // namespace fsmiss

#endif  // FSMISS_RNG_HPP
