#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cmsent {

// Deterministic random source used everywhere randomness is needed.
//
// std::mt19937_64 has a standard-specified output sequence, so the raw
// stream is identical across platforms and library versions. The parts the
// standard does NOT pin down (uniform_int_distribution, std::shuffle) are
// reimplemented here; never use those on top of this engine if the output
// feeds anything that must be reproducible.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform draw from [0, bound) via rejection sampling, bias-free.
    // bound must be > 0.
    std::uint64_t bounded(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Fisher-Yates, fixed iteration order so results depend only on the seed.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        if (items.size() < 2) return;
        for (std::size_t i = items.size() - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(bounded(i + 1));
            using std::swap;
            swap(items[i], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace cmsent
