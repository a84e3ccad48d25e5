#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace risplan {

// 64-bit counter-style generator. Cheap to seed, so every independent
// stream (scenario, trial, radio link) gets its own instance keyed by a
// hash of its identifiers; results are then independent of evaluation
// order and thread schedule.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed = 0x9E3779B97F4A7C15ULL) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1]
    double next_unit_open() { return 1.0 - next_unit(); }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    // standard normal via Box-Muller; one value per call, spare cached
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit_open();
        const double u2 = next_unit();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925286766559 * u2;
        spare_ = mag * std::sin(ang);
        has_spare_ = true;
        return mag * std::cos(ang);
    }

private:
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    SplitMix64 g(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2)));
    return g.next();
}

inline std::uint64_t hash_values(std::initializer_list<std::uint64_t> vs) {
    std::uint64_t h = 0x2545F4914F6CDD1DULL;
    for (std::uint64_t v : vs) h = mix64(h, v);
    return h;
}

} // namespace risplan
