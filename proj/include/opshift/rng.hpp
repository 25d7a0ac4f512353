#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace opshift {

/// Seeded generator with hand-rolled draw helpers. std::*_distribution is
/// implementation-defined, which would make run logs differ across standard
/// libraries; these helpers pin the byte-level behavior to the engine alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling; bias-free
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v;
        do { v = eng_(); } while (v >= limit);
        return v % n;
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double real(double lo, double hi) { return lo + (hi - lo) * unit(); }

    bool coin() { return (eng_() & 1u) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) { shuffle(v, 0, v.size()); }

    /// Fisher-Yates over v[first, last).
    template <typename T>
    void shuffle(std::vector<T>& v, std::size_t first, std::size_t last) {
        for (std::size_t i = last - first; i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[first + i - 1], v[first + j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace opshift
