#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace lw {

/// Deterministic RNG with hand-rolled distributions so output depends only
/// on the seed, not on the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    double uniform() { return (eng_() >> 11) * 0x1.0p-53; } // [0, 1)

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    int uniform_int(int lo, int hi) { // inclusive
        return lo + static_cast<int>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double normal() {
        if (have_spare_) { have_spare_ = false; return spare_; }
        double u, v, s;
        do {
            u = uniform(-1.0, 1.0);
            v = uniform(-1.0, 1.0);
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    /// Derive an independent stream (for parallel-safe per-block seeding).
    std::uint64_t derive(std::uint64_t salt) {
        std::uint64_t z = eng_() ^ (salt + 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// FNV-1a over bytes; used for instance digests.
inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a(const std::string& s) { return fnv1a(s.data(), s.size()); }

} // namespace lw
