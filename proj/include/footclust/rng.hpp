#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace footclust {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// hash(master, component, task...) used for every job-local seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view component,
                                 std::initializer_list<std::uint64_t> task = {}) {
    std::uint64_t h = splitmix64(master);
    // FNV-1a over the component label
    std::uint64_t f = 0xcbf29ce484222325ULL;
    for (unsigned char c : component) {
        f ^= c;
        f *= 0x100000001b3ULL;
    }
    h = splitmix64(h ^ f);
    for (std::uint64_t t : task) h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
    return h;
}

/// Thin wrapper over mt19937_64 with distribution code that does not depend
/// on the standard library implementation, so seeded runs replay bit-identically
/// across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % bound);
    }

    /// Uniform real in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        double u1;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    template <class T>
    void shuffle(std::span<T> v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        shuffle(std::span<T>(v));
    }

    /// Identity permutation of 0..n-1, shuffled.
    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        shuffle(p);
        return p;
    }

    /// k distinct values from 0..n-1 in draw order (partial Fisher-Yates).
    std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        for (std::size_t i = 0; i < k; ++i) std::swap(p[i], p[i + index(n - i)]);
        p.resize(k);
        return p;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace footclust
