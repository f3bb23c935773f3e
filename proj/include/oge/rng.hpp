#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oge {

// Deterministic, seed-stable random generator. All randomized behaviour in
// the library goes through this class so that results are reproducible
// across platforms and standard library versions (std::shuffle and the
// std <random> distributions are not portable across implementations).
// Core generator is splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1), 53-bit resolution
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // log-uniform over [lo,hi], lo > 0
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // unbiased integer in [0,n) by rejection
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= lim);
        return v % n;
    }

    int uniform_int(int lo, int hi) {  // inclusive range
        return lo + int(below(std::uint64_t(hi - lo + 1)));
    }

    // standard normal via Box-Muller (second value discarded, keeps the
    // state sequence simple)
    double normal() {
        double u1 = uniform(), u2 = uniform();
        if (u1 <= 0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    double lognormal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = std::size_t(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        shuffle(p);
        return p;
    }

    // sample k distinct values from [0,n) via partial Fisher-Yates; output
    // sorted ascending so downstream iteration order is deterministic
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

    // derive an independent child stream (for per-scene / per-fold seeding)
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL + (stream << 1));
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

inline std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    if (k > n) k = n;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + std::size_t(below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}
