#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace unicrag {

// Deterministic RNG facade. std::mt19937_64 is fully specified by the
// standard, but the stdlib distributions are not, so sampling primitives
// are implemented here to keep seeded artifacts byte-identical everywhere.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform index in [0, n) via rejection sampling.
    std::size_t uniform_index(std::size_t n) {
        if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = gen_();
        while (x >= limit) x = gen_();
        return static_cast<std::size_t>(x % n);
    }

    // Standard normal via Box-Muller; caches the spare draw.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

    // Draws `count` distinct indices from [0, population); result order is
    // the draw order (partial Fisher-Yates).
    std::vector<std::size_t> sample_without_replacement(std::size_t population,
                                                        std::size_t count) {
        if (count > population) {
            throw std::invalid_argument(
                "sample_without_replacement: count exceeds population");
        }
        std::vector<std::size_t> idx(population);
        for (std::size_t i = 0; i < population; ++i) idx[i] = i;
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t j = i + uniform_index(population - i);
            std::swap(idx[i], idx[j]);
        }
        idx.resize(count);
        return idx;
    }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace unicrag
