#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace geodtn {

// Deterministic random source. All draws go through explicit algorithms on
// top of mt19937_64 rather than std:: distributions, so a given seed yields
// the same stream on every standard library implementation.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // [0, 1)
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // [lo, hi)
    double uniform(double lo, double hi) {
        return lo + uniform01() * (hi - lo);
    }

    // [0, n)
    uint64_t uniform_index(uint64_t n) {
        return n == 0 ? 0 : next_u64() % n;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(uniform_index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Independent child stream; `salt` separates streams drawn from one parent.
    Rng spawn(uint64_t salt) {
        uint64_t s = next_u64() ^ (salt * 0x9e3779b97f4a7c15ull);
        return Rng(s);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace geodtn
