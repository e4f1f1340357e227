#pragma once

#include "futaki/scalar.hpp"

#include <cstdint>
#include <random>

namespace futaki::test {

/// Seeded source of random rationals for property tests.
class RatGen {
public:
    explicit RatGen(std::uint64_t seed) : rng_(seed) {}

    /// Uniform p/q with q a multiple of a random integer in [1, max_den], value in (lo, hi).
    Rat in(const Rat& lo, const Rat& hi, int max_den = 97)
    {
        // Scale the denominator up until the interval holds at least two grid points.
        BigInt scale = 1;
        while ((hi - lo) * scale < 2) {
            scale *= 2;
        }
        std::uniform_int_distribution<int> den(1, max_den);
        for (;;) {
            const BigInt q = den(rng_) * scale;
            const BigInt lo_n = floor_of(lo * q) + 1;
            const BigInt hi_n = ceil_of(hi * q) - 1;
            if (lo_n > hi_n) {
                continue;
            }
            std::uniform_int_distribution<long long> num(0, static_cast<long long>(hi_n - lo_n));
            return Rat(lo_n + num(rng_), q);
        }
    }

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Scalar scalar(const Rat& lo, const Rat& hi) { return Scalar(in(lo, hi), in(lo, hi)); }

    std::mt19937_64& engine() { return rng_; }

private:
    static BigInt floor_of(const Rat& x)
    {
        BigInt n = numerator(x);
        const BigInt d = denominator(x);
        BigInt q = n / d;
        if (n < 0 && q * d != n) {
            --q;
        }
        return q;
    }
    static BigInt ceil_of(const Rat& x) { return -floor_of(Rat(-x)); }

    std::mt19937_64 rng_;
};

}  // namespace futaki::test
