#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "mertens/prime_table.hpp"
#include "mertens/xfloat.hpp"

namespace support {

inline mertens::XFloat X(const char* text) { return mertens::XFloat::parse(text); }

inline double abs_diff(const mertens::XFloat& a, const mertens::XFloat& b) {
    return std::fabs(static_cast<double>(a - b));
}

inline double rel_diff(const mertens::XFloat& a, const mertens::XFloat& b) {
    const double scale = std::fmax(std::fabs(a.to_double()), std::fabs(b.to_double()));
    return scale == 0.0 ? 0.0 : abs_diff(a, b) / scale;
}

// Sieved once per test binary.
inline const mertens::PrimeTable& table_1e6() {
    static const mertens::PrimeTable t = mertens::build_sieve(1'000'000);
    return t;
}

inline const mertens::PrimeTable& table_1e7() {
    static const mertens::PrimeTable t = mertens::build_sieve(10'000'000, {.threads = 4});
    return t;
}

// Fixed-seed generator for the property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    // Magnitude spread log-uniformly over [lo, hi], random sign.
    double log_uniform(double lo, double hi) {
        const double v = std::exp(uniform(std::log(lo), std::log(hi)));
        return integer(0, 1) ? v : -v;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace support
