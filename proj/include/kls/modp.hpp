#pragma once

// Arithmetic modulo a fixed 62-bit prime and randomized identity testing.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "kls/ratfunc.hpp"

namespace kls {

namespace modp {

inline constexpr uint64_t kPrime = 4611686018427387847ULL;  // 2^62 - 57

inline uint64_t add(uint64_t a, uint64_t b) {
    uint64_t s = a + b;
    return s >= kPrime ? s - kPrime : s;
}
inline uint64_t sub(uint64_t a, uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
inline uint64_t neg(uint64_t a) { return a == 0 ? 0 : kPrime - a; }
// Reduction uses 2^62 = 57 (mod p).
inline uint64_t mul(uint64_t a, uint64_t b) {
    constexpr uint64_t mask = (uint64_t(1) << 62) - 1;
    unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
    unsigned __int128 y = (x >> 62) * 57 + static_cast<uint64_t>(x & mask);
    uint64_t z = static_cast<uint64_t>(y >> 62) * 57 + static_cast<uint64_t>(y & mask);
    return z >= kPrime ? z - kPrime : z;
}
uint64_t pow(uint64_t a, int64_t e);  // negative e inverts
uint64_t inv(uint64_t a);              // throws on zero
uint64_t from_int(const Int& v);

}  // namespace modp

// Raised when an evaluation hits a vanishing denominator; callers resample.
struct ResampleNeeded : std::runtime_error {
    ResampleNeeded() : std::runtime_error("evaluation point annihilates a denominator") {}
};

struct ModPPoint {
    uint64_t prime = modp::kPrime;
    std::vector<uint64_t> values;  // t, z_1, ..., z_n
    uint64_t seed = 0;

    static ModPPoint random(int nvars, uint64_t seed);
};

uint64_t eval(const LaurentPoly& p, const std::vector<uint64_t>& values);
uint64_t eval(const RatFunc& f, const std::vector<uint64_t>& values);  // throws ResampleNeeded

struct EqMode {
    bool exact = true;
    int points = 3;
    uint64_t seed = 1;
    int max_resamples = 64;

    static EqMode exact_mode() { return {}; }
    static EqMode modp_mode(int k, uint64_t seed = 1) { return {false, k, seed, 64}; }
};

struct EqResult {
    bool equal = false;
    double error_bound = 0.0;  // one-sided error probability bound when modp says equal
};

EqResult eq_detail(const RatFunc& a, const RatFunc& b, const EqMode& mode);
inline bool eq(const RatFunc& a, const RatFunc& b, const EqMode& mode) { return eq_detail(a, b, mode).equal; }

}  // namespace kls
