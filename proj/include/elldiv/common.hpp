/*
   Copyright 2026 The elldiv authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ELLDIV_COMMON_HPP
#define ELLDIV_COMMON_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace elldiv {

using Int = boost::multiprecision::cpp_int;

/// Violated mathematical precondition (bad input to an operation).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Internal invariant failure; indicates a bug, not bad input.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// Requested object does not exist (e.g. no torsion basis within bounds).
struct not_found_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic PRNG. mt19937_64 output is fully specified by the standard,
// so seeded runs are reproducible across platforms.
using Rng = std::mt19937_64;

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

inline std::uint64_t hash_string(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) h = hash_combine(h, c);
    return h;
}

inline std::uint64_t hash_int(std::uint64_t h, const Int& v) {
    return hash_string(h, v.str());
}

/// Uniform integer in [0, n) drawn by rejection from fixed-width chunks.
inline Int uniform_below(Rng& rng, const Int& n) {
    if (n <= 0) throw domain_error("uniform_below: bound must be positive");
    const std::size_t bits = msb(n) + 1;
    const std::size_t words = (bits + 63) / 64;
    for (;;) {
        Int r = 0;
        for (std::size_t i = 0; i < words; ++i) {
            r <<= 64;
            r |= Int(rng());
        }
        r >>= (words * 64 - bits);
        if (r < n) return r;
    }
}

inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, int s) {
    Int x = powm(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;
}

/// Deterministic Miller-Rabin; the fixed base set is exact below 3.3e24,
/// far beyond anything this library operates on.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    static const int small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                       23, 29, 31, 37, 41, 43, 47};
    for (int p : small_primes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

}  // namespace elldiv

#endif  // ELLDIV_COMMON_HPP
