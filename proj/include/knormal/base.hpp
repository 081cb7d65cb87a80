/*
   Copyright 2026 the knormal authors

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

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace knormal {

using Int = mpz_class;
using Rat = mpq_class;

// Invalid mathematical input (out-of-domain argument, malformed data).
// CLI maps this to exit code 2.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A constructive search ran out of candidates without finding a witness.
// Reported, never silently absorbed; CLI maps this to exit code 3.
struct search_exhausted : std::runtime_error {
    explicit search_exhausted(const std::string& what) : std::runtime_error(what) {}
};

inline Int int_pow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Int int_pow(std::uint64_t base, unsigned long exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline std::uint64_t to_u64(const Int& v) {
    if (v < 0 || !v.fits_ulong_p()) throw domain_error("value does not fit in 64 bits: " + v.get_str());
    return mpz_get_ui(v.get_mpz_t());
}

// Deterministic 64-bit mixer; the only randomness source in the library
// (equal-degree polynomial splitting). Seeded from input data, never from time.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace knormal
