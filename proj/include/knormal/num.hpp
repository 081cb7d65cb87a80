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

// Exact integer-side number theory: factorization with certified primes,
// totients, square-free divisor counts, multiplicative orders and prime
// enumeration.  Everything here is deterministic and pure; all functions are
// safe to call concurrently.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "knormal/base.hpp"

namespace knormal {

// ============================================================================
// Prime tables
// ============================================================================

// Simple monotone sieve.  limit is inclusive; guarded against runaway ranges.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    if (limit > (1ull << 28)) throw domain_error("primes_up_to: limit too large");
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> comp(limit + 1, false);
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!comp[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!comp[i]) out.push_back(i);
    return out;
}

// Shared trial-division table (primes below 10^5), built once.
inline const std::vector<std::uint64_t>& small_primes() {
    static const std::vector<std::uint64_t> table = primes_up_to(100000);
    return table;
}

// First `count` primes (grows the sieve until enough are found).
inline std::vector<std::uint64_t> primes_first(std::size_t count) {
    std::uint64_t bound = 32;
    if (count > 6) {
        double n = static_cast<double>(count);
        bound = static_cast<std::uint64_t>(n * (std::log(n) + std::log(std::log(n))) * 1.2) + 16;
    }
    for (;;) {
        std::vector<std::uint64_t> ps = primes_up_to(bound);
        if (ps.size() >= count) {
            ps.resize(count);
            return ps;
        }
        bound *= 2;
    }
}

// All primes p with lo < p <= hi (strict lower, inclusive upper).
// The boundary convention is load-bearing: it is what reproduces the
// documented prime-count constants, and the tests pin it.
inline std::vector<std::uint64_t> primes_in_range(double lo, double hi) {
    if (!(lo > 0)) throw domain_error("primes_in_range: lower bound must be positive");
    if (!(lo <= hi)) throw domain_error("primes_in_range: empty-interval bounds must satisfy lo <= hi");
    std::vector<std::uint64_t> out;
    if (hi < 2) return out;
    auto limit = static_cast<std::uint64_t>(std::floor(hi));
    for (std::uint64_t p : primes_up_to(limit))
        if (static_cast<double>(p) > lo) out.push_back(p);
    return out;
}

// ============================================================================
// Primality
// ============================================================================

namespace detail {

inline bool miller_rabin_witness(const Int& n, const Int& nm1, const Int& d, unsigned long s, const Int& base) {
    Int b = base % n;
    if (b == 0) return false;  // base shares all of n; no information
    Int x;
    mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return false;
    }
    return true;  // composite witnessed
}

}  // namespace detail

// Deterministic Miller–Rabin.  The 13-prime base set decides primality for
// every n < 3.317e24, which covers every cofactor this library meets at desk
// scale (field orders are pre-split into cyclotomic parts).  Larger inputs
// fall back to a fixed 40-base schedule: still deterministic output, but a
// probable-prime verdict rather than a certified one.
inline bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
        if (n == static_cast<unsigned long>(p)) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Int nm1 = n - 1;
    Int d = nm1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    static const Int certified_limit("3317044064679887385961981");
    std::vector<std::uint64_t> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    if (n >= certified_limit) {
        for (std::uint64_t b : {43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103,
                                107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173})
            bases.push_back(b);
    }
    for (std::uint64_t b : bases)
        if (detail::miller_rabin_witness(n, nm1, d, s, Int(static_cast<unsigned long>(b)))) return false;
    return true;
}

// ============================================================================
// FactoredInt
// ============================================================================

// An integer together with its prime factorization.
// Invariants: primes strictly increasing, exponents >= 1, product equals
// value, value = 1 iff factors empty.  Every prime has passed
// is_probable_prime at construction time.
struct FactoredInt {
    Int value;
    std::vector<std::pair<Int, unsigned>> factors;

    bool operator==(const FactoredInt& o) const { return value == o.value && factors == o.factors; }
};

inline Int euler_phi(const FactoredInt& n) {
    Int r = 1;
    for (const auto& [p, e] : n.factors) r *= int_pow(p, e - 1) * (p - 1);
    return r;
}

inline Int radical(const FactoredInt& n) {
    Int r = 1;
    for (const auto& [p, e] : n.factors) r *= p;
    return r;
}

// W(n): the number of square-free divisors, 2^(distinct primes).
inline Int num_squarefree_divisors(const FactoredInt& n) {
    Int r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), n.factors.size());
    return r;
}

inline void validate_factored(const FactoredInt& f, const std::string& where) {
    Int prod = 1;
    const Int* prev = nullptr;
    for (const auto& [p, e] : f.factors) {
        if (e == 0) throw domain_error(where + ": zero exponent");
        if (prev && !(*prev < p)) throw domain_error(where + ": primes not strictly increasing");
        if (!is_probable_prime(p)) throw domain_error(where + ": listed factor " + p.get_str() + " is not prime");
        prod *= int_pow(p, e);
        prev = &p;
    }
    if (prod != f.value) throw domain_error(where + ": factor product does not equal value");
}

// ============================================================================
// Factorization cache (optional, read-only)
// ============================================================================

// Text file, one entry per line: `value=p1^e1*p2^e2*...`.  Blank lines and
// lines starting with '#' are ignored.  Every entry is validated on load.
class FactorCache {
  public:
    FactorCache() = default;

    static FactorCache load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw domain_error("factor cache: cannot open " + path);
        FactorCache cache;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            auto ctx = path + ":" + std::to_string(lineno);
            auto eq = line.find('=');
            if (eq == std::string::npos) throw domain_error("factor cache " + ctx + ": missing '='");
            FactoredInt f;
            try {
                f.value = Int(line.substr(0, eq));
            } catch (const std::invalid_argument&) {
                throw domain_error("factor cache " + ctx + ": bad value");
            }
            std::string rhs = line.substr(eq + 1);
            if (!rhs.empty()) {
                std::stringstream ss(rhs);
                std::string part;
                while (std::getline(ss, part, '*')) {
                    auto caret = part.find('^');
                    try {
                        Int p(caret == std::string::npos ? part : part.substr(0, caret));
                        unsigned long e = caret == std::string::npos ? 1 : std::stoul(part.substr(caret + 1));
                        f.factors.emplace_back(p, static_cast<unsigned>(e));
                    } catch (const std::exception&) {
                        throw domain_error("factor cache " + ctx + ": bad factor term '" + part + "'");
                    }
                }
            }
            try {
                validate_factored(f, "entry");
            } catch (const domain_error& err) {
                throw domain_error("factor cache " + ctx + ": " + err.what());
            }
            cache.entries_[f.value] = f;
        }
        return cache;
    }

    const FactoredInt* lookup(const Int& value) const {
        auto it = entries_.find(value);
        return it == entries_.end() ? nullptr : &it->second;
    }

    std::size_t size() const { return entries_.size(); }

  private:
    std::map<Int, FactoredInt> entries_;
};

// ============================================================================
// Factorization
// ============================================================================

namespace detail {

// Brent-cycle Pollard rho with batched gcds.  Returns a nontrivial factor of
// odd composite n, or n itself when the (x^2 + c) orbit degenerates; the
// caller then advances c.  Entirely deterministic.
inline Int rho_brent(const Int& n, unsigned long c) {
    const long batch = 128;
    Int y = 2, q = 1, g = 1, x, ys;
    long r = 1;
    auto step = [&](Int& v) { v = (v * v + c) % n; };
    while (g == 1) {
        x = y;
        for (long i = 0; i < r; ++i) step(y);
        long k = 0;
        while (k < r && g == 1) {
            ys = y;
            long lim = std::min(batch, r - k);
            for (long i = 0; i < lim; ++i) {
                step(y);
                Int diff = x - y;
                mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                q = q * diff % n;
            }
            g = gcd(q, n);
            k += batch;
        }
        r *= 2;
    }
    if (g == n) {
        // Batch overshot a factor; replay single steps from the saved point.
        g = 1;
        while (g == 1) {
            step(ys);
            Int diff = x - ys;
            mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
            g = gcd(diff, n);
        }
    }
    return g;
}

inline void factor_into(const Int& n, std::map<Int, unsigned>& acc, unsigned mult);

// n > 1, no factor below the trial-division bound, not prime.
inline void split_composite(const Int& n, std::map<Int, unsigned>& acc, unsigned mult) {
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        // Reduce perfect powers first; rho converges poorly on them.
        for (unsigned long k = 2;; ++k) {
            Int root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                factor_into(root, acc, mult * static_cast<unsigned>(k));
                return;
            }
        }
    }
    for (unsigned long c = 1;; c += 2) {
        Int d = rho_brent(n, c);
        if (d != n) {
            factor_into(d, acc, mult);
            factor_into(n / d, acc, mult);
            return;
        }
    }
}

inline void factor_into(const Int& n, std::map<Int, unsigned>& acc, unsigned mult) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        acc[n] += mult;
        return;
    }
    split_composite(n, acc, mult);
}

}  // namespace detail

// Deterministic full factorization: trial division below 10^5, then
// Brent-style rho with a fixed parameter schedule.  Output is reproducible
// across runs.  Rejects n = 0; factor(1) has an empty factor list.
inline FactoredInt factor(const Int& n, const FactorCache* cache = nullptr) {
    if (n <= 0) throw domain_error("factor: argument must be a positive integer");
    if (cache != nullptr)
        if (const FactoredInt* hit = cache->lookup(n)) return *hit;

    std::map<Int, unsigned> acc;
    Int rest = n;
    for (std::uint64_t p : small_primes()) {
        if (Int(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p) > rest) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        if (e > 0) acc[Int(static_cast<unsigned long>(p))] = e;
    }
    detail::factor_into(rest, acc, 1);

    FactoredInt out;
    out.value = n;
    out.factors.assign(acc.begin(), acc.end());
    return out;
}

inline FactoredInt factor(std::uint64_t n, const FactorCache* cache = nullptr) {
    return factor(Int(static_cast<unsigned long>(n)), cache);
}

// ============================================================================
// Multiplicative order
// ============================================================================

// Smallest e >= 1 with a^e = 1 (mod modulus), by dividing phi(modulus) down
// along its prime factorization.
inline Int mult_order(const Int& a, const FactoredInt& modulus, const FactorCache* cache = nullptr) {
    if (modulus.value < 2) throw domain_error("mult_order: modulus must be >= 2");
    if (gcd(a, modulus.value) != 1) throw domain_error("mult_order: arguments are not coprime");
    Int e = euler_phi(modulus);
    Int m = modulus.value;
    for (const auto& [p, unused] : factor(e, cache).factors) {
        while (mpz_divisible_p(e.get_mpz_t(), p.get_mpz_t())) {
            Int cand = e / p;
            Int r;
            mpz_powm(r.get_mpz_t(), Int(a % m).get_mpz_t(), cand.get_mpz_t(), m.get_mpz_t());
            if (r != 1) break;
            e = cand;
        }
    }
    return e;
}

inline Int mult_order(std::uint64_t a, std::uint64_t modulus, const FactorCache* cache = nullptr) {
    return mult_order(Int(static_cast<unsigned long>(a)), factor(modulus, cache), cache);
}

// ============================================================================
// Cyclotomic splitting of q^n - 1
// ============================================================================

// Value of the d-th cyclotomic polynomial at q, via the exact recursion
// Phi_d(q) = (q^d - 1) / prod_{e | d, e < d} Phi_e(q).
inline Int cyclotomic_value(unsigned d, const Int& q) {
    if (d == 0) throw domain_error("cyclotomic_value: d must be >= 1");
    Int num = int_pow(q, d) - 1;
    for (unsigned e = 1; e < d; ++e) {
        if (d % e != 0) continue;
        Int phi_e = cyclotomic_value(e, q);
        if (!mpz_divisible_p(num.get_mpz_t(), phi_e.get_mpz_t()))
            throw domain_error("cyclotomic_value: internal divisibility failure");
        num /= phi_e;
    }
    return num;
}

// Factorization of q^n - 1, split algebraically into cyclotomic parts first
// so that rho only ever sees cofactors of size ~q^phi(d) << q^n.
inline FactoredInt factor_field_order(std::uint64_t q, unsigned n, const FactorCache* cache = nullptr) {
    if (q < 2 || n == 0) throw domain_error("factor_field_order: need q >= 2, n >= 1");
    Int qz(static_cast<unsigned long>(q));
    std::map<Int, unsigned> acc;
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        for (const auto& [p, e] : factor(cyclotomic_value(d, qz), cache).factors) acc[p] += e;
    }
    FactoredInt out;
    out.value = int_pow(qz, n) - 1;
    out.factors.assign(acc.begin(), acc.end());
    validate_factored(out, "factor_field_order");
    return out;
}

}  // namespace knormal
