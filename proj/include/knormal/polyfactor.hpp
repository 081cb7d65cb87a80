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

// Polynomial factorization over F_q and divisor enumeration.  Pipeline:
// square-free decomposition (with p-th-power collapse in characteristic p),
// distinct-degree splitting, then equal-degree splitting driven by a
// deterministic pseudo-random sequence seeded from the input's coefficients —
// identical inputs factor identically, across runs and platforms.

#include <algorithm>
#include <map>
#include <vector>

#include "knormal/smallfield.hpp"

namespace knormal {

struct PolyFactor {
    LPoly factor;  // monic irreducible
    unsigned multiplicity = 0;

    bool operator==(const PolyFactor&) const = default;
};

// Orders same-degree polynomials by encoded value (top coefficient first is
// equivalent because sizes match).
inline bool poly_value_less(const LPoly& a, const LPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

inline LPoly xn_minus_1(const SmallField& F, unsigned n) {
    if (n == 0) throw domain_error("xn_minus_1: n must be >= 1");
    LPoly f(n + 1, 0);
    f[0] = F.neg(1);
    f[n] = 1;
    return f;
}

namespace detail {

// Coefficient-wise p-th root of f = g(x)^p (all exponents divisible by p).
inline LPoly poly_pth_root(const SmallField& F, const LPoly& f) {
    std::uint64_t p = F.characteristic();
    std::uint64_t root_exp = F.size() / p;  // a -> a^(q/p) is the p-th root in F_q
    LPoly r((f.size() - 1) / p + 1, 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.pow(f[i * p], root_exp);
    return r;
}

// Square-free decomposition: fills parts[h] += multiplicity for monic
// square-free h whose product with multiplicities reconstructs f.
inline void squarefree_decompose(const SmallField& F, const LPoly& f, unsigned outer_mult,
                                 std::map<LPoly, unsigned, decltype(&poly_value_less)>& parts) {
    LabelOps k{&F};
    LPoly deriv = poly_derivative(k, f);
    if (deriv.empty()) {
        // f = g(x)^p exactly
        squarefree_decompose(F, poly_pth_root(F, f), outer_mult * static_cast<unsigned>(F.characteristic()), parts);
        return;
    }
    LPoly c = poly_gcd(k, f, deriv);
    LPoly w = poly_div_exact(k, f, c.empty() ? poly_one(k) : c);
    unsigned i = 1;
    while (poly_deg(w) > 0) {
        LPoly y = poly_gcd(k, w, c);
        LPoly fac = poly_div_exact(k, w, y);
        if (poly_deg(fac) > 0) parts[fac] += outer_mult * i;
        w = std::move(y);
        c = poly_div_exact(k, c, w);
        ++i;
    }
    // Residual c collects the factors whose multiplicity is divisible by p,
    // still at full multiplicity: a perfect p-th power.
    if (poly_deg(c) > 0)
        squarefree_decompose(F, poly_pth_root(F, c), outer_mult * static_cast<unsigned>(F.characteristic()),
                             parts);
}

// Equal-degree splitting (all irreducible factors of h have degree d).
inline void equal_degree_split(const SmallField& F, const LPoly& h, unsigned d, std::uint64_t& rng,
                               std::vector<LPoly>& out) {
    LabelOps k{&F};
    if (poly_deg(h) == static_cast<int>(d)) {
        out.push_back(poly_monic(k, h));
        return;
    }
    Int q(static_cast<unsigned long>(F.size()));
    for (;;) {
        // random polynomial of degree < deg h
        LPoly r(poly_deg(h), 0);
        for (auto& c : r) c = splitmix64(rng) % F.size();
        poly_trim(k, r);
        if (poly_deg(r) < 1) continue;

        LPoly s;
        if (F.characteristic() == 2) {
            // F_2-trace map: sum of r^(2^i) over the F_2-dimension of F_{q^d}
            unsigned bits = F.degree_over_prime() * d;
            LPoly acc = poly_mod(k, r, h);
            s = acc;
            for (unsigned i = 1; i < bits; ++i) {
                acc = poly_mulmod(k, acc, acc, h);
                s = poly_add(k, s, acc);
            }
        } else {
            Int e = (int_pow(q, d) - 1) / 2;
            s = poly_sub(k, poly_powmod(k, r, e, h), poly_one(k));
        }
        LPoly g = poly_gcd(k, s, h);
        if (poly_deg(g) > 0 && poly_deg(g) < poly_deg(h)) {
            equal_degree_split(F, g, d, rng, out);
            equal_degree_split(F, poly_div_exact(k, h, g), d, rng, out);
            return;
        }
    }
}

}  // namespace detail

// Full factorization of f (deg f >= 1) into monic irreducibles with
// multiplicities, sorted by (degree, encoded value).  The leading unit is
// dropped: the product of the factors equals f up to that unit.
inline std::vector<PolyFactor> poly_factor(const SmallField& F, const LPoly& f_in) {
    LabelOps k{&F};
    LPoly f = f_in;
    poly_trim(k, f);
    if (poly_deg(f) < 1) throw domain_error("poly_factor: degree must be >= 1");
    f = poly_monic(k, f);

    std::map<LPoly, unsigned, decltype(&poly_value_less)> parts(&poly_value_less);
    detail::squarefree_decompose(F, f, 1, parts);

    std::vector<PolyFactor> out;
    for (const auto& [sqfree, mult] : parts) {
        // distinct-degree splitting of the square-free part
        LPoly g = sqfree;
        LPoly x = poly_x(k);
        LPoly h = x;
        // deterministic seed: field size and the square-free part's coefficients
        std::uint64_t rng = 0x9e3779b97f4a7c15ull ^ F.size();
        for (std::uint64_t c : sqfree) rng = rng * 0x100000001b3ull + c + 1;

        for (unsigned d = 1; poly_deg(g) >= static_cast<int>(2 * d); ++d) {
            h = poly_powmod(k, h, static_cast<std::uint64_t>(F.size()), g);
            LPoly e = poly_gcd(k, poly_sub(k, h, x), g);
            if (poly_deg(e) > 0) {
                std::vector<LPoly> irreducibles;
                detail::equal_degree_split(F, e, d, rng, irreducibles);
                for (auto& ir : irreducibles) out.push_back({std::move(ir), mult});
                g = poly_div_exact(k, g, e);
                h = poly_mod(k, h, g);
            }
        }
        if (poly_deg(g) > 0) out.push_back({g, mult});
    }
    std::sort(out.begin(), out.end(),
              [](const PolyFactor& a, const PolyFactor& b) { return poly_value_less(a.factor, b.factor); });
    return out;
}

inline Int num_monic_divisors(const std::vector<PolyFactor>& factors) {
    Int r = 1;
    for (const auto& pf : factors) r *= pf.multiplicity + 1;
    return r;
}

// W(f) over F_q[x]: 2^(number of distinct monic irreducible factors).
inline Int num_squarefree_poly_divisors(const SmallField& F, const LPoly& f) {
    Int r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), poly_factor(F, f).size());
    return r;
}

// All monic divisors assembled from a factor list; degree = -1 means every
// degree.  Sorted by (degree, encoded value) ascending; deterministic.
inline std::vector<LPoly> monic_divisors(const SmallField& F, const std::vector<PolyFactor>& factors,
                                         int degree = -1) {
    if (num_monic_divisors(factors) > 2000000) throw domain_error("monic_divisors: too many divisors");
    LabelOps k{&F};
    // degree still reachable from factor i onwards
    std::vector<int> tail_degree(factors.size() + 1, 0);
    for (std::size_t i = factors.size(); i-- > 0;)
        tail_degree[i] = tail_degree[i + 1] + static_cast<int>(factors[i].multiplicity) * poly_deg(factors[i].factor);

    std::vector<LPoly> out;
    auto recurse = [&](auto&& self, std::size_t i, const LPoly& acc) -> void {
        if (degree >= 0) {
            int d = poly_deg(acc);
            if (d > degree || d + tail_degree[i] < degree) return;
        }
        if (i == factors.size()) {
            if (degree < 0 || poly_deg(acc) == degree) out.push_back(acc);
            return;
        }
        LPoly cur = acc;
        for (unsigned e = 0;; ++e) {
            self(self, i + 1, cur);
            if (e == factors[i].multiplicity) break;
            cur = poly_mul(k, cur, factors[i].factor);
        }
    };
    recurse(recurse, 0, poly_one(k));
    std::sort(out.begin(), out.end(), poly_value_less);
    return out;
}

}  // namespace knormal
