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

// Property (A) at the critical degree n = 2k: a monic divisor g of x^n − 1
// with deg g = k, g ≠ x^k − 1, and (x − 1) | g.  Existence is decided two
// independent ways — exhaustive divisor enumeration, and the closed-form
// case analysis over k = 2^s·t (t odd) — plus the canonical degree-3
// construction used by the n = 6 witness search.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knormal/field.hpp"
#include "knormal/poly.hpp"
#include "knormal/polyfactor.hpp"

namespace knormal {

// The n = 6 constructive range: every odd prime power, and the even powers
// of 2.  Equivalent to: a property-(A) divisor of x^6 - 1 of degree 3 exists.
inline bool admissible(const PrimePower& q) { return q.p != 2 || q.m % 2 == 0; }

// The defining predicate itself.
inline bool is_property_a(const SmallField& F, LPoly g, unsigned k) {
    LabelOps ops{&F};
    poly_trim(ops, g);
    if (k < 1 || poly_deg(g) != static_cast<int>(k) || g.back() != 1) return false;
    if (poly_eval(ops, g, ops.one()) != 0) return false;  // (x - 1) | g
    if (g == xn_minus_1(F, k)) return false;
    return poly_divmod(ops, xn_minus_1(F, 2 * k), g).second.empty();
}

// First property-(A) divisor in deterministic order (ascending encoded value
// within the fixed degree k), or absent when none exists.
inline std::optional<LPoly> property_a_exhaustive(const SmallField& F, unsigned k) {
    if (k < 1) throw domain_error("property_a_exhaustive: k must be >= 1");
    LabelOps ops{&F};
    LPoly xk1 = xn_minus_1(F, k);
    for (const auto& g : monic_divisors(F, poly_factor(F, xn_minus_1(F, 2 * k)), static_cast<int>(k)))
        if (g != xk1 && poly_eval(ops, g, ops.one()) == 0) return g;
    return std::nullopt;
}

inline std::optional<LPoly> property_a_exhaustive(const PrimePower& q, unsigned k) {
    return property_a_exhaustive(*small_field_for(q), k);
}

// Verdict of the closed-form case analysis.  `rule` names the matched case:
// 3.7a..3.7e / 3.7-none in characteristic 2, 3.8i..3.8iii / 3.8-none in odd
// characteristic, or "exhaustive" for the k = 1 fallback outside both case
// analyses.  k = 2^s·t with t odd; d is ord_t(q) in characteristic 2 and
// ord_{2^{s+1}}(p) in odd characteristic (0 for the fallback).
struct PropertyAClassification {
    bool exists = false;
    std::string rule;
    unsigned s = 0;
    std::uint64_t t = 1;
    std::uint64_t d = 0;

    bool operator==(const PropertyAClassification&) const = default;
};

inline PropertyAClassification property_a_classify(const PrimePower& q, unsigned k) {
    if (k < 1) throw domain_error("property_a_classify: k must be >= 1");
    if (k == 1) return {property_a_exhaustive(q, 1).has_value(), "exhaustive", 0, 1, 0};

    unsigned s = 0;
    std::uint64_t t = k;
    while (t % 2 == 0) {
        t /= 2;
        ++s;
    }
    const std::uint64_t two_s = std::uint64_t{1} << s;

    if (q.p == 2) {
        // x^k - 1 = (x^t - 1)^{2^s}; the case analysis runs on the splitting
        // of x^t - 1, governed by d = ord_t(q).
        if (t == 1) return {false, "3.7-none", s, t, 1};
        std::uint64_t d = to_u64(mult_order(q.q, t));
        if (is_probable_prime(Int(static_cast<unsigned long>(t)))) {
            if (d < t - 1) return {true, "3.7b", s, t, d};
            if (t <= two_s + 1) return {true, "3.7a", s, t, d};
            return {false, "3.7-none", s, t, d};
        }
        FactoredInt tf = factor(t);
        if (tf.factors.size() >= 2) return {true, "3.7c", s, t, d};
        std::uint64_t r = to_u64(tf.factors[0].first);
        std::uint64_t phi = t - t / r;  // φ(r^ℓ)
        if (d < phi) return {true, "3.7d", s, t, d};
        if (r <= two_s + 1) return {true, "3.7e", s, t, d};
        return {false, "3.7-none", s, t, d};
    }

    std::uint64_t d = to_u64(mult_order(q.p, 2 * two_s));
    if (t > 1) return {true, "3.8i", s, t, d};
    if (q.m % 2 == 0) return {true, "3.8ii", s, t, d};
    if (d < two_s) return {true, "3.8iii", s, t, d};
    return {false, "3.8-none", s, t, d};
}

// The canonical degree-3 polynomial f over F_q whose cofactor (x^6 - 1)/f
// satisfies property (A); the witness search evaluates L_f at a normal
// element.  Two shapes: f = x^3 + 2x^2 + 2x + 1 when q is a power of 3 or
// q ≡ 5 (mod 6), else f = x^3 + (b+1)x^2 + (b+1)x + b where b ∈ F_q is the
// cube root of unity a^{(q^6-1)/3} from the deterministic primitive a.
inline LPoly canonical_f(const FieldCtx& F) {
    const PrimePower& q = F.q();
    if (F.n() != 6) throw domain_error("canonical_f: defined for sextic extensions only");
    if (!admissible(q)) throw domain_error("canonical_f: q must be odd or an even power of 2");
    const SmallField& base = F.base();
    if (q.p == 3 || q.q % 6 == 5)
        return LPoly{base.from_int(1), base.from_int(2), base.from_int(2), 1};

    Elem b = F.pow(F.find_primitive(), F.order() / 3);
    if (!F.in_base(b)) throw std::logic_error("canonical_f: cube root of unity outside F_q");
    std::uint64_t b0 = b[0];
    std::uint64_t b1 = base.add(b0, 1);
    return LPoly{b0, b1, b1, 1};
}

inline LPoly canonical_f(const PrimePower& q, const FactorCache* cache = nullptr) {
    if (!admissible(q)) throw domain_error("canonical_f: q must be odd or an even power of 2");
    if (q.p == 3 || q.q % 6 == 5) {
        auto base = small_field_for(q);
        return LPoly{base->from_int(1), base->from_int(2), base->from_int(2), 1};
    }
    return canonical_f(FieldCtx(q, 6, cache));
}

}  // namespace knormal
