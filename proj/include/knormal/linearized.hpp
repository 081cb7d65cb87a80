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

// Linearized q-associates and the additive-order structure of F_{q^n}:
// evaluating L_f(β) = Σ a_i β^{q^i}, the F_q-order of an element (the minimal
// monic annihilator dividing x^n − 1), k-normality, and normal-element search.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "knormal/field.hpp"
#include "knormal/poly.hpp"

namespace knormal {

// L_f(β) = Σ a_i β^{q^i} for f = Σ a_i x^i with coefficients in F_q.
inline Elem linearized_eval(const FieldCtx& F, const LPoly& f, const Elem& beta) {
    Elem acc = F.zero();
    Elem conj = beta;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i > 0) conj = F.frobenius(conj);
        if (f[i] != 0) acc = F.add(acc, F.scale(f[i], conj));
    }
    return acc;
}

// F_q-order of β: the minimal monic g | x^n − 1 with L_g(β) = 0, computed as
// (x^n − 1) / gcd(Σ_{i<n} β^{q^i} x^{n−1−i}, x^n − 1).  The gcd runs over
// F_{q^n}; the quotient always lands back in F_q[x] — a coefficient outside
// the base field would falsify the method, so it is a logic error, not input.
inline LPoly fq_order(const FieldCtx& F, const Elem& beta) {
    const unsigned n = F.n();
    ExtOps E = F.ops();

    PolyOf<ExtOps> s(n, F.zero());
    Elem conj = beta;
    for (unsigned i = 0; i < n; ++i) {
        s[n - 1 - i] = conj;
        if (i + 1 < n) conj = F.frobenius(conj);
    }
    poly_trim(E, s);

    PolyOf<ExtOps> xn1(n + 1, F.zero());
    xn1[0] = F.neg(F.one());
    xn1[n] = F.one();

    PolyOf<ExtOps> ord = poly_div_exact(E, xn1, poly_gcd(E, s, xn1));
    LPoly out(ord.size());
    for (std::size_t i = 0; i < ord.size(); ++i) {
        if (!F.in_base(ord[i])) throw std::logic_error("fq_order: quotient left the base field");
        out[i] = ord[i][0];
    }
    return out;
}

// k-normality: n − deg(fq_order(β)).  0 means normal, n means β = 0.
inline unsigned k_normality(const FieldCtx& F, const Elem& beta) {
    return F.n() - static_cast<unsigned>(poly_deg(fq_order(F, beta)));
}

inline bool is_normal(const FieldCtx& F, const Elem& beta) { return k_normality(F, beta) == 0; }

// Rank of the n×n matrix whose rows are the Frobenius conjugates β^{q^i} in
// the power basis.  Equals deg(fq_order(β)): the conjugates span a subspace
// of dimension n − k for a k-normal β.  Cheaper than the gcd route when only
// the rank is needed (census scans).
inline unsigned conjugate_rank(const FieldCtx& F, const Elem& beta) {
    const unsigned n = F.n();
    const SmallField& k = F.base();
    std::vector<Elem> rows(n);
    Elem conj = beta;
    for (unsigned i = 0; i < n; ++i) {
        rows[i] = conj;
        if (i + 1 < n) conj = F.frobenius(conj);
    }
    unsigned rank = 0;
    for (unsigned col = 0; col < n && rank < n; ++col) {
        unsigned piv = rank;
        while (piv < n && rows[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(rows[rank], rows[piv]);
        std::uint64_t s = k.inv(rows[rank][col]);
        for (unsigned j = col; j < n; ++j) rows[rank][j] = k.mul(s, rows[rank][j]);
        for (unsigned r = rank + 1; r < n; ++r) {
            std::uint64_t f = rows[r][col];
            if (f == 0) continue;
            for (unsigned j = col; j < n; ++j) rows[r][j] = k.sub(rows[r][j], k.mul(f, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

// Deterministic first normal element in scan order.  For n >= 2 the scan
// starts at x: every element of F_q has F_q-order dividing x − 1, degree too
// small to be normal.  For n = 1 the first normal element is the label 1.
inline Elem find_normal(const FieldCtx& F) {
    Elem a = F.zero();
    if (F.n() == 1)
        a[0] = 1;
    else
        a[1] = 1;
    do {
        if (is_normal(F, a)) return a;
    } while (F.next_element(a));
    throw domain_error("find_normal: scan exhausted");  // cannot happen: normal elements exist
}

// Exceptional translates of β with F_q-order g at the critical degree:
// {u ∈ F_q : fq_order(β + u) ≠ g}.  Requires n = 2k, deg g = k, (x − 1) | g,
// and fq_order(β) = g; the returned set has size ≤ 1 (and is empty whenever
// (x − 1)^2 | g), which callers may rely on.
inline std::vector<std::uint64_t> translate_order_profile(const FieldCtx& F, const Elem& beta,
                                                          LPoly g) {
    const unsigned n = F.n();
    LabelOps k{&F.base()};
    poly_trim(k, g);
    if (n % 2 != 0 || poly_deg(g) != static_cast<int>(n / 2))
        throw domain_error("translate_order_profile: requires n = 2k and deg g = k");
    if (poly_eval(k, g, k.one()) != 0)
        throw domain_error("translate_order_profile: (x - 1) must divide g");
    if (fq_order(F, beta) != g)
        throw domain_error("translate_order_profile: beta does not have F_q-order g");
    const std::uint64_t q = F.base().size();
    if (q > 100000)
        throw domain_error("translate_order_profile: base field too large to scan translates");

    std::vector<std::uint64_t> exceptional;
    for (std::uint64_t u = 0; u < q; ++u)
        if (fq_order(F, F.add(beta, F.embed_label(u))) != g) exceptional.push_back(u);
    return exceptional;
}

}  // namespace knormal
