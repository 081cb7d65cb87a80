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

// Dense polynomial arithmetic, generic over a field-operations model.
//
// A model K provides: Elem, zero(), one(), is_zero(e), eq(a,b), add, sub,
// mul, neg, inv.  Polynomials are std::vector<Elem> with coefficient i
// belonging to x^i, kept normalized: no trailing zero coefficients, the zero
// polynomial is the empty vector (degree -1).

#include <utility>
#include <vector>

#include "knormal/base.hpp"

namespace knormal {

template <class K>
using PolyOf = std::vector<typename K::Elem>;

template <class P>
int poly_deg(const P& f) {
    return static_cast<int>(f.size()) - 1;
}

template <class K>
void poly_trim(const K& k, PolyOf<K>& f) {
    while (!f.empty() && k.is_zero(f.back())) f.pop_back();
}

template <class K>
bool poly_eq(const K& k, const PolyOf<K>& a, const PolyOf<K>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!k.eq(a[i], b[i])) return false;
    return true;
}

template <class K>
PolyOf<K> poly_one(const K& k) {
    return {k.one()};
}

template <class K>
PolyOf<K> poly_x(const K& k) {
    return {k.zero(), k.one()};
}

template <class K>
PolyOf<K> poly_add(const K& k, const PolyOf<K>& a, const PolyOf<K>& b) {
    PolyOf<K> r(std::max(a.size(), b.size()), k.zero());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size() && i < b.size())
            r[i] = k.add(a[i], b[i]);
        else
            r[i] = i < a.size() ? a[i] : b[i];
    }
    poly_trim(k, r);
    return r;
}

template <class K>
PolyOf<K> poly_sub(const K& k, const PolyOf<K>& a, const PolyOf<K>& b) {
    PolyOf<K> r(std::max(a.size(), b.size()), k.zero());
    for (std::size_t i = 0; i < r.size(); ++i) {
        typename K::Elem av = i < a.size() ? a[i] : k.zero();
        typename K::Elem bv = i < b.size() ? b[i] : k.zero();
        r[i] = k.sub(av, bv);
    }
    poly_trim(k, r);
    return r;
}

template <class K>
PolyOf<K> poly_scale(const K& k, const PolyOf<K>& f, const typename K::Elem& c) {
    if (k.is_zero(c)) return {};
    PolyOf<K> r(f.size(), k.zero());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = k.mul(f[i], c);
    poly_trim(k, r);
    return r;
}

template <class K>
PolyOf<K> poly_mul(const K& k, const PolyOf<K>& a, const PolyOf<K>& b) {
    if (a.empty() || b.empty()) return {};
    PolyOf<K> r(a.size() + b.size() - 1, k.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (k.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
    }
    poly_trim(k, r);
    return r;
}

template <class K>
PolyOf<K> poly_monic(const K& k, const PolyOf<K>& f) {
    if (f.empty()) throw domain_error("poly_monic: zero polynomial");
    PolyOf<K> r = f;
    if (!k.eq(r.back(), k.one())) {
        typename K::Elem s = k.inv(r.back());
        for (auto& c : r) c = k.mul(c, s);
    }
    return r;
}

// Long division; b must be nonzero.  Returns {quotient, remainder}.
template <class K>
std::pair<PolyOf<K>, PolyOf<K>> poly_divmod(const K& k, const PolyOf<K>& a, const PolyOf<K>& b) {
    if (b.empty()) throw domain_error("poly_divmod: division by zero polynomial");
    if (a.size() < b.size()) return {{}, a};
    PolyOf<K> rem = a;
    PolyOf<K> quot(a.size() - b.size() + 1, k.zero());
    typename K::Elem lead_inv = k.inv(b.back());
    for (std::size_t i = a.size(); i-- >= b.size();) {
        if (k.is_zero(rem[i])) continue;
        typename K::Elem c = k.mul(rem[i], lead_inv);
        quot[i - (b.size() - 1)] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            rem[i - (b.size() - 1) + j] = k.sub(rem[i - (b.size() - 1) + j], k.mul(c, b[j]));
    }
    poly_trim(k, rem);
    poly_trim(k, quot);
    return {quot, rem};
}

template <class K>
PolyOf<K> poly_mod(const K& k, const PolyOf<K>& a, const PolyOf<K>& b) {
    return poly_divmod(k, a, b).second;
}

template <class K>
PolyOf<K> poly_div_exact(const K& k, const PolyOf<K>& a, const PolyOf<K>& b) {
    auto [q, r] = poly_divmod(k, a, b);
    if (!r.empty()) throw domain_error("poly_div_exact: division is not exact");
    return q;
}

// Monic gcd; gcd(0, 0) = 0.
template <class K>
PolyOf<K> poly_gcd(const K& k, PolyOf<K> a, PolyOf<K> b) {
    while (!b.empty()) {
        PolyOf<K> r = poly_mod(k, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    return poly_monic(k, a);
}

// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic unless zero.
template <class K>
std::tuple<PolyOf<K>, PolyOf<K>, PolyOf<K>> poly_ext_gcd(const K& k, const PolyOf<K>& a, const PolyOf<K>& b) {
    PolyOf<K> r0 = a, r1 = b;
    PolyOf<K> s0 = poly_one(k), s1 = {};
    PolyOf<K> t0 = {}, t1 = poly_one(k);
    while (!r1.empty()) {
        auto [q, r] = poly_divmod(k, r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        PolyOf<K> s2 = poly_sub(k, s0, poly_mul(k, q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        PolyOf<K> t2 = poly_sub(k, t0, poly_mul(k, q, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) return {r0, s0, t0};
    typename K::Elem lead = r0.back();
    if (!k.eq(lead, k.one())) {
        typename K::Elem li = k.inv(lead);
        for (auto& c : r0) c = k.mul(c, li);
        for (auto& c : s0) c = k.mul(c, li);
        for (auto& c : t0) c = k.mul(c, li);
    }
    return {r0, s0, t0};
}

template <class K>
PolyOf<K> poly_mulmod(const K& k, const PolyOf<K>& a, const PolyOf<K>& b, const PolyOf<K>& m) {
    return poly_mod(k, poly_mul(k, a, b), m);
}

template <class K>
PolyOf<K> poly_powmod(const K& k, const PolyOf<K>& f, const Int& e, const PolyOf<K>& m) {
    if (e < 0) throw domain_error("poly_powmod: negative exponent");
    PolyOf<K> base = poly_mod(k, f, m);
    PolyOf<K> acc = poly_mod(k, poly_one(k), m);
    mp_bitcnt_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return acc;
    for (mp_bitcnt_t i = bits; i-- > 0;) {
        acc = poly_mulmod(k, acc, acc, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = poly_mulmod(k, acc, base, m);
    }
    return acc;
}

template <class K>
PolyOf<K> poly_powmod(const K& k, const PolyOf<K>& f, std::uint64_t e, const PolyOf<K>& m) {
    return poly_powmod(k, f, Int(static_cast<unsigned long>(e)), m);
}

template <class K>
typename K::Elem poly_eval(const K& k, const PolyOf<K>& f, const typename K::Elem& x) {
    typename K::Elem acc = k.zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = k.add(k.mul(acc, x), f[i]);
    return acc;
}

template <class K>
PolyOf<K> poly_derivative(const K& k, const PolyOf<K>& f) {
    if (f.size() <= 1) return {};
    PolyOf<K> r(f.size() - 1, k.zero());
    for (std::size_t i = 1; i < f.size(); ++i) {
        // i * f[i] in the field: add f[i] to itself i mod char times -- the
        // model exposes only ring ops, so build the scalar by repeated add.
        typename K::Elem c = k.zero();
        for (std::size_t j = 0; j < i; ++j) c = k.add(c, f[i]);
        r[i - 1] = c;
    }
    poly_trim(k, r);
    return r;
}

}  // namespace knormal
