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

// F_{q^n} over F_q: extension contexts with a deterministic modulus, element
// arithmetic in the power basis, Frobenius via a precomputed matrix, and
// multiplicative-order machinery.  Elements are coefficient vectors of fixed
// length n over the base field's labels, so fields with q^n far beyond 2^64
// still work; only the base field size is bounded.

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "knormal/num.hpp"
#include "knormal/polyfactor.hpp"
#include "knormal/smallfield.hpp"

namespace knormal {

struct PrimePower {
    std::uint64_t p = 0;
    unsigned m = 0;
    std::uint64_t q = 0;

    static PrimePower make(std::uint64_t p, unsigned m) {
        if (m == 0) throw domain_error("PrimePower: exponent must be >= 1");
        if (p < 2 || !is_probable_prime(Int(static_cast<unsigned long>(p))))
            throw domain_error("PrimePower: " + std::to_string(p) + " is not prime");
        std::uint64_t q = 1;
        for (unsigned i = 0; i < m; ++i) {
            if (q > (std::uint64_t{1} << 62) / p) throw domain_error("PrimePower: q overflows");
            q *= p;
        }
        return {p, m, q};
    }

    static PrimePower from_q(std::uint64_t q) {
        if (q < 2) throw domain_error("PrimePower: q must be >= 2");
        FactoredInt f = factor(q);
        if (f.factors.size() != 1)
            throw domain_error("PrimePower: " + std::to_string(q) + " is not a prime power");
        return {to_u64(f.factors[0].first), f.factors[0].second, q};
    }

    bool operator==(const PrimePower&) const = default;
};

class FieldCtx;

// Field-operations model over FieldCtx elements, for the generic polynomial
// algorithms (used by the q-order gcd computation).
struct ExtOps {
    const FieldCtx* E;
    using Elem = std::vector<std::uint64_t>;
    Elem zero() const;
    Elem one() const;
    bool is_zero(const Elem& a) const;
    bool eq(const Elem& a, const Elem& b) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem inv(const Elem& a) const;
};

class FieldCtx {
  public:
    // Element of F_{q^n}: n coefficients over F_q in the power basis of the
    // modulus, constant coordinate first.
    using Elem = std::vector<std::uint64_t>;

    FieldCtx(PrimePower q, unsigned n, const FactorCache* cache = nullptr)
        : FieldCtx(std::move(q), n, LPoly{}, LPoly{}, cache) {}

    // Explicit moduli: modulus_over_q for F_{q^n} over F_q (empty = scan for
    // the deterministic first irreducible), base_modulus for F_q over F_p
    // when m > 1 (empty = deterministic).  Both are validated.
    FieldCtx(PrimePower q, unsigned n, LPoly modulus_over_q, LPoly base_modulus,
             const FactorCache* cache = nullptr)
        : q_(q), n_(n) {
        if (n == 0) throw domain_error("FieldCtx: extension degree must be >= 1");
        if (q.m == 1) {
            if (!base_modulus.empty()) throw domain_error("FieldCtx: base modulus given for a prime field");
            base_ = SmallField::prime(q.p);
        } else if (base_modulus.empty()) {
            base_ = make_base_field(q.p, q.m);
        } else {
            base_ = SmallField::extension(SmallField::prime(q.p), std::move(base_modulus));
        }

        LabelOps k{base_.get()};
        if (modulus_over_q.empty()) {
            modulus_ = first_irreducible(*base_, n);
        } else {
            poly_trim(k, modulus_over_q);
            if (poly_deg(modulus_over_q) != static_cast<int>(n) || modulus_over_q.back() != 1)
                throw domain_error("FieldCtx: modulus must be monic of degree n");
            if (!is_irreducible(*base_, modulus_over_q)) throw domain_error("FieldCtx: modulus is reducible");
            modulus_ = std::move(modulus_over_q);
        }

        order_factored_ = factor_field_order(q.q, n, cache);
        order_ = order_factored_.value;

        // Frobenius matrix: column i holds (x^i)^q in the power basis.
        LPoly xq = poly_powmod(k, poly_x(k), q.q, modulus_);
        xq.resize(n, 0);
        frob_.resize(n);
        frob_[0] = one();
        if (n > 1) frob_[1] = xq;
        for (unsigned i = 2; i < n; ++i) frob_[i] = mul(frob_[i - 1], xq);
    }

    const PrimePower& q() const { return q_; }
    unsigned n() const { return n_; }
    const SmallField& base() const { return *base_; }
    std::shared_ptr<const SmallField> base_ptr() const { return base_; }
    const LPoly& modulus() const { return modulus_; }
    const Int& order() const { return order_; }  // q^n - 1
    const FactoredInt& order_factored() const { return order_factored_; }

    Elem zero() const { return Elem(n_, 0); }
    Elem one() const { return embed_label(1); }
    Elem embed_label(std::uint64_t c) const {
        Elem e(n_, 0);
        e[0] = c;
        return e;
    }
    // The class of x: the canonical root of the modulus (reduced for n = 1).
    Elem x() const {
        if (n_ == 1) return embed_label(base_->neg(modulus_[0]));
        Elem e(n_, 0);
        e[1] = 1;
        return e;
    }

    bool is_zero(const Elem& a) const {
        for (std::uint64_t c : a)
            if (c != 0) return false;
        return true;
    }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    // Lies in the base field F_q iff only the constant coordinate is set.
    bool in_base(const Elem& a) const {
        for (std::size_t i = 1; i < a.size(); ++i)
            if (a[i] != 0) return false;
        return true;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r(n_);
        for (unsigned i = 0; i < n_; ++i) r[i] = base_->add(a[i], b[i]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(n_);
        for (unsigned i = 0; i < n_; ++i) r[i] = base_->sub(a[i], b[i]);
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r(n_);
        for (unsigned i = 0; i < n_; ++i) r[i] = base_->neg(a[i]);
        return r;
    }
    Elem scale(std::uint64_t c, const Elem& a) const {
        Elem r(n_);
        for (unsigned i = 0; i < n_; ++i) r[i] = base_->mul(c, a[i]);
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        // schoolbook product, then reduction by the monic modulus
        std::vector<std::uint64_t> t(2 * n_ - 1, 0);
        for (unsigned i = 0; i < n_; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < n_; ++j)
                if (b[j] != 0) t[i + j] = base_->add(t[i + j], base_->mul(a[i], b[j]));
        }
        for (unsigned i = 2 * n_ - 2; i >= n_ && i < 2 * n_; --i) {
            std::uint64_t c = t[i];
            if (c == 0) continue;
            t[i] = 0;
            for (unsigned j = 0; j < n_; ++j)
                t[i - n_ + j] = base_->sub(t[i - n_ + j], base_->mul(c, modulus_[j]));
        }
        t.resize(n_);
        return t;
    }

    Elem inv(const Elem& a) const {
        if (is_zero(a)) throw domain_error("FieldCtx: inverse of zero");
        LabelOps k{base_.get()};
        LPoly da = a;
        poly_trim(k, da);
        auto [g, s, t] = poly_ext_gcd(k, da, modulus_);
        if (poly_deg(g) != 0) throw domain_error("FieldCtx: inverse failed (modulus not irreducible?)");
        s = poly_scale(k, s, k.inv(g[0]));
        s.resize(n_, 0);
        return s;
    }

    Elem pow(const Elem& a, const Int& e) const {
        if (e < 0) throw domain_error("FieldCtx::pow: negative exponent");
        if (e == 0) return one();
        Elem acc = one();
        for (mp_bitcnt_t i = mpz_sizeinbase(e.get_mpz_t(), 2); i-- > 0;) {
            acc = mul(acc, acc);
            if (mpz_tstbit(e.get_mpz_t(), i)) acc = mul(acc, a);
        }
        return acc;
    }

    // a^q via the precomputed matrix: linear in the coefficients because the
    // map fixes F_q pointwise.
    Elem frobenius(const Elem& a) const {
        Elem r = zero();
        for (unsigned i = 0; i < n_; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < n_; ++j) r[j] = base_->add(r[j], base_->mul(a[i], frob_[i][j]));
        }
        return r;
    }

    Elem frobenius_iter(Elem a, unsigned times) const {
        for (unsigned i = 0; i < times; ++i) a = frobenius(a);
        return a;
    }

    // Multiplicative order by dividing q^n - 1 down its prime factorization.
    Int element_order(const Elem& a) const {
        if (is_zero(a)) throw domain_error("element_order: zero element");
        Int ord = order_;
        for (const auto& [p, e] : order_factored_.factors) {
            while (mpz_divisible_p(ord.get_mpz_t(), p.get_mpz_t())) {
                Int cand = ord / p;
                if (!eq(pow(a, cand), one())) break;
                ord = cand;
            }
        }
        return ord;
    }

    bool is_primitive(const Elem& a) const {
        if (is_zero(a)) throw domain_error("is_primitive: zero element");
        for (const auto& [p, e] : order_factored_.factors)
            if (eq(pow(a, order_ / p), one())) return false;
        return true;
    }

    // Odometer step in scan order (constant coordinate fastest).  Returns
    // false when the enumeration wraps back to zero.
    bool next_element(Elem& a) const {
        for (unsigned i = 0; i < n_; ++i) {
            if (++a[i] < base_->size()) return true;
            a[i] = 0;
        }
        return false;
    }

    // Deterministic first primitive element in scan order.  For n >= 2 the
    // scan starts at x: the skipped prefix is exactly F_q, none of whose
    // elements can generate a group of order q^n - 1 > q - 1.
    Elem find_primitive() const {
        Elem a = zero();
        if (n_ == 1)
            a[0] = 1;
        else
            a[1] = 1;  // the element x; everything below it is F_q
        do {
            if (!is_zero(a) && is_primitive(a)) return a;
        } while (next_element(a));
        throw domain_error("find_primitive: scan exhausted");  // cannot happen
    }

    ExtOps ops() const { return ExtOps{this}; }

  private:
    PrimePower q_;
    unsigned n_;
    std::shared_ptr<const SmallField> base_;
    LPoly modulus_;
    Int order_;
    FactoredInt order_factored_;
    std::vector<Elem> frob_;  // frob_[i] = (x^i)^q
};

// The element type used throughout the extension-field layers.
using Elem = FieldCtx::Elem;

inline ExtOps::Elem ExtOps::zero() const { return E->zero(); }
inline ExtOps::Elem ExtOps::one() const { return E->one(); }
inline bool ExtOps::is_zero(const Elem& a) const { return E->is_zero(a); }
inline bool ExtOps::eq(const Elem& a, const Elem& b) const { return E->eq(a, b); }
inline ExtOps::Elem ExtOps::add(const Elem& a, const Elem& b) const { return E->add(a, b); }
inline ExtOps::Elem ExtOps::sub(const Elem& a, const Elem& b) const { return E->sub(a, b); }
inline ExtOps::Elem ExtOps::mul(const Elem& a, const Elem& b) const { return E->mul(a, b); }
inline ExtOps::Elem ExtOps::neg(const Elem& a) const { return E->neg(a); }
inline ExtOps::Elem ExtOps::inv(const Elem& a) const { return E->inv(a); }

// Convenience: build F_{q^n} for a bare q.
inline FieldCtx build_field(std::uint64_t q, unsigned n, const FactorCache* cache = nullptr) {
    return FieldCtx(PrimePower::from_q(q), n, cache);
}

// F_q as a SmallField, prime or extension, with the deterministic tower.
inline std::shared_ptr<const SmallField> small_field_for(const PrimePower& q) {
    return q.m == 1 ? SmallField::prime(q.p) : make_base_field(q.p, q.m);
}

}  // namespace knormal
