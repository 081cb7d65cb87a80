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

// Small finite fields with label arithmetic: every element of F_q is a label
// in [0, q).  Prime fields use modular arithmetic on the labels directly;
// extensions decode labels into digit vectors over the base field (label =
// sum digit_i * base_size^i), so a label's digits ARE its coordinates in the
// power basis of the extension modulus.  Fields up to a small size threshold
// precompute full multiplication/inverse tables.
//
// Towers are supported (extension of an extension), though the library only
// builds one level: F_{p^m} over F_p as the base of a top-level context.

#include <cstdint>
#include <memory>
#include <vector>

#include "knormal/num.hpp"
#include "knormal/poly.hpp"

namespace knormal {

class SmallField {
  public:
    static constexpr std::uint64_t kLutLimit = 2048;  // q*q table entries up to this (32 MiB)

    static std::shared_ptr<const SmallField> prime(std::uint64_t p) {
        if (p < 2 || p >= (1ull << 32)) throw domain_error("SmallField: prime out of range");
        if (!is_probable_prime(Int(static_cast<unsigned long>(p))))
            throw domain_error("SmallField: " + std::to_string(p) + " is not prime");
        return std::shared_ptr<const SmallField>(new SmallField(p));
    }

    // modulus: monic irreducible over base, constant-first labels, degree >= 2.
    static std::shared_ptr<const SmallField> extension(std::shared_ptr<const SmallField> base,
                                                       std::vector<std::uint64_t> modulus);

    std::uint64_t size() const { return q_; }
    std::uint64_t characteristic() const { return p_; }
    unsigned degree_over_prime() const { return deg_over_prime_; }
    bool is_prime_field() const { return base_ == nullptr; }
    const SmallField* base_field() const { return base_.get(); }
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        if (is_prime_field()) {
            std::uint64_t s = a + b;
            return s >= q_ ? s - q_ : s;
        }
        // Digit-wise addition never carries across digits.
        std::uint64_t r = 0, mult = 1, bs = base_->size();
        while (a != 0 || b != 0) {
            r += base_->add(a % bs, b % bs) * mult;
            a /= bs;
            b /= bs;
            mult *= bs;
        }
        return r;
    }

    std::uint64_t neg(std::uint64_t a) const {
        if (is_prime_field()) return a == 0 ? 0 : q_ - a;
        std::uint64_t r = 0, mult = 1, bs = base_->size();
        while (a != 0) {
            r += base_->neg(a % bs) * mult;
            a /= bs;
            mult *= bs;
        }
        return r;
    }

    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        if (is_prime_field())
            return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q_);
        if (!mul_lut_.empty()) return mul_lut_[a * q_ + b];
        return mul_slow(a, b);
    }

    std::uint64_t inv(std::uint64_t a) const {
        if (a == 0) throw domain_error("SmallField: inverse of zero");
        if (is_prime_field()) {
            // extended Euclid on int64 (p < 2^32 so everything fits)
            std::int64_t t = 0, newt = 1;
            std::int64_t r = static_cast<std::int64_t>(q_), newr = static_cast<std::int64_t>(a);
            while (newr != 0) {
                std::int64_t quo = r / newr;
                std::int64_t tmp = t - quo * newt;
                t = newt;
                newt = tmp;
                tmp = r - quo * newr;
                r = newr;
                newr = tmp;
            }
            return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(q_) : t);
        }
        if (!inv_lut_.empty()) return inv_lut_[a];
        return inv_slow(a);
    }

    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t acc = 1, base = a;
        while (e != 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    std::uint64_t pow(std::uint64_t a, const Int& e) const {
        if (e < 0) throw domain_error("SmallField::pow: negative exponent");
        std::uint64_t acc = 1;
        for (mp_bitcnt_t i = mpz_sizeinbase(e.get_mpz_t(), 2); i-- > 0;) {
            acc = mul(acc, acc);
            if (mpz_tstbit(e.get_mpz_t(), i)) acc = mul(acc, a);
        }
        return e == 0 ? 1 : acc;
    }

    // Canonical image of an integer through the prime subfield.
    std::uint64_t from_int(std::int64_t v) const {
        std::int64_t m = static_cast<std::int64_t>(p_);
        std::int64_t r = v % m;
        return static_cast<std::uint64_t>(r < 0 ? r + m : r);
    }

    // Digits of a label over the base field, lowest power first; size equals
    // the extension degree.
    std::vector<std::uint64_t> decode(std::uint64_t a) const {
        if (is_prime_field()) return {a};
        std::vector<std::uint64_t> d(modulus_.size() - 1, 0);
        std::uint64_t bs = base_->size();
        for (auto& di : d) {
            di = a % bs;
            a /= bs;
        }
        return d;
    }

    std::uint64_t encode(const std::vector<std::uint64_t>& digits) const {
        if (is_prime_field()) return digits.empty() ? 0 : digits[0];
        std::uint64_t bs = base_->size(), r = 0, mult = 1;
        for (std::size_t i = 0; i < digits.size(); ++i) {
            r += digits[i] * mult;
            mult *= bs;
        }
        return r;
    }

  private:
    explicit SmallField(std::uint64_t p) : p_(p), q_(p), deg_over_prime_(1) {}

    std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv_slow(std::uint64_t a) const;
    void build_luts();

    std::uint64_t p_ = 0, q_ = 0;
    unsigned deg_over_prime_ = 0;
    std::shared_ptr<const SmallField> base_;
    std::vector<std::uint64_t> modulus_;  // over base, constant first, monic
    std::vector<std::uint64_t> mul_lut_;
    std::vector<std::uint64_t> inv_lut_;
};

// Field-operations model over SmallField labels, for the generic polynomial
// algorithms.
struct LabelOps {
    const SmallField* F;
    using Elem = std::uint64_t;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    Elem add(Elem a, Elem b) const { return F->add(a, b); }
    Elem sub(Elem a, Elem b) const { return F->sub(a, b); }
    Elem mul(Elem a, Elem b) const { return F->mul(a, b); }
    Elem neg(Elem a) const { return F->neg(a); }
    Elem inv(Elem a) const { return F->inv(a); }
};

using LPoly = std::vector<std::uint64_t>;  // polynomial over a SmallField, labels, constant first

inline std::uint64_t SmallField::mul_slow(std::uint64_t a, std::uint64_t b) const {
    // Schoolbook product and monic reduction on stack buffers: this runs q^2/2
    // times when building the multiplication table, so it must not allocate.
    const SmallField& B = *base_;
    const std::size_t m = modulus_.size() - 1;
    if (m > 32) throw domain_error("SmallField: extension degree over base too large");
    std::uint64_t da[32], db[32], prod[63] = {};
    for (std::size_t i = 0; i < m; ++i, a /= B.q_) da[i] = a % B.q_;
    for (std::size_t i = 0; i < m; ++i, b /= B.q_) db[i] = b % B.q_;
    for (std::size_t i = 0; i < m; ++i) {
        if (da[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j)
            if (db[j] != 0) prod[i + j] = B.add(prod[i + j], B.mul(da[i], db[j]));
    }
    for (std::size_t i = 2 * m - 1; i-- > m;) {
        const std::uint64_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (std::size_t j = 0; j < m; ++j)
            if (modulus_[j] != 0) prod[i - m + j] = B.sub(prod[i - m + j], B.mul(c, modulus_[j]));
    }
    std::uint64_t r = 0;
    for (std::size_t i = m; i-- > 0;) r = r * B.q_ + prod[i];
    return r;
}

inline std::uint64_t SmallField::inv_slow(std::uint64_t a) const {
    LabelOps base_ops{base_.get()};
    LPoly da = decode(a);
    poly_trim(base_ops, da);
    auto [g, s, t] = poly_ext_gcd(base_ops, da, modulus_);
    if (poly_deg(g) != 0) throw domain_error("SmallField: modulus not irreducible (gcd degree > 0)");
    s = poly_scale(base_ops, s, base_ops.inv(g[0]));
    s.resize(modulus_.size() - 1, 0);
    return encode(s);
}

inline void SmallField::build_luts() {
    mul_lut_.assign(q_ * q_, 0);
    for (std::uint64_t a = 0; a < q_; ++a)
        for (std::uint64_t b = a; b < q_; ++b) {
            std::uint64_t v = mul_slow(a, b);
            mul_lut_[a * q_ + b] = v;
            mul_lut_[b * q_ + a] = v;
        }
    inv_lut_.assign(q_, 0);
    for (std::uint64_t a = 1; a < q_; ++a) inv_lut_[a] = inv_slow(a);
}

namespace detail {

constexpr unsigned kMaxIrredDeg = 32;

// r = a * b mod m with m monic of degree n; everything on caller-owned stack
// buffers (a, b, r of size n; r may alias a or b).
inline void stack_mulmod(const SmallField& F, const std::uint64_t* a, const std::uint64_t* b,
                         const std::uint64_t* m, unsigned n, std::uint64_t* r) {
    std::uint64_t prod[2 * kMaxIrredDeg - 1] = {};
    for (unsigned i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < n; ++j)
            if (b[j] != 0) prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
    }
    for (unsigned i = 2 * n - 1; i-- > n;) {
        const std::uint64_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < n; ++j)
            if (m[j] != 0) prod[i - n + j] = F.sub(prod[i - n + j], F.mul(c, m[j]));
    }
    for (unsigned i = 0; i < n; ++i) r[i] = prod[i];
}

// t <- t^e mod m (m monic of degree n), binary exponentiation on stack buffers.
inline void stack_powmod(const SmallField& F, std::uint64_t* t, std::uint64_t e,
                         const std::uint64_t* m, unsigned n) {
    std::uint64_t r[kMaxIrredDeg] = {1};
    while (e != 0) {
        if (e & 1) stack_mulmod(F, r, t, m, n, r);
        e >>= 1;
        if (e != 0) stack_mulmod(F, t, t, m, n, t);
    }
    for (unsigned i = 0; i < n; ++i) t[i] = r[i];
}

// gcd(u, m) constant?  u of degree < n, m monic of degree n; destroys nothing.
inline bool stack_coprime(const SmallField& F, const std::uint64_t* u, const std::uint64_t* m,
                          unsigned n) {
    std::uint64_t a[kMaxIrredDeg + 1], b[kMaxIrredDeg + 1];
    for (unsigned i = 0; i <= n; ++i) a[i] = m[i];
    for (unsigned i = 0; i < n; ++i) b[i] = u[i];
    int da = static_cast<int>(n), db = static_cast<int>(n) - 1;
    while (db >= 0 && b[db] == 0) --db;
    while (db >= 0) {
        // a <- a mod b
        const std::uint64_t lead_inv = F.inv(b[db]);
        for (int i = da; i >= db; --i) {
            const std::uint64_t c = F.mul(a[i], lead_inv);
            if (c == 0) continue;
            for (int j = 0; j <= db; ++j) a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]));
        }
        da = db - 1;
        while (da >= 0 && a[da] == 0) --da;
        for (int i = 0; i <= (da > db ? da : db); ++i) std::swap(a[i], b[i]);
        std::swap(da, db);
    }
    return da == 0;  // gcd is the nonzero constant left in a
}

}  // namespace detail

// Deterministic irreducibility test: f (monic, degree n >= 1) is irreducible
// over F_q iff it has no irreducible factor of degree d <= n/2, i.e.
// gcd(x^{q^d} - x, f) = 1 for every such d, walking x^{q^d} by repeated q-th
// powers.  Allocation-free: first_irreducible calls this on ~q^2 candidates
// when small-coefficient families are systematically reducible (e.g. every
// sextic x^6 + c1 x + c0 over F_{2^8}).
inline bool is_irreducible(const SmallField& F, const LPoly& f) {
    int n = poly_deg(f);
    if (n < 1) return false;
    if (f.back() != 1) throw domain_error("is_irreducible: polynomial must be monic");
    if (n == 1) return true;
    if (static_cast<unsigned>(n) > detail::kMaxIrredDeg)
        throw domain_error("is_irreducible: degree above 32 is unsupported");

    std::uint64_t m[detail::kMaxIrredDeg + 1], t[detail::kMaxIrredDeg] = {};
    for (int i = 0; i <= n; ++i) m[i] = f[i];
    t[1] = 1;  // t = x
    for (int d = 1; 2 * d <= n; ++d) {
        detail::stack_powmod(F, t, F.size(), m, static_cast<unsigned>(n));
        std::uint64_t u[detail::kMaxIrredDeg];
        for (int i = 0; i < n; ++i) u[i] = t[i];
        u[1] = F.sub(u[1], 1);
        if (!detail::stack_coprime(F, u, m, static_cast<unsigned>(n))) return false;
    }
    return true;
}

inline std::shared_ptr<const SmallField> SmallField::extension(std::shared_ptr<const SmallField> base,
                                                               std::vector<std::uint64_t> modulus) {
    if (!base) throw domain_error("SmallField::extension: null base");
    LabelOps k{base.get()};
    poly_trim(k, modulus);
    int n = poly_deg(modulus);
    if (n < 2) throw domain_error("SmallField::extension: modulus degree must be >= 2");
    if (modulus.back() != 1) throw domain_error("SmallField::extension: modulus must be monic");
    if (!is_irreducible(*base, modulus)) throw domain_error("SmallField::extension: modulus is reducible");

    std::uint64_t q = 1;
    for (int i = 0; i < n; ++i) {
        if (q > (1ull << 32) / base->size()) throw domain_error("SmallField::extension: field too large");
        q *= base->size();
    }
    auto F = std::shared_ptr<SmallField>(new SmallField(base->characteristic()));
    F->q_ = q;
    F->deg_over_prime_ = base->degree_over_prime() * static_cast<unsigned>(n);
    F->base_ = std::move(base);
    F->modulus_ = std::move(modulus);
    if (q <= kLutLimit) F->build_luts();
    return F;
}

// First monic irreducible of degree n over F, scanning coefficient vectors by
// ascending encoded value with the constant term as the fastest digit.
// Polynomials with zero constant term are skipped: for n >= 2 they are
// reducible anyway, and for n = 1 this pins the degenerate modulus to x + 1.
inline LPoly first_irreducible(const SmallField& F, unsigned n) {
    if (n == 0) throw domain_error("first_irreducible: degree must be >= 1");
    LPoly f(n + 1, 0);
    f[n] = 1;
    for (;;) {
        // advance the odometer (constant term fastest), skipping c0 = 0
        std::size_t i = 0;
        while (i < n) {
            if (++f[i] < F.size()) break;
            f[i] = 0;
            ++i;
        }
        if (i == n) throw domain_error("first_irreducible: scan exhausted");  // cannot happen
        if (f[0] == 0) continue;
        if (is_irreducible(F, f)) return f;
    }
}

// F_{p^m} with the deterministic modulus chain: F_p directly, or one
// extension step over F_p.
inline std::shared_ptr<const SmallField> make_base_field(std::uint64_t p, unsigned m) {
    auto Fp = SmallField::prime(p);
    if (m == 1) return Fp;
    return SmallField::extension(Fp, first_irreducible(*Fp, m));
}

}  // namespace knormal
