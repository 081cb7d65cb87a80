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

// Analytic existence machinery for primitive k-normal elements: the
// non-critical and critical character-sum bounds, the per-q prime sieve, and
// the asymptotic bound-refinement chain.  Two arithmetic regimes, chosen per
// Design: every per-q verdict is exact rational arithmetic (a rounding error
// may never flip an existence answer), while the transcendental steps of the
// global bound chain run in >= 200-bit floating point with directed upward
// rounding so every recorded bound is a safe over-estimate.

#include <mpfr.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knormal/field.hpp"
#include "knormal/num.hpp"
#include "knormal/polyfactor.hpp"

namespace knormal {

// n = 2k rejected by the non-critical reduction; callers route those q to the
// critical machinery instead.  Distinct type so the dispatch is testable.
struct critical_case : domain_error {
    using domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// exact per-q checks

// q^{n-2k} >= (W(q^n - 1) * W(x^n - 1))^2, the squared form of the classical
// primitive-k-normal existence inequality away from the critical line.
inline bool noncritical_bound_check(const PrimePower& q, unsigned n, unsigned k,
                                    const FactorCache* cache = nullptr) {
    if (n == 2 * k) throw critical_case("noncritical_bound_check: n = 2k is the critical case");
    if (2 * k > n) throw domain_error("noncritical_bound_check: requires 2k < n");
    Int w_int = num_squarefree_divisors(factor_field_order(q.q, n, cache));
    Int w_poly = num_squarefree_poly_divisors(*small_field_for(q), xn_minus_1(*small_field_for(q), n));
    Int rhs = w_int * w_poly;
    rhs *= rhs;
    return int_pow(Int(static_cast<unsigned long>(q.q)), n - 2 * k) >= rhs;
}

// q >= ((n-1) * W(q^n - 1))^2, the squared critical-line inequality.  Assumes
// the caller has already secured a property-(A) divisor for (q, n/2).
inline bool critical_bound_check(const PrimePower& q, unsigned n, const FactorCache* cache = nullptr) {
    Int rhs = Int(n - 1) * num_squarefree_divisors(factor_field_order(q.q, n, cache));
    rhs *= rhs;
    return Int(static_cast<unsigned long>(q.q)) >= rhs;
}

// ---------------------------------------------------------------------------
// the per-q sieve (n = 6)

// One last-r-primes decomposition of q^6 - 1.  delta = 1 - sum(1/p) over the
// r largest distinct primes; when delta > 0 the decomposition is usable and
// Delta = (r-1)/delta + 2 with acceptance threshold (5 * 2^{u-r} * Delta)^2,
// u = total count of distinct primes.  With r = 0 the formula is applied
// literally: delta = 1, Delta = 1, threshold (5 * 2^u)^2 — the plain
// critical bound.  For unusable rows Delta and threshold stay 0.
struct SieveDecomposition {
    unsigned r = 0;
    std::vector<Int> sieve_primes;
    Rat delta = 0;
    Rat Delta = 0;
    Rat threshold = 0;
    bool usable = false;
    bool succeeds = false;
};

// All decompositions r = 0..u in sieve order.
inline std::vector<SieveDecomposition> sieve_trace(const PrimePower& q, const FactorCache* cache = nullptr) {
    FactoredInt f = factor_field_order(q.q, 6, cache);
    const unsigned u = static_cast<unsigned>(f.factors.size());
    std::vector<SieveDecomposition> rows;
    rows.reserve(u + 1);
    for (unsigned r = 0; r <= u; ++r) {
        SieveDecomposition d;
        d.r = r;
        Rat sum = 0;
        for (unsigned i = u - r; i < u; ++i) {
            d.sieve_primes.push_back(f.factors[i].first);
            sum += Rat(1) / f.factors[i].first;
        }
        d.delta = 1 - sum;
        if (d.delta > 0) {
            d.usable = true;
            d.Delta = Rat(static_cast<long>(r) - 1) / d.delta + 2;
            d.threshold = 5 * d.Delta * (Int(1) << (u - r));
            d.threshold *= d.threshold;
            d.succeeds = Rat(static_cast<unsigned long>(q.q)) >= d.threshold;
        }
        rows.push_back(std::move(d));
    }
    return rows;
}

// First succeeding decomposition scanning r = 0..u, or (false, absent).
inline std::pair<bool, std::optional<SieveDecomposition>> sieve(const PrimePower& q,
                                                                const FactorCache* cache = nullptr) {
    for (auto& d : sieve_trace(q, cache))
        if (d.succeeds) return {true, std::move(d)};
    return {false, std::nullopt};
}

// ---------------------------------------------------------------------------
// high-precision upward-rounded bound chain

// Minimal RAII wrapper over mpfr_t; only what the bound chain needs.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 200) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDU); }

    // The held binary float, exactly.
    Rat to_rat() const {
        Int mant;
        mp_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v_);
        Rat r(mant);
        Int scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
        if (e < 0)
            r /= scale;
        else
            r *= scale;
        return r;
    }

    // Scientific-notation decimal over-estimate suitable for reports.
    std::string str(int digits = 18) const {
        char buf[128];
        mpfr_snprintf(buf, sizeof buf, "%.*RUe", digits, v_);
        return buf;
    }

  private:
    mpfr_t v_;
};

// Round a positive rational up to three significant decimal digits: the
// smallest integer d * 10^j >= v with d <= 999.
inline Int round_up_3sig(const Rat& v) {
    if (v <= 0) throw domain_error("round_up_3sig: value must be positive");
    Int pow10 = 1;
    for (;;) {
        Int den = v.get_den() * pow10;
        Int d;
        mpz_cdiv_q(d.get_mpz_t(), v.get_num().get_mpz_t(), den.get_mpz_t());
        if (d <= 999) return d * pow10;
        pow10 *= 10;
    }
}

// One refinement step (input bound, primorial cutoff, resulting bound).
struct ChainStep {
    Int M;
    unsigned omega_max = 0;
    Rat N_exact;
    Int N;  // N_exact rounded up to 3 significant digits; next step's input
};

struct BoundChainReport {
    double t = 0;
    double u = 0;
    std::uint64_t r_count = 0;  // primes in (2^t, 2^{t+u}]
    BigFloat S;                 // upper bound on the reciprocal sum over that window
    BigFloat A;                 // upper bound on prod_{p < 2^t} 2 p^{-1/(t+u)}
    BigFloat M;                 // upper bound on (5 A Delta)^{2(t+u)/(t+u-12)}
    std::vector<ChainStep> chain;
};

// The opening bound M(t, u).  Every floating step rounds so the result only
// over-estimates: S up, 1 - S down, A's inner exponent x*ln(p) down before
// exp of its negation rounds up, and the final power with inflated base and
// exponent.  The prime windows are delimited by the double values 2^t and
// 2^{t+u}; t and u enter the >= 200-bit arithmetic exactly.
inline BoundChainReport initial_bound(double t, double u, mpfr_prec_t prec = 200) {
    if (!(t > 0) || !(u > 0) || !(t + u > 12))
        throw domain_error("initial_bound: requires t, u > 0 with t + u > 12");
    BoundChainReport rep;
    rep.t = t;
    rep.u = u;
    rep.S = BigFloat(prec);
    rep.A = BigFloat(prec);
    rep.M = BigFloat(prec);

    const double lo = std::pow(2.0, t);
    const double hi = std::pow(2.0, t + u);
    std::vector<std::uint64_t> window = primes_in_range(lo, hi);
    rep.r_count = window.size();

    mpfr_t a, b, tu;
    mpfr_init2(a, prec);
    mpfr_init2(b, prec);
    mpfr_init2(tu, prec);
    mpfr_set_d(tu, t, MPFR_RNDN);      // exact: double fits
    mpfr_add_d(tu, tu, u, MPFR_RNDN);  // exact at this precision

    for (std::uint64_t p : window) {
        mpfr_set_ui(a, p, MPFR_RNDN);
        mpfr_ui_div(a, 1, a, MPFR_RNDU);
        mpfr_add(rep.S.get(), rep.S.get(), a, MPFR_RNDU);
    }
    if (mpfr_cmp_ui(rep.S.get(), 1) >= 0) {
        mpfr_clears(a, b, tu, nullptr);
        throw domain_error("initial_bound: reciprocal prime sum reaches 1; pick a narrower window");
    }

    // A: x = 1/(t+u) rounded down, ln p down, product down, then exp(-y) up
    mpfr_t x;
    mpfr_init2(x, prec);
    mpfr_ui_div(x, 1, tu, MPFR_RNDD);
    mpfr_set_ui(rep.A.get(), 1, MPFR_RNDN);
    for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(lo))) {
        if (static_cast<double>(p) >= lo) break;
        mpfr_set_ui(a, p, MPFR_RNDN);
        mpfr_log(a, a, MPFR_RNDD);
        mpfr_mul(a, a, x, MPFR_RNDD);
        mpfr_neg(a, a, MPFR_RNDN);  // exact
        mpfr_exp(a, a, MPFR_RNDU);
        mpfr_mul_ui(a, a, 2, MPFR_RNDU);
        mpfr_mul(rep.A.get(), rep.A.get(), a, MPFR_RNDU);
    }

    // Delta = 2 + (r-1)/(1-S), over-estimated
    mpfr_ui_sub(a, 1, rep.S.get(), MPFR_RNDD);
    mpfr_set_ui(b, static_cast<unsigned long>(rep.r_count - 1), MPFR_RNDN);
    mpfr_div(b, b, a, MPFR_RNDU);
    mpfr_add_ui(b, b, 2, MPFR_RNDU);

    // M = (5 A Delta)^{2(t+u)/(t+u-12)}
    mpfr_mul(b, b, rep.A.get(), MPFR_RNDU);
    mpfr_mul_ui(b, b, 5, MPFR_RNDU);
    mpfr_sub_ui(a, tu, 12, MPFR_RNDN);  // exact
    mpfr_mul_2ui(tu, tu, 1, MPFR_RNDN);
    mpfr_div(a, tu, a, MPFR_RNDU);
    mpfr_pow(rep.M.get(), b, a, MPFR_RNDU);

    mpfr_clears(a, b, tu, x, nullptr);
    return rep;
}

// One refinement of an integer bound M > 1: omega_max is the largest w with
// p_1 ... p_w <= M^6 - 1, and the new bound is
// max_{1<=w<=omega_max} min_{0<=r<=w} (5 * 2^{w-r} * Delta_{w,r})^2 over the
// usable decompositions, all in exact rationals.
inline std::pair<unsigned, Rat> refine_bound(const Int& M) {
    if (M <= 1) throw domain_error("refine_bound: bound must exceed 1");
    Int cap = int_pow(M, 6) - 1;

    std::vector<std::uint64_t> primes = primes_first(64);
    unsigned wmax = 0;
    Int primorial = 1;
    for (;; ++wmax) {
        if (wmax == primes.size()) primes = primes_first(2 * primes.size());
        primorial *= primes[wmax];
        if (primorial > cap) break;
    }

    Rat best_overall = 0;
    for (unsigned w = 1; w <= wmax; ++w) {
        Rat sum = 0;
        Rat best;
        bool have = false;
        for (unsigned r = 0; r <= w; ++r) {
            if (r > 0) sum += Rat(1, static_cast<unsigned long>(primes[w - r]));
            Rat delta = 1 - sum;
            if (delta <= 0) continue;
            Rat th = Rat(static_cast<long>(r) - 1) / delta + 2;
            th = 5 * th * (Int(1) << (w - r));
            th *= th;
            if (!have || th < best) {
                best = th;
                have = true;
            }
        }
        if (have && best > best_overall) best_overall = best;
    }
    return {wmax, best_overall};
}

// Full chain: start from initial_bound's M (rounded up to 3 significant
// digits, the grain every subsequent bound is recorded at) and refine until
// the 3-digit bound stops decreasing; the step that fails to improve is not
// recorded.
inline BoundChainReport bound_chain(double t, double u, mpfr_prec_t prec = 200) {
    BoundChainReport rep = initial_bound(t, u, prec);
    Int M = round_up_3sig(rep.M.to_rat());
    for (;;) {
        auto [wmax, n_exact] = refine_bound(M);
        Int N = round_up_3sig(n_exact);
        if (!rep.chain.empty() && N >= rep.chain.back().N) break;
        rep.chain.push_back({M, wmax, n_exact, N});
        M = N;
    }
    return rep;
}

}  // namespace knormal
