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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "knormal/existence.hpp"
#include "knormal/property_a.hpp"

using namespace knormal;

namespace {

Int e_notation(unsigned long mant, unsigned exp10) { return Int(mant) * int_pow(Int(10), exp10); }

}  // namespace

TEST_CASE("noncritical_bound_check: exact verdicts") {
    // 2^4 = 16 < (W(63) * W(x^6-1 over F_2))^2 = (4*4)^2
    CHECK_FALSE(noncritical_bound_check(PrimePower::from_q(2), 6, 1));
    CHECK_FALSE(noncritical_bound_check(PrimePower::from_q(3), 6, 2));
    CHECK_FALSE(noncritical_bound_check(PrimePower::from_q(2), 7, 1));
    CHECK(noncritical_bound_check(PrimePower::from_q(1000003), 6, 1));

    CHECK_THROWS_AS(noncritical_bound_check(PrimePower::from_q(2), 6, 3), critical_case);
    CHECK_THROWS_AS(noncritical_bound_check(PrimePower::from_q(3), 4, 2), critical_case);
    // past the critical line: plain domain error, not the critical signal
    try {
        noncritical_bound_check(PrimePower::from_q(3), 6, 4);
        FAIL("expected a domain_error");
    } catch (const critical_case&) {
        FAIL("2k > n must not report the critical case");
    } catch (const domain_error&) {
        SUCCEED();
    }
}

TEST_CASE("critical_bound_check: exact verdicts") {
    CHECK_FALSE(critical_bound_check(PrimePower::from_q(3), 6));  // 3 < (5*8)^2
    CHECK_FALSE(critical_bound_check(PrimePower::from_q(7), 6));  // 7 < (5*16)^2
    CHECK(critical_bound_check(PrimePower::from_q(1000000007), 6));
}

TEST_CASE("sieve: small q all fail; the q=2 trace is exact") {
    for (std::uint64_t q : {2, 3, 4, 5, 7, 9, 11, 13}) {
        auto [ok, dec] = sieve(PrimePower::from_q(q));
        CHECK_FALSE(ok);
        CHECK_FALSE(dec.has_value());
    }

    auto rows = sieve_trace(PrimePower::from_q(2));  // 63 = 3^2 * 7
    REQUIRE(rows.size() == 3);
    CHECK((rows[0].r == 0 && rows[0].delta == 1 && rows[0].Delta == 1 && rows[0].threshold == 400));
    CHECK((rows[1].r == 1 && rows[1].delta == Rat(6, 7) && rows[1].Delta == 2 && rows[1].threshold == 400));
    CHECK((rows[2].r == 2 && rows[2].delta == Rat(11, 21) && rows[2].Delta == Rat(43, 11)));
    CHECK(rows[2].threshold == Rat(46225, 121));
    CHECK(rows[1].sieve_primes == std::vector<Int>{7});
    CHECK(rows[2].sieve_primes == std::vector<Int>{3, 7});
    for (const auto& d : rows) {
        CHECK(d.usable == (d.delta > 0));
        CHECK_FALSE(d.succeeds);
    }
}

TEST_CASE("sieve: first succeeding q is 14437, at r = 6") {
    auto [ok, dec] = sieve(PrimePower::from_q(14437));
    REQUIRE(ok);
    REQUIRE(dec.has_value());
    CHECK(dec->r == 6);
    CHECK(dec->succeeds);
    CHECK(dec->usable);
    CHECK(Rat(14437) >= dec->threshold);
    // earlier rows of the trace all fail
    auto rows = sieve_trace(PrimePower::from_q(14437));
    for (unsigned r = 0; r < 6; ++r) CHECK_FALSE(rows[r].succeeds);
}

TEST_CASE("sieve: r = 0 row is exactly the critical bound check") {
    for (std::uint64_t q : {3ull, 7ull, 9ull, 11ull, 1009ull, 14437ull, 1000000007ull}) {
        PrimePower pp = PrimePower::from_q(q);
        auto rows = sieve_trace(pp);
        Int w = num_squarefree_divisors(factor_field_order(q, 6));
        CHECK(rows[0].threshold == Rat(25) * w * w);
        CHECK(rows[0].succeeds == critical_bound_check(pp, 6));
    }
}

TEST_CASE("sieve: census over admissible q < 20000") {
    long admissible_count = 0, succeed_count = 0;
    std::uint64_t first_success = 0;
    for (std::uint64_t q = 2; q < 20000; ++q) {
        FactoredInt f = factor(q);
        if (f.factors.size() != 1) continue;
        PrimePower pp = PrimePower::from_q(q);
        if (!admissible(pp)) continue;
        ++admissible_count;
        if (sieve(pp).first) {
            ++succeed_count;
            if (first_success == 0) first_success = q;
        }
    }
    CHECK(admissible_count == 2321);
    CHECK(succeed_count == 6);
    CHECK(first_success == 14437);
}

TEST_CASE("initial_bound: the (6.48, 11.23) instantiation") {
    BoundChainReport rep = initial_bound(6.48, 11.23);
    CHECK(rep.r_count == 19137);
    CHECK(std::abs(rep.S.to_double() - 0.976788370762892) <= 1e-12);
    CHECK(rep.S.to_rat() < 1);
    CHECK(round_up_3sig(rep.M.to_rat()) == e_notation(646, 71));
    CHECK(rep.M.to_rat() > e_notation(64, 72));  // not a vacuous over-estimate
}

TEST_CASE("initial_bound: rejects bad parameter windows") {
    CHECK_THROWS_AS(initial_bound(6, 6), domain_error);      // t + u = 12
    CHECK_THROWS_AS(initial_bound(6.48, 5), domain_error);   // t + u < 12
    CHECK_THROWS_AS(initial_bound(1, 11.5), domain_error);   // reciprocal sum reaches 1
    CHECK_THROWS_AS(initial_bound(-1, 14), domain_error);
}

TEST_CASE("initial_bound: doubling the precision never increases a bound") {
    BoundChainReport lo = initial_bound(6.48, 11.23, 200);
    BoundChainReport hi = initial_bound(6.48, 11.23, 400);
    CHECK(hi.S.to_rat() <= lo.S.to_rat());
    CHECK(hi.A.to_rat() <= lo.A.to_rat());
    CHECK(hi.M.to_rat() <= lo.M.to_rat());
    CHECK(round_up_3sig(hi.M.to_rat()) == round_up_3sig(lo.M.to_rat()));
}

TEST_CASE("refine_bound: the published refinement steps") {
    auto [w1, n1] = refine_bound(e_notation(646, 71));
    CHECK(w1 == 177);
    CHECK(round_up_3sig(n1) == e_notation(158, 9));

    auto [w2, n2] = refine_bound(e_notation(158, 9));
    CHECK(w2 == 39);
    CHECK(round_up_3sig(n2) == e_notation(110, 6));

    auto [w3, n3] = refine_bound(e_notation(110, 6));
    CHECK(w3 == 30);
    CHECK(round_up_3sig(n3) == e_notation(331, 5));

    auto [w4, n4] = refine_bound(e_notation(331, 5));
    CHECK(w4 == 29);
    CHECK(round_up_3sig(n4) == e_notation(279, 5));

    CHECK_THROWS_AS(refine_bound(Int(1)), domain_error);
}

TEST_CASE("refine_bound: monotone in the input bound") {
    const Int inputs[] = {Int(100), Int(5000), e_notation(1, 6), e_notation(2, 6), e_notation(110, 6),
                          e_notation(158, 9)};
    unsigned prev_w = 0;
    Rat prev_n = 0;
    for (const Int& m : inputs) {
        auto [w, n] = refine_bound(m);
        CHECK(w >= prev_w);
        CHECK(n >= prev_n);
        prev_w = w;
        prev_n = n;
    }
}

TEST_CASE("bound_chain: terminates on the published chain") {
    BoundChainReport rep = bound_chain(6.48, 11.23);
    REQUIRE(rep.chain.size() == 4);

    CHECK(rep.chain[0].M == e_notation(646, 71));
    CHECK(rep.chain[0].omega_max == 177);
    CHECK(rep.chain[0].N == e_notation(158, 9));

    CHECK(rep.chain[1].M == e_notation(158, 9));
    CHECK(rep.chain[1].omega_max == 39);
    CHECK(rep.chain[1].N == e_notation(110, 6));

    CHECK(rep.chain[2].M == e_notation(110, 6));
    CHECK(rep.chain[2].omega_max == 30);
    CHECK(rep.chain[2].N == e_notation(331, 5));

    CHECK(rep.chain[3].M == e_notation(331, 5));
    CHECK(rep.chain[3].omega_max == 29);
    CHECK(rep.chain[3].N == e_notation(279, 5));

    for (std::size_t i = 1; i < rep.chain.size(); ++i) {
        CHECK(rep.chain[i].M == rep.chain[i - 1].N);
        CHECK(rep.chain[i].N < rep.chain[i - 1].N);
        CHECK(rep.chain[i].N >= round_up_3sig(rep.chain[i].N_exact));
    }
}

TEST_CASE("round_up_3sig") {
    CHECK(round_up_3sig(Rat(1)) == 1);
    CHECK(round_up_3sig(Rat(999)) == 999);
    CHECK(round_up_3sig(Rat(1000)) == 1000);
    CHECK(round_up_3sig(Rat(1001)) == 1010);
    CHECK(round_up_3sig(Rat(1577, 10)) == 158);
    CHECK(round_up_3sig(Rat(1234567)) == 1240000);
    CHECK(round_up_3sig(Rat(e_notation(158, 9))) == e_notation(158, 9));
    CHECK(round_up_3sig(Rat(1, 20)) == 1);  // integer grain: everything below 1 rounds to 1
    CHECK_THROWS_AS(round_up_3sig(Rat(0)), domain_error);
    CHECK_THROWS_AS(round_up_3sig(Rat(-5)), domain_error);
}
