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

// Command-line front end.  Every subcommand prints its result as a single
// line of JSON on stdout (scan prints one line per prime power); failures
// print a single-line {"command","status","message"} object on stderr.
// Exit codes: 0 success, 1 usage, 2 domain error, 3 search exhausted.
//
// Integers that fit in 64 bits are emitted as JSON numbers; larger ones
// (bound-chain magnitudes, big factorizations) as decimal strings.  Exact
// rationals are always "num/den" strings.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knormal/base.hpp"
#include "knormal/certificate_json.hpp"
#include "knormal/existence.hpp"
#include "knormal/field.hpp"
#include "knormal/num.hpp"
#include "knormal/property_a.hpp"
#include "knormal/search.hpp"

#include "CLI11.hpp"

namespace {

using namespace knormal;
using json = knormal::ordered_json;

// Malformed input that never reached the library; exits 1 instead of 2.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json int_json(const Int& v) {
    if (v >= 0 && v.fits_ulong_p()) return json(static_cast<std::uint64_t>(v.get_ui()));
    return json(v.get_str());
}

std::string rat_str(const Rat& v) { return v.get_str(); }

void emit(const json& payload) { std::cout << payload.dump() << '\n'; }

int fail(const std::string& command, int code, const std::string& message) {
    json err;
    err["command"] = command.empty() ? "knormal" : command;
    err["status"] = "error";
    err["message"] = message;
    std::cerr << err.dump() << '\n';
    return code;
}

json run_factor(const std::string& arg, const FactorCache* cache) {
    Int n;
    try {
        n = Int(arg);
    } catch (const std::invalid_argument&) {
        throw usage_error("factor: '" + arg + "' is not an integer");
    }
    const FactoredInt f = factor(n, cache);
    json out;
    out["value"] = int_json(f.value);
    json fs = json::array();
    for (const auto& [p, e] : f.factors) fs.push_back(json::array({int_json(p), e}));
    out["factors"] = std::move(fs);
    return out;
}

json run_exists(std::uint64_t qv, unsigned n, unsigned k, const FactorCache* cache) {
    const PrimePower q = PrimePower::from_q(qv);
    if (n == 0) throw domain_error("exists: n must be >= 1");
    if (k > n) throw domain_error("exists: k exceeds n");
    json out;
    out["q"] = q.q;
    out["p"] = q.p;
    out["m"] = q.m;
    out["n"] = n;
    out["k"] = k;
    const bool critical = n == 2 * k;
    out["critical"] = critical;
    if (!critical) {
        // away from the critical line the squared generic bound is sufficient
        const bool ok = noncritical_bound_check(q, n, k, cache);
        out["bound_ok"] = ok;
        out["sufficient"] = ok;
        return out;
    }
    const bool sextic = n == 6 && k == 3;
    if (sextic) out["admissible"] = admissible(q);
    const PropertyAClassification cls = property_a_classify(q, k);
    json pa;
    pa["exists"] = cls.exists;
    pa["rule"] = cls.rule;
    pa["s"] = cls.s;
    pa["t"] = cls.t;
    pa["d"] = cls.d;
    out["property_a"] = std::move(pa);
    const bool bound_ok = critical_bound_check(q, n, cache);
    out["bound_ok"] = bound_ok;
    if (sextic) {
        const auto [ok, dec] = sieve(q, cache);
        json sv;
        sv["ok"] = ok;
        sv["r"] = ok ? json(dec->r) : json(nullptr);
        out["sieve"] = std::move(sv);
        // the sextic critical case is fully characterized by admissibility
        out["exists"] = admissible(q);
    } else {
        out["sufficient"] = cls.exists && bound_ok;
    }
    return out;
}

json run_sieve(std::uint64_t qv, const FactorCache* cache) {
    const PrimePower q = PrimePower::from_q(qv);
    json out;
    out["q"] = q.q;
    json rows = json::array();
    std::optional<unsigned> first;
    for (const SieveDecomposition& d : sieve_trace(q, cache)) {
        json row;
        row["r"] = d.r;
        json ps = json::array();
        for (const Int& p : d.sieve_primes) ps.push_back(int_json(p));
        row["primes"] = std::move(ps);
        row["delta"] = rat_str(d.delta);
        row["Delta"] = d.usable ? json(rat_str(d.Delta)) : json(nullptr);
        row["threshold"] = d.usable ? json(rat_str(d.threshold)) : json(nullptr);
        row["usable"] = d.usable;
        row["succeeds"] = d.succeeds;
        if (d.succeeds && !first) first = d.r;
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    out["ok"] = first.has_value();
    out["r"] = first ? json(*first) : json(nullptr);
    return out;
}

json run_verify(const std::string& path, const FactorCache* cache) {
    std::ifstream in(path);
    if (!in) throw domain_error("verify: cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw domain_error("verify: " + path + ": " + e.what());
    }
    const Certificate cert = certificate_from_json(doc);
    std::string why;
    const bool ok = verify_certificate(cert, &why, cache);
    json out;
    out["valid"] = ok;
    if (!ok) out["diagnostic"] = why;
    return out;
}

json run_census(std::uint64_t qv, unsigned n, unsigned k, bool primitive, std::uint64_t guard,
                const FactorCache* cache) {
    const PrimePower q = PrimePower::from_q(qv);
    const std::uint64_t count = brute_force_census(q, n, k, primitive, guard, cache);
    json out;
    out["q"] = q.q;
    out["n"] = n;
    out["k"] = k;
    out["primitive"] = primitive;
    out["count"] = count;
    return out;
}

json run_classify(std::uint64_t qv, unsigned k) {
    const PrimePower q = PrimePower::from_q(qv);
    const PropertyAClassification cls = property_a_classify(q, k);
    json out;
    out["q"] = q.q;
    out["k"] = k;
    out["exists"] = cls.exists;
    out["rule"] = cls.rule;
    out["s"] = cls.s;
    out["t"] = cls.t;
    out["d"] = cls.d;
    return out;
}

json run_bounds(double t, double u, unsigned prec) {
    const BoundChainReport rep = bound_chain(t, u, static_cast<mpfr_prec_t>(prec));
    json out;
    out["t"] = rep.t;
    out["u"] = rep.u;
    out["r_count"] = rep.r_count;
    out["S"] = rep.S.str();
    out["A"] = rep.A.str();
    out["M"] = rep.M.str();
    json chain = json::array();
    for (const ChainStep& s : rep.chain) {
        json step;
        step["M"] = int_json(s.M);
        step["omega_max"] = s.omega_max;
        step["N_exact"] = rat_str(s.N_exact);
        step["N"] = int_json(s.N);
        chain.push_back(std::move(step));
    }
    out["chain"] = std::move(chain);
    return out;
}

void run_scan(std::uint64_t lo, std::uint64_t hi, bool witness, unsigned jobs,
              const FactorCache* cache) {
    ScanOptions opt;
    opt.with_certificates = witness;
    opt.jobs = jobs;
    opt.cache = cache;
    for (const ScanEntry& e : scan(lo, hi, opt)) {
        json line;
        line["q"] = e.q.q;
        line["p"] = e.q.p;
        line["m"] = e.q.m;
        line["admissible"] = e.admissible;
        line["sieve_ok"] = e.sieve_ok;
        line["sieve_r"] = e.sieve_ok ? json(e.sieve_r) : json(nullptr);
        if (e.certificate) line["certificate"] = certificate_to_json(*e.certificate);
        std::cout << line.dump() << '\n';
    }
}

json run_selftest(const FactorCache* cache) {
    unsigned total = 0, passed = 0;
    std::vector<std::string> failures;
    const auto check = [&](const char* name, auto&& fn) {
        ++total;
        bool ok = false;
        try {
            ok = fn();
        } catch (...) {
            ok = false;
        }
        if (ok)
            ++passed;
        else
            failures.emplace_back(name);
    };

    check("factor-728", [&] {
        const FactoredInt f = factor(std::uint64_t{728}, cache);
        const std::vector<std::pair<Int, unsigned>> want{{2, 3}, {7, 1}, {13, 1}};
        return f.value == 728 && f.factors == want;
    });
    check("admissible-small", [] {
        return !admissible(PrimePower::from_q(2)) && admissible(PrimePower::from_q(3)) &&
               admissible(PrimePower::from_q(4)) && admissible(PrimePower::from_q(7)) &&
               !admissible(PrimePower::from_q(8)) && admissible(PrimePower::from_q(9)) &&
               admissible(PrimePower::from_q(16)) && !admissible(PrimePower::from_q(32));
    });
    check("classify-rules", [] {
        return property_a_classify(PrimePower::from_q(2), 3).rule == "3.7-none" &&
               property_a_classify(PrimePower::from_q(4), 3).rule == "3.7b" &&
               property_a_classify(PrimePower::from_q(2), 6).rule == "3.7a" &&
               property_a_classify(PrimePower::from_q(3), 6).rule == "3.8i" &&
               property_a_classify(PrimePower::from_q(9), 2).rule == "3.8ii" &&
               property_a_classify(PrimePower::from_q(7), 4).rule == "3.8iii" &&
               !property_a_classify(PrimePower::from_q(3), 2).exists;
    });
    check("canonical-f", [&] {
        // q = 7: b = 2 branch; q = 5: the fixed 3 mod 6 / 5 mod 6 shape
        return canonical_f(PrimePower::from_q(7), cache) == LPoly{2, 3, 3, 1} &&
               canonical_f(PrimePower::from_q(5), cache) == LPoly{1, 2, 2, 1};
    });
    check("census-eq-formula-q2", [&] {
        const PrimePower q2 = PrimePower::from_q(2);
        for (unsigned n : {2u, 4u, 6u}) {
            Int sum = 0;
            for (unsigned k = 0; k <= n; ++k) {
                const std::uint64_t c =
                    brute_force_census(q2, n, k, false, std::uint64_t{1} << 24, cache);
                if (knormal_count_formula(q2, n, k) != Int(static_cast<unsigned long>(c)))
                    return false;
                sum += static_cast<unsigned long>(c);
            }
            if (sum != int_pow(Int(2), n)) return false;
        }
        return true;
    });
    check("census-critical", [&] {
        return brute_force_census(PrimePower::from_q(3), 6, 3, true, std::uint64_t{1} << 24,
                                  cache) == 24 &&
               brute_force_census(PrimePower::from_q(2), 6, 3, true, std::uint64_t{1} << 24,
                                  cache) == 0;
    });
    check("witness-q7", [&] {
        const Certificate c = explicit_element(PrimePower::from_q(7), cache);
        return verify_certificate(c, nullptr, cache) && c.modulus == LPoly{2, 2, 4, 3, 2, 2, 1} &&
               c.f == LPoly{4, 5, 5, 1} && c.element == Elem{6, 0, 3, 3, 5, 4};
    });
    check("bound-constants", [] {
        const BoundChainReport rep = initial_bound(6.48, 11.23);
        if (rep.r_count != 19137) return false;
        Rat err = rep.S.to_rat() - Rat(976788370762892L) / Rat(int_pow(Int(10), 15));
        if (err < 0) err = -err;
        return err <= Rat(1) / Rat(int_pow(Int(10), 12)) &&
               rep.M.to_rat() <= Int(646) * int_pow(Int(10), 71);
    });
    check("bound-chain", [] {
        const BoundChainReport rep = bound_chain(6.48, 11.23);
        if (rep.chain.size() != 4) return false;
        const unsigned want[4] = {177, 39, 30, 29};
        for (int i = 0; i < 4; ++i)
            if (rep.chain[i].omega_max != want[i]) return false;
        return rep.chain[3].N == Int(279) * int_pow(Int(10), 5);
    });
    check("sieve-14437", [&] {
        const auto [ok, dec] = sieve(PrimePower::from_q(14437), cache);
        return ok && dec && dec->r == 6;
    });

    json out;
    out["ok"] = failures.empty();
    out["passed"] = passed;
    out["failed"] = total - passed;
    json fj = json::array();
    for (const std::string& f : failures) fj.push_back(f);
    out["failures"] = std::move(fj);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "primitive k-normal elements of F_{q^n} over F_q at the critical degree n = 2k: "
        "decision, bounds, and constructive witnesses"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string cache_path;
    app.add_option("--cache", cache_path,
                   "factorization cache file (lines: value=p^e*p^e*...)");

    std::string factor_arg;
    CLI::App* cmd_factor = app.add_subcommand("factor", "factor a positive integer");
    cmd_factor->add_option("n", factor_arg, "integer to factor")->required();

    std::uint64_t exists_q = 0;
    unsigned exists_n = 6, exists_k = 3;
    CLI::App* cmd_exists =
        app.add_subcommand("exists", "existence verdicts for primitive k-normal elements");
    cmd_exists->add_option("q", exists_q, "prime power")->required();
    cmd_exists->add_option("--n", exists_n, "extension degree")->capture_default_str();
    cmd_exists->add_option("--k", exists_k, "normality defect")->capture_default_str();

    std::uint64_t sieve_q = 0;
    CLI::App* cmd_sieve =
        app.add_subcommand("sieve", "prime-sieve trace for q^6 - 1, all decompositions");
    cmd_sieve->add_option("q", sieve_q, "prime power")->required();

    std::uint64_t search_q = 0;
    CLI::App* cmd_search =
        app.add_subcommand("search", "construct a primitive 3-normal witness certificate");
    cmd_search->add_option("q", search_q, "admissible prime power")->required();

    std::string verify_path;
    CLI::App* cmd_verify = app.add_subcommand("verify", "verify a witness certificate file");
    cmd_verify->add_option("certificate-file", verify_path, "certificate JSON file")->required();

    std::uint64_t census_q = 0, census_guard = std::uint64_t{1} << 24;
    unsigned census_n = 0, census_k = 0;
    bool census_primitive = false;
    CLI::App* cmd_census =
        app.add_subcommand("census", "count k-normal elements of F_{q^n} by enumeration");
    cmd_census->add_option("q", census_q, "prime power")->required();
    cmd_census->add_option("n", census_n, "extension degree")->required();
    cmd_census->add_option("k", census_k, "normality defect")->required();
    cmd_census->add_flag("--primitive", census_primitive, "count only primitive elements");
    cmd_census->add_option("--guard", census_guard, "largest field size to enumerate")
        ->capture_default_str();

    std::uint64_t classify_q = 0;
    unsigned classify_k = 0;
    CLI::App* cmd_classify =
        app.add_subcommand("classify", "closed-form property-(A) classification at n = 2k");
    cmd_classify->add_option("q", classify_q, "prime power")->required();
    cmd_classify->add_option("k", classify_k, "normality defect")->required();

    double bounds_t = 6.48, bounds_u = 11.23;
    unsigned bounds_prec = 200;
    CLI::App* cmd_bounds =
        app.add_subcommand("bounds", "large-q bound chain: opening bound plus primorial refinement");
    cmd_bounds->add_option("--t", bounds_t, "window exponent t")->capture_default_str();
    cmd_bounds->add_option("--u", bounds_u, "window width u")->capture_default_str();
    cmd_bounds->add_option("--prec", bounds_prec, "working precision in bits")
        ->capture_default_str();

    std::uint64_t scan_lo = 0, scan_hi = 0;
    bool scan_witness = false;
    unsigned scan_jobs = 0;  // 0 = unset; falls back to KNORMAL_JOBS, then 1
    CLI::App* cmd_scan =
        app.add_subcommand("scan", "per-prime-power verdicts over a range, one JSON line each");
    cmd_scan->add_option("lo", scan_lo, "range start (inclusive)")->required();
    cmd_scan->add_option("hi", scan_hi, "range end (inclusive)")->required();
    cmd_scan->add_flag("--witness", scan_witness, "construct and attach certificates");
    cmd_scan->add_option("--jobs", scan_jobs, "worker threads (default $KNORMAL_JOBS or 1)");

    CLI::App* cmd_selftest =
        app.add_subcommand("selftest", "frozen-constant and oracle spot checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("knormal", 1, e.what());
    }

    std::string active = "knormal";
    try {
        std::optional<FactorCache> cache_store;
        const FactorCache* cache = nullptr;
        if (!cache_path.empty()) {
            cache_store = FactorCache::load(cache_path);
            cache = &*cache_store;
        }

        if (cmd_factor->parsed()) {
            active = "factor";
            emit(run_factor(factor_arg, cache));
        } else if (cmd_exists->parsed()) {
            active = "exists";
            emit(run_exists(exists_q, exists_n, exists_k, cache));
        } else if (cmd_sieve->parsed()) {
            active = "sieve";
            emit(run_sieve(sieve_q, cache));
        } else if (cmd_search->parsed()) {
            active = "search";
            emit(certificate_to_json(explicit_element(PrimePower::from_q(search_q), cache)));
        } else if (cmd_verify->parsed()) {
            active = "verify";
            emit(run_verify(verify_path, cache));
        } else if (cmd_census->parsed()) {
            active = "census";
            emit(run_census(census_q, census_n, census_k, census_primitive, census_guard, cache));
        } else if (cmd_classify->parsed()) {
            active = "classify";
            emit(run_classify(classify_q, classify_k));
        } else if (cmd_bounds->parsed()) {
            active = "bounds";
            emit(run_bounds(bounds_t, bounds_u, bounds_prec));
        } else if (cmd_scan->parsed()) {
            active = "scan";
            unsigned jobs = scan_jobs;
            if (cmd_scan->count("--jobs") == 0) {
                jobs = 1;
                if (const char* env = std::getenv("KNORMAL_JOBS")) {
                    char* end = nullptr;
                    const unsigned long v = std::strtoul(env, &end, 10);
                    if (end == env || *end != '\0' || v == 0 || v > 4096)
                        throw usage_error(std::string("KNORMAL_JOBS: '") + env +
                                          "' is not a job count in [1, 4096]");
                    jobs = static_cast<unsigned>(v);
                }
            }
            if (jobs == 0) throw usage_error("scan: --jobs must be >= 1");
            run_scan(scan_lo, scan_hi, scan_witness, jobs, cache);
        } else if (cmd_selftest->parsed()) {
            active = "selftest";
            const json report = run_selftest(cache);
            emit(report);
            if (!report["ok"].get<bool>())
                return fail(active, 2, "selftest: " + report["failures"].dump());
        }
        return 0;
    } catch (const search_exhausted& e) {
        return fail(active, 3, e.what());
    } catch (const usage_error& e) {
        return fail(active, 1, e.what());
    } catch (const domain_error& e) {
        return fail(active, 2, e.what());
    } catch (const std::exception& e) {
        return fail(active, 2, e.what());
    }
}
