// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "support.hpp"
#include "utvpi/closure.hpp"
#include "utvpi/driver.hpp"
#include "utvpi/lamu.hpp"
#include "utvpi/scst.hpp"

using namespace utvpi;
using namespace utvpi::test;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o = body();
    const double took = seconds_since(start);
    if (limit_s > 0 && took > limit_s) {
        o.pass = false;
        o.detail += " (time limit " + std::to_string(limit_s) + " s exceeded)";
    }
    std::printf("[%s] criterion %d: %s -- %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
                o.detail.c_str(), took);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
}

VerdictClass oracle_class(std::span<const UtvpiConstraint> cs) {
    if (tc(cs).unsat) {
        return VerdictClass::unsat_q;
    }
    return ttc(cs).unsat ? VerdictClass::unsat_z : VerdictClass::sat;
}

/// First failing prefix according to the oracle: (1-based step, class); step 0 if all satisfiable.
std::pair<std::size_t, VerdictClass> oracle_first_failure(std::span<const UtvpiConstraint> cs) {
    for (std::size_t k = 1; k <= cs.size(); ++k) {
        const auto v = oracle_class(cs.first(k));
        if (v != VerdictClass::sat) {
            return {k, v};
        }
    }
    return {0, VerdictClass::sat};
}

std::vector<UtvpiConstraint> criterion_instance(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> n_dist(2, 8);
    std::uniform_int_distribution<std::size_t> m_dist(1, 30);
    std::uniform_int_distribution<int> quarter(0, 3);
    const std::size_t n = n_dist(rng);
    const std::size_t m = m_dist(rng);
    if (m >= 4 && quarter(rng) == 0) {
        return planted_instance(rng, n, m, -10, 10);
    }
    return random_instance(rng, n, m, -10, 10);
}

// ---------------------------------------------------------------------------

Outcome worked_example() {
    Outcome o;
    std::ostringstream msg;
    Solver s(3);
    for (const auto& c : phi()) {
        if (!std::holds_alternative<SatStep>(s.add_constraint(c))) {
            return {false, "phi rejected"};
        }
    }
    const bool rho_ok = s.bound(minus(X)) == ExtWeight(0) && s.bound(plus(Z)) == ExtWeight(-4) &&
                        s.bound(plus(X)).is_infinite();
    msg << "rho(x-)=" << s.bound(minus(X)) << " rho(z+)=" << s.bound(plus(Z)) << " rho(x+)=" << s.bound(plus(X));

    const bool implied_ok = s.check_implied({-1, Z, 0, Var{}, -3}) && s.check_implied({1, Y, -1, Z, 0}) &&
                            s.check_implied({1, X, 0, Var{}, 0}) && !s.check_implied({1, X, 0, Var{}, -1});
    msg << "; implications " << (implied_ok ? "ok" : "WRONG");

    const auto last = s.add_constraint({-1, X, 1, Z, 3});
    const bool unsat_ok = std::holds_alternative<UnsatZ>(last) && std::get<UnsatZ>(last).witness.var() == X;
    msg << "; phi' -> " << to_string(classify(last));

    const auto lamu = lamu_check(phi_prime());
    const bool lamu_ok = std::holds_alternative<UnsatZ>(lamu) && std::get<UnsatZ>(lamu).witness.var() == X;

    o.pass = rho_ok && implied_ok && unsat_ok && lamu_ok;
    o.detail = msg.str();
    return o;
}

struct SatCorpusStats {
    std::size_t instances = 0;
    std::size_t sat = 0;
    std::size_t unsat_q = 0;
    std::size_t unsat_z = 0;
    std::size_t mismatches = 0;
    std::size_t invariant_checks = 0;
    std::size_t invariant_violations = 0;
    std::size_t rollbacks = 0;
    std::size_t rollback_queries = 0;
    std::size_t rollback_mismatches = 0;
};

/// Criteria 2, 4 and 5 share one corpus.
SatCorpusStats run_sat_corpus(std::size_t count, std::uint64_t seed, bool with_invariants, bool with_rollback) {
    SatCorpusStats st;
    std::mt19937_64 rng(seed);
    std::mt19937_64 query_rng(seed + 1);
    for (std::size_t i = 0; i < count; ++i) {
        const auto cs = criterion_instance(rng);
        std::size_t n = 0;
        for (const auto& c : cs) {
            n = std::max(n, c.var_extent());
        }
        ++st.instances;
        const auto [fail_step, fail_class] = oracle_first_failure(cs);
        const auto whole = oracle_class(cs);
        switch (whole) {
        case VerdictClass::sat:
            ++st.sat;
            break;
        case VerdictClass::unsat_q:
            ++st.unsat_q;
            break;
        case VerdictClass::unsat_z:
            ++st.unsat_z;
            break;
        }

        if (classify(lamu_check(cs)) != whole) {
            ++st.mismatches;
        }

        Solver scst(n);
        IncrementalLamu inc(n);
        std::size_t scst_fail = 0;
        VerdictClass scst_class = VerdictClass::sat;
        std::size_t inc_fail = 0;
        VerdictClass inc_class = VerdictClass::sat;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (scst_fail == 0) {
                const auto o = scst.add_constraint(cs[k]);
                if (!std::holds_alternative<SatStep>(o)) {
                    scst_fail = k + 1;
                    scst_class = classify(o);
                    if (with_rollback) {
                        ++st.rollbacks;
                        Solver rebuilt(n);
                        for (std::size_t j = 0; j < k; ++j) {
                            rebuilt.add_constraint(cs[j]);
                        }
                        for (int q = 0; q < 20; ++q) {
                            const auto query = random_constraint(query_rng, n, -10, 20);
                            ++st.rollback_queries;
                            if (scst.check_implied(query) != rebuilt.check_implied(query)) {
                                ++st.rollback_mismatches;
                            }
                        }
                        if (!(scst.bounds() == rebuilt.bounds()) ||
                            !scst.potential().is_valid_for(scst.graph())) {
                            ++st.rollback_mismatches;
                        }
                    }
                } else if (with_invariants) {
                    ++st.invariant_checks;
                    bool ok = scst.potential().is_valid_for(scst.graph());
                    const auto rho = bounds_from_scratch(n, std::span(cs).first(k + 1));
                    for (std::uint32_t u = 0; u < 2 * n; ++u) {
                        ok = ok && scst.bound(Vertex{u}) == rho[u];
                    }
                    st.invariant_violations += ok ? 0 : 1;
                }
            }
            if (inc_fail == 0) {
                const auto v = inc.add_constraint(cs[k]);
                if (classify(v) != VerdictClass::sat) {
                    inc_fail = k + 1;
                    inc_class = classify(v);
                }
            }
        }
        if (scst_fail != fail_step || scst_class != fail_class || inc_fail != fail_step || inc_class != fail_class) {
            ++st.mismatches;
        }
        if (fail_step != 0 && classify(lamu_check(std::span(cs).first(fail_step))) != fail_class) {
            ++st.mismatches;
        }
    }
    return st;
}

Outcome sat_equivalence(const SatCorpusStats& st) {
    std::ostringstream msg;
    msg << st.instances << " instances (SAT " << st.sat << ", UNSAT-Q " << st.unsat_q << ", UNSAT-Z " << st.unsat_z
        << "), mismatches " << st.mismatches;
    return {st.instances >= 2000 && st.mismatches == 0 && st.unsat_z > 0 && st.sat > 0, msg.str()};
}

Outcome implication_equivalence() {
    std::mt19937_64 rng(0x1D5EED);
    std::size_t instances = 0;
    std::size_t checks = 0;
    std::size_t implied = 0;
    std::size_t mismatches = 0;
    std::size_t attempts = 0;
    while (instances < 500) {
        ++attempts;
        const auto cs = criterion_instance(rng);
        if (oracle_class(cs) != VerdictClass::sat) {
            continue;
        }
        ++instances;
        std::size_t n = 0;
        for (const auto& c : cs) {
            n = std::max(n, c.var_extent());
        }
        std::vector<UtvpiConstraint> queries;
        for (int q = 0; q < 10; ++q) {
            queries.push_back(random_constraint(rng, n, -10, 20));
        }

        Solver s(n);
        std::vector<std::optional<std::size_t>> fired(queries.size());
        for (std::size_t q = 0; q < queries.size(); ++q) {
            if (s.register_watch(queries[q], q) == WatchResult::already_implied) {
                fired[q] = 0;
            }
        }
        std::vector<std::optional<std::size_t>> first_oracle(queries.size());
        for (std::size_t k = 0; k <= cs.size(); ++k) {
            if (k > 0) {
                const auto o = s.add_constraint(cs[k - 1]);
                if (!std::holds_alternative<SatStep>(o)) {
                    ++mismatches;
                    break;
                }
                for (const WatchTag t : std::get<SatStep>(o).newly_implied) {
                    if (fired[t]) {
                        ++mismatches; // fired twice
                    }
                    fired[t] = k;
                }
            }
            const auto closed = ttc(std::span(cs).first(k));
            for (std::size_t q = 0; q < queries.size(); ++q) {
                const bool want = closure_implies(closed.set, queries[q]);
                ++checks;
                implied += want ? 1 : 0;
                if (s.check_implied(queries[q]) != want) {
                    ++mismatches;
                }
                if (want && !first_oracle[q]) {
                    first_oracle[q] = k;
                }
            }
        }
        for (std::size_t q = 0; q < queries.size(); ++q) {
            if (fired[q] != first_oracle[q]) {
                ++mismatches;
            }
        }
    }
    std::ostringstream msg;
    msg << instances << " satisfiable instances (" << attempts << " drawn), " << checks << " prefix queries, "
        << implied << " implied, mismatches " << mismatches;
    return {instances >= 500 && mismatches == 0 && implied > 0 && implied < checks, msg.str()};
}

Outcome invariants(const SatCorpusStats& st) {
    std::ostringstream msg;
    msg << st.invariant_checks << " successful adds checked, violations " << st.invariant_violations;
    return {st.invariant_checks > 0 && st.invariant_violations == 0, msg.str()};
}

Outcome rollback(const SatCorpusStats& st) {
    std::ostringstream msg;
    msg << st.rollbacks << " rejected assertions, " << st.rollback_queries << " queries, mismatches "
        << st.rollback_mismatches;
    return {st.rollbacks > 0 && st.rollback_mismatches == 0, msg.str()};
}

Outcome scaling() {
    constexpr std::size_t kInstances = 10;
    // Each (instance, mode) time is the minimum of kRepeats runs to filter scheduler noise.
    constexpr int kRepeats = 3;
    struct Mean {
        double ms = 0;
        double steps = 0;
    };
    auto measure = [](std::size_t n, std::size_t m, Mode mode) {
        Mean mean;
        for (std::size_t r = 0; r < kInstances; ++r) {
            const auto instance = generate({n, m, 1000 + r});
            RunReport best = run_check(instance, mode);
            for (int k = 1; k < kRepeats; ++k) {
                const auto again = run_check(instance, mode);
                best.total_ms = std::min(best.total_ms, again.total_ms);
            }
            mean.ms += best.total_ms / kInstances;
            mean.steps += static_cast<double>(best.steps) / kInstances;
        }
        return mean;
    };
    // warm-up, discarded
    (void)run_check(generate({100, 1000, 999}), Mode::scst);
    (void)run_check(generate({100, 1000, 999}), Mode::m_lamu);

    const Mean small_scst = measure(100, 1000, Mode::scst);
    const Mean small_mlamu = measure(100, 1000, Mode::m_lamu);
    const Mean big_scst = measure(200, 4000, Mode::scst);
    const Mean big_mlamu = measure(200, 4000, Mode::m_lamu);
    const double small_ratio = small_mlamu.ms / small_scst.ms;
    const double big_ratio = big_mlamu.ms / big_scst.ms;

    std::ostringstream msg;
    msg.setf(std::ios::fixed);
    msg.precision(2);
    msg << "n=100,m=1000: scst " << small_scst.ms << " ms, m-lamu " << small_mlamu.ms << " ms, ratio " << small_ratio
        << ", mean steps " << small_scst.steps << "; n=200,m=4000: scst " << big_scst.ms << " ms, m-lamu "
        << big_mlamu.ms << " ms, ratio " << big_ratio << ", mean steps " << big_scst.steps;
    return {big_scst.ms < big_mlamu.ms && big_ratio > small_ratio, msg.str()};
}

Outcome determinism() {
    std::size_t identical = 0;
    std::size_t instances = 0;
    std::size_t disagreements = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const std::size_t n = 6 + seed % 10;
        const GenConfig cfg{n, n * (1 + seed % 3), seed};
        std::ostringstream a;
        std::ostringstream b;
        write_instance(a, cfg, generate(cfg));
        write_instance(b, cfg, generate(cfg));
        identical += a.str() == b.str() ? 1 : 0;
        if (!audit_instance(cfg, generate(cfg)).empty()) {
            ++disagreements;
        }

        // check through the text form, as the CLI would
        VarTable vars;
        std::istringstream in(a.str());
        const auto cs = parse_constraints(in, vars);
        ++instances;
        const auto ref = run_check(cs, Mode::scst);
        for (Mode mode : kAllModes) {
            const auto r = run_check(cs, mode);
            if (r.verdict != ref.verdict || r.failing_step != ref.failing_step) {
                ++disagreements;
            }
        }
    }
    std::ostringstream msg;
    msg << identical << "/" << instances << " byte-identical regenerations, mode disagreements " << disagreements;
    return {identical == instances && disagreements == 0, msg.str()};
}

} // namespace

int main() {
    report(1, "worked-example fidelity", 1.0, worked_example);

    SatCorpusStats corpus;
    report(2, "oracle equivalence (satisfiability)", 60.0, [&] {
        corpus = run_sat_corpus(2000, 0xC0FFEE, false, false);
        return sat_equivalence(corpus);
    });
    report(3, "oracle equivalence (implication)", 120.0, implication_equivalence);

    // Criteria 4 and 5 replay the criterion-2 corpus with the extra checks enabled.
    const auto checked = run_sat_corpus(2000, 0xC0FFEE, true, true);
    const bool same_corpus = checked.instances == corpus.instances && checked.sat == corpus.sat &&
                             checked.unsat_q == corpus.unsat_q && checked.unsat_z == corpus.unsat_z;
    report(4, "rho and pi invariants", 0, [&] {
        auto o = invariants(checked);
        if (!same_corpus) {
            o.pass = false;
            o.detail += " (replay diverged from the criterion-2 corpus)";
        }
        return o;
    });
    report(5, "rollback soundness", 0, [&] { return rollback(checked); });

    report(6, "scaling: scst vs m-lamu", 300.0, scaling);
    report(7, "determinism and cross-mode agreement", 0, determinism);

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}
