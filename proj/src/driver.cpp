#include "utvpi/driver.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "utvpi/closure.hpp"
#include "utvpi/scst.hpp"

namespace utvpi {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

VerdictClass closure_verdict(std::span<const UtvpiConstraint> prefix) {
    if (!ttc(prefix).unsat) {
        return VerdictClass::sat;
    }
    return tc(prefix).unsat ? VerdictClass::unsat_q : VerdictClass::unsat_z;
}

} // namespace

const char* to_string(Mode m) {
    switch (m) {
    case Mode::scst:
        return "scst";
    case Mode::inc_lamu:
        return "inc-lamu";
    case Mode::m_lamu:
        return "m-lamu";
    case Mode::closure:
        return "closure";
    }
    return "?";
}

std::optional<Mode> parse_mode(std::string_view s) {
    for (Mode m : kAllModes) {
        if (s == to_string(m)) {
            return m;
        }
    }
    return std::nullopt;
}

std::string RunReport::summary() const {
    if (verdict == VerdictClass::sat) {
        return "SAT";
    }
    return std::string(to_string(verdict)) + " at constraint " + std::to_string(failing_step);
}

int exit_code(VerdictClass v) {
    switch (v) {
    case VerdictClass::sat:
        return 0;
    case VerdictClass::unsat_q:
        return 10;
    case VerdictClass::unsat_z:
        return 11;
    }
    return kUsageExit;
}

RunReport run_check(std::span<const UtvpiConstraint> constraints, Mode mode) {
    RunReport report;
    const auto start = Clock::now();
    auto step = [&](std::size_t i, VerdictClass v) {
        report.steps = i + 1;
        if (v != VerdictClass::sat) {
            report.verdict = v;
            report.failing_step = i + 1;
            return false;
        }
        return true;
    };

    switch (mode) {
    case Mode::scst: {
        Solver solver;
        for (std::size_t i = 0; i < constraints.size(); ++i) {
            if (!step(i, classify(solver.add_constraint(constraints[i])))) {
                break;
            }
        }
        break;
    }
    case Mode::inc_lamu: {
        IncrementalLamu solver;
        for (std::size_t i = 0; i < constraints.size(); ++i) {
            if (!step(i, classify(solver.add_constraint(constraints[i])))) {
                break;
            }
        }
        break;
    }
    case Mode::m_lamu:
        for (std::size_t i = 0; i < constraints.size(); ++i) {
            if (!step(i, classify(lamu_check(constraints.first(i + 1))))) {
                break;
            }
        }
        break;
    case Mode::closure:
        for (std::size_t i = 0; i < constraints.size(); ++i) {
            if (!step(i, closure_verdict(constraints.first(i + 1)))) {
                break;
            }
        }
        break;
    }
    report.total_ms = elapsed_ms(start);
    return report;
}

ImpliesReport run_implies(std::span<const UtvpiConstraint> phi, std::span<const UtvpiConstraint> queries, Mode mode) {
    ImpliesReport out;
    out.implied_at.assign(queries.size(), std::nullopt);
    const auto start = Clock::now();

    if (mode == Mode::scst) {
        Solver solver;
        for (std::size_t q = 0; q < queries.size(); ++q) {
            if (solver.register_watch(queries[q], q) == WatchResult::already_implied) {
                out.implied_at[q] = 0;
            }
        }
        for (std::size_t i = 0; i < phi.size(); ++i) {
            const auto outcome = solver.add_constraint(phi[i]);
            out.run.steps = i + 1;
            if (const auto* sat = std::get_if<SatStep>(&outcome)) {
                for (const WatchTag tag : sat->newly_implied) {
                    out.implied_at[tag] = i + 1;
                }
                continue;
            }
            out.run.verdict = classify(outcome);
            out.run.failing_step = i + 1;
            break;
        }
    } else if (mode == Mode::closure) {
        auto mark = [&](const ClosureSet& s, std::size_t step) {
            for (std::size_t q = 0; q < queries.size(); ++q) {
                if (!out.implied_at[q] && closure_implies(s, queries[q])) {
                    out.implied_at[q] = step;
                }
            }
        };
        mark(ttc({}).set, 0);
        for (std::size_t i = 0; i < phi.size(); ++i) {
            out.run.steps = i + 1;
            auto prefix = phi.first(i + 1);
            auto closed = ttc(prefix);
            if (closed.unsat) {
                out.run.verdict = tc(prefix).unsat ? VerdictClass::unsat_q : VerdictClass::unsat_z;
                out.run.failing_step = i + 1;
                break;
            }
            mark(closed.set, i + 1);
        }
    } else {
        throw std::invalid_argument(std::string("implies: unsupported mode ") + to_string(mode));
    }
    out.run.total_ms = elapsed_ms(start);
    return out;
}

} // namespace utvpi
