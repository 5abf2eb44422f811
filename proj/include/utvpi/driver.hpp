#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "utvpi/lamu.hpp"
#include "utvpi/model.hpp"

namespace utvpi {

enum class Mode : std::uint8_t { scst, inc_lamu, m_lamu, closure };

const char* to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view s);
inline constexpr Mode kAllModes[] = {Mode::scst, Mode::inc_lamu, Mode::m_lamu, Mode::closure};

struct RunReport {
    VerdictClass verdict = VerdictClass::sat;
    std::size_t failing_step = 0; ///< 1-based; 0 when satisfiable
    std::size_t steps = 0;        ///< assertions processed, including the failing one
    double total_ms = 0;

    /// "SAT" or "UNSAT-Z at constraint 4".
    [[nodiscard]] std::string summary() const;
};

/// Asserts the constraints one at a time, stopping at the first UNSAT.
RunReport run_check(std::span<const UtvpiConstraint> constraints, Mode mode);

/// Process exit code for a verdict: 0 SAT, 10 UNSAT-Q, 11 UNSAT-Z.
int exit_code(VerdictClass v);
inline constexpr int kUsageExit = 2;

struct ImpliesReport {
    RunReport run;
    /// Per query: assertion step after which it was first implied (0 means
    /// implied before any assertion), or nullopt.
    std::vector<std::optional<std::size_t>> implied_at;
};

/// Queries are registered before the first assertion. mode is scst or closure.
ImpliesReport run_implies(std::span<const UtvpiConstraint> phi, std::span<const UtvpiConstraint> queries,
                          Mode mode = Mode::scst);

/// Random instance parameters. Bounds are drawn uniformly from [lo, hi].
struct GenConfig {
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    Weight lo = -15;
    Weight hi = 100;

    /// Empty when the configuration can be realised, else the reason.
    [[nodiscard]] std::string infeasibility() const;
};

/// Two-variable constraints over x0..x{n-1}: every variable covered, no
/// sign pattern repeated for a variable pair. Deterministic in the seed.
/// Throws std::invalid_argument for an infeasible config.
std::vector<UtvpiConstraint> generate(const GenConfig& cfg);

/// Empty when `cs` satisfies the generator's guarantees for `cfg`.
std::string audit_instance(const GenConfig& cfg, std::span<const UtvpiConstraint> cs);

/// Names x0..x{n-1}.
VarTable generated_vars(std::size_t n);
void write_instance(std::ostream& os, const GenConfig& cfg, std::span<const UtvpiConstraint> cs);

struct BenchClass {
    std::string name;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 1;
};

/// One line per class: `name n m [seed]`; '#' starts a comment.
std::vector<BenchClass> parse_bench_config(std::istream& in);

struct BenchRow {
    std::string klass;
    std::size_t n = 0;
    std::size_t m = 0;
    Mode mode = Mode::scst;
    std::string verdict; ///< SAT, UNSAT-Q, UNSAT-Z or all
    double mean_ms = 0;
    double stddev_ms = 0;

    friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchReport {
    std::vector<BenchRow> rows;

    friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// Generates `reps` instances per class (seeds seed, seed+1, ...) and times
/// every mode on each after one discarded warm-up run. Throws
/// std::runtime_error if modes disagree on an instance's verdict.
BenchReport run_bench(std::span<const BenchClass> classes, std::span<const Mode> modes, std::size_t reps);

void write_csv(std::ostream& os, const BenchReport& r);
BenchReport read_csv(std::istream& is);
void write_table(std::ostream& os, const BenchReport& r);

} // namespace utvpi
