#pragma once

#include <optional>
#include <span>
#include <variant>

#include "utvpi/graph.hpp"
#include "utvpi/incdiff.hpp"
#include "utvpi/model.hpp"

namespace utvpi {

struct Sat {
    Potential potential;
};
struct UnsatQ {
    NegativeCycle cycle; ///< empty when a constant constraint 0 <= d, d < 0 was given
};
struct UnsatZ {
    Vertex witness;
};

using SatVerdict = std::variant<Sat, UnsatQ, UnsatZ>;

enum class VerdictClass : std::uint8_t { sat, unsat_q, unsat_z };

VerdictClass classify(const SatVerdict& v);
const char* to_string(VerdictClass c);

/// Lowest-indexed vertex u such that -u lies in u's SCC of the tight subgraph
/// and pi(-u) - pi(u) is odd. Precondition: pi valid for g.
std::optional<Vertex> find_odd_tight_cycle(const ConstraintGraph& g, const Potential& pi);

/// Non-incremental integer satisfiability: negative-cycle detection followed
/// by the parity test on zero-weight cycles.
SatVerdict lamu_check(std::span<const UtvpiConstraint> constraints);

/// Graph of all normalized constraints; returns false if a constant
/// contradiction was met.
bool build_graph(std::span<const UtvpiConstraint> constraints, ConstraintGraph& g);

/// Lahiri-Musuvathi with incremental negative-cycle detection: each constraint
/// goes through inc_con_diff, then the parity test runs on the whole graph.
/// A rejected constraint is rolled back.
class IncrementalLamu {
  public:
    explicit IncrementalLamu(std::size_t num_vars = 0) : graph_(num_vars), pi_(graph_.vertex_count()) {}

    SatVerdict add_constraint(const UtvpiConstraint& c);

    [[nodiscard]] const ConstraintGraph& graph() const { return graph_; }
    [[nodiscard]] const Potential& potential() const { return pi_; }

  private:
    ConstraintGraph graph_;
    Potential pi_;
};

} // namespace utvpi
