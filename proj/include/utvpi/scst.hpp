#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "utvpi/graph.hpp"
#include "utvpi/lamu.hpp"
#include "utvpi/model.hpp"

namespace utvpi {

using WatchTag = std::uint64_t;

/// Per-vertex bound rho(u) = floor(wSP(u, -u) / 2). rho(x-) is the best upper
/// bound on x, rho(x+) the best upper bound on -x.
class Bounds {
  public:
    Bounds() = default;
    explicit Bounds(std::size_t vertex_count) : values_(vertex_count, ExtWeight::infinity()) {}

    [[nodiscard]] ExtWeight operator[](Vertex v) const { return values_[v.id]; }
    ExtWeight& operator[](Vertex v) { return values_[v.id]; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    void resize(std::size_t vertex_count) { values_.resize(vertex_count, ExtWeight::infinity()); }

    friend bool operator==(const Bounds&, const Bounds&) = default;

  private:
    std::vector<ExtWeight> values_;
};

struct SatStep {
    std::vector<WatchTag> newly_implied;
};

using AddOutcome = std::variant<SatStep, UnsatQ, UnsatZ>;

VerdictClass classify(const AddOutcome& o);

enum class WatchResult : std::uint8_t { already_implied, watching };

/// Incremental integer satisfiability and implication over UTVPI constraints.
///
/// Keeps the constraint graph, a valid potential, the bounds function and the
/// set of watched constraints not yet implied. Every asserted prefix is
/// integer-satisfiable: a rejected constraint leaves the state untouched.
class Solver {
  public:
    explicit Solver(std::size_t num_vars = 0);

    void ensure_vars(std::size_t num_vars);
    [[nodiscard]] std::size_t var_count() const { return graph_.var_count(); }

    /// Asserts c. On Sat returns the tags of watches implied for the first
    /// time, in registration order.
    AddOutcome add_constraint(const UtvpiConstraint& c);

    /// Watches c until it becomes implied. A contradiction can never become
    /// implied while the state is satisfiable, so it is reported as watching
    /// without being stored.
    WatchResult register_watch(const UtvpiConstraint& c, WatchTag tag);

    /// Does the asserted set entail c? Runs fresh shortest paths.
    [[nodiscard]] bool check_implied(const UtvpiConstraint& c) const;

    /// An integer assignment satisfying every asserted constraint, indexed by
    /// variable.
    [[nodiscard]] std::vector<Weight> extract_model() const;

    [[nodiscard]] const ConstraintGraph& graph() const { return graph_; }
    [[nodiscard]] const Potential& potential() const { return pi_; }
    [[nodiscard]] const Bounds& bounds() const { return rho_; }
    [[nodiscard]] ExtWeight bound(Vertex v) const { return v.id < rho_.size() ? rho_[v] : ExtWeight::infinity(); }
    [[nodiscard]] std::size_t watch_count() const { return watches_.size(); }

  private:
    struct Watch {
        DiffEdge first; ///< first edge of the watched constraint
        WatchTag tag;
    };

    ConstraintGraph graph_;
    Potential pi_;
    Bounds rho_;
    std::vector<Watch> watches_;
};

} // namespace utvpi
