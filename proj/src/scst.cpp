#include "utvpi/scst.hpp"

#include <algorithm>
#include <stdexcept>
#include <type_traits>

#include "utvpi/incdiff.hpp"

namespace utvpi {

VerdictClass classify(const AddOutcome& o) {
    if (std::holds_alternative<SatStep>(o)) {
        return VerdictClass::sat;
    }
    return std::holds_alternative<UnsatQ>(o) ? VerdictClass::unsat_q : VerdictClass::unsat_z;
}

Solver::Solver(std::size_t num_vars) { ensure_vars(num_vars); }

void Solver::ensure_vars(std::size_t num_vars) {
    graph_.ensure_vars(num_vars);
    pi_.resize(graph_.vertex_count());
    rho_.resize(graph_.vertex_count());
}

AddOutcome Solver::add_constraint(const UtvpiConstraint& c) {
    const auto n = normalize(c);
    if (n.kind == NormalizeOutcome::Kind::contradiction) {
        return UnsatQ{};
    }
    if (n.kind == NormalizeOutcome::Kind::tautology) {
        return SatStep{};
    }
    ensure_vars(n.constraint.var_extent());

    const EdgeList edges = edges_of(n.constraint);
    std::vector<IncDiffUndo> done;
    auto rollback = [&] {
        for (auto it = done.rbegin(); it != done.rend(); ++it) {
            revert(graph_, pi_, *it);
        }
    };
    for (const DiffEdge& e : edges) {
        auto r = inc_con_diff(graph_, pi_, e);
        if (auto* cycle = std::get_if<NegativeCycle>(&r)) {
            rollback();
            return UnsatQ{std::move(*cycle)};
        }
        done.push_back(std::move(std::get<IncDiffUndo>(r)));
    }
    // Counter-edges always carry equal weights, so either every edge was
    // dominated or none was.
    if (std::all_of(done.begin(), done.end(), [](const IncDiffUndo& u) {
            return u.insert.kind == ConstraintGraph::InsertResult::Kind::dominated;
        })) {
        return SatStep{};
    }

    // One edge suffices: any path through the counter-edge has an
    // equal-weight mirror through this one.
    const auto [u, v, d] = edges[0];
    const auto to_u = dijkstra(graph_, pi_, u, Direction::backward);
    const auto from_v = dijkstra(graph_, pi_, v, Direction::forward);
    auto via = [&](Vertex from, Vertex to) { return to_u[from.id] + ExtWeight(d) + from_v[to.id]; };

    Bounds next = rho_;
    for (std::uint32_t id = 0; id < graph_.vertex_count(); ++id) {
        const Vertex x{id};
        next[x] = std::min(next[x], via(x, -x).floor_half());
    }
    for (std::uint32_t id = 0; id < graph_.vertex_count(); ++id) {
        const Vertex x{id};
        if (next[x] + next[-x] < ExtWeight(0)) {
            rollback();
            return UnsatZ{x};
        }
    }
    rho_ = std::move(next);

    SatStep step;
    std::erase_if(watches_, [&](const Watch& w) {
        const auto [x, y, bound] = w.first;
        const bool still_open =
            via(x, y) > ExtWeight(bound) && via(-y, -x) > ExtWeight(bound) && rho_[x] + rho_[-y] > ExtWeight(bound);
        if (!still_open) {
            step.newly_implied.push_back(w.tag);
        }
        return !still_open;
    });
    return step;
}

bool Solver::check_implied(const UtvpiConstraint& c) const {
    const auto n = normalize(c);
    if (n.kind != NormalizeOutcome::Kind::normal) {
        return n.kind == NormalizeOutcome::Kind::tautology;
    }
    if (n.constraint.var_extent() > var_count()) {
        // A variable the state has never seen is unconstrained.
        return false;
    }
    for (const auto& [x, y, bound] : edges_of(n.constraint)) {
        if (rho_[x] + rho_[-y] <= ExtWeight(bound)) {
            continue;
        }
        if (dijkstra(graph_, pi_, x, Direction::forward)[y.id] <= ExtWeight(bound)) {
            continue;
        }
        return false;
    }
    return true;
}

WatchResult Solver::register_watch(const UtvpiConstraint& c, WatchTag tag) {
    const auto n = normalize(c);
    if (n.kind == NormalizeOutcome::Kind::tautology) {
        return WatchResult::already_implied;
    }
    if (n.kind == NormalizeOutcome::Kind::contradiction) {
        return WatchResult::watching;
    }
    ensure_vars(n.constraint.var_extent());
    if (check_implied(n.constraint)) {
        return WatchResult::already_implied;
    }
    watches_.push_back({edges_of(n.constraint)[0], tag});
    return WatchResult::watching;
}

std::vector<Weight> Solver::extract_model() const {
    // Each TTC bound is attained by some integer solution, so fixing a
    // variable to its bound keeps the rest satisfiable.
    Solver s = *this;
    s.watches_.clear();
    std::vector<Weight> model(var_count(), 0);
    for (std::uint32_t i = 0; i < var_count(); ++i) {
        const Var x{i};
        const ExtWeight upper = s.bound(Vertex::of(x, Sign::minus));
        const ExtWeight neg_lower = s.bound(Vertex::of(x, Sign::plus));
        Weight value = 0;
        if (upper.is_finite()) {
            value = upper.value();
        } else if (neg_lower.is_finite()) {
            value = -neg_lower.value();
        }
        const bool ok = std::holds_alternative<SatStep>(s.add_constraint({1, x, 0, Var{}, value})) &&
                        std::holds_alternative<SatStep>(s.add_constraint({-1, x, 0, Var{}, -value}));
        if (!ok) {
            throw std::logic_error("extract_model: fixing a variable to its bound failed");
        }
        model[i] = value;
    }
    return model;
}

} // namespace utvpi
