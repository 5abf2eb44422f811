#include "utvpi/lamu.hpp"

#include <type_traits>

namespace utvpi {

VerdictClass classify(const SatVerdict& v) {
    return std::visit(
        [](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, Sat>) {
                return VerdictClass::sat;
            } else if constexpr (std::is_same_v<T, UnsatQ>) {
                return VerdictClass::unsat_q;
            } else {
                return VerdictClass::unsat_z;
            }
        },
        v);
}

const char* to_string(VerdictClass c) {
    switch (c) {
    case VerdictClass::sat:
        return "SAT";
    case VerdictClass::unsat_q:
        return "UNSAT-Q";
    case VerdictClass::unsat_z:
        return "UNSAT-Z";
    }
    return "?";
}

std::optional<Vertex> find_odd_tight_cycle(const ConstraintGraph& g, const Potential& pi) {
    const auto tight = tight_edges(g, pi);
    const auto comp = scc(g.vertex_count(), tight);
    for (std::uint32_t id = 0; id < g.vertex_count(); ++id) {
        const Vertex u{id};
        // Inside a tight SCC, pi(-u) - pi(u) is the weight of the zero-cycle
        // segment from u to -u.
        if (comp[u.id] == comp[(-u).id] && ((pi[-u] - pi[u]) & 1) != 0) {
            return u;
        }
    }
    return std::nullopt;
}

bool build_graph(std::span<const UtvpiConstraint> constraints, ConstraintGraph& g) {
    for (const auto& raw : constraints) {
        const auto n = normalize(raw);
        if (n.kind == NormalizeOutcome::Kind::contradiction) {
            return false;
        }
        if (n.kind == NormalizeOutcome::Kind::tautology) {
            continue;
        }
        for (const DiffEdge& e : edges_of(n.constraint)) {
            g.insert_or_tighten(e);
        }
    }
    return true;
}

SatVerdict lamu_check(std::span<const UtvpiConstraint> constraints) {
    ConstraintGraph g;
    if (!build_graph(constraints, g)) {
        return UnsatQ{};
    }
    auto bf = bellman_ford(g);
    if (auto* cycle = std::get_if<NegativeCycle>(&bf)) {
        return UnsatQ{std::move(*cycle)};
    }
    auto& pi = std::get<Potential>(bf);
    if (auto u = find_odd_tight_cycle(g, pi)) {
        return UnsatZ{*u};
    }
    return Sat{std::move(pi)};
}

SatVerdict IncrementalLamu::add_constraint(const UtvpiConstraint& c) {
    const auto n = normalize(c);
    if (n.kind == NormalizeOutcome::Kind::contradiction) {
        return UnsatQ{};
    }
    if (n.kind == NormalizeOutcome::Kind::normal) {
        std::vector<IncDiffUndo> done;
        for (const DiffEdge& e : edges_of(n.constraint)) {
            auto r = inc_con_diff(graph_, pi_, e);
            if (auto* cycle = std::get_if<NegativeCycle>(&r)) {
                for (auto it = done.rbegin(); it != done.rend(); ++it) {
                    revert(graph_, pi_, *it);
                }
                return UnsatQ{std::move(*cycle)};
            }
            done.push_back(std::move(std::get<IncDiffUndo>(r)));
        }
        if (auto u = find_odd_tight_cycle(graph_, pi_)) {
            for (auto it = done.rbegin(); it != done.rend(); ++it) {
                revert(graph_, pi_, *it);
            }
            return UnsatZ{*u};
        }
    }
    return Sat{pi_};
}

} // namespace utvpi
