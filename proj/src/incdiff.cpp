#include "utvpi/incdiff.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>

namespace utvpi {

IncDiffResult inc_con_diff(ConstraintGraph& g, Potential& pi, const DiffEdge& e) {
    const auto insert = g.insert_or_tighten(e);
    pi.resize(g.vertex_count());
    IncDiffUndo undo{e, insert, {}};
    if (insert.kind == ConstraintGraph::InsertResult::Kind::dominated) {
        return undo;
    }

    const Vertex u = e.from;
    const Vertex v = e.to;
    const Weight start = pi.reduced_cost(u, e.weight, v);
    if (start >= 0) {
        return undo;
    }

    // gamma(w) < 0 is the amount by which pi(w) must drop. Absent entries are 0.
    std::unordered_map<std::uint32_t, Weight> gamma;
    std::unordered_map<std::uint32_t, std::uint32_t> pred;
    std::vector<bool> finalized(g.vertex_count(), false);
    using Entry = std::pair<Weight, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

    gamma[v.id] = start;
    pred[v.id] = u.id;
    heap.emplace(start, v.id);

    auto fail = [&](std::uint32_t last) {
        NegativeCycle cycle;
        std::uint32_t cur = u.id;
        pred[u.id] = last;
        do {
            const std::uint32_t p = pred.at(cur);
            const Weight w = (Vertex{p} == u && Vertex{cur} == v) ? e.weight : *g.weight(Vertex{p}, Vertex{cur});
            cycle.edges.push_back({Vertex{p}, Vertex{cur}, w});
            cur = p;
        } while (cur != u.id);
        std::reverse(cycle.edges.begin(), cycle.edges.end());
        for (auto it = undo.old_potential.rbegin(); it != undo.old_potential.rend(); ++it) {
            pi[it->first] = it->second;
        }
        g.undo(e, insert);
        return cycle;
    };

    while (!heap.empty()) {
        const auto [gs, s] = heap.top();
        heap.pop();
        if (finalized[s] || gamma[s] != gs) {
            continue;
        }
        finalized[s] = true;
        undo.old_potential.emplace_back(Vertex{s}, pi[Vertex{s}]);
        pi[Vertex{s}] += gs;
        gamma.erase(s);

        for (const auto& a : g.out(Vertex{s})) {
            if (finalized[a.other]) {
                continue;
            }
            const Weight cand = pi.reduced_cost(Vertex{s}, a.weight, Vertex{a.other});
            if (cand >= 0) {
                continue;
            }
            auto [it, fresh] = gamma.try_emplace(a.other, 0);
            if (cand < it->second) {
                it->second = cand;
                pred[a.other] = s;
                if (Vertex{a.other} == u) {
                    return fail(s);
                }
                heap.emplace(cand, a.other);
            }
        }
    }
    return undo;
}

void revert(ConstraintGraph& g, Potential& pi, const IncDiffUndo& undo) {
    for (auto it = undo.old_potential.rbegin(); it != undo.old_potential.rend(); ++it) {
        pi[it->first] = it->second;
    }
    g.undo(undo.edge, undo.insert);
}

} // namespace utvpi
