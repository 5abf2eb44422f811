#include "utvpi/graph.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <utility>

namespace utvpi {

std::ostream& operator<<(std::ostream& os, ExtWeight w) {
    if (w.is_infinite()) {
        return os << "+inf";
    }
    return os << w.value();
}

void ConstraintGraph::ensure_vars(std::size_t num_vars) {
    if (2 * num_vars > out_.size()) {
        out_.resize(2 * num_vars);
        in_.resize(2 * num_vars);
    }
}

ConstraintGraph::InsertResult ConstraintGraph::insert_or_tighten(const DiffEdge& e) {
    assert(e.from != e.to);
    ensure_vars(std::max(e.from.var().index, e.to.var().index) + std::size_t{1});
    const auto k = key(e.from, e.to);
    if (auto it = index_.find(k); it != index_.end()) {
        Arc& fwd = out_[e.from.id][it->second.out_pos];
        if (fwd.weight <= e.weight) {
            return {InsertResult::Kind::dominated, fwd.weight};
        }
        const Weight old = fwd.weight;
        fwd.weight = e.weight;
        in_[e.to.id][it->second.in_pos].weight = e.weight;
        return {InsertResult::Kind::tightened, old};
    }
    auto& outs = out_[e.from.id];
    auto& ins = in_[e.to.id];
    index_.emplace(k, Slot{static_cast<std::uint32_t>(outs.size()), static_cast<std::uint32_t>(ins.size())});
    outs.push_back({e.to.id, e.weight});
    ins.push_back({e.from.id, e.weight});
    return {InsertResult::Kind::added, 0};
}

void ConstraintGraph::undo(const DiffEdge& e, const InsertResult& r) {
    const auto it = index_.find(key(e.from, e.to));
    assert(it != index_.end());
    const Slot slot = it->second;
    switch (r.kind) {
    case InsertResult::Kind::dominated:
        return;
    case InsertResult::Kind::tightened:
        out_[e.from.id][slot.out_pos].weight = r.old_weight;
        in_[e.to.id][slot.in_pos].weight = r.old_weight;
        return;
    case InsertResult::Kind::added:
        break;
    }
    index_.erase(it);

    auto& outs = out_[e.from.id];
    if (slot.out_pos + 1 != outs.size()) {
        outs[slot.out_pos] = outs.back();
        index_.at(key(e.from, Vertex{outs[slot.out_pos].other})).out_pos = slot.out_pos;
    }
    outs.pop_back();

    auto& ins = in_[e.to.id];
    if (slot.in_pos + 1 != ins.size()) {
        ins[slot.in_pos] = ins.back();
        index_.at(key(Vertex{ins[slot.in_pos].other}, e.to)).in_pos = slot.in_pos;
    }
    ins.pop_back();
}

std::optional<Weight> ConstraintGraph::weight(Vertex from, Vertex to) const {
    if (auto it = index_.find(key(from, to)); it != index_.end()) {
        return out_[from.id][it->second.out_pos].weight;
    }
    return std::nullopt;
}

std::vector<DiffEdge> ConstraintGraph::edges() const {
    std::vector<DiffEdge> all;
    all.reserve(index_.size());
    for (std::uint32_t u = 0; u < out_.size(); ++u) {
        for (const Arc& a : out_[u]) {
            all.push_back({Vertex{u}, Vertex{a.other}, a.weight});
        }
    }
    return all;
}

void ConstraintGraph::dump(std::ostream& os, const VarTable& vars) const {
    for (const DiffEdge& e : edges()) {
        os << to_string(e.from, vars) << " -> " << to_string(e.to, vars) << " : " << e.weight << '\n';
    }
}

bool Potential::is_valid_for(const ConstraintGraph& g) const {
    if (values_.size() < g.vertex_count()) {
        return false;
    }
    for (std::uint32_t u = 0; u < g.vertex_count(); ++u) {
        for (const auto& a : g.out(Vertex{u})) {
            if (reduced_cost(Vertex{u}, a.weight, Vertex{a.other}) < 0) {
                return false;
            }
        }
    }
    return true;
}

Weight NegativeCycle::weight() const {
    Weight total = 0;
    for (const DiffEdge& e : edges) {
        total += e.weight;
    }
    return total;
}

bool NegativeCycle::is_closed_walk() const {
    if (edges.empty()) {
        return false;
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].to != edges[(i + 1) % edges.size()].from) {
            return false;
        }
    }
    return true;
}

BellmanFordResult bellman_ford(const ConstraintGraph& g) {
    const std::size_t n = g.vertex_count();
    constexpr auto none = std::numeric_limits<std::uint32_t>::max();
    std::vector<Weight> dist(n, 0);
    std::vector<std::uint32_t> pred(n, none);

    // n real vertices plus the virtual source: n rounds settle every
    // shortest path, a change in round n + 1 proves a negative cycle.
    std::uint32_t last_changed = none;
    for (std::size_t round = 0; round <= n; ++round) {
        last_changed = none;
        for (std::uint32_t u = 0; u < n; ++u) {
            for (const auto& a : g.out(Vertex{u})) {
                if (dist[u] + a.weight < dist[a.other]) {
                    dist[a.other] = dist[u] + a.weight;
                    pred[a.other] = u;
                    last_changed = a.other;
                }
            }
        }
        if (last_changed == none) {
            Potential pi(n);
            for (std::uint32_t v = 0; v < n; ++v) {
                pi[Vertex{v}] = dist[v];
            }
            return pi;
        }
    }

    std::uint32_t on_cycle = last_changed;
    for (std::size_t i = 0; i < n; ++i) {
        on_cycle = pred[on_cycle];
    }
    NegativeCycle cycle;
    std::uint32_t cur = on_cycle;
    do {
        const std::uint32_t p = pred[cur];
        cycle.edges.push_back({Vertex{p}, Vertex{cur}, *g.weight(Vertex{p}, Vertex{cur})});
        cur = p;
    } while (cur != on_cycle);
    std::reverse(cycle.edges.begin(), cycle.edges.end());
    return cycle;
}

std::vector<ExtWeight> bellman_ford_from(const ConstraintGraph& g, Vertex src) {
    const std::size_t n = g.vertex_count();
    std::vector<ExtWeight> dist(n, ExtWeight::infinity());
    dist[src.id] = 0;
    for (std::size_t round = 0; round + 1 < n || round == 0; ++round) {
        bool changed = false;
        for (std::uint32_t u = 0; u < n; ++u) {
            if (dist[u].is_infinite()) {
                continue;
            }
            for (const auto& a : g.out(Vertex{u})) {
                const ExtWeight cand = dist[u] + a.weight;
                if (cand < dist[a.other]) {
                    dist[a.other] = cand;
                    changed = true;
                }
            }
        }
        if (!changed) {
            break;
        }
    }
    return dist;
}

std::vector<ExtWeight> dijkstra(const ConstraintGraph& g, const Potential& pi, Vertex src, Direction dir) {
    const std::size_t n = g.vertex_count();
    constexpr Weight unreached = std::numeric_limits<Weight>::max();
    std::vector<Weight> reduced(n, unreached);
    std::vector<bool> settled(n, false);

    using Entry = std::pair<Weight, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    reduced[src.id] = 0;
    heap.emplace(0, src.id);

    while (!heap.empty()) {
        const auto [dist, s] = heap.top();
        heap.pop();
        if (settled[s] || dist != reduced[s]) {
            continue;
        }
        settled[s] = true;
        const auto arcs = dir == Direction::forward ? g.out(Vertex{s}) : g.in(Vertex{s});
        for (const auto& a : arcs) {
            const Weight rc = dir == Direction::forward ? pi.reduced_cost(Vertex{s}, a.weight, Vertex{a.other})
                                                        : pi.reduced_cost(Vertex{a.other}, a.weight, Vertex{s});
            if (rc < 0) {
                throw std::logic_error("dijkstra: potential is not valid for the graph");
            }
            const Weight cand = dist + rc;
            if (settled[a.other]) {
                assert(cand >= reduced[a.other]);
                continue;
            }
            if (cand < reduced[a.other]) {
                reduced[a.other] = cand;
                heap.emplace(cand, a.other);
            }
        }
    }

    std::vector<ExtWeight> out(n, ExtWeight::infinity());
    for (std::uint32_t v = 0; v < n; ++v) {
        if (reduced[v] == unreached) {
            continue;
        }
        // w(P) = w_rc(P) + pi(head) - pi(tail)
        out[v] = dir == Direction::forward ? reduced[v] + pi[Vertex{v}] - pi[src] : reduced[v] + pi[src] - pi[Vertex{v}];
    }
    return out;
}

std::vector<DiffEdge> tight_edges(const ConstraintGraph& g, const Potential& pi) {
    std::vector<DiffEdge> tight;
    for (std::uint32_t u = 0; u < g.vertex_count(); ++u) {
        for (const auto& a : g.out(Vertex{u})) {
            if (pi.reduced_cost(Vertex{u}, a.weight, Vertex{a.other}) == 0) {
                tight.push_back({Vertex{u}, Vertex{a.other}, a.weight});
            }
        }
    }
    return tight;
}

std::vector<std::uint32_t> scc(std::size_t vertex_count, std::span<const DiffEdge> edges) {
    constexpr auto unvisited = std::numeric_limits<std::uint32_t>::max();

    // CSR adjacency
    std::vector<std::uint32_t> start(vertex_count + 1, 0);
    for (const auto& e : edges) {
        ++start[e.from.id + 1];
    }
    for (std::size_t i = 0; i < vertex_count; ++i) {
        start[i + 1] += start[i];
    }
    std::vector<std::uint32_t> adj(edges.size());
    {
        std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
        for (const auto& e : edges) {
            adj[fill[e.from.id]++] = e.to.id;
        }
    }

    std::vector<std::uint32_t> index(vertex_count, unvisited);
    std::vector<std::uint32_t> low(vertex_count, 0);
    std::vector<std::uint32_t> comp(vertex_count, unvisited);
    std::vector<bool> on_stack(vertex_count, false);
    std::vector<std::uint32_t> stack;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> call; // vertex, next arc
    std::uint32_t next_index = 0;
    std::uint32_t next_comp = 0;

    for (std::uint32_t root = 0; root < vertex_count; ++root) {
        if (index[root] != unvisited) {
            continue;
        }
        call.emplace_back(root, start[root]);
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            auto& [v, arc] = call.back();
            if (arc < start[v + 1]) {
                const std::uint32_t w = adj[arc++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, start[w]);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::uint32_t done = v;
            call.pop_back();
            if (!call.empty()) {
                const std::uint32_t parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                std::uint32_t w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = next_comp;
                } while (w != done);
                ++next_comp;
            }
        }
    }
    return comp;
}

} // namespace utvpi
