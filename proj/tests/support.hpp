#pragma once

// Test-only helpers: fixtures from the worked examples, random instances and
// from-scratch oracles that do not share code paths with the solvers.

#include <algorithm>
#include <random>
#include <span>
#include <vector>

#include "utvpi/graph.hpp"
#include "utvpi/model.hpp"

namespace utvpi::test {

inline constexpr Var X{0};
inline constexpr Var Y{1};
inline constexpr Var Z{2};

inline Vertex plus(Var v) { return Vertex::of(v, Sign::plus); }
inline Vertex minus(Var v) { return Vertex::of(v, Sign::minus); }

/// {x - y <= 2, x + y <= -1, -x - z <= -4}
inline std::vector<UtvpiConstraint> phi() {
    return {{1, X, -1, Y, 2}, {1, X, 1, Y, -1}, {-1, X, -1, Z, -4}};
}

/// phi plus -x + z <= 3; rationally feasible only with x = 1/2.
inline std::vector<UtvpiConstraint> phi_prime() {
    auto c = phi();
    c.push_back({-1, X, 1, Z, 3});
    return c;
}

/// Random normalized-or-not constraint over n variables with bound in [lo, hi].
/// About a third are single-variable.
inline UtvpiConstraint random_constraint(std::mt19937_64& rng, std::size_t n, Weight lo, Weight hi) {
    std::uniform_int_distribution<std::uint32_t> var(0, static_cast<std::uint32_t>(n - 1));
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<Weight> bound(lo, hi);
    UtvpiConstraint c;
    c.a = coin(rng) != 0 ? 1 : -1;
    c.x = Var{var(rng)};
    if (kind(rng) != 0 && n > 1) {
        c.b = coin(rng) != 0 ? 1 : -1;
        do {
            c.y = Var{var(rng)};
        } while (c.y == c.x);
    }
    c.d = bound(rng);
    return normalize(c).constraint;
}

inline std::vector<UtvpiConstraint> random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m, Weight lo,
                                                    Weight hi) {
    std::vector<UtvpiConstraint> cs;
    cs.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        cs.push_back(random_constraint(rng, n, lo, hi));
    }
    return cs;
}

/// random_instance with a planted core {x+y <= a, x-y <= b, -x-y <= c, -x+y <= e}
/// where a+b is odd and c+e = -(a+b): rationally x = (a+b)/2, so the core alone
/// is integer-infeasible. The remaining m-4 constraints are random and the
/// whole list is shuffled. Core bounds lie in [-5, 5]; requires m >= 4.
inline std::vector<UtvpiConstraint> planted_instance(std::mt19937_64& rng, std::size_t n, std::size_t m, Weight lo,
                                                     Weight hi) {
    std::uniform_int_distribution<std::uint32_t> var(0, static_cast<std::uint32_t>(n - 1));
    std::uniform_int_distribution<Weight> half(-5, 5);
    const Var x{var(rng)};
    Var y{var(rng)};
    while (y == x) {
        y = Var{var(rng)};
    }
    const Weight a = half(rng);
    Weight b = half(rng);
    if (((a + b) & 1) == 0) {
        b += b < 5 ? 1 : -1;
    }
    const Weight s = a + b;
    std::uniform_int_distribution<Weight> rest(std::max<Weight>(-5, -s - 5), std::min<Weight>(5, -s + 5));
    const Weight c = rest(rng);
    const Weight e = -(a + b) - c;
    std::vector<UtvpiConstraint> cs{{1, x, 1, y, a}, {1, x, -1, y, b}, {-1, x, -1, y, c}, {-1, x, 1, y, e}};
    for (std::size_t i = cs.size(); i < m; ++i) {
        cs.push_back(random_constraint(rng, n, lo, hi));
    }
    std::shuffle(cs.begin(), cs.end(), rng);
    return cs;
}

/// All-pairs shortest paths by Floyd-Warshall over an explicit edge list.
/// dist[i][j] = wSP(i, j); diagonal starts at 0.
inline std::vector<std::vector<ExtWeight>> floyd_warshall(std::size_t vertex_count, std::span<const DiffEdge> edges) {
    std::vector<std::vector<ExtWeight>> dist(vertex_count, std::vector<ExtWeight>(vertex_count, ExtWeight::infinity()));
    for (std::size_t i = 0; i < vertex_count; ++i) {
        dist[i][i] = 0;
    }
    for (const auto& e : edges) {
        dist[e.from.id][e.to.id] = std::min(dist[e.from.id][e.to.id], ExtWeight(e.weight));
    }
    for (std::size_t k = 0; k < vertex_count; ++k) {
        for (std::size_t i = 0; i < vertex_count; ++i) {
            if (dist[i][k].is_infinite()) {
                continue;
            }
            for (std::size_t j = 0; j < vertex_count; ++j) {
                dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
            }
        }
    }
    return dist;
}

/// wSP(u, -u) for every u of the constraints' graph (paths of length >= 1;
/// a zero-length path is only possible for u == -u which never happens).
inline std::vector<ExtWeight> bounds_from_scratch(std::size_t num_vars, std::span<const UtvpiConstraint> cs) {
    std::vector<DiffEdge> edges;
    for (const auto& c : cs) {
        const auto n = normalize(c);
        if (n.is_normal()) {
            for (const auto& e : edges_of(n.constraint)) {
                edges.push_back(e);
            }
        }
    }
    const auto dist = floyd_warshall(2 * num_vars, edges);
    std::vector<ExtWeight> rho(2 * num_vars);
    for (std::uint32_t u = 0; u < 2 * num_vars; ++u) {
        rho[u] = dist[u][u ^ 1U].floor_half();
    }
    return rho;
}

inline bool satisfies(const UtvpiConstraint& c, std::span<const Weight> model) {
    Weight lhs = 0;
    if (c.a != 0) {
        lhs += c.a * model[c.x.index];
    }
    if (c.b != 0) {
        lhs += c.b * model[c.y.index];
    }
    return lhs <= c.d;
}

/// Integer solution inside [-radius, radius]^n by enumeration, if any.
inline bool has_solution_in_box(std::size_t n, std::span<const UtvpiConstraint> cs, Weight radius) {
    std::vector<Weight> model(n, -radius);
    while (true) {
        bool ok = true;
        for (const auto& c : cs) {
            if (!satisfies(c, model)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return true;
        }
        std::size_t i = 0;
        while (i < n && model[i] == radius) {
            model[i] = -radius;
            ++i;
        }
        if (i == n) {
            return false;
        }
        ++model[i];
    }
}

} // namespace utvpi::test
