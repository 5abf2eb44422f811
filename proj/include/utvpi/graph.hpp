#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "utvpi/model.hpp"

namespace utvpi {

/// Integer or +infinity. Addition saturates at +infinity.
class ExtWeight {
  public:
    constexpr ExtWeight() = default;
    constexpr ExtWeight(Weight v) : value_(v), finite_(true) {} // NOLINT(google-explicit-constructor)

    static constexpr ExtWeight infinity() { return ExtWeight{}; }

    [[nodiscard]] constexpr bool is_finite() const { return finite_; }
    [[nodiscard]] constexpr bool is_infinite() const { return !finite_; }
    /// Precondition: is_finite().
    [[nodiscard]] constexpr Weight value() const { return value_; }

    /// floor(w / 2), infinity stays infinity.
    [[nodiscard]] constexpr ExtWeight floor_half() const {
        if (!finite_) {
            return *this;
        }
        return value_ >= 0 ? ExtWeight(value_ / 2) : ExtWeight(-((-value_ + 1) / 2));
    }

    friend constexpr ExtWeight operator+(ExtWeight l, ExtWeight r) {
        if (!l.finite_ || !r.finite_) {
            return infinity();
        }
        return ExtWeight(l.value_ + r.value_);
    }
    friend constexpr bool operator==(ExtWeight l, ExtWeight r) {
        return l.finite_ == r.finite_ && (!l.finite_ || l.value_ == r.value_);
    }
    friend constexpr std::strong_ordering operator<=>(ExtWeight l, ExtWeight r) {
        if (l.finite_ != r.finite_) {
            return l.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        if (!l.finite_) {
            return std::strong_ordering::equal;
        }
        return l.value_ <=> r.value_;
    }

  private:
    Weight value_ = 0;
    bool finite_ = false;
};

std::ostream& operator<<(std::ostream& os, ExtWeight w);

/// Weighted digraph over signed vertices with at most one edge per ordered
/// pair. An edge (u, v, d) stands for v - u <= d.
class ConstraintGraph {
  public:
    struct Arc {
        std::uint32_t other; ///< head for out-arcs, tail for in-arcs
        Weight weight;
    };

    struct InsertResult {
        enum class Kind : std::uint8_t { added, tightened, dominated };
        Kind kind = Kind::added;
        Weight old_weight = 0; ///< meaningful for tightened and dominated
    };

    explicit ConstraintGraph(std::size_t num_vars = 0) { ensure_vars(num_vars); }

    void ensure_vars(std::size_t num_vars);
    [[nodiscard]] std::size_t var_count() const { return out_.size() / 2; }
    [[nodiscard]] std::size_t vertex_count() const { return out_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return index_.size(); }

    /// Precondition: e.from != e.to.
    InsertResult insert_or_tighten(const DiffEdge& e);
    /// Reverts the most recent effective insert_or_tighten of `e`.
    void undo(const DiffEdge& e, const InsertResult& r);

    [[nodiscard]] std::optional<Weight> weight(Vertex from, Vertex to) const;
    [[nodiscard]] std::span<const Arc> out(Vertex v) const { return out_[v.id]; }
    [[nodiscard]] std::span<const Arc> in(Vertex v) const { return in_[v.id]; }

    [[nodiscard]] std::vector<DiffEdge> edges() const;

    /// One `u -> v : w` line per edge, vertices named through `vars`.
    void dump(std::ostream& os, const VarTable& vars) const;

  private:
    struct Slot {
        std::uint32_t out_pos;
        std::uint32_t in_pos;
    };
    static std::uint64_t key(Vertex from, Vertex to) { return (std::uint64_t{from.id} << 32) | to.id; }

    std::vector<std::vector<Arc>> out_;
    std::vector<std::vector<Arc>> in_;
    std::unordered_map<std::uint64_t, Slot> index_;
};

/// Vertex labelling pi. Valid for a graph when pi(u) + d - pi(v) >= 0 on every edge.
class Potential {
  public:
    Potential() = default;
    explicit Potential(std::size_t vertex_count) : values_(vertex_count, 0) {}

    [[nodiscard]] Weight operator[](Vertex v) const { return values_[v.id]; }
    Weight& operator[](Vertex v) { return values_[v.id]; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    void resize(std::size_t vertex_count) { values_.resize(vertex_count, 0); }

    [[nodiscard]] Weight reduced_cost(Vertex from, Weight w, Vertex to) const {
        return values_[from.id] + w - values_[to.id];
    }
    [[nodiscard]] bool is_valid_for(const ConstraintGraph& g) const;

    friend bool operator==(const Potential&, const Potential&) = default;

  private:
    std::vector<Weight> values_;
};

struct NegativeCycle {
    std::vector<DiffEdge> edges;

    [[nodiscard]] Weight weight() const;
    /// Edges chain head-to-tail and close up.
    [[nodiscard]] bool is_closed_walk() const;
};

using BellmanFordResult = std::variant<Potential, NegativeCycle>;

/// Potential for every vertex (virtual zero-weight source to all vertices),
/// or a negative cycle.
BellmanFordResult bellman_ford(const ConstraintGraph& g);

/// Distances without any potential; O(nm). Test oracle and fallback.
std::vector<ExtWeight> bellman_ford_from(const ConstraintGraph& g, Vertex src);

enum class Direction : std::uint8_t { forward, backward };

/// Shortest-path lengths in original weights over the reduced-cost graph.
/// forward: result[v] = wSP(src, v); backward: result[v] = wSP(v, src).
/// Throws std::logic_error if pi is not valid on a scanned edge.
std::vector<ExtWeight> dijkstra(const ConstraintGraph& g, const Potential& pi, Vertex src, Direction dir);

/// Edges with zero reduced cost under pi.
std::vector<DiffEdge> tight_edges(const ConstraintGraph& g, const Potential& pi);

/// Component id per vertex; ids are dense from 0.
std::vector<std::uint32_t> scc(std::size_t vertex_count, std::span<const DiffEdge> edges);

} // namespace utvpi
