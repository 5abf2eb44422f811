#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "utvpi/model.hpp"

namespace utvpi {

/// A literal multiset of size <= 2 (a repeated literal means l + l <= d).
/// Literals are encoded as vertices; `none` marks an empty slot.
struct ClosureKey {
    static constexpr std::uint32_t none = 0xFFFFFFFFU;
    std::uint32_t first = none;
    std::uint32_t second = none;

    static ClosureKey make(std::optional<Vertex> l1, std::optional<Vertex> l2);
    static ClosureKey of(const UtvpiConstraint& normalized);

    [[nodiscard]] bool empty() const { return first == none; }
    [[nodiscard]] int size() const { return (first != none ? 1 : 0) + (second != none ? 1 : 0); }

    friend auto operator<=>(const ClosureKey&, const ClosureKey&) = default;
};

/// Minimal bound per constraint key.
class ClosureSet {
  public:
    struct Entry {
        ClosureKey key;
        Weight bound;
    };

    explicit ClosureSet(std::size_t num_vars = 0);

    [[nodiscard]] std::optional<Weight> get(ClosureKey k) const;
    /// Bound of the single-literal constraint l <= d.
    [[nodiscard]] std::optional<Weight> single(Vertex l) const { return get(ClosureKey::make(l, std::nullopt)); }
    /// Lowers the bound of k; returns true if it strictly improved.
    bool lower(ClosureKey k, Weight d);

    [[nodiscard]] std::size_t var_count() const { return num_vars_; }
    [[nodiscard]] std::size_t size() const { return keys_.size(); }
    /// Entries sorted by key.
    [[nodiscard]] std::vector<Entry> entries() const;
    /// Keys in insertion order.
    [[nodiscard]] const std::vector<ClosureKey>& keys() const { return keys_; }
    /// Keys containing literal l, in insertion order.
    [[nodiscard]] const std::vector<ClosureKey>& keys_with(Vertex l) const { return by_literal_[l.id]; }

    friend bool operator==(const ClosureSet& a, const ClosureSet& b) { return a.entries() == b.entries(); }

  private:
    [[nodiscard]] std::size_t slot(ClosureKey k) const;

    std::size_t num_vars_;
    std::vector<Weight> bound_;
    std::vector<bool> present_;
    std::vector<ClosureKey> keys_;
    std::vector<std::vector<ClosureKey>> by_literal_;
};

inline bool operator==(const ClosureSet::Entry& a, const ClosureSet::Entry& b) {
    return a.key == b.key && a.bound == b.bound;
}

struct ClosureResult {
    bool unsat = false;
    ClosureSet set;
};

/// Fixpoint of the transitive rule. unsat iff 0 <= d with d < 0 is derivable.
ClosureResult tc(std::span<const UtvpiConstraint> constraints);

/// Fixpoint of the transitive and tightening rules.
ClosureResult ttc(std::span<const UtvpiConstraint> constraints);

/// `s` extended by tightening only (l + l <= d gives l <= floor(d/2)).
ClosureSet tighten_only(const ClosureSet& s);

/// Entailment from a satisfiable TTC fixpoint.
bool closure_implies(const ClosureSet& s, const UtvpiConstraint& c);

} // namespace utvpi
