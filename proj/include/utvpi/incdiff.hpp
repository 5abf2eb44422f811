#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "utvpi/graph.hpp"

namespace utvpi {

/// What one successful insertion changed, enough to revert it.
struct IncDiffUndo {
    DiffEdge edge;
    ConstraintGraph::InsertResult insert;
    std::vector<std::pair<Vertex, Weight>> old_potential;
};

using IncDiffResult = std::variant<IncDiffUndo, NegativeCycle>;

/// Adds `e` to `g` and repairs `pi` by lowering only the potentials that must
/// drop. On a negative cycle through `e` both `g` and `pi` are left exactly as
/// they were and the cycle is returned.
///
/// Precondition: pi valid for g, e.from != e.to.
IncDiffResult inc_con_diff(ConstraintGraph& g, Potential& pi, const DiffEdge& e);

/// Undoes a committed insertion. Undo records must be reverted newest first.
void revert(ConstraintGraph& g, Potential& pi, const IncDiffUndo& undo);

} // namespace utvpi
