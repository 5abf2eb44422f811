#include "utvpi/closure.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

namespace utvpi {

namespace {

Weight floor_half(Weight d) { return d >= 0 ? d / 2 : -((-d + 1) / 2); }

/// k minus one occurrence of literal l.
std::optional<Vertex> remaining(ClosureKey k, std::uint32_t l) {
    const std::uint32_t other = k.first == l ? k.second : k.first;
    return other == ClosureKey::none ? std::nullopt : std::optional<Vertex>(Vertex{other});
}

ClosureKey combine(std::optional<Vertex> l1, std::optional<Vertex> l2) {
    // x - x cancels to the constant constraint
    if (l1 && l2 && *l1 == -*l2) {
        return ClosureKey{};
    }
    return ClosureKey::make(l1, l2);
}

class Fixpoint {
  public:
    Fixpoint(std::span<const UtvpiConstraint> constraints, bool tighten) : tighten_(tighten) {
        std::size_t num_vars = 0;
        Weight total = 0;
        for (const auto& c : constraints) {
            num_vars = std::max(num_vars, c.var_extent());
            total += std::abs(c.d);
        }
        result_.set = ClosureSet(num_vars);
        // Without an infeasibility every derived bound is at least minus the
        // total absolute edge weight.
        floor_ = -2 * total;

        for (const auto& c : constraints) {
            const auto n = normalize(c);
            if (n.kind == NormalizeOutcome::Kind::contradiction) {
                result_.unsat = true;
                return;
            }
            if (n.kind == NormalizeOutcome::Kind::normal) {
                derive(ClosureKey::of(n.constraint), n.constraint.d);
            }
        }
    }

    ClosureResult run() && {
        while (!result_.unsat && !queue_.empty()) {
            const ClosureKey k = queue_.front();
            queue_.pop_front();
            expand(k);
        }
        return std::move(result_);
    }

  private:
    void derive(ClosureKey k, Weight d) {
        if (result_.unsat) {
            return;
        }
        if ((k.empty() && d < 0) || d < floor_) {
            result_.unsat = true;
            return;
        }
        if (result_.set.lower(k, d)) {
            queue_.push_back(k);
        }
    }

    void expand(ClosureKey k) {
        auto& set = result_.set;
        const Weight d = *set.get(k);
        if (tighten_ && k.size() == 2 && k.first == k.second) {
            derive(ClosureKey::make(Vertex{k.first}, std::nullopt), floor_half(d));
        }
        for (const std::uint32_t lit : {k.first, k.second}) {
            if (lit == ClosureKey::none || (lit == k.second && k.second == k.first)) {
                continue;
            }
            const Vertex l{lit};
            const auto rest = remaining(k, lit);
            // Index-based: derive() may append to this list.
            for (std::size_t i = 0; i < set.keys_with(-l).size() && !result_.unsat; ++i) {
                const ClosureKey other = set.keys_with(-l)[i];
                derive(combine(rest, remaining(other, (-l).id)), d + *set.get(other));
            }
        }
    }

    bool tighten_;
    Weight floor_ = 0;
    ClosureResult result_;
    std::deque<ClosureKey> queue_;
};

} // namespace

ClosureKey ClosureKey::make(std::optional<Vertex> l1, std::optional<Vertex> l2) {
    if (!l1) {
        std::swap(l1, l2);
    }
    ClosureKey k;
    if (l1) {
        k.first = l1->id;
    }
    if (l2) {
        k.second = l2->id;
    }
    if (k.second != none && k.second < k.first) {
        std::swap(k.first, k.second);
    }
    return k;
}

ClosureKey ClosureKey::of(const UtvpiConstraint& c) {
    std::optional<Vertex> l1;
    std::optional<Vertex> l2;
    if (c.a != 0) {
        l1 = Vertex::literal(c.a, c.x);
    }
    if (c.b != 0) {
        l2 = Vertex::literal(c.b, c.y);
    }
    return make(l1, l2);
}

ClosureSet::ClosureSet(std::size_t num_vars)
    : num_vars_(num_vars),
      bound_((2 * num_vars + 1) * (2 * num_vars + 1), 0),
      present_(bound_.size(), false),
      by_literal_(2 * num_vars) {}

std::size_t ClosureSet::slot(ClosureKey k) const {
    const std::size_t lits = 2 * num_vars_;
    const std::size_t a = k.first == ClosureKey::none ? lits : k.first;
    const std::size_t b = k.second == ClosureKey::none ? lits : k.second;
    return a * (lits + 1) + b;
}

std::optional<Weight> ClosureSet::get(ClosureKey k) const {
    const std::size_t lits = 2 * num_vars_;
    if ((k.first != ClosureKey::none && k.first >= lits) || (k.second != ClosureKey::none && k.second >= lits)) {
        return std::nullopt;
    }
    const std::size_t s = slot(k);
    if (!present_[s]) {
        return std::nullopt;
    }
    return bound_[s];
}

bool ClosureSet::lower(ClosureKey k, Weight d) {
    const std::size_t s = slot(k);
    if (present_[s]) {
        if (bound_[s] <= d) {
            return false;
        }
        bound_[s] = d;
        return true;
    }
    present_[s] = true;
    bound_[s] = d;
    keys_.push_back(k);
    if (k.first != ClosureKey::none) {
        by_literal_[k.first].push_back(k);
    }
    if (k.second != ClosureKey::none && k.second != k.first) {
        by_literal_[k.second].push_back(k);
    }
    return true;
}

std::vector<ClosureSet::Entry> ClosureSet::entries() const {
    std::vector<Entry> out;
    out.reserve(keys_.size());
    for (const ClosureKey k : keys_) {
        out.push_back({k, bound_[slot(k)]});
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
    return out;
}

ClosureResult tc(std::span<const UtvpiConstraint> constraints) {
    return Fixpoint(constraints, false).run();
}

ClosureResult ttc(std::span<const UtvpiConstraint> constraints) {
    return Fixpoint(constraints, true).run();
}

ClosureSet tighten_only(const ClosureSet& s) {
    ClosureSet out = s;
    for (const ClosureKey k : s.keys()) {
        if (k.size() == 2 && k.first == k.second) {
            out.lower(ClosureKey::make(Vertex{k.first}, std::nullopt), floor_half(*s.get(k)));
        }
    }
    return out;
}

bool closure_implies(const ClosureSet& s, const UtvpiConstraint& c) {
    const auto n = normalize(c);
    if (n.kind != NormalizeOutcome::Kind::normal) {
        return n.kind == NormalizeOutcome::Kind::tautology;
    }
    const auto& k = n.constraint;
    const Weight d = k.d;
    auto at_most = [d](std::optional<Weight> w) { return w && *w <= d; };

    if (at_most(s.get(ClosureKey::of(k)))) {
        return true;
    }
    if (k.b == 0) {
        return false;
    }
    const auto b1 = s.single(Vertex::literal(k.a, k.x));
    const auto b2 = s.single(Vertex::literal(k.b, k.y));
    return b1 && b2 && *b1 + *b2 <= d;
}

} // namespace utvpi
