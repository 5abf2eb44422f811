#include <algorithm>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "utvpi/driver.hpp"

namespace utvpi {

namespace {

/// Unbiased draw from [0, k). Avoids std::uniform_int_distribution so output
/// does not depend on the standard library implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t k) {
    const std::uint64_t threshold = (0 - k) % k;
    while (true) {
        const std::uint64_t r = rng();
        if (r >= threshold) {
            return r % k;
        }
    }
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[uniform_below(rng, i)]);
    }
}

/// A (variable pair, sign pattern) slot. i < j.
struct Slot {
    std::uint32_t i;
    std::uint32_t j;
    std::uint32_t pattern; ///< bit 0: sign of x_i, bit 1: sign of x_j
};

std::uint64_t slot_id(const Slot& s, std::size_t n) { return (std::uint64_t{s.i} * n + s.j) * 4 + s.pattern; }

std::uint64_t slot_capacity(std::size_t n) { return 4 * (std::uint64_t{n} * (n - 1) / 2); }

} // namespace

std::string GenConfig::infeasibility() const {
    if (n < 2) {
        return "need at least two variables";
    }
    if (lo > hi) {
        return "empty bound range";
    }
    if (m > slot_capacity(n)) {
        return "m exceeds the 4*n*(n-1)/2 available constraint slots";
    }
    if (m < (n + 1) / 2) {
        return "m too small to cover every variable";
    }
    return {};
}

std::vector<UtvpiConstraint> generate(const GenConfig& cfg) {
    if (auto why = cfg.infeasibility(); !why.empty()) {
        throw std::invalid_argument("gen: " + why);
    }
    const std::size_t n = cfg.n;
    std::mt19937_64 rng(cfg.seed);
    std::vector<Slot> chosen;
    std::unordered_set<std::uint64_t> used;
    auto take = [&](std::uint32_t a, std::uint32_t b, std::uint32_t pattern) {
        Slot s{std::min(a, b), std::max(a, b), pattern};
        if (used.insert(slot_id(s, n)).second) {
            chosen.push_back(s);
        }
    };

    // Cover every variable with disjoint pairs of a random permutation.
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        perm[i] = i;
    }
    shuffle(perm, rng);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        take(perm[k], perm[k + 1], static_cast<std::uint32_t>(uniform_below(rng, 4)));
    }
    if (n % 2 == 1) {
        take(perm[n - 1], perm[n - 2], static_cast<std::uint32_t>(uniform_below(rng, 4)));
    }

    const std::uint64_t capacity = slot_capacity(n);
    if (2 * cfg.m > capacity) {
        std::vector<Slot> rest;
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = i + 1; j < n; ++j) {
                for (std::uint32_t p = 0; p < 4; ++p) {
                    if (!used.contains(slot_id({i, j, p}, n))) {
                        rest.push_back({i, j, p});
                    }
                }
            }
        }
        shuffle(rest, rng);
        for (std::size_t k = 0; chosen.size() < cfg.m; ++k) {
            take(rest[k].i, rest[k].j, rest[k].pattern);
        }
    } else {
        while (chosen.size() < cfg.m) {
            const auto a = static_cast<std::uint32_t>(uniform_below(rng, n));
            auto b = static_cast<std::uint32_t>(uniform_below(rng, n - 1));
            if (b >= a) {
                ++b;
            }
            take(a, b, static_cast<std::uint32_t>(uniform_below(rng, 4)));
        }
    }
    shuffle(chosen, rng);

    std::vector<UtvpiConstraint> out;
    out.reserve(chosen.size());
    const auto span = static_cast<std::uint64_t>(cfg.hi - cfg.lo) + 1;
    for (const Slot& s : chosen) {
        const Weight d = cfg.lo + static_cast<Weight>(uniform_below(rng, span));
        out.push_back({(s.pattern & 1U) != 0 ? -1 : 1, Var{s.i}, (s.pattern & 2U) != 0 ? -1 : 1, Var{s.j}, d});
    }
    return out;
}

std::string audit_instance(const GenConfig& cfg, std::span<const UtvpiConstraint> cs) {
    if (cs.size() != cfg.m) {
        return "expected " + std::to_string(cfg.m) + " constraints, got " + std::to_string(cs.size());
    }
    std::vector<bool> covered(cfg.n, false);
    std::unordered_set<std::uint64_t> seen;
    for (const auto& c : cs) {
        if (c.a == 0 || c.b == 0 || c.x == c.y || c.x.index >= cfg.n || c.y.index >= cfg.n) {
            return "constraint is not over two distinct generated variables";
        }
        if (c.d < cfg.lo || c.d > cfg.hi) {
            return "bound outside [lo, hi]";
        }
        const bool ordered = c.x < c.y;
        const Slot s{ordered ? c.x.index : c.y.index, ordered ? c.y.index : c.x.index,
                     ((ordered ? c.a : c.b) < 0 ? 1U : 0U) | ((ordered ? c.b : c.a) < 0 ? 2U : 0U)};
        if (!seen.insert(slot_id(s, cfg.n)).second) {
            return "sign pattern repeated for a variable pair";
        }
        covered[c.x.index] = covered[c.y.index] = true;
    }
    if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
        return "some variable appears in no constraint";
    }
    return {};
}

VarTable generated_vars(std::size_t n) {
    VarTable vars;
    for (std::size_t i = 0; i < n; ++i) {
        vars.intern("x" + std::to_string(i));
    }
    return vars;
}

void write_instance(std::ostream& os, const GenConfig& cfg, std::span<const UtvpiConstraint> cs) {
    const VarTable vars = generated_vars(cfg.n);
    os << "# n=" << cfg.n << " m=" << cfg.m << " seed=" << cfg.seed << " d in [" << cfg.lo << "," << cfg.hi
       << "]\n";
    for (const auto& c : cs) {
        os << to_string(c, vars) << '\n';
    }
}

} // namespace utvpi
