#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace utvpi {

using Weight = std::int64_t;

/// Largest accepted |d|. Doubling plus summation over up to 2^20 edges stays
/// inside 62 bits.
inline constexpr Weight kMaxAbsBound = Weight{1} << 40;

struct Var {
    std::uint32_t index = 0;

    friend constexpr auto operator<=>(Var, Var) = default;
};

/// Dense name <-> index registry. Indices are handed out in order of first sight.
class VarTable {
  public:
    Var intern(std::string_view name);
    [[nodiscard]] std::optional<Var> find(std::string_view name) const;
    [[nodiscard]] const std::string& name(Var v) const { return names_.at(v.index); }
    [[nodiscard]] std::size_t size() const { return names_.size(); }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

enum class Sign : std::uint8_t { plus = 0, minus = 1 };

/// x+ or x- in the constraint graph. Encoded as 2*var + sign so that negation
/// is a single bit flip.
struct Vertex {
    std::uint32_t id = 0;

    static constexpr Vertex of(Var v, Sign s) { return Vertex{2 * v.index + static_cast<std::uint32_t>(s)}; }
    /// The literal a*x as a vertex: +x -> x+, -x -> x-.
    static constexpr Vertex literal(int coef, Var v) { return of(v, coef > 0 ? Sign::plus : Sign::minus); }

    [[nodiscard]] constexpr Var var() const { return Var{id >> 1}; }
    [[nodiscard]] constexpr Sign sign() const { return static_cast<Sign>(id & 1U); }
    [[nodiscard]] constexpr int coef() const { return sign() == Sign::plus ? 1 : -1; }
    constexpr Vertex operator-() const { return Vertex{id ^ 1U}; }

    friend constexpr auto operator<=>(Vertex, Vertex) = default;
};

/// a*x + b*y <= d with a, b in {-1, 0, 1}. A zero coefficient leaves its
/// variable slot meaningless (kept as Var{0}).
struct UtvpiConstraint {
    int a = 0;
    Var x{};
    int b = 0;
    Var y{};
    Weight d = 0;

    [[nodiscard]] int literal_count() const { return (a != 0 ? 1 : 0) + (b != 0 ? 1 : 0); }
    /// Highest variable index mentioned plus one (0 for constant constraints).
    [[nodiscard]] std::size_t var_extent() const;

    friend bool operator==(const UtvpiConstraint&, const UtvpiConstraint&) = default;
};

struct DiffEdge {
    Vertex from;
    Vertex to;
    Weight weight = 0;

    friend bool operator==(const DiffEdge&, const DiffEdge&) = default;
};

struct NormalizeOutcome {
    enum class Kind : std::uint8_t { normal, tautology, contradiction };

    Kind kind = Kind::tautology;
    UtvpiConstraint constraint{};

    [[nodiscard]] bool is_normal() const { return kind == Kind::normal; }
};

/// Canonical form: live literal first, distinct variables ordered by index,
/// same-variable sums tightened to a single literal, constant forms decided.
NormalizeOutcome normalize(const UtvpiConstraint& c);

/// One or two edges, in the order of the difference-constraint table.
class EdgeList {
  public:
    EdgeList() = default;
    void push(DiffEdge e) { edges_[size_++] = e; }
    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] const DiffEdge& operator[](std::size_t i) const { return edges_[i]; }
    [[nodiscard]] const DiffEdge* begin() const { return edges_.data(); }
    [[nodiscard]] const DiffEdge* end() const { return edges_.data() + size_; }

  private:
    std::array<DiffEdge, 2> edges_{};
    std::size_t size_ = 0;
};

/// Edges encoding c. For l1 + l2 <= d the edges are (-l2 -> l1, d) and
/// (-l1 -> l2, d); for l <= d the single edge (-l -> l, 2d).
/// Throws std::invalid_argument on a zero-literal constraint.
EdgeList edges_of(const UtvpiConstraint& c);

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what);
    [[nodiscard]] std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Parses one line of the constraint grammar. Returns std::nullopt for blank
/// and comment-only lines. The constraint is returned as written.
std::optional<UtvpiConstraint> parse_constraint(std::string_view line, VarTable& vars,
                                                std::size_t line_no = 0);

/// All constraints of a file, in order.
std::vector<UtvpiConstraint> parse_constraints(std::istream& in, VarTable& vars);
std::vector<UtvpiConstraint> parse_constraint_file(const std::string& path, VarTable& vars);

std::string to_string(const UtvpiConstraint& c, const VarTable& vars);
std::string to_string(Vertex v, const VarTable& vars);

} // namespace utvpi
