#include "utvpi/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <utility>

namespace utvpi {

namespace {

Weight floor_half(Weight d) { return d >= 0 ? d / 2 : -((-d + 1) / 2); }

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

class LineScanner {
  public:
    LineScanner(std::string_view text, std::size_t line_no) : text_(text), line_no_(line_no) {}

    void skip_ws() {
        while (pos_ < text_.size() && is_space(text_[pos_])) {
            ++pos_;
        }
    }
    [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
    [[nodiscard]] char peek() const { return at_end() ? '\0' : text_[pos_]; }
    bool consume(std::string_view tok) {
        if (text_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    std::string_view ident() {
        if (!is_ident_start(peek())) {
            fail("expected identifier after sign");
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    Weight integer() {
        const std::size_t start = pos_;
        if (peek() == '+' || peek() == '-') {
            ++pos_;
        }
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
        std::string_view digits = text_.substr(start, pos_ - start);
        if (!digits.empty() && digits.front() == '+') {
            digits.remove_prefix(1);
        }
        Weight value = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (digits.empty() || ec == std::errc::invalid_argument || ptr != digits.data() + digits.size()) {
            fail("missing or malformed bound");
        }
        if (ec == std::errc::result_out_of_range || value > kMaxAbsBound || value < -kMaxAbsBound) {
            fail("bound magnitude exceeds 2^40");
        }
        return value;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line_no_, msg + " at column " + std::to_string(pos_ + 1));
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_no_;
};

} // namespace

Var VarTable::intern(std::string_view name) {
    auto key = std::string(name);
    if (auto it = index_.find(key); it != index_.end()) {
        return Var{it->second};
    }
    const auto idx = static_cast<std::uint32_t>(names_.size());
    names_.push_back(key);
    index_.emplace(std::move(key), idx);
    return Var{idx};
}

std::optional<Var> VarTable::find(std::string_view name) const {
    if (auto it = index_.find(std::string(name)); it != index_.end()) {
        return Var{it->second};
    }
    return std::nullopt;
}

std::size_t UtvpiConstraint::var_extent() const {
    std::size_t extent = 0;
    if (a != 0) {
        extent = std::max<std::size_t>(extent, x.index + 1);
    }
    if (b != 0) {
        extent = std::max<std::size_t>(extent, y.index + 1);
    }
    return extent;
}

NormalizeOutcome normalize(const UtvpiConstraint& c) {
    using Kind = NormalizeOutcome::Kind;
    UtvpiConstraint n = c;
    n.a = std::clamp(n.a, -1, 1);
    n.b = std::clamp(n.b, -1, 1);
    if (n.a == 0) {
        std::swap(n.a, n.b);
        std::swap(n.x, n.y);
    }
    if (n.b == 0) {
        n.y = Var{};
    }
    if (n.a == 0) {
        n.x = Var{};
        return {n.d >= 0 ? Kind::tautology : Kind::contradiction, n};
    }
    if (n.b != 0 && n.x == n.y) {
        if (n.a == -n.b) {
            return {n.d >= 0 ? Kind::tautology : Kind::contradiction, UtvpiConstraint{0, Var{}, 0, Var{}, n.d}};
        }
        return {Kind::normal, UtvpiConstraint{n.a, n.x, 0, Var{}, floor_half(n.d)}};
    }
    if (n.b != 0 && n.y < n.x) {
        std::swap(n.a, n.b);
        std::swap(n.x, n.y);
    }
    return {Kind::normal, n};
}

EdgeList edges_of(const UtvpiConstraint& c) {
    if (c.a == 0) {
        throw std::invalid_argument("edges_of: constraint has no literal");
    }
    EdgeList out;
    const Vertex l1 = Vertex::literal(c.a, c.x);
    if (c.b == 0) {
        out.push({-l1, l1, 2 * c.d});
        return out;
    }
    const Vertex l2 = Vertex::literal(c.b, c.y);
    out.push({-l2, l1, c.d});
    out.push({-l1, l2, c.d});
    return out;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

std::optional<UtvpiConstraint> parse_constraint(std::string_view line, VarTable& vars, std::size_t line_no) {
    LineScanner scan(line, line_no);
    scan.skip_ws();
    if (scan.at_end() || scan.peek() == '#') {
        return std::nullopt;
    }

    UtvpiConstraint c;
    int terms = 0;
    while (true) {
        scan.skip_ws();
        if (scan.peek() != '+' && scan.peek() != '-') {
            break;
        }
        if (terms == 2) {
            scan.fail("more than two terms");
        }
        const int coef = scan.peek() == '+' ? 1 : -1;
        scan.consume(scan.peek() == '+' ? "+" : "-");
        const Var v = vars.intern(scan.ident());
        if (terms == 0) {
            c.a = coef;
            c.x = v;
        } else {
            c.b = coef;
            c.y = v;
        }
        ++terms;
    }
    if (!scan.consume("<=")) {
        scan.fail("expected '<='");
    }
    scan.skip_ws();
    c.d = scan.integer();
    scan.skip_ws();
    if (!scan.at_end() && scan.peek() != '#') {
        scan.fail("trailing characters");
    }
    return c;
}

std::vector<UtvpiConstraint> parse_constraints(std::istream& in, VarTable& vars) {
    std::vector<UtvpiConstraint> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto c = parse_constraint(line, vars, line_no)) {
            out.push_back(*c);
        }
    }
    return out;
}

std::vector<UtvpiConstraint> parse_constraint_file(const std::string& path, VarTable& vars) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return parse_constraints(in, vars);
}

std::string to_string(Vertex v, const VarTable& vars) {
    const Var x = v.var();
    std::string name = x.index < vars.size() ? vars.name(x) : "v" + std::to_string(x.index);
    return name + (v.sign() == Sign::plus ? "+" : "-");
}

std::string to_string(const UtvpiConstraint& c, const VarTable& vars) {
    auto term = [&](int coef, Var v) {
        std::string name = v.index < vars.size() ? vars.name(v) : "v" + std::to_string(v.index);
        return std::string(coef > 0 ? "+" : "-") + name + " ";
    };
    std::string out;
    if (c.a != 0) {
        out += term(c.a, c.x);
    }
    if (c.b != 0) {
        out += term(c.b, c.y);
    }
    return out + "<= " + std::to_string(c.d);
}

} // namespace utvpi
