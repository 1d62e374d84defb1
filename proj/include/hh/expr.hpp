#pragma once

// Bivariate expression trees: parsing, evaluation, symbolic differentiation.
//
// Grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := atom ("^" number)?
//   atom   := number | "x" | "y" | "(" expr ")" | func "(" expr ")" | "-" atom
//   func   := "abs" | "exp" | "ln" | "sin" | "cos" | "sqrt"
//
// Exponents are restricted to numeric literals so that differentiation is
// total on the pow case. abs is evaluable but not differentiable.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace hh {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

enum class UnaryOp { Neg, Abs, Exp, Ln, Sin, Cos, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct Constant {
    double value;
};
struct Variable {
    char name;  // 'x' or 'y'
};
struct Unary {
    UnaryOp op;
    ExprPtr child;
};
struct Binary {
    BinaryOp op;
    ExprPtr left;
    ExprPtr right;
};

struct ExprNode {
    std::variant<Constant, Variable, Unary, Binary> node;
};

inline ExprPtr make_constant(double v) {
    return std::make_shared<ExprNode>(ExprNode{Constant{v}});
}
inline ExprPtr make_variable(char name) {
    if (name != 'x' && name != 'y') throw std::invalid_argument("variable must be x or y");
    return std::make_shared<ExprNode>(ExprNode{Variable{name}});
}
inline ExprPtr make_unary(UnaryOp op, ExprPtr child) {
    return std::make_shared<ExprNode>(ExprNode{Unary{op, std::move(child)}});
}
inline ExprPtr make_binary(BinaryOp op, ExprPtr left, ExprPtr right) {
    return std::make_shared<ExprNode>(ExprNode{Binary{op, std::move(left), std::move(right)}});
}

inline bool is_constant(const ExprPtr& e, double v) {
    if (const auto* c = std::get_if<Constant>(&e->node)) return c->value == v;
    return false;
}

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg),
          position(pos) {}
};

struct EvalDomainError : std::runtime_error {
    std::string node_repr;
    EvalDomainError(std::string repr, const std::string& msg)
        : std::runtime_error("domain error in '" + repr + "': " + msg),
          node_repr(std::move(repr)) {}
};

struct NonDifferentiableError : std::runtime_error {
    explicit NonDifferentiableError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Pretty printing

namespace detail {

inline int precedence_of(const ExprNode& e) {
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Constant>) return 4;
            if constexpr (std::is_same_v<T, Variable>) return 4;
            if constexpr (std::is_same_v<T, Unary>)
                return n.op == UnaryOp::Neg ? 2 : 4;  // functions print their own parens
            if constexpr (std::is_same_v<T, Binary>) {
                switch (n.op) {
                    case BinaryOp::Add:
                    case BinaryOp::Sub: return 0;
                    case BinaryOp::Mul:
                    case BinaryOp::Div: return 1;
                    case BinaryOp::Pow: return 3;
                }
            }
            return 4;
        },
        e.node);
}

inline std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

}  // namespace detail

inline std::string pretty_print(const ExprPtr& e);

namespace detail {

inline std::string print_child(const ExprPtr& child, int parent_prec, bool strict) {
    int cp = precedence_of(*child);
    std::string s = pretty_print(child);
    if (cp < parent_prec || (strict && cp == parent_prec)) return "(" + s + ")";
    return s;
}

}  // namespace detail

inline std::string pretty_print(const ExprPtr& e) {
    return std::visit(
        [&](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Constant>) {
                if (n.value < 0) return "(" + detail::format_number(n.value) + ")";
                return detail::format_number(n.value);
            } else if constexpr (std::is_same_v<T, Variable>) {
                return std::string(1, n.name);
            } else if constexpr (std::is_same_v<T, Unary>) {
                switch (n.op) {
                    case UnaryOp::Neg: return "-" + detail::print_child(n.child, 2, false);
                    case UnaryOp::Abs: return "abs(" + pretty_print(n.child) + ")";
                    case UnaryOp::Exp: return "exp(" + pretty_print(n.child) + ")";
                    case UnaryOp::Ln: return "ln(" + pretty_print(n.child) + ")";
                    case UnaryOp::Sin: return "sin(" + pretty_print(n.child) + ")";
                    case UnaryOp::Cos: return "cos(" + pretty_print(n.child) + ")";
                    case UnaryOp::Sqrt: return "sqrt(" + pretty_print(n.child) + ")";
                }
                return {};
            } else {
                const Binary& b = n;
                switch (b.op) {
                    case BinaryOp::Add:
                        return detail::print_child(b.left, 0, false) + "+" +
                               detail::print_child(b.right, 0, true);
                    case BinaryOp::Sub:
                        return detail::print_child(b.left, 0, false) + "-" +
                               detail::print_child(b.right, 0, true);
                    case BinaryOp::Mul:
                        return detail::print_child(b.left, 1, false) + "*" +
                               detail::print_child(b.right, 1, true);
                    case BinaryOp::Div:
                        return detail::print_child(b.left, 1, false) + "/" +
                               detail::print_child(b.right, 1, true);
                    case BinaryOp::Pow:
                        return detail::print_child(b.left, 3, true) + "^" +
                               pretty_print(b.right);
                }
                return {};
            }
        },
        e->node);
}

inline bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->node.index() != b->node.index()) return false;
    if (const auto* ca = std::get_if<Constant>(&a->node))
        return ca->value == std::get<Constant>(b->node).value;
    if (const auto* va = std::get_if<Variable>(&a->node))
        return va->name == std::get<Variable>(b->node).name;
    if (const auto* ua = std::get_if<Unary>(&a->node)) {
        const auto& ub = std::get<Unary>(b->node);
        return ua->op == ub.op && structurally_equal(ua->child, ub.child);
    }
    const auto& ba = std::get<Binary>(a->node);
    const auto& bb = std::get<Binary>(b->node);
    return ba.op == bb.op && structurally_equal(ba.left, bb.left) &&
           structurally_equal(ba.right, bb.right);
}

// ---------------------------------------------------------------------------
// Evaluation

inline double eval(const ExprPtr& e, double x, double y) {
    return std::visit(
        [&](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return n.value;
            } else if constexpr (std::is_same_v<T, Variable>) {
                return n.name == 'x' ? x : y;
            } else if constexpr (std::is_same_v<T, Unary>) {
                double v = eval(n.child, x, y);
                switch (n.op) {
                    case UnaryOp::Neg: return -v;
                    case UnaryOp::Abs: return std::fabs(v);
                    case UnaryOp::Exp: return std::exp(v);
                    case UnaryOp::Ln:
                        if (v <= 0.0) throw EvalDomainError(pretty_print(e), "ln of non-positive value");
                        return std::log(v);
                    case UnaryOp::Sin: return std::sin(v);
                    case UnaryOp::Cos: return std::cos(v);
                    case UnaryOp::Sqrt:
                        if (v < 0.0) throw EvalDomainError(pretty_print(e), "sqrt of negative value");
                        return std::sqrt(v);
                }
                return 0.0;
            } else {
                double l = eval(n.left, x, y);
                double r = eval(n.right, x, y);
                double v = 0.0;
                switch (n.op) {
                    case BinaryOp::Add: v = l + r; break;
                    case BinaryOp::Sub: v = l - r; break;
                    case BinaryOp::Mul: v = l * r; break;
                    case BinaryOp::Div:
                        if (r == 0.0) throw EvalDomainError(pretty_print(e), "division by zero");
                        v = l / r;
                        break;
                    case BinaryOp::Pow: v = std::pow(l, r); break;
                }
                if (std::isnan(v) || std::isinf(v))
                    throw EvalDomainError(pretty_print(e), "evaluation is not finite");
                return v;
            }
        },
        e->node);
}

// ---------------------------------------------------------------------------
// Parsing (recursive descent)

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "empty expression");
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ < text_.size())
            throw ParseError(pos_, std::string("unexpected character '") + text_[pos_] + "'");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }
    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool consume(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr parse_expr() {
        ExprPtr left = parse_term();
        for (;;) {
            if (consume('+'))
                left = make_binary(BinaryOp::Add, left, parse_term());
            else if (consume('-'))
                left = make_binary(BinaryOp::Sub, left, parse_term());
            else
                return left;
        }
    }

    ExprPtr parse_term() {
        ExprPtr left = parse_factor();
        for (;;) {
            if (consume('*'))
                left = make_binary(BinaryOp::Mul, left, parse_factor());
            else if (consume('/'))
                left = make_binary(BinaryOp::Div, left, parse_factor());
            else
                return left;
        }
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_atom();
        if (consume('^')) {
            skip_ws();
            std::size_t expo_pos = pos_;
            if (pos_ >= text_.size() || !(std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                          text_[pos_] == '.'))
                throw ParseError(expo_pos, "exponent must be a numeric constant");
            return make_binary(BinaryOp::Pow, base, make_constant(parse_number()));
        }
        return base;
    }

    double parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // 'e' was not an exponent marker
            }
        }
        double v = 0.0;
        auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc{} || end != text_.data() + pos_)
            throw ParseError(start, "malformed number");
        return v;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "expected operand");
        char c = text_[pos_];
        if (c == '-') {
            // unary minus binds looser than '^': -x^2 is -(x^2)
            ++pos_;
            return make_unary(UnaryOp::Neg, parse_factor());
        }
        if (c == '(') {
            ++pos_;
            ExprPtr inner = parse_expr();
            if (!consume(')')) throw ParseError(pos_, "expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return make_constant(parse_number());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            if (name == "x" || name == "y") return make_variable(name[0]);
            UnaryOp op;
            if (name == "abs")
                op = UnaryOp::Abs;
            else if (name == "exp")
                op = UnaryOp::Exp;
            else if (name == "ln")
                op = UnaryOp::Ln;
            else if (name == "sin")
                op = UnaryOp::Sin;
            else if (name == "cos")
                op = UnaryOp::Cos;
            else if (name == "sqrt")
                op = UnaryOp::Sqrt;
            else
                throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
            if (!consume('(')) throw ParseError(pos_, "expected '(' after function name");
            ExprPtr arg = parse_expr();
            if (!consume(')')) throw ParseError(pos_, "expected ')'");
            return make_unary(op, arg);
        }
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }
};

}  // namespace detail

inline ExprPtr parse(std::string_view text) { return detail::Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Symbolic differentiation
//
// The smart constructors below fold the 0/1 constants produced by the chain
// rule; derivative trees stay small and "d/dx y" comes out as the literal 0.

namespace detail {

inline ExprPtr dadd(ExprPtr l, ExprPtr r) {
    if (is_constant(l, 0.0)) return r;
    if (is_constant(r, 0.0)) return l;
    return make_binary(BinaryOp::Add, std::move(l), std::move(r));
}
inline ExprPtr dsub(ExprPtr l, ExprPtr r) {
    if (is_constant(r, 0.0)) return l;
    if (is_constant(l, 0.0)) return make_unary(UnaryOp::Neg, std::move(r));
    return make_binary(BinaryOp::Sub, std::move(l), std::move(r));
}
inline ExprPtr dmul(ExprPtr l, ExprPtr r) {
    if (is_constant(l, 0.0) || is_constant(r, 0.0)) return make_constant(0.0);
    if (is_constant(l, 1.0)) return r;
    if (is_constant(r, 1.0)) return l;
    return make_binary(BinaryOp::Mul, std::move(l), std::move(r));
}
inline ExprPtr ddiv(ExprPtr l, ExprPtr r) {
    if (is_constant(l, 0.0)) return make_constant(0.0);
    if (is_constant(r, 1.0)) return l;
    return make_binary(BinaryOp::Div, std::move(l), std::move(r));
}

}  // namespace detail

inline ExprPtr differentiate(const ExprPtr& e, char var) {
    using namespace detail;
    if (var != 'x' && var != 'y') throw std::invalid_argument("var must be x or y");
    return std::visit(
        [&](const auto& n) -> ExprPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return make_constant(0.0);
            } else if constexpr (std::is_same_v<T, Variable>) {
                return make_constant(n.name == var ? 1.0 : 0.0);
            } else if constexpr (std::is_same_v<T, Unary>) {
                ExprPtr du = differentiate(n.child, var);
                switch (n.op) {
                    case UnaryOp::Neg:
                        if (is_constant(du, 0.0)) return du;
                        return make_unary(UnaryOp::Neg, du);
                    case UnaryOp::Abs:
                        throw NonDifferentiableError("cannot differentiate abs(" +
                                                     pretty_print(n.child) + ")");
                    case UnaryOp::Exp: return dmul(make_unary(UnaryOp::Exp, n.child), du);
                    case UnaryOp::Ln: return ddiv(du, n.child);
                    case UnaryOp::Sin: return dmul(make_unary(UnaryOp::Cos, n.child), du);
                    case UnaryOp::Cos:
                        if (is_constant(du, 0.0)) return make_constant(0.0);
                        return make_unary(UnaryOp::Neg, dmul(make_unary(UnaryOp::Sin, n.child), du));
                    case UnaryOp::Sqrt:
                        return ddiv(du, dmul(make_constant(2.0), make_unary(UnaryOp::Sqrt, n.child)));
                }
                return make_constant(0.0);
            } else {
                ExprPtr dl = differentiate(n.left, var);
                ExprPtr dr = differentiate(n.right, var);
                switch (n.op) {
                    case BinaryOp::Add: return dadd(dl, dr);
                    case BinaryOp::Sub: return dsub(dl, dr);
                    case BinaryOp::Mul: return dadd(dmul(dl, n.right), dmul(n.left, dr));
                    case BinaryOp::Div:
                        return ddiv(dsub(dmul(dl, n.right), dmul(n.left, dr)),
                                    make_binary(BinaryOp::Pow, n.right, make_constant(2.0)));
                    case BinaryOp::Pow: {
                        const auto* c = std::get_if<Constant>(&n.right->node);
                        if (!c)
                            throw NonDifferentiableError("pow exponent is not a constant in " +
                                                         pretty_print(e));
                        if (c->value == 0.0) return make_constant(0.0);
                        if (c->value == 1.0) return dl;
                        ExprPtr inner =
                            make_binary(BinaryOp::Pow, n.left, make_constant(c->value - 1.0));
                        return dmul(dmul(make_constant(c->value), inner), dl);
                    }
                }
                return make_constant(0.0);
            }
        },
        e->node);
}

}  // namespace hh
