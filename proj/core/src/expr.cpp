#include "sphfin/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "sphfin/errors.hpp"

namespace sphfin {

namespace {

struct FuncInfo {
    Func fn;
    std::string_view name;
    int arity;
};

constexpr FuncInfo kFuncs[] = {
    {Func::Sqrt, "sqrt", 1},     {Func::Exp, "exp", 1}, {Func::LnAbs, "ln_abs", 1},
    {Func::ArctanhRe, "arctanh_re", 1}, {Func::Abs, "abs", 1}, {Func::Pow, "pow", 2},
};

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse_all() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail({"operator", "end of input"});
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    [[noreturn]] void fail(std::vector<std::string> expected) {
        skip_ws();
        std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
        throw ParseError(pos_, std::move(expected), found);
    }

    void expect(char c) {
        if (peek() != c) fail({std::string("'") + c + "'"});
        ++pos_;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            NodePtr rhs = term();
            lhs = make({Binary{c == '+' ? BinaryOp::Add : BinaryOp::Sub, lhs, rhs}});
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            NodePtr rhs = unary();
            lhs = make({Binary{c == '*' ? BinaryOp::Mul : BinaryOp::Div, lhs, rhs}});
        }
    }

    NodePtr unary() {
        if (peek() == '-') {
            ++pos_;
            return make({Negate{unary()}});
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (peek() == '^') {
            ++pos_;
            return make({Binary{BinaryOp::Pow, base, unary()}});
        }
        return base;
    }

    NodePtr atom() {
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string_view ident = text_.substr(start, pos_ - start);
            if (ident == "r" || ident == "s") return make({Variable{ident[0]}});
            for (const auto& f : kFuncs) {
                if (f.name != ident) continue;
                expect('(');
                std::vector<NodePtr> args{expr()};
                while (peek() == ',') {
                    ++pos_;
                    args.push_back(expr());
                }
                if (static_cast<int>(args.size()) != f.arity) {
                    pos_ = start;
                    throw ParseError(start,
                                     {std::string(f.name) + " with " + std::to_string(f.arity) +
                                      " argument(s)"},
                                     std::to_string(args.size()) + " argument(s)");
                }
                expect(')');
                return make({Call{f.fn, std::move(args)}});
            }
            pos_ = start;
            fail({"number", "r", "s", "function name", "'('"});
        }
        fail({"number", "r", "s", "function name", "'('"});
    }

    NodePtr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, ++n;
            return n;
        };
        std::size_t n = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) {
            pos_ = start;
            fail({"digit"});
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) fail({"exponent digits"});
        }
        const std::string lit(text_.substr(start, pos_ - start));
        const double v = std::strtod(lit.c_str(), nullptr);
        if (!std::isfinite(v)) throw ParseError(start, {"finite number"}, lit);
        return make({Literal{v}});
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

int precedence(const Node& n) {
    if (const auto* b = std::get_if<Binary>(&n.v)) {
        switch (b->op) {
            case BinaryOp::Add:
            case BinaryOp::Sub: return 1;
            case BinaryOp::Mul:
            case BinaryOp::Div: return 2;
            case BinaryOp::Pow: return 4;
        }
    }
    if (std::holds_alternative<Negate>(n.v)) return 3;
    if (const auto* l = std::get_if<Literal>(&n.v); l && (l->value < 0 || std::signbit(l->value)))
        return 0;
    return 5;
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void print(const Node& n, std::string& out);

void print_child(const Node& n, bool parens, std::string& out) {
    if (parens) out += '(';
    print(n, out);
    if (parens) out += ')';
}

void print(const Node& n, std::string& out) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Literal>) {
                out += format_number(x.value);
            } else if constexpr (std::is_same_v<T, Variable>) {
                out += x.name;
            } else if constexpr (std::is_same_v<T, Negate>) {
                out += '-';
                print_child(*x.operand, precedence(*x.operand) < 3, out);
            } else if constexpr (std::is_same_v<T, Binary>) {
                const int lp = precedence(*x.lhs), rp = precedence(*x.rhs);
                switch (x.op) {
                    case BinaryOp::Add:
                    case BinaryOp::Sub:
                        print_child(*x.lhs, lp < 1, out);
                        out += x.op == BinaryOp::Add ? " + " : " - ";
                        print_child(*x.rhs, rp <= 1, out);
                        break;
                    case BinaryOp::Mul:
                    case BinaryOp::Div:
                        print_child(*x.lhs, lp < 2, out);
                        out += x.op == BinaryOp::Mul ? "*" : "/";
                        print_child(*x.rhs, rp <= 2, out);
                        break;
                    case BinaryOp::Pow:
                        print_child(*x.lhs, lp < 5, out);
                        out += '^';
                        print_child(*x.rhs, rp < 3, out);
                        break;
                }
            } else {
                out += func_name(x.fn);
                out += '(';
                for (std::size_t i = 0; i < x.args.size(); ++i) {
                    if (i) out += ", ";
                    print(*x.args[i], out);
                }
                out += ')';
            }
        },
        n.v);
}

bool uses_var(const Node& n, char name) {
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Literal>) return false;
            else if constexpr (std::is_same_v<T, Variable>) return x.name == name;
            else if constexpr (std::is_same_v<T, Negate>) return uses_var(*x.operand, name);
            else if constexpr (std::is_same_v<T, Binary>)
                return uses_var(*x.lhs, name) || uses_var(*x.rhs, name);
            else {
                for (const auto& a : x.args)
                    if (uses_var(*a, name)) return true;
                return false;
            }
        },
        n.v);
}

template <class F>
auto with_path(const char* segment, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const DomainError& e) {
        throw e.with_path(e.path().empty() ? std::string(segment)
                                           : std::string(segment) + "." + e.path());
    }
}

Jet eval_jet_node(const Node& n, double r0, double s0) {
    return std::visit(
        [&](const auto& x) -> Jet {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Literal>) {
                return Jet::constant(x.value, r0, s0);
            } else if constexpr (std::is_same_v<T, Variable>) {
                return x.name == 'r' ? Jet::seed_r(r0, s0) : Jet::seed_s(r0, s0);
            } else if constexpr (std::is_same_v<T, Negate>) {
                return -with_path("operand", [&] { return eval_jet_node(*x.operand, r0, s0); });
            } else if constexpr (std::is_same_v<T, Binary>) {
                const Jet a = with_path("lhs", [&] { return eval_jet_node(*x.lhs, r0, s0); });
                const Jet b = with_path("rhs", [&] { return eval_jet_node(*x.rhs, r0, s0); });
                switch (x.op) {
                    case BinaryOp::Add: return a + b;
                    case BinaryOp::Sub: return a - b;
                    case BinaryOp::Mul: return a * b;
                    case BinaryOp::Div: return a / b;
                    case BinaryOp::Pow: return pow(a, b);
                }
                return a;
            } else {
                std::vector<Jet> args;
                for (std::size_t i = 0; i < x.args.size(); ++i) {
                    const std::string seg = "arg" + std::to_string(i);
                    args.push_back(with_path(seg.c_str(), [&] { return eval_jet_node(*x.args[i], r0, s0); }));
                }
                switch (x.fn) {
                    case Func::Sqrt: return sqrt(args[0]);
                    case Func::Exp: return exp(args[0]);
                    case Func::LnAbs: return ln_abs(args[0]);
                    case Func::ArctanhRe: return arctanh_re(args[0]);
                    case Func::Abs: return abs(args[0]);
                    case Func::Pow: return pow(args[0], args[1]);
                }
                return args[0];
            }
        },
        n.v);
}

double pow_value(double a, double b) {
    if (a < 0.0 && std::nearbyint(b) != b) throw DomainError("pow", a);
    if (a == 0.0 && b < 0.0) throw DomainError("pow", a);
    return std::pow(a, b);
}

double eval_node(const Node& n, double r, double s) {
    return std::visit(
        [&](const auto& x) -> double {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Literal>) {
                return x.value;
            } else if constexpr (std::is_same_v<T, Variable>) {
                return x.name == 'r' ? r : s;
            } else if constexpr (std::is_same_v<T, Negate>) {
                return -with_path("operand", [&] { return eval_node(*x.operand, r, s); });
            } else if constexpr (std::is_same_v<T, Binary>) {
                const double a = with_path("lhs", [&] { return eval_node(*x.lhs, r, s); });
                const double b = with_path("rhs", [&] { return eval_node(*x.rhs, r, s); });
                switch (x.op) {
                    case BinaryOp::Add: return a + b;
                    case BinaryOp::Sub: return a - b;
                    case BinaryOp::Mul: return a * b;
                    case BinaryOp::Div:
                        if (b == 0.0) throw DivisionByZeroJet(b);
                        return a / b;
                    case BinaryOp::Pow: return pow_value(a, b);
                }
                return a;
            } else {
                std::vector<double> args;
                for (std::size_t i = 0; i < x.args.size(); ++i) {
                    const std::string seg = "arg" + std::to_string(i);
                    args.push_back(with_path(seg.c_str(), [&] { return eval_node(*x.args[i], r, s); }));
                }
                const double a = args[0];
                switch (x.fn) {
                    case Func::Sqrt:
                        if (a < 0.0) throw DomainError("sqrt", a);
                        return std::sqrt(a);
                    case Func::Exp: return std::exp(a);
                    case Func::LnAbs:
                        if (a == 0.0) throw DomainError("ln_abs", a);
                        return std::log(std::abs(a));
                    case Func::ArctanhRe:
                        if (std::abs(a) == 1.0) throw DomainError("arctanh_re", a);
                        return 0.5 * std::log(std::abs((1.0 + a) / (1.0 - a)));
                    case Func::Abs: return std::abs(a);
                    case Func::Pow: return pow_value(a, args[1]);
                }
                return a;
            }
        },
        n.v);
}

}  // namespace

std::string_view func_name(Func f) {
    for (const auto& info : kFuncs)
        if (info.fn == f) return info.name;
    return "?";
}

int func_arity(Func f) {
    for (const auto& info : kFuncs)
        if (info.fn == f) return info.arity;
    return 0;
}

PhiExpr::PhiExpr() : root_(make({Literal{1.0}})) {}
PhiExpr::PhiExpr(NodePtr root) : root_(std::move(root)) {}

PhiExpr PhiExpr::parse(std::string_view text) { return PhiExpr(Parser(text).parse_all()); }

PhiExpr PhiExpr::parse_coefficient(std::string_view text) {
    PhiExpr e = parse(text);
    if (e.uses_s())
        throw ValidationError("coefficient expression '" + std::string(text) + "' must not depend on s");
    return e;
}

PhiExpr PhiExpr::number(double v) { return PhiExpr(make({Literal{v}})); }
PhiExpr PhiExpr::var_r() { return PhiExpr(make({Variable{'r'}})); }
PhiExpr PhiExpr::var_s() { return PhiExpr(make({Variable{'s'}})); }

std::string PhiExpr::to_string() const {
    std::string out;
    print(*root_, out);
    return out;
}

bool PhiExpr::uses_s() const { return uses_var(*root_, 's'); }

Jet PhiExpr::eval_jet(double r0, double s0) const {
    return with_path("root", [&] { return eval_jet_node(*root_, r0, s0); });
}

double PhiExpr::eval(double r, double s) const {
    return with_path("root", [&] { return eval_node(*root_, r, s); });
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (a->v.index() != b->v.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b->v);
            if constexpr (std::is_same_v<T, Literal>) return x.value == y.value;
            else if constexpr (std::is_same_v<T, Variable>) return x.name == y.name;
            else if constexpr (std::is_same_v<T, Negate>) return structurally_equal(x.operand, y.operand);
            else if constexpr (std::is_same_v<T, Binary>)
                return x.op == y.op && structurally_equal(x.lhs, y.lhs) && structurally_equal(x.rhs, y.rhs);
            else {
                if (x.fn != y.fn || x.args.size() != y.args.size()) return false;
                for (std::size_t i = 0; i < x.args.size(); ++i)
                    if (!structurally_equal(x.args[i], y.args[i])) return false;
                return true;
            }
        },
        a->v);
}

bool operator==(const PhiExpr& a, const PhiExpr& b) { return structurally_equal(a.root_, b.root_); }

PhiExpr operator+(const PhiExpr& a, const PhiExpr& b) {
    return PhiExpr(make({Binary{BinaryOp::Add, a.root(), b.root()}}));
}
PhiExpr operator-(const PhiExpr& a, const PhiExpr& b) {
    return PhiExpr(make({Binary{BinaryOp::Sub, a.root(), b.root()}}));
}
PhiExpr operator*(const PhiExpr& a, const PhiExpr& b) {
    return PhiExpr(make({Binary{BinaryOp::Mul, a.root(), b.root()}}));
}
PhiExpr operator/(const PhiExpr& a, const PhiExpr& b) {
    return PhiExpr(make({Binary{BinaryOp::Div, a.root(), b.root()}}));
}
PhiExpr operator-(const PhiExpr& a) { return PhiExpr(make({Negate{a.root()}})); }
PhiExpr power(const PhiExpr& a, const PhiExpr& b) {
    return PhiExpr(make({Binary{BinaryOp::Pow, a.root(), b.root()}}));
}
PhiExpr apply(Func f, std::vector<PhiExpr> args) {
    if (static_cast<int>(args.size()) != func_arity(f))
        throw std::invalid_argument("wrong number of arguments for " + std::string(func_name(f)));
    std::vector<NodePtr> nodes;
    for (auto& a : args) nodes.push_back(a.root());
    return PhiExpr(make({Call{f, std::move(nodes)}}));
}

std::pair<std::string, PhiExpr> parse_assignment(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ValidationError("parameter '" + std::string(text) + "' must have the form name=<expr>");
    std::string key(text.substr(0, eq));
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    return {key, PhiExpr::parse_coefficient(text.substr(eq + 1))};
}

}  // namespace sphfin
