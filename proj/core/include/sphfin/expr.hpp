#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sphfin/jet.hpp"

namespace sphfin {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Func { Sqrt, Exp, LnAbs, ArctanhRe, Abs, Pow };

std::string_view func_name(Func f);
int func_arity(Func f);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Literal {
    double value;
};
struct Variable {
    char name;  // 'r' or 's'
};
struct Negate {
    NodePtr operand;
};
struct Binary {
    BinaryOp op;
    NodePtr lhs, rhs;
};
struct Call {
    Func fn;
    std::vector<NodePtr> args;
};

struct Node {
    std::variant<Literal, Variable, Negate, Binary, Call> v;
};

/// Immutable expression for phi(r, s) or for a coefficient function of r.
class PhiExpr {
public:
    PhiExpr();
    explicit PhiExpr(NodePtr root);

    static PhiExpr parse(std::string_view text);
    /// Parses and rejects any reference to s.
    static PhiExpr parse_coefficient(std::string_view text);

    static PhiExpr number(double v);
    static PhiExpr var_r();
    static PhiExpr var_s();

    const NodePtr& root() const { return root_; }
    std::string to_string() const;
    bool uses_s() const;

    Jet eval_jet(double r0, double s0) const;
    double eval(double r, double s) const;

    friend bool operator==(const PhiExpr& a, const PhiExpr& b);

private:
    NodePtr root_;
};

PhiExpr operator+(const PhiExpr& a, const PhiExpr& b);
PhiExpr operator-(const PhiExpr& a, const PhiExpr& b);
PhiExpr operator*(const PhiExpr& a, const PhiExpr& b);
PhiExpr operator/(const PhiExpr& a, const PhiExpr& b);
PhiExpr operator-(const PhiExpr& a);
PhiExpr power(const PhiExpr& a, const PhiExpr& b);
PhiExpr apply(Func f, std::vector<PhiExpr> args);

bool structurally_equal(const NodePtr& a, const NodePtr& b);

/// Parse helper for parameter maps: "k=<expr>".
std::pair<std::string, PhiExpr> parse_assignment(std::string_view text);

}  // namespace sphfin
