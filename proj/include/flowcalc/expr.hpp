#pragma once

// Scalar expression language used by flow, potential, curve and surface files.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?            right associative
//   primary := number | name | name '(' expr ')' | '(' expr ')'
//
// Names: x1..xn (x, y, z when n <= 3), t, u1..u(n-1), pi, e and the
// functions sin cos exp log sqrt abs.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace flowcalc {

enum class VarKind { x, t, u };

struct Variable {
    VarKind kind = VarKind::x;
    int index = 1; // 1-based for x and u, 0 for t

    friend bool operator==(const Variable&, const Variable&) = default;
};

enum class BinaryOp { add, sub, mul, div, pow };
enum class Function { sin, cos, exp, log, sqrt, abs };
enum class Constant { pi, e };

struct ExprNode;

/// Immutable, shareable expression tree.
class Expr {
public:
    Expr(); // the literal 0

    static Expr number(double value);
    static Expr variable(Variable v);
    static Expr x(int index) { return variable({VarKind::x, index}); }
    static Expr t() { return variable({VarKind::t, 0}); }
    static Expr u(int index) { return variable({VarKind::u, index}); }
    static Expr constant(Constant c);
    /// Negating a literal yields the negative literal.
    static Expr negate(Expr operand);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
    static Expr call(Function fn, Expr argument);

    const ExprNode& node() const noexcept { return *node_; }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const ExprNode> node_;
};

inline Expr operator+(Expr a, Expr b) { return Expr::binary(BinaryOp::add, std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return Expr::binary(BinaryOp::sub, std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return Expr::binary(BinaryOp::mul, std::move(a), std::move(b)); }
inline Expr operator/(Expr a, Expr b) { return Expr::binary(BinaryOp::div, std::move(a), std::move(b)); }
inline Expr operator-(Expr a) { return Expr::negate(std::move(a)); }
inline Expr pow(Expr a, Expr b) { return Expr::binary(BinaryOp::pow, std::move(a), std::move(b)); }

struct NumberNode {
    double value;
};
struct VariableNode {
    Variable var;
};
struct ConstantNode {
    Constant constant;
};
struct NegateNode {
    Expr operand;
};
struct BinaryNode {
    BinaryOp op;
    Expr lhs;
    Expr rhs;
};
struct CallNode {
    Function fn;
    Expr argument;
};

struct ExprNode {
    std::variant<NumberNode, VariableNode, ConstantNode, NegateNode, BinaryNode, CallNode> value;
};

/// Names an expression may reference.
struct Scope {
    int dim = 0;           // x1..x<dim> are visible when allow_x
    bool allow_x = true;
    bool allow_t = false;
    int parameters = 0;    // u1..u<parameters>
};

/// Parses one expression. `line` and `column` locate text[0] in the enclosing
/// file so ParseError positions point into it.
Expr parse_expression(std::string_view text, const Scope& scope, int line = 1, int column = 1);

/// Minimal-parenthesis rendering; parse_expression(to_string(e)) == e.
std::string to_string(const Expr& e);

/// Values bound to the variables of an expression.
struct Bindings {
    std::span<const double> x{};
    double t = 0.0;
    std::span<const double> u{};
};

/// Structural-recursion evaluator. Throws DomainError outside the domain.
double evaluate(const Expr& e, const Bindings& bindings);

/// Largest variable indices referenced by an expression.
struct VariableUsage {
    int max_x = 0;
    bool uses_t = false;
    int max_u = 0;
};
VariableUsage variable_usage(const Expr& e);

/// Flattened postfix form of an expression for repeated evaluation in
/// quadrature loops. Produces exactly the same values and errors as
/// evaluate().
class Program {
public:
    Program() = default;
    explicit Program(const Expr& e);

    double operator()(const Bindings& bindings) const;

private:
    enum class Code : unsigned char { number, x, t, u, neg, add, sub, mul, div, pow, call };
    struct Instruction {
        Code code;
        int index = 0;       // variable index or Function
        double value = 0.0;  // literal
    };
    void emit(const Expr& e, int depth);

    std::vector<Instruction> code_;
    int max_depth_ = 0;
};

// Shared by both evaluators so they agree on domains bit for bit.
namespace detail {
double apply_function(Function fn, double argument);
double divide(double lhs, double rhs);
double power(double base, double exponent);
double constant_value(Constant c);
} // namespace detail

std::string_view function_name(Function fn);

} // namespace flowcalc
