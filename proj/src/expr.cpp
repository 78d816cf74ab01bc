#include "flowcalc/expr.hpp"

#include "flowcalc/error.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

namespace flowcalc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::array<std::pair<std::string_view, Function>, 6> kFunctions{{
    {"sin", Function::sin},
    {"cos", Function::cos},
    {"exp", Function::exp},
    {"log", Function::log},
    {"sqrt", Function::sqrt},
    {"abs", Function::abs},
}};

std::optional<Function> lookup_function(std::string_view name) {
    for (const auto& [n, f] : kFunctions) {
        if (n == name) return f;
    }
    return std::nullopt;
}

// --- lexer ------------------------------------------------------------------

enum class Tok { number, name, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::string_view text;
    double value = 0.0;
    int offset = 0;
};

class Lexer {
public:
    Lexer(std::string_view text, int line, int column) : text_(text), line_(line), column_(column) {}

    Token next() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const int start = static_cast<int>(pos_);
        if (pos_ >= text_.size()) return {Tok::end, {}, 0.0, start};
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(start);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            return {Tok::name, text_.substr(start, pos_ - start), 0.0, start};
        }
        ++pos_;
        switch (c) {
        case '+': return {Tok::plus, text_.substr(start, 1), 0.0, start};
        case '-': return {Tok::minus, text_.substr(start, 1), 0.0, start};
        case '*': return {Tok::star, text_.substr(start, 1), 0.0, start};
        case '/': return {Tok::slash, text_.substr(start, 1), 0.0, start};
        case '^': return {Tok::caret, text_.substr(start, 1), 0.0, start};
        case '(': return {Tok::lparen, text_.substr(start, 1), 0.0, start};
        case ')': return {Tok::rparen, text_.substr(start, 1), 0.0, start};
        default: break;
        }
        fail(std::string("unexpected character '") + c + "'", start);
    }

    [[noreturn]] void fail(const std::string& what, int offset) const {
        throw ParseError(what, line_, column_ + offset);
    }

private:
    Token number(int start) {
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) fail("malformed number", start);
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            const std::size_t save = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) pos_ = save; // "2e" is the number 2 followed by a name
        }
        const std::string_view lexeme = text_.substr(start, pos_ - start);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
        if (ec != std::errc() || ptr != lexeme.data() + lexeme.size()) fail("malformed number", start);
        return {Tok::number, lexeme, value, start};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
    int column_;
};

// --- Pratt parser -----------------------------------------------------------

constexpr int kPrefixMinusPower = 30;

int infix_power(Tok t) {
    switch (t) {
    case Tok::plus:
    case Tok::minus: return 10;
    case Tok::star:
    case Tok::slash: return 20;
    case Tok::caret: return 40;
    default: return -1;
    }
}

class Parser {
public:
    Parser(std::string_view text, const Scope& scope, int line, int column)
        : lexer_(text, line, column), scope_(scope) {
        advance();
    }

    Expr parse() {
        if (current_.kind == Tok::end) lexer_.fail("empty expression", current_.offset);
        Expr e = expression(0);
        if (current_.kind != Tok::end) {
            lexer_.fail("unexpected '" + std::string(current_.text) + "'", current_.offset);
        }
        return e;
    }

private:
    void advance() { current_ = lexer_.next(); }

    Expr expression(int min_power) {
        Expr lhs = prefix();
        while (true) {
            const Tok op = current_.kind;
            const int power = infix_power(op);
            if (power < 0 || power <= min_power) {
                if (power < 0 && op != Tok::end && op != Tok::rparen) {
                    lexer_.fail("expected operator, found '" + std::string(current_.text) + "'", current_.offset);
                }
                break;
            }
            advance();
            if (op == Tok::caret) {
                lhs = Expr::binary(BinaryOp::pow, std::move(lhs), expression(power - 1));
                continue;
            }
            Expr rhs = expression(power);
            const BinaryOp bop = op == Tok::plus    ? BinaryOp::add
                                 : op == Tok::minus ? BinaryOp::sub
                                 : op == Tok::star  ? BinaryOp::mul
                                                    : BinaryOp::div;
            lhs = Expr::binary(bop, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Expr prefix() {
        const Token tok = current_;
        switch (tok.kind) {
        case Tok::number: advance(); return Expr::number(tok.value);
        case Tok::minus: advance(); return Expr::negate(expression(kPrefixMinusPower));
        case Tok::lparen: {
            advance();
            Expr inner = expression(0);
            expect_rparen(tok.offset);
            return inner;
        }
        case Tok::name: advance(); return name(tok);
        case Tok::end: lexer_.fail("unexpected end of expression", tok.offset);
        default: lexer_.fail("unexpected '" + std::string(tok.text) + "'", tok.offset);
        }
    }

    void expect_rparen(int open_offset) {
        if (current_.kind != Tok::rparen) lexer_.fail("unbalanced '('", open_offset);
        advance();
    }

    Expr name(const Token& tok) {
        const std::string_view n = tok.text;
        if (auto fn = lookup_function(n)) {
            if (current_.kind != Tok::lparen) lexer_.fail("function '" + std::string(n) + "' needs '('", tok.offset);
            const int open = current_.offset;
            advance();
            Expr arg = expression(0);
            expect_rparen(open);
            return Expr::call(*fn, std::move(arg));
        }
        if (n == "pi") return Expr::constant(Constant::pi);
        if (n == "e") return Expr::constant(Constant::e);
        if (n == "t") {
            if (!scope_.allow_t) undeclared(tok);
            return Expr::t();
        }
        if (n == "x" || n == "y" || n == "z") {
            if (!scope_.allow_x) undeclared(tok);
            if (scope_.dim > 3) lexer_.fail("aliases x, y, z are only valid when dim <= 3", tok.offset);
            const int index = n == "x" ? 1 : n == "y" ? 2 : 3;
            if (index > scope_.dim) undeclared(tok);
            return Expr::x(index);
        }
        if ((n.front() == 'x' || n.front() == 'u') && n.size() > 1) {
            int index = 0;
            const auto [ptr, ec] = std::from_chars(n.data() + 1, n.data() + n.size(), index);
            if (ec == std::errc() && ptr == n.data() + n.size() && n[1] != '0') {
                if (n.front() == 'x') {
                    if (!scope_.allow_x || index < 1 || index > scope_.dim) undeclared(tok);
                    return Expr::x(index);
                }
                if (index < 1 || index > scope_.parameters) undeclared(tok);
                return Expr::u(index);
            }
        }
        undeclared(tok);
    }

    [[noreturn]] void undeclared(const Token& tok) {
        lexer_.fail("undeclared variable '" + std::string(tok.text) + "'", tok.offset);
    }

    Lexer lexer_;
    Scope scope_;
    Token current_{Tok::end, {}, 0.0, 0};
};

// --- printing ---------------------------------------------------------------

int precedence(const Expr& e) {
    return std::visit(overloaded{
                          [](const BinaryNode& b) {
                              switch (b.op) {
                              case BinaryOp::add:
                              case BinaryOp::sub: return 1;
                              case BinaryOp::mul:
                              case BinaryOp::div: return 2;
                              case BinaryOp::pow: return 4;
                              }
                              return 0;
                          },
                          [](const NegateNode&) { return 3; },
                          [](const NumberNode& n) { return n.value < 0 ? 3 : 5; },
                          [](const auto&) { return 5; },
                      },
                      e.node().value);
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string variable_name(const Variable& v) {
    switch (v.kind) {
    case VarKind::x: return "x" + std::to_string(v.index);
    case VarKind::t: return "t";
    case VarKind::u: return "u" + std::to_string(v.index);
    }
    return "?";
}

std::string wrap(const Expr& e, bool parens) {
    std::string s = to_string(e);
    return parens ? "(" + s + ")" : s;
}

} // namespace

// --- Expr -------------------------------------------------------------------

Expr::Expr() : Expr(number(0.0)) {}

Expr Expr::number(double value) { return Expr(std::make_shared<const ExprNode>(ExprNode{NumberNode{value}})); }

Expr Expr::variable(Variable v) { return Expr(std::make_shared<const ExprNode>(ExprNode{VariableNode{v}})); }

Expr Expr::constant(Constant c) { return Expr(std::make_shared<const ExprNode>(ExprNode{ConstantNode{c}})); }

Expr Expr::negate(Expr operand) {
    if (const auto* n = std::get_if<NumberNode>(&operand.node().value)) return number(-n->value);
    return Expr(std::make_shared<const ExprNode>(ExprNode{NegateNode{std::move(operand)}}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    return Expr(std::make_shared<const ExprNode>(ExprNode{BinaryNode{op, std::move(lhs), std::move(rhs)}}));
}

Expr Expr::call(Function fn, Expr argument) {
    return Expr(std::make_shared<const ExprNode>(ExprNode{CallNode{fn, std::move(argument)}}));
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    const auto& va = a.node().value;
    const auto& vb = b.node().value;
    if (va.index() != vb.index()) return false;
    return std::visit(overloaded{
                          [&](const NumberNode& n) { return n.value == std::get<NumberNode>(vb).value; },
                          [&](const VariableNode& n) { return n.var == std::get<VariableNode>(vb).var; },
                          [&](const ConstantNode& n) { return n.constant == std::get<ConstantNode>(vb).constant; },
                          [&](const NegateNode& n) { return n.operand == std::get<NegateNode>(vb).operand; },
                          [&](const BinaryNode& n) {
                              const auto& o = std::get<BinaryNode>(vb);
                              return n.op == o.op && n.lhs == o.lhs && n.rhs == o.rhs;
                          },
                          [&](const CallNode& n) {
                              const auto& o = std::get<CallNode>(vb);
                              return n.fn == o.fn && n.argument == o.argument;
                          },
                      },
                      va);
}

Expr parse_expression(std::string_view text, const Scope& scope, int line, int column) {
    return Parser(text, scope, line, column).parse();
}

std::string_view function_name(Function fn) {
    for (const auto& [n, f] : kFunctions) {
        if (f == fn) return n;
    }
    return "?";
}

std::string to_string(const Expr& e) {
    return std::visit(
        overloaded{
            [](const NumberNode& n) { return format_number(n.value); },
            [](const VariableNode& n) { return variable_name(n.var); },
            [](const ConstantNode& n) { return std::string(n.constant == Constant::pi ? "pi" : "e"); },
            [](const NegateNode& n) { return "-" + wrap(n.operand, precedence(n.operand) <= 3); },
            [&](const BinaryNode& b) {
                const int p = precedence(e);
                if (b.op == BinaryOp::pow) {
                    return wrap(b.lhs, precedence(b.lhs) <= 4) + "^" + wrap(b.rhs, precedence(b.rhs) < 4);
                }
                const char* sym = b.op == BinaryOp::add   ? "+"
                                  : b.op == BinaryOp::sub ? "-"
                                  : b.op == BinaryOp::mul ? "*"
                                                          : "/";
                return wrap(b.lhs, precedence(b.lhs) < p) + sym + wrap(b.rhs, precedence(b.rhs) <= p);
            },
            [](const CallNode& c) { return std::string(function_name(c.fn)) + "(" + to_string(c.argument) + ")"; },
        },
        e.node().value);
}

// --- evaluation -------------------------------------------------------------

namespace detail {

double apply_function(Function fn, double a) {
    switch (fn) {
    case Function::sin: return std::sin(a);
    case Function::cos: return std::cos(a);
    case Function::exp: return std::exp(a);
    case Function::log:
        if (!(a > 0.0)) throw DomainError("log of nonpositive value " + format_number(a));
        return std::log(a);
    case Function::sqrt:
        if (!(a >= 0.0)) throw DomainError("sqrt of negative value " + format_number(a));
        return std::sqrt(a);
    case Function::abs: return std::abs(a);
    }
    return 0.0;
}

double divide(double lhs, double rhs) {
    if (rhs == 0.0) throw DomainError("division by zero");
    return lhs / rhs;
}

double power(double base, double exponent) {
    if (std::isfinite(exponent) && exponent == std::trunc(exponent) && std::abs(exponent) <= 1 << 30) {
        long long k = static_cast<long long>(exponent);
        if (k < 0 && base == 0.0) throw DomainError("zero raised to a negative power");
        const bool invert = k < 0;
        if (invert) k = -k;
        double result = 1.0;
        double factor = base;
        while (k > 0) {
            if (k & 1) result *= factor;
            factor *= factor;
            k >>= 1;
        }
        return invert ? 1.0 / result : result;
    }
    if (base < 0.0) throw DomainError("negative base " + format_number(base) + " with non-integer exponent");
    if (base == 0.0 && exponent < 0.0) throw DomainError("zero raised to a negative power");
    return std::pow(base, exponent);
}

double constant_value(Constant c) { return c == Constant::pi ? std::numbers::pi : std::numbers::e; }

} // namespace detail

namespace {

double variable_value(const Variable& v, const Bindings& b) {
    switch (v.kind) {
    case VarKind::x:
        if (v.index < 1 || static_cast<std::size_t>(v.index) > b.x.size()) {
            throw DimensionError("x" + std::to_string(v.index) + " not bound");
        }
        return b.x[v.index - 1];
    case VarKind::t: return b.t;
    case VarKind::u:
        if (v.index < 1 || static_cast<std::size_t>(v.index) > b.u.size()) {
            throw DimensionError("u" + std::to_string(v.index) + " not bound");
        }
        return b.u[v.index - 1];
    }
    return 0.0;
}

} // namespace

double evaluate(const Expr& e, const Bindings& b) {
    return std::visit(overloaded{
                          [](const NumberNode& n) { return n.value; },
                          [&](const VariableNode& n) { return variable_value(n.var, b); },
                          [](const ConstantNode& n) { return detail::constant_value(n.constant); },
                          [&](const NegateNode& n) { return -evaluate(n.operand, b); },
                          [&](const BinaryNode& n) {
                              const double l = evaluate(n.lhs, b);
                              const double r = evaluate(n.rhs, b);
                              switch (n.op) {
                              case BinaryOp::add: return l + r;
                              case BinaryOp::sub: return l - r;
                              case BinaryOp::mul: return l * r;
                              case BinaryOp::div: return detail::divide(l, r);
                              case BinaryOp::pow: return detail::power(l, r);
                              }
                              return 0.0;
                          },
                          [&](const CallNode& n) { return detail::apply_function(n.fn, evaluate(n.argument, b)); },
                      },
                      e.node().value);
}

VariableUsage variable_usage(const Expr& e) {
    VariableUsage usage;
    auto merge = [&](const VariableUsage& o) {
        usage.max_x = std::max(usage.max_x, o.max_x);
        usage.max_u = std::max(usage.max_u, o.max_u);
        usage.uses_t = usage.uses_t || o.uses_t;
    };
    std::visit(overloaded{
                   [&](const VariableNode& n) {
                       if (n.var.kind == VarKind::x) usage.max_x = n.var.index;
                       if (n.var.kind == VarKind::u) usage.max_u = n.var.index;
                       if (n.var.kind == VarKind::t) usage.uses_t = true;
                   },
                   [&](const NegateNode& n) { merge(variable_usage(n.operand)); },
                   [&](const BinaryNode& n) {
                       merge(variable_usage(n.lhs));
                       merge(variable_usage(n.rhs));
                   },
                   [&](const CallNode& n) { merge(variable_usage(n.argument)); },
                   [](const auto&) {},
               },
               e.node().value);
    return usage;
}

// --- Program ----------------------------------------------------------------

Program::Program(const Expr& e) { emit(e, 1); }

void Program::emit(const Expr& e, int depth) {
    max_depth_ = std::max(max_depth_, depth);
    std::visit(overloaded{
                   [&](const NumberNode& n) { code_.push_back({Code::number, 0, n.value}); },
                   [&](const ConstantNode& n) {
                       code_.push_back({Code::number, 0, detail::constant_value(n.constant)});
                   },
                   [&](const VariableNode& n) {
                       const Code c = n.var.kind == VarKind::x ? Code::x : n.var.kind == VarKind::t ? Code::t : Code::u;
                       code_.push_back({c, n.var.index, 0.0});
                   },
                   [&](const NegateNode& n) {
                       emit(n.operand, depth);
                       code_.push_back({Code::neg});
                   },
                   [&](const BinaryNode& n) {
                       emit(n.lhs, depth);
                       emit(n.rhs, depth + 1);
                       static constexpr Code codes[] = {Code::add, Code::sub, Code::mul, Code::div, Code::pow};
                       code_.push_back({codes[static_cast<int>(n.op)]});
                   },
                   [&](const CallNode& n) {
                       emit(n.argument, depth);
                       code_.push_back({Code::call, static_cast<int>(n.fn)});
                   },
               },
               e.node().value);
}

double Program::operator()(const Bindings& b) const {
    constexpr int kInline = 32;
    std::array<double, kInline> small{};
    std::vector<double> large;
    double* stack = small.data();
    if (max_depth_ > kInline) {
        large.resize(static_cast<std::size_t>(max_depth_));
        stack = large.data();
    }
    int top = -1;
    for (const Instruction& ins : code_) {
        switch (ins.code) {
        case Code::number: stack[++top] = ins.value; break;
        case Code::x: stack[++top] = variable_value({VarKind::x, ins.index}, b); break;
        case Code::t: stack[++top] = b.t; break;
        case Code::u: stack[++top] = variable_value({VarKind::u, ins.index}, b); break;
        case Code::neg: stack[top] = -stack[top]; break;
        case Code::add: --top; stack[top] = stack[top] + stack[top + 1]; break;
        case Code::sub: --top; stack[top] = stack[top] - stack[top + 1]; break;
        case Code::mul: --top; stack[top] = stack[top] * stack[top + 1]; break;
        case Code::div: --top; stack[top] = detail::divide(stack[top], stack[top + 1]); break;
        case Code::pow: --top; stack[top] = detail::power(stack[top], stack[top + 1]); break;
        case Code::call: stack[top] = detail::apply_function(static_cast<Function>(ins.index), stack[top]); break;
        }
    }
    return top == 0 ? stack[0] : 0.0;
}

} // namespace flowcalc
