#include "algd/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace algd {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    double number = 0.0;
    std::string text;
    int pos = 0;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        current_.pos = static_cast<int>(i_);
        current_.text.clear();
        if (i_ >= src_.size()) {
            current_.kind = Tok::End;
            return;
        }
        char c = src_[i_];
        switch (c) {
            case '+': current_.kind = Tok::Plus; ++i_; return;
            case '-': current_.kind = Tok::Minus; ++i_; return;
            case '*': current_.kind = Tok::Star; ++i_; return;
            case '/': current_.kind = Tok::Slash; ++i_; return;
            case '^': current_.kind = Tok::Caret; ++i_; return;
            case '(': current_.kind = Tok::LParen; ++i_; return;
            case ')': current_.kind = Tok::RParen; ++i_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) ||
                                        src_[i_] == '_'))
                ++i_;
            current_.kind = Tok::Ident;
            current_.text = std::string(src_.substr(start, i_ - start));
            return;
        }
        throw ParseError(std::string("lexical error: unexpected character '") + c +
                             "' at position " + std::to_string(i_),
                         static_cast<int>(i_));
    }

    void lex_number() {
        std::size_t start = i_;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
        if (i_ < src_.size() && src_[i_] == '.') {
            ++i_;
            while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
        }
        if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
            std::size_t mark = i_;
            ++i_;
            if (i_ < src_.size() && (src_[i_] == '+' || src_[i_] == '-')) ++i_;
            if (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
                while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
            } else {
                i_ = mark; // not an exponent after all
            }
        }
        std::string_view num = src_.substr(start, i_ - start);
        double value = 0.0;
        auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
        if (ec != std::errc() || p != num.data() + num.size())
            throw ParseError("lexical error: bad number '" + std::string(num) + "' at position " +
                                 std::to_string(start),
                             static_cast<int>(start));
        current_.kind = Tok::Number;
        current_.number = value;
    }

    std::string_view src_;
    std::size_t i_ = 0;
    Token current_;
};

ExprPtr number(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Number;
    e->number = v;
    return e;
}

ExprPtr unary(ExprKind k, ExprPtr c) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(c);
    return e;
}

ExprPtr binary(ExprKind k, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

class Parser {
  public:
    Parser(std::string_view src, const VarSpec& vars) : lex_(src), vars_(vars) {}

    ExprPtr parse_all() {
        ExprPtr e = parse_expr(0);
        const Token& t = lex_.peek();
        if (t.kind != Tok::End)
            throw ParseError("parse error: unexpected trailing input at position " +
                                 std::to_string(t.pos) + " (expected end of expression)",
                             t.pos);
        return e;
    }

  private:
    // binding powers: + - (10), * / (20), unary - (25), ^ (40, right-assoc)
    ExprPtr parse_expr(int min_bp) {
        ExprPtr lhs = parse_prefix();
        for (;;) {
            const Token& t = lex_.peek();
            ExprKind kind;
            int lbp, rbp;
            switch (t.kind) {
                case Tok::Plus: kind = ExprKind::Add; lbp = 10; rbp = 11; break;
                case Tok::Minus: kind = ExprKind::Sub; lbp = 10; rbp = 11; break;
                case Tok::Star: kind = ExprKind::Mul; lbp = 20; rbp = 21; break;
                case Tok::Slash: kind = ExprKind::Div; lbp = 20; rbp = 21; break;
                case Tok::Caret: kind = ExprKind::Pow; lbp = 40; rbp = 40; break;
                default: return lhs;
            }
            if (lbp < min_bp) return lhs;
            lex_.take();
            ExprPtr rhs = parse_expr(rbp);
            lhs = binary(kind, std::move(lhs), std::move(rhs));
        }
    }

    ExprPtr parse_prefix() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::Number: return number(t.number);
            case Tok::Minus: return unary(ExprKind::Neg, parse_expr(25));
            case Tok::LParen: {
                ExprPtr e = parse_expr(0);
                expect(Tok::RParen, ")");
                return e;
            }
            case Tok::Ident: return parse_ident(t);
            case Tok::End:
                throw ParseError("parse error: unexpected end of input (expected an operand)",
                                 t.pos);
            default:
                throw ParseError("parse error: unexpected token at position " +
                                     std::to_string(t.pos) + " (expected an operand)",
                                 t.pos);
        }
    }

    ExprPtr parse_ident(const Token& t) {
        static const struct {
            const char* name;
            Func f;
        } funcs[] = {{"sin", Func::Sin},
                     {"cos", Func::Cos},
                     {"exp", Func::Exp},
                     {"ln", Func::Ln},
                     {"sqrt", Func::Sqrt}};
        for (const auto& fn : funcs) {
            if (t.text == fn.name) {
                expect(Tok::LParen, "(");
                ExprPtr arg = parse_expr(0);
                expect(Tok::RParen, ")");
                auto e = std::make_shared<Expr>();
                e->kind = ExprKind::Call;
                e->func = fn.f;
                e->lhs = std::move(arg);
                return e;
            }
        }
        // variable: x<idx> or v<idx>
        if (t.text.size() >= 2 && (t.text[0] == 'x' || t.text[0] == 'v')) {
            bool digits = t.text.size() <= 7;
            for (std::size_t i = 1; i < t.text.size(); ++i)
                digits = digits && std::isdigit(static_cast<unsigned char>(t.text[i]));
            if (digits) {
                int idx = std::stoi(t.text.substr(1));
                if (t.text[0] == 'x') {
                    if (idx >= vars_.base_dim)
                        throw ParseError("unknown variable '" + t.text + "' at position " +
                                             std::to_string(t.pos) + " (base dimension is " +
                                             std::to_string(vars_.base_dim) + ")",
                                         t.pos);
                    auto e = std::make_shared<Expr>();
                    e->kind = ExprKind::BaseVar;
                    e->index = idx;
                    return e;
                }
                if (idx >= vars_.fiber_dim)
                    throw ParseError("unknown variable '" + t.text + "' at position " +
                                         std::to_string(t.pos) + " (fiber dimension is " +
                                         std::to_string(vars_.fiber_dim) + ")",
                                     t.pos);
                auto e = std::make_shared<Expr>();
                e->kind = ExprKind::FiberVar;
                e->index = idx;
                return e;
            }
        }
        throw ParseError("unknown variable '" + t.text + "' at position " + std::to_string(t.pos),
                         t.pos);
    }

    void expect(Tok kind, const char* what) {
        const Token& t = lex_.peek();
        if (t.kind != kind)
            throw ParseError("parse error: expected '" + std::string(what) + "' at position " +
                                 std::to_string(t.pos),
                             t.pos);
        lex_.take();
    }

    Lexer lex_;
    VarSpec vars_;
};

int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::Add:
        case ExprKind::Sub: return 10;
        case ExprKind::Mul:
        case ExprKind::Div: return 20;
        case ExprKind::Neg: return 25;
        case ExprKind::Pow: return 40;
        default: return 100; // atoms
    }
}

const char* func_name(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Exp: return "exp";
        case Func::Ln: return "ln";
        case Func::Sqrt: return "sqrt";
    }
    return "?";
}

std::string print_number(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

void print_rec(const Expr& e, std::string& out, int parent_prec, bool right_side) {
    int prec = precedence(e.kind);
    bool parens = false;
    if (prec < parent_prec)
        parens = true;
    else if (prec == parent_prec && right_side && (parent_prec == 10 || parent_prec == 20))
        parens = true; // a - (b - c), a / (b / c)
    else if (prec == parent_prec && !right_side && parent_prec == 40)
        parens = true; // (a ^ b) ^ c
    if (parens) out += '(';
    switch (e.kind) {
        case ExprKind::Number: out += print_number(e.number); break;
        case ExprKind::BaseVar: out += 'x' + std::to_string(e.index); break;
        case ExprKind::FiberVar: out += 'v' + std::to_string(e.index); break;
        case ExprKind::Neg:
            out += '-';
            print_rec(*e.lhs, out, 25, true);
            break;
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div:
        case ExprKind::Pow: {
            print_rec(*e.lhs, out, prec, false);
            switch (e.kind) {
                case ExprKind::Add: out += " + "; break;
                case ExprKind::Sub: out += " - "; break;
                case ExprKind::Mul: out += '*'; break;
                case ExprKind::Div: out += '/'; break;
                case ExprKind::Pow: out += '^'; break;
                default: break;
            }
            print_rec(*e.rhs, out, prec, true);
            break;
        }
        case ExprKind::Call:
            out += func_name(e.func);
            out += '(';
            print_rec(*e.lhs, out, 0, false);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

/// Literal (possibly negated) integer exponent, if the expression is one.
bool integer_literal(const Expr& e, long long* out) {
    if (e.kind == ExprKind::Neg) {
        long long inner;
        if (integer_literal(*e.lhs, &inner)) {
            *out = -inner;
            return true;
        }
        return false;
    }
    if (e.kind != ExprKind::Number) return false;
    double r = std::round(e.number);
    if (r != e.number || std::abs(r) > 64) return false;
    *out = static_cast<long long>(r);
    return true;
}

template <class T>
std::string point_string(std::span<const T> xs) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << primal_of(xs[i]);
    os << ")";
    return os.str();
}

template <class T>
T eval_expr(const Expr& e, std::span<const T> xs, const VarSpec& vars) {
    switch (e.kind) {
        case ExprKind::Number: return T(e.number);
        case ExprKind::BaseVar: return xs[static_cast<std::size_t>(e.index)];
        case ExprKind::FiberVar:
            return xs[static_cast<std::size_t>(vars.base_dim + e.index)];
        case ExprKind::Neg: return -eval_expr(*e.lhs, xs, vars);
        case ExprKind::Add: return eval_expr(*e.lhs, xs, vars) + eval_expr(*e.rhs, xs, vars);
        case ExprKind::Sub: return eval_expr(*e.lhs, xs, vars) - eval_expr(*e.rhs, xs, vars);
        case ExprKind::Mul: return eval_expr(*e.lhs, xs, vars) * eval_expr(*e.rhs, xs, vars);
        case ExprKind::Div: {
            T num = eval_expr(*e.lhs, xs, vars);
            T den = eval_expr(*e.rhs, xs, vars);
            if (primal_of(den) == 0.0)
                throw EvalError("division by zero at point " + point_string(xs));
            return num / den;
        }
        case ExprKind::Pow: {
            long long ie;
            if (integer_literal(*e.rhs, &ie)) {
                T base = eval_expr(*e.lhs, xs, vars);
                if (ie < 0 && primal_of(base) == 0.0)
                    throw EvalError("zero raised to a negative power at point " +
                                    point_string(xs));
                return ipow(base, ie);
            }
            T base = eval_expr(*e.lhs, xs, vars);
            if (primal_of(base) <= 0.0)
                throw EvalError("power with non-positive base at point " + point_string(xs));
            return pow(base, eval_expr(*e.rhs, xs, vars));
        }
        case ExprKind::Call: {
            T arg = eval_expr(*e.lhs, xs, vars);
            switch (e.func) {
                case Func::Sin: return sin(arg);
                case Func::Cos: return cos(arg);
                case Func::Exp: return exp(arg);
                case Func::Ln:
                    if (primal_of(arg) <= 0.0)
                        throw EvalError("ln of non-positive value at point " + point_string(xs));
                    return log(arg);
                case Func::Sqrt:
                    if (primal_of(arg) < 0.0)
                        throw EvalError("sqrt of negative value at point " + point_string(xs));
                    return sqrt(arg);
            }
            throw EvalError("unknown function");
        }
    }
    throw EvalError("malformed expression tree");
}

} // namespace

ExprPtr parse(std::string_view src, const VarSpec& vars) {
    if (src.empty()) throw ParseError("parse error: empty expression", 0);
    Parser p(src, vars);
    return p.parse_all();
}

std::string print(const Expr& e) {
    std::string out;
    print_rec(e, out, 0, false);
    return out;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::Number: return a.number == b.number;
        case ExprKind::BaseVar:
        case ExprKind::FiberVar: return a.index == b.index;
        case ExprKind::Neg: return expr_equal(*a.lhs, *b.lhs);
        case ExprKind::Call: return a.func == b.func && expr_equal(*a.lhs, *b.lhs);
        default: return expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    }
}

ScalarField compile(const ExprPtr& e, const VarSpec& vars) {
    if (!e) throw ConfigError("compile: null expression");
    return make_field(vars.arity(), [e, vars](auto xs) { return eval_expr(*e, xs, vars); });
}

ScalarField compile_str(std::string_view src, const VarSpec& vars) {
    return compile(parse(src, vars), vars);
}

} // namespace algd
