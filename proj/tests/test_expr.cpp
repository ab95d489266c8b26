#include <doctest.h>

#include "algd/expr.hpp"
#include "algd/rng.hpp"

using namespace algd;

namespace {

double cdiff(const ScalarField& f, std::vector<double> p, int i, double h = 1e-5) {
    auto hi = p, lo = p;
    hi[static_cast<std::size_t>(i)] += h;
    lo[static_cast<std::size_t>(i)] -= h;
    return (f(hi) - f(lo)) / (2 * h);
}

/// Seeded random expression tree over the declared variables. ln and sqrt
/// arguments are kept strictly positive so the corpus is evaluable anywhere
/// in the sample box.
ExprPtr random_expr(Rng& rng, const VarSpec& vars, int depth) {
    auto mk = [] { return std::make_shared<Expr>(); };
    if (depth == 0 || rng.next_unit() < 0.25) {
        auto e = mk();
        if (rng.next_unit() < 0.5) {
            // nonnegative literal, as the parser produces (minus is a Neg node)
            e->kind = ExprKind::Number;
            e->number = std::round(rng.uniform(0.0, 4.0) * 4.0) / 4.0;
        } else {
            int total = vars.arity();
            int pick = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(total));
            if (pick < vars.base_dim) {
                e->kind = ExprKind::BaseVar;
                e->index = pick;
            } else {
                e->kind = ExprKind::FiberVar;
                e->index = pick - vars.base_dim;
            }
        }
        return e;
    }
    double r = rng.next_unit();
    auto e = mk();
    if (r < 0.55) {
        e->kind = r < 0.18 ? ExprKind::Add : (r < 0.36 ? ExprKind::Sub : ExprKind::Mul);
        e->lhs = random_expr(rng, vars, depth - 1);
        e->rhs = random_expr(rng, vars, depth - 1);
    } else if (r < 0.63) {
        e->kind = ExprKind::Div;
        e->lhs = random_expr(rng, vars, depth - 1);
        // strictly positive denominator
        auto den = mk();
        den->kind = ExprKind::Call;
        den->func = Func::Exp;
        den->lhs = random_expr(rng, vars, depth - 1);
        e->rhs = den;
    } else if (r < 0.71) {
        e->kind = ExprKind::Neg;
        e->lhs = random_expr(rng, vars, depth - 1);
    } else if (r < 0.79) {
        e->kind = ExprKind::Pow;
        e->lhs = random_expr(rng, vars, depth - 1);
        auto exp2 = mk();
        exp2->kind = ExprKind::Number;
        exp2->number = static_cast<double>(2 + rng.next_u64() % 2);
        e->rhs = exp2;
    } else {
        e->kind = ExprKind::Call;
        double fr = rng.next_unit();
        if (fr < 0.3)
            e->func = Func::Sin;
        else if (fr < 0.6)
            e->func = Func::Cos;
        else if (fr < 0.8)
            e->func = Func::Exp;
        else {
            // ln( (arg)^2 + 1 ) and sqrt( (arg)^2 + 1 ) stay in domain
            e->func = fr < 0.9 ? Func::Ln : Func::Sqrt;
            auto inner = random_expr(rng, vars, depth - 1);
            auto sq = mk();
            sq->kind = ExprKind::Mul;
            sq->lhs = inner;
            sq->rhs = inner;
            auto one = mk();
            one->kind = ExprKind::Number;
            one->number = 1.0;
            auto sum = mk();
            sum->kind = ExprKind::Add;
            sum->lhs = sq;
            sum->rhs = one;
            e->lhs = sum;
            return e;
        }
        e->lhs = random_expr(rng, vars, depth - 1);
    }
    return e;
}

} // namespace

TEST_CASE("parser basics") {
    VarSpec v2{2, 0};
    SUBCASE("x0*sin(x1) is a product with a call child") {
        ExprPtr e = parse("x0*sin(x1)", v2);
        CHECK(e->kind == ExprKind::Mul);
        CHECK(e->lhs->kind == ExprKind::BaseVar);
        CHECK(e->rhs->kind == ExprKind::Call);
    }
    SUBCASE("^ is right-associative: 2^3^2 = 512") {
        ScalarField f = compile_str("2^3^2", v2);
        CHECK(f(std::vector<double>{0.0, 0.0}) == doctest::Approx(512.0));
    }
    SUBCASE("precedence: ^ over unary minus over * over +") {
        ScalarField f = compile_str("-2^2", v2);
        CHECK(f(std::vector<double>{0, 0}) == doctest::Approx(-4.0));
        ScalarField g = compile_str("-x0*3 + 2", v2);
        CHECK(g(std::vector<double>{1, 0}) == doctest::Approx(-1.0));
    }
    SUBCASE("unknown variable is reported with its name and position") {
        VarSpec nv{2, 1};
        try {
            parse("v0 + x9", nv);
            FAIL("expected an error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("x9") != std::string::npos);
            CHECK(e.position == 5);
        }
    }
    SUBCASE("lexical error carries the offending character") {
        try {
            parse("x0 $ 3", v2);
            FAIL("expected an error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find('$') != std::string::npos);
            CHECK(e.position == 3);
        }
    }
    SUBCASE("parse error names the expectation") {
        CHECK_THROWS_AS(parse("sin x0", v2), ParseError);
        CHECK_THROWS_AS(parse("(x0 + 1", v2), ParseError);
        CHECK_THROWS_AS(parse("x0 +", v2), ParseError);
        CHECK_THROWS_AS(parse("", v2), ParseError);
    }
}

TEST_CASE("compile and evaluate") {
    VarSpec v2{2, 0};
    SUBCASE("x0^2 evaluates and differentiates") {
        ScalarField f = compile_str("x0^2", v2);
        CHECK(f(std::vector<double>{3.0, 0.0}) == doctest::Approx(9.0));
        CHECK(directional(f, std::vector<double>{3.0, 0.0}, std::vector<double>{1.0, 0.0}) ==
              doctest::Approx(6.0));
    }
    SUBCASE("integer powers work at negative bases") {
        ScalarField f = compile_str("x0^3", v2);
        CHECK(f(std::vector<double>{-2.0, 0.0}) == doctest::Approx(-8.0));
    }
    SUBCASE("exp derivative at 0 is 1") {
        ScalarField f = compile_str("exp(x0)", v2);
        CHECK(directional(f, std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 0.0}) ==
              doctest::Approx(1.0));
    }
    SUBCASE("division by zero is a positioned evaluation error") {
        ScalarField f = compile_str("x0/x1", v2);
        try {
            f(std::vector<double>{1.0, 0.0});
            FAIL("expected an error");
        } catch (const EvalError& e) {
            CHECK(std::string(e.what()).find("division by zero") != std::string::npos);
            CHECK(std::string(e.what()).find("(1, 0)") != std::string::npos);
        }
    }
    SUBCASE("ln of a non-positive value reports the point") {
        ScalarField f = compile_str("ln(x0)", v2);
        CHECK_THROWS_AS(f(std::vector<double>{-1.0, 0.0}), EvalError);
    }
    SUBCASE("fiber variables index past the base block") {
        VarSpec nv{1, 2};
        ScalarField f = compile_str("x0 + 2*v1", nv);
        CHECK(f(std::vector<double>{1.0, 10.0, 20.0}) == doctest::Approx(41.0));
    }
}

TEST_CASE("print/parse fixpoint and AD agreement on a 200-expression corpus") {
    Rng rng(0xC0FFEE);
    VarSpec vars{2, 1};
    int checked_derivatives = 0;
    for (int i = 0; i < 200; ++i) {
        ExprPtr e = random_expr(rng, vars, 4);
        std::string printed = print(e);
        ExprPtr reparsed = parse(printed, vars);
        REQUIRE_MESSAGE(expr_equal(e, reparsed), "fixpoint failed for: " << printed);
        CHECK(print(reparsed) == printed);

        ScalarField f = compile(e, vars);
        for (int t = 0; t < 20; ++t) {
            auto p = rng.box_point(3);
            double val;
            try {
                val = f(p);
            } catch (const EvalError&) {
                continue; // division corner; the corpus guards most domains
            }
            if (!std::isfinite(val) || std::abs(val) > 1e6) continue;
            for (int slot = 0; slot < 3; ++slot) {
                std::vector<double> dir(3, 0.0);
                dir[static_cast<std::size_t>(slot)] = 1.0;
                double ad, fd;
                try {
                    ad = directional(f, p, dir);
                    fd = cdiff(f, p, slot);
                } catch (const EvalError&) {
                    continue;
                }
                if (!std::isfinite(fd) || !std::isfinite(ad) || std::abs(ad) > 1e5) continue;
                CHECK_MESSAGE(std::abs(ad - fd) / std::max(1.0, std::abs(ad)) < 1e-6,
                              "expr: " << printed);
                ++checked_derivatives;
            }
        }
    }
    CHECK(checked_derivatives > 2000);
}
