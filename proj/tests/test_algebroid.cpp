#include <doctest.h>

#include "algd/model.hpp"

using namespace algd;

namespace {

std::vector<ChartPoint> sample_points(int n, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ChartPoint> pts;
    for (int i = 0; i < count; ++i) pts.push_back(rng.box_point(n));
    return pts;
}

LieAlgebroid so3() {
    return lie_algebra(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 1, -1.0}});
}

} // namespace

TEST_CASE("bracket") {
    SUBCASE("tangent algebroid bracket equals the vector-field bracket oracle") {
        LieAlgebroid a = tangent_algebroid(1);
        SectionA x{std::vector<ScalarField>{coord(0, 1)}};
        SectionA y{std::vector<ScalarField>{constant(1.0, 1)}};
        SectionA br = a.bracket(x, y);
        ChartVectorField oracle = lie_bracket(ChartVectorField(std::vector<ScalarField>(x.comps)),
                                              ChartVectorField(std::vector<ScalarField>(y.comps)));
        for (const auto& p : sample_points(1, 10, 3)) {
            CHECK(br(p)[0] == doctest::Approx(oracle(p)[0]));
            CHECK(br(p)[0] == doctest::Approx(-1.0));
        }
    }
    SUBCASE("so(3): [e0, e1] = e2") {
        LieAlgebroid a = so3();
        auto v = a.bracket(a.basis_section(0), a.basis_section(1))(ChartPoint{0.0});
        CHECK(v[0] == 0.0);
        CHECK(v[1] == 0.0);
        CHECK(v[2] == doctest::Approx(1.0));
    }
    SUBCASE("[X, X] = 0") {
        LieAlgebroid a = so3();
        Rng rng(17);
        SectionA x = random_section(1, 3, rng);
        auto v = a.bracket(x, x)(ChartPoint{0.4});
        for (double c : v) CHECK(c == doctest::Approx(0.0));
    }
    SUBCASE("Leibniz: [X, fY] = f[X,Y] + a(X)(f) Y") {
        LieAlgebroid a = tangent_algebroid(2);
        Rng rng(23);
        for (int rep = 0; rep < 3; ++rep) {
            SectionA x = random_section(2, 2, rng);
            SectionA y = random_section(2, 2, rng);
            ScalarField f = random_polynomial(2, rng);
            SectionA fy{std::vector<ScalarField>{f * y.comps[0], f * y.comps[1]}};
            SectionA lhs = a.bracket(x, fy);
            SectionA br = a.bracket(x, y);
            ScalarField xf = a.anchor_apply(x).apply(f);
            for (const auto& p : sample_points(2, 50, 29)) {
                for (int c = 0; c < 2; ++c) {
                    double want = f(p) * br(p)[static_cast<std::size_t>(c)] +
                                  xf(p) * y(p)[static_cast<std::size_t>(c)];
                    CHECK(std::abs(lhs(p)[static_cast<std::size_t>(c)] - want) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("anchor_apply") {
    SUBCASE("identity anchor returns the same components") {
        LieAlgebroid a = tangent_algebroid(2);
        Rng rng(5);
        SectionA x = random_section(2, 2, rng);
        for (const auto& p : sample_points(2, 5, 7)) {
            auto s = x(p);
            auto v = a.anchor_apply(x)(p);
            CHECK(s[0] == doctest::Approx(v[0]));
            CHECK(s[1] == doctest::Approx(v[1]));
        }
    }
    SUBCASE("Lie algebra anchor is zero") {
        LieAlgebroid a = so3();
        Rng rng(6);
        SectionA x = random_section(1, 3, rng);
        CHECK(a.anchor_apply(x)(ChartPoint{0.2})[0] == 0.0);
    }
    SUBCASE("cotangent anchor is the sharp of the bivector") {
        Bivector pi(2, std::vector<ScalarField>{coord(0, 2)});
        LieAlgebroid a = cotangent_algebroid(pi);
        ChartOneForm w(std::vector<ScalarField>{coord(1, 2), constant(2.0, 2)});
        DualSection ws{std::vector<ScalarField>(w.comps)}; // 1-forms are sections of T*P
        SectionA sec{std::vector<ScalarField>(w.comps)};
        ChartVectorField oracle = bivector_sharp(pi, w);
        ChartVectorField got = a.anchor_apply(sec);
        for (const auto& p : sample_points(2, 10, 11)) {
            auto o = oracle(p);
            auto g = got(p);
            CHECK(g[0] == doctest::Approx(o[0]));
            CHECK(g[1] == doctest::Approx(o[1]));
        }
    }
}

TEST_CASE("lie_derivative_dual") {
    SUBCASE("tangent case reduces to the classical Lie derivative of 1-forms") {
        LieAlgebroid a = tangent_algebroid(2);
        Rng rng(31);
        SectionA x = random_section(2, 2, rng);
        DualSection phi = random_dual_section(2, 2, rng);
        DualSection got = a.lie_derivative_dual(x, phi);
        ChartOneForm oracle = lie_derivative_form(ChartVectorField(std::vector<ScalarField>(x.comps)),
                                                  ChartOneForm(std::vector<ScalarField>(phi.comps)));
        for (const auto& p : sample_points(2, 20, 37)) {
            auto g = got(p);
            auto o = oracle(p);
            CHECK(std::abs(g[0] - o[0]) < 1e-10);
            CHECK(std::abs(g[1] - o[1]) < 1e-10);
        }
    }
    SUBCASE("flat section with zero anchor leaves phi unchanged") {
        LieAlgebroid a = lie_algebra(2, {}); // abelian
        DualSection phi{std::vector<ScalarField>{coord(0, 1), constant(3.0, 1)}};
        DualSection got = a.lie_derivative_dual(a.basis_section(0), phi);
        CHECK(got(ChartPoint{0.5})[0] == 0.0);
        CHECK(got(ChartPoint{0.5})[1] == 0.0);
    }
    SUBCASE("so(3): L_{e0}(eps1) via basis pairings") {
        // <L_{e0} eps1, e_b> = -<eps1, [e0, e_b]>: b=2 gives -<eps1,[e0,e2]> = 1
        LieAlgebroid a = so3();
        DualSection eps1 = a.basis_dual(1);
        DualSection got = a.lie_derivative_dual(a.basis_section(0), eps1);
        auto v = got(ChartPoint{0.0});
        double expected[3];
        for (int b = 0; b < 3; ++b) {
            auto br = a.bracket(a.basis_section(0), a.basis_section(b))(ChartPoint{0.0});
            expected[b] = -br[1]; // minus the eps1-component of [e0, e_b]
        }
        for (int b = 0; b < 3; ++b) CHECK(v[static_cast<std::size_t>(b)] == doctest::Approx(expected[b]));
        CHECK(v[2] == doctest::Approx(1.0)); // L_{e0}(eps1) = +eps2
    }
}

TEST_CASE("d_phi") {
    SUBCASE("tangent over 2-space, phi = x1 dx0: dphi(d0, d1) = -1") {
        LieAlgebroid a = tangent_algebroid(2);
        DualSection phi{std::vector<ScalarField>{coord(1, 2), zero_field(2)}};
        ScalarField v = a.d_phi(phi, a.basis_section(0), a.basis_section(1));
        CHECK(v(ChartPoint{0.4, 0.7}) == doctest::Approx(-1.0));
    }
    SUBCASE("exact pattern gives zero on the tangent case") {
        LieAlgebroid a = tangent_algebroid(2);
        ScalarField f = coord(0, 2) * coord(0, 2) * coord(1, 2);
        DualSection phi{std::vector<ScalarField>{partial(f, 0), partial(f, 1)}};
        ScalarField v = a.d_phi(phi, a.basis_section(0), a.basis_section(1));
        for (const auto& p : sample_points(2, 10, 41)) CHECK(std::abs(v(p)) < 1e-12);
    }
    SUBCASE("so(3), phi = eps2: dphi(e0, e1) = -1") {
        LieAlgebroid a = so3();
        ScalarField v = a.d_phi(a.basis_dual(2), a.basis_section(0), a.basis_section(1));
        CHECK(v(ChartPoint{0.0}) == doctest::Approx(-1.0));
    }
    SUBCASE("abelian zero-anchor algebroid has d_phi = 0 for every phi") {
        LieAlgebroid a = lie_algebra(3, {});
        Rng rng(43);
        DualSection phi = random_dual_section(1, 3, rng);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                ScalarField v = a.d_phi(phi, a.basis_section(i), a.basis_section(j));
                CHECK(std::abs(v(ChartPoint{0.3})) < 1e-15);
            }
    }
}

TEST_CASE("builders") {
    SUBCASE("cotangent of a constant bivector: constant anchor, zero structure") {
        Bivector pi(2, std::vector<ScalarField>{constant(1.0, 2)});
        LieAlgebroid a = cotangent_algebroid(pi);
        CHECK(a.structure(0, 0, 1)(ChartPoint{0.5, 0.5}) == 0.0);
        CHECK(a.anchor_column(0).comps[1](ChartPoint{0.5, 0.5}) == 1.0);
    }
    SUBCASE("cotangent of x0 d0^d1: frame bracket [dx0, dx1] = dx0, Koszul oracle") {
        Bivector pi(2, std::vector<ScalarField>{coord(0, 2)});
        LieAlgebroid a = cotangent_algebroid(pi);
        SectionA br = a.bracket(a.basis_section(0), a.basis_section(1));
        // independent oracle: the bracket of 1-forms computed from the bivector
        // (evaluated on the constant frame forms)
        ChartPoint p{0.6, -0.2};
        auto v = br(p);
        CHECK(v[0] == doctest::Approx(1.0)); // dx0 component
        CHECK(v[1] == doctest::Approx(0.0));
    }
    SUBCASE("lie_algebra(so3) passes validation") {
        LieAlgebroid a = so3();
        Rng rng(47);
        auto rep = validate(a, sample_points(1, 30, 53), rng);
        CHECK(rep.pass());
    }
}

TEST_CASE("validate") {
    Rng rng(59);
    SUBCASE("tangent_algebroid(3) passes with zero residual") {
        auto rep = validate(tangent_algebroid(3), sample_points(3, 20, 61), rng);
        CHECK(rep.pass());
        CHECK(rep.jacobi_residual < 1e-10);
    }
    SUBCASE("Heisenberg passes") {
        LieAlgebroid h = lie_algebra(3, {{0, 1, 2, 1.0}});
        auto rep = validate(h, sample_points(1, 20, 67), rng);
        CHECK(rep.pass());
    }
    SUBCASE("corrupted so(3) fails with a located residual") {
        LieAlgebroid bad = lie_algebra(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 0, -1.0}});
        auto rep = validate(bad, sample_points(1, 20, 71), rng);
        CHECK_FALSE(rep.pass());
        CHECK(rep.jacobi_residual > 0.5);
        CHECK(rep.worst_check == "jacobi");
    }
    SUBCASE("empty sample set is rejected") {
        CHECK_THROWS_AS(validate(tangent_algebroid(1), {}, rng), ConfigError);
    }
}

TEST_CASE("cotangent algebroid validates exactly when the bivector is Poisson") {
    Rng rng(73);
    auto pts = sample_points(3, 25, 79);
    SUBCASE("Poisson case passes") {
        // linear so(3)*-type structure
        Bivector pi(3, std::vector<ScalarField>{coord(2, 3), -coord(1, 3), coord(0, 3)});
        CHECK(max_jacobi_residual(pi, pts) < 1e-12);
        CHECK(validate(cotangent_algebroid(pi), pts, rng).pass());
    }
    SUBCASE("non-Poisson case fails") {
        Bivector pi(3, std::vector<ScalarField>{constant(1.0, 3), zero_field(3), coord(1, 3)});
        CHECK(max_jacobi_residual(pi, pts) > 0.5);
        CHECK_FALSE(validate(cotangent_algebroid(pi), pts, rng).pass());
    }
}
