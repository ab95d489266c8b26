#include "algd/calculus.hpp"

namespace algd {

namespace {

void require_same_chart(int a, int b, const char* what) {
    if (a != b) throw ConfigError(std::string(what) + ": chart dimension mismatch");
}

} // namespace

ChartVectorField lie_bracket(const ChartVectorField& x, const ChartVectorField& y) {
    require_same_chart(x.dim(), y.dim(), "lie_bracket");
    require_same_chart(x.arity(), y.arity(), "lie_bracket");
    const int n = x.dim();
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ScalarField xi = x.comps[static_cast<std::size_t>(i)];
        ScalarField yi = y.comps[static_cast<std::size_t>(i)];
        comps.push_back(x.apply(yi) - y.apply(xi));
    }
    return ChartVectorField(std::move(comps));
}

ChartOneForm exterior_derivative(const ScalarField& f) {
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(f.arity()));
    for (int i = 0; i < f.arity(); ++i) comps.push_back(partial(f, i));
    return ChartOneForm(std::move(comps));
}

TwoForm exterior_derivative(const ChartOneForm& omega) {
    const int n = omega.dim();
    std::vector<ScalarField> upper;
    upper.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            upper.push_back(partial(omega.comps[static_cast<std::size_t>(j)], i) -
                            partial(omega.comps[static_cast<std::size_t>(i)], j));
    return TwoForm(n, std::move(upper));
}

ChartOneForm lie_derivative_form(const ChartVectorField& x, const ChartOneForm& omega) {
    require_same_chart(x.dim(), omega.dim(), "lie_derivative_form");
    require_same_chart(x.arity(), omega.arity(), "lie_derivative_form");
    const int n = x.dim();
    ScalarField ix_omega = pairing(omega, x);
    TwoForm dw = exterior_derivative(omega);
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        // (i_x dw)_j = x^i (dw)_{ij}
        ScalarField term = partial(ix_omega, j);
        for (int i = 0; i < n; ++i)
            term = term + x.comps[static_cast<std::size_t>(i)] * dw.component(i, j);
        comps.push_back(term);
    }
    return ChartOneForm(std::move(comps));
}

ChartVectorField bivector_sharp(const Bivector& pi, const ChartOneForm& omega) {
    require_same_chart(pi.n, omega.dim(), "bivector_sharp");
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(pi.n));
    for (int j = 0; j < pi.n; ++j) {
        ScalarField acc = zero_field(omega.arity());
        for (int i = 0; i < pi.n; ++i) {
            if (i == j) continue;
            acc = acc + pi.component(i, j) * omega.comps[static_cast<std::size_t>(i)];
        }
        comps.push_back(acc);
    }
    return ChartVectorField(std::move(comps));
}

ScalarField poisson_bracket_fn(const Bivector& pi, const ScalarField& f, const ScalarField& g) {
    require_same_chart(f.arity(), g.arity(), "poisson_bracket_fn");
    require_same_chart(pi.n, f.arity(), "poisson_bracket_fn");
    Bivector p = pi;
    return make_field(f.arity(), [p, f, g](auto xs) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        T acc(0.0);
        for (int i = 0; i < p.n; ++i)
            for (int j = i + 1; j < p.n; ++j) {
                T pij = p.upper[p.upper_index(i, j)](xs);
                acc = acc + pij * (detail::derive_coord(f, xs, i) * detail::derive_coord(g, xs, j) -
                                   detail::derive_coord(f, xs, j) * detail::derive_coord(g, xs, i));
            }
        return acc;
    });
}

ChartVectorField hamiltonian_of(const Bivector& pi, const ScalarField& f) {
    return bivector_sharp(pi, exterior_derivative(f));
}

std::vector<ScalarField> jacobi_residual(const Bivector& pi) {
    const int n = pi.n;
    std::vector<ScalarField> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                ScalarField acc = zero_field(pi.arity());
                for (int l = 0; l < n; ++l) {
                    acc = acc + pi.component(l, i) * partial(pi.component(j, k), l) +
                          pi.component(l, j) * partial(pi.component(k, i), l) +
                          pi.component(l, k) * partial(pi.component(i, j), l);
                }
                out.push_back(acc);
            }
    return out;
}

double max_jacobi_residual(const Bivector& pi, const std::vector<ChartPoint>& pts) {
    double worst = 0.0;
    for (const auto& r : jacobi_residual(pi))
        for (const auto& p : pts) worst = std::max(worst, std::abs(r(p)));
    return worst;
}

Bivector lie_derivative_bivector(const ChartVectorField& x, const Bivector& pi) {
    require_same_chart(x.dim(), pi.n, "lie_derivative_bivector");
    const int n = pi.n;
    std::vector<ScalarField> upper;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ScalarField acc = x.apply(pi.component(i, j));
            for (int l = 0; l < n; ++l) {
                acc = acc - pi.component(l, j) * partial(x.comps[static_cast<std::size_t>(i)], l);
                acc = acc - pi.component(i, l) * partial(x.comps[static_cast<std::size_t>(j)], l);
            }
            upper.push_back(acc);
        }
    return Bivector(n, std::move(upper));
}

ChartPoint flow_rk4(const ChartVectorField& x, const ChartPoint& p, double t, int steps) {
    if (steps < 1) throw ConfigError("flow_rk4: steps must be >= 1");
    if (static_cast<int>(p.size()) != x.arity()) throw ConfigError("flow_rk4: point dimension");
    const int n = x.dim();
    const double h = t / steps;
    ChartPoint y = p;
    auto eval = [&](const ChartPoint& q) { return x(q); };
    ChartPoint tmp(static_cast<std::size_t>(n));
    for (int s = 0; s < steps; ++s) {
        auto k1 = eval(y);
        for (int i = 0; i < n; ++i)
            tmp[static_cast<std::size_t>(i)] =
                y[static_cast<std::size_t>(i)] + 0.5 * h * k1[static_cast<std::size_t>(i)];
        auto k2 = eval(tmp);
        for (int i = 0; i < n; ++i)
            tmp[static_cast<std::size_t>(i)] =
                y[static_cast<std::size_t>(i)] + 0.5 * h * k2[static_cast<std::size_t>(i)];
        auto k3 = eval(tmp);
        for (int i = 0; i < n; ++i)
            tmp[static_cast<std::size_t>(i)] =
                y[static_cast<std::size_t>(i)] + h * k3[static_cast<std::size_t>(i)];
        auto k4 = eval(tmp);
        for (int i = 0; i < n; ++i) {
            auto ii = static_cast<std::size_t>(i);
            y[ii] += h / 6.0 * (k1[ii] + 2.0 * k2[ii] + 2.0 * k3[ii] + k4[ii]);
            if (!std::isfinite(y[ii]))
                throw DivergenceError("flow_rk4: non-finite value at step " + std::to_string(s), s);
        }
    }
    return y;
}

} // namespace algd
