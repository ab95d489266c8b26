#include "algd/pair_groupoid.hpp"

namespace algd {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

std::vector<double> join2(const ChartPoint& y, const ChartPoint& x) {
    std::vector<double> g = y;
    g.insert(g.end(), x.begin(), x.end());
    return g;
}

} // namespace

GroupoidField::GroupoidField(int dim, std::vector<ScalarField> f, std::vector<ScalarField> s)
    : n(dim), first(std::move(f)), second(std::move(s)) {
    if (static_cast<int>(first.size()) != n || static_cast<int>(second.size()) != n)
        throw ConfigError("groupoid field: component counts");
    for (const auto& c : first)
        if (c.arity() != 2 * n) throw ConfigError("groupoid field: component arity");
    for (const auto& c : second)
        if (c.arity() != 2 * n) throw ConfigError("groupoid field: component arity");
}

ChartVectorField GroupoidField::as_chart_field() const {
    std::vector<ScalarField> comps = first;
    comps.insert(comps.end(), second.begin(), second.end());
    return ChartVectorField(std::move(comps));
}

GroupoidField GroupoidField::from_chart_field(int n, const ChartVectorField& v) {
    if (v.dim() != 2 * n || v.arity() != 2 * n)
        throw ConfigError("groupoid field: chart field shape");
    std::vector<ScalarField> f(v.comps.begin(), v.comps.begin() + n);
    std::vector<ScalarField> s(v.comps.begin() + n, v.comps.end());
    return GroupoidField(n, std::move(f), std::move(s));
}

GroupoidField right_invariant(const ChartVectorField& x) {
    const int n = x.dim();
    std::vector<ScalarField> f;
    f.reserve(uz(n));
    for (int i = 0; i < n; ++i) f.push_back(embed_field(x.comps[uz(i)], 2 * n, 0));
    std::vector<ScalarField> s(uz(n), zero_field(2 * n));
    return GroupoidField(n, std::move(f), std::move(s));
}

GroupoidField left_invariant(const ChartVectorField& x) {
    const int n = x.dim();
    std::vector<ScalarField> f(uz(n), zero_field(2 * n));
    std::vector<ScalarField> s;
    s.reserve(uz(n));
    for (int i = 0; i < n; ++i) s.push_back(embed_field(x.comps[uz(i)], 2 * n, n));
    return GroupoidField(n, std::move(f), std::move(s));
}

GroupoidField diagonal_field(const ChartVectorField& x) {
    const int n = x.dim();
    std::vector<ScalarField> f, s;
    for (int i = 0; i < n; ++i) f.push_back(embed_field(x.comps[uz(i)], 2 * n, 0));
    for (int i = 0; i < n; ++i) s.push_back(embed_field(x.comps[uz(i)], 2 * n, n));
    return GroupoidField(n, std::move(f), std::move(s));
}

ScalarField restrict_diag(const ScalarField& f) {
    if (f.arity() % 2 != 0) throw ConfigError("restrict_diag: odd arity");
    const int n = f.arity() / 2;
    return make_field(n, [f, n](auto xs) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        std::vector<T> g(uz(2 * n));
        for (int i = 0; i < n; ++i) g[uz(i)] = g[uz(n + i)] = xs[uz(i)];
        return f(std::span<const T>(g));
    });
}

GroupoidField groupoid_bracket(const GroupoidField& a, const GroupoidField& b) {
    if (a.n != b.n) throw ConfigError("groupoid_bracket: dimension mismatch");
    return GroupoidField::from_chart_field(a.n,
                                           lie_bracket(a.as_chart_field(), b.as_chart_field()));
}

GroupoidVerdict is_multiplicative(const GroupoidField& xi, const ChartVectorField& x, Rng& rng,
                                  int samples, double tol) {
    const int n = xi.n;
    if (x.dim() != n) throw ConfigError("is_multiplicative: base field dimension");
    GroupoidVerdict v;
    for (int s = 0; s < samples; ++s) {
        auto z = rng.box_point(n);
        auto y = rng.box_point(n);
        auto xx = rng.box_point(n);
        auto g_zx = join2(z, xx), g_zy = join2(z, y), g_yx = join2(y, xx), g_yy = join2(y, y);
        for (int i = 0; i < n; ++i) {
            // first block of the product comes from the left factor,
            // second block from the right factor
            double r1 = xi.first[uz(i)](g_zx) - xi.first[uz(i)](g_zy);
            double r2 = xi.second[uz(i)](g_zx) - xi.second[uz(i)](g_yx);
            // images of composable pairs must be composable
            double r3 = xi.second[uz(i)](g_zy) - xi.first[uz(i)](g_yx);
            // unit compatibility
            double r4 = xi.first[uz(i)](g_yy) - x.comps[uz(i)](y);
            double r5 = xi.second[uz(i)](g_yy) - x.comps[uz(i)](y);
            for (double r : {r1, r2, r3, r4, r5}) v.residual = std::max(v.residual, std::abs(r));
        }
    }
    v.ok = v.residual < tol;
    return v;
}

GroupoidVerdict is_star(const GroupoidField& xi, const ChartVectorField& x, Rng& rng, int samples,
                        double tol) {
    const int n = xi.n;
    if (x.dim() != n) throw ConfigError("is_star: base field dimension");
    GroupoidVerdict v;
    for (int s = 0; s < samples; ++s) {
        auto y = rng.box_point(n);
        auto xx = rng.box_point(n);
        auto g = join2(y, xx), u = join2(y, y);
        for (int i = 0; i < n; ++i) {
            double r1 = xi.second[uz(i)](g) - x.comps[uz(i)](xx); // T(alpha) o xi = x o alpha
            double r2 = xi.first[uz(i)](u) - x.comps[uz(i)](y);   // xi o 1 = T(1) o x
            double r3 = xi.second[uz(i)](u) - x.comps[uz(i)](y);
            for (double r : {r1, r2, r3}) v.residual = std::max(v.residual, std::abs(r));
        }
    }
    v.ok = v.residual < tol;
    return v;
}

ChartVectorField d_xi(const GroupoidField& xi, const ChartVectorField& base_x,
                      const ChartVectorField& x, Rng& rng, double tol) {
    auto star = is_star(xi, base_x, rng, 25, tol);
    if (!star.ok)
        throw ConfigError("d_xi: star check failed (residual " + std::to_string(star.residual) +
                          ")");
    GroupoidField br = groupoid_bracket(xi, right_invariant(x));
    std::vector<ScalarField> comps;
    comps.reserve(uz(xi.n));
    for (int i = 0; i < xi.n; ++i) comps.push_back(restrict_diag(br.first[uz(i)]));
    return ChartVectorField(std::move(comps));
}

LinearVectorField lie_functor_lift(const GroupoidField& xi, const ChartVectorField& base_x,
                                   Rng& rng, double tol) {
    auto star = is_star(xi, base_x, rng, 25, tol);
    if (!star.ok)
        throw ConfigError("lie_functor_lift: star check failed (residual " +
                          std::to_string(star.residual) + ")");
    const int n = xi.n;
    LinearVectorField out;
    {
        std::vector<ScalarField> comps;
        for (int i = 0; i < n; ++i) comps.push_back(restrict_diag(xi.second[uz(i)]));
        out.base = ChartVectorField(std::move(comps));
    }
    out.fiber_m.assign(uz(n), std::vector<ScalarField>());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            out.fiber_m[uz(i)].push_back(restrict_diag(partial(xi.first[uz(i)], j)));
    }
    return out;
}

GroupoidField random_star_field(const ChartVectorField& x, Rng& rng) {
    const int n = x.dim();
    std::vector<ScalarField> first;
    for (int i = 0; i < n; ++i) {
        ScalarField acc = embed_field(x.comps[uz(i)], 2 * n, 0); // x(y)
        for (int j = 0; j < n; ++j) {
            // add R(y,x) (y_j - x_j), vanishing on units
            ScalarField r = random_polynomial(2 * n, rng);
            acc = acc + r * (coord(j, 2 * n) - coord(n + j, 2 * n));
        }
        first.push_back(acc);
    }
    std::vector<ScalarField> second;
    for (int i = 0; i < n; ++i) second.push_back(embed_field(x.comps[uz(i)], 2 * n, n));
    return GroupoidField(n, std::move(first), std::move(second));
}

AffineDecomposition affine_decompose(const GroupoidField& xi, Rng& rng, int samples, double tol) {
    const int n = xi.n;
    AffineDecomposition out;

    for (int s = 0; s < samples; ++s) {
        auto z = rng.box_point(n);
        auto y = rng.box_point(n);
        auto xx = rng.box_point(n);
        auto g_zx = join2(z, xx), g_zy = join2(z, y), g_yx = join2(y, xx), g_yy = join2(y, y);
        for (int i = 0; i < n; ++i) {
            double r1 = xi.first[uz(i)](g_zx) - xi.first[uz(i)](g_zy) - xi.first[uz(i)](g_yx) +
                        xi.first[uz(i)](g_yy);
            double r2 = xi.second[uz(i)](g_zx) - xi.second[uz(i)](g_yx) - xi.second[uz(i)](g_zy) +
                        xi.second[uz(i)](g_yy);
            out.affine_residual = std::max(out.affine_residual, std::max(std::abs(r1), std::abs(r2)));
            // beta-projectability: first block blind to the source slot;
            // alpha-projectability: second block blind to the target slot
            double p1 = xi.first[uz(i)](g_zx) - xi.first[uz(i)](g_zy);
            double p2 = xi.second[uz(i)](g_yx) - xi.second[uz(i)](g_zx);
            out.projectable_residual =
                std::max(out.projectable_residual, std::max(std::abs(p1), std::abs(p2)));
        }
    }
    out.affine = out.affine_residual < tol;
    out.projectable = out.projectable_residual < tol;
    if (!out.affine)
        throw ConfigError("affine_decompose: affine identity failed (residual " +
                          std::to_string(out.affine_residual) + ")");
    if (!out.projectable)
        throw ConfigError("affine_decompose: field is affine but not projectable (residual " +
                          std::to_string(out.projectable_residual) + ")");

    // X(m) = xi(1_m) - T(1)T(alpha)(xi(1_m)), i.e. first block minus second on units
    std::vector<ScalarField> xs;
    for (int i = 0; i < n; ++i)
        xs.push_back(restrict_diag(xi.first[uz(i)]) - restrict_diag(xi.second[uz(i)]));
    out.right_section = ChartVectorField(std::move(xs));

    GroupoidField rinv = right_invariant(out.right_section);
    std::vector<ScalarField> ef, es;
    for (int i = 0; i < n; ++i) {
        ef.push_back(xi.first[uz(i)] - rinv.first[uz(i)]);
        es.push_back(xi.second[uz(i)] - rinv.second[uz(i)]);
    }
    out.multiplicative_part = GroupoidField(n, std::move(ef), std::move(es));

    std::vector<ScalarField> base;
    for (int i = 0; i < n; ++i) base.push_back(restrict_diag(out.multiplicative_part.second[uz(i)]));
    out.multiplicative_check =
        is_multiplicative(out.multiplicative_part, ChartVectorField(std::move(base)), rng, samples, tol);
    return out;
}

MultiplicativeFunctionVerdict multiplicative_function_check(const ScalarField& f,
                                                            const GroupoidField& xi, Rng& rng,
                                                            int samples, double tol) {
    const int n = xi.n;
    if (f.arity() != 2 * n) throw ConfigError("multiplicative_function_check: arity");
    MultiplicativeFunctionVerdict out;
    ScalarField xf = xi.as_chart_field().apply(f);
    for (int s = 0; s < samples; ++s) {
        auto z = rng.box_point(n);
        auto y = rng.box_point(n);
        auto xx = rng.box_point(n);
        auto g_zx = join2(z, xx), g_zy = join2(z, y), g_yx = join2(y, xx);
        out.precondition_residual = std::max(
            out.precondition_residual, std::abs(f(g_zx) - f(g_zy) - f(g_yx)));
        out.result_residual =
            std::max(out.result_residual, std::abs(xf(g_zx) - xf(g_zy) - xf(g_yx)));
    }
    if (out.precondition_residual > tol)
        throw ConfigError("multiplicative_function_check: F is not multiplicative (residual " +
                          std::to_string(out.precondition_residual) + ")");
    out.ok = out.result_residual < tol;
    return out;
}

} // namespace algd
