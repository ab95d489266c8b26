#include "algd/lifts.hpp"

namespace algd {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

} // namespace

TotalSpaceField::TotalSpaceField(int base_dim, int fiber_dim, std::vector<ScalarField> bp,
                                 std::vector<ScalarField> fp)
    : n(base_dim), k(fiber_dim), base_part(std::move(bp)), fiber_part(std::move(fp)) {
    if (static_cast<int>(base_part.size()) != n || static_cast<int>(fiber_part.size()) != k)
        throw ConfigError("total-space field: component counts");
    for (const auto& f : base_part)
        if (f.arity() != n + k) throw ConfigError("total-space field: base component arity");
    for (const auto& f : fiber_part)
        if (f.arity() != n + k) throw ConfigError("total-space field: fiber component arity");
}

ChartVectorField TotalSpaceField::as_chart_field() const {
    std::vector<ScalarField> comps = base_part;
    comps.insert(comps.end(), fiber_part.begin(), fiber_part.end());
    return ChartVectorField(std::move(comps));
}

TotalSpaceField TotalSpaceField::from_chart_field(int base_dim, int fiber_dim,
                                                  const ChartVectorField& v) {
    if (v.dim() != base_dim + fiber_dim || v.arity() != base_dim + fiber_dim)
        throw ConfigError("from_chart_field: dimension mismatch");
    std::vector<ScalarField> bp(v.comps.begin(), v.comps.begin() + base_dim);
    std::vector<ScalarField> fp(v.comps.begin() + base_dim, v.comps.end());
    return TotalSpaceField(base_dim, fiber_dim, std::move(bp), std::move(fp));
}

TotalTangent TotalSpaceField::eval(const TotalPoint& p) const {
    auto xs = p.joined();
    TotalTangent t;
    t.at = p;
    t.base_dir = eval_all(base_part, std::span<const double>(xs));
    t.fiber_dir = eval_all(fiber_part, std::span<const double>(xs));
    return t;
}

TotalSpaceField total_bracket(const TotalSpaceField& a, const TotalSpaceField& b) {
    if (a.n != b.n || a.k != b.k) throw ConfigError("total_bracket: dimension mismatch");
    return TotalSpaceField::from_chart_field(a.n, a.k,
                                             lie_bracket(a.as_chart_field(), b.as_chart_field()));
}

ScalarField pull_to_total(const ScalarField& f, int fiber_dim) {
    return embed_field(f, f.arity() + fiber_dim, 0);
}

ScalarField embed_field(const ScalarField& f, int total_arity, int offset) {
    if (offset < 0 || offset + f.arity() > total_arity)
        throw ConfigError("embed_field: slot range out of bounds");
    int ar = f.arity();
    return make_field(total_arity, [f, ar, offset](auto xs) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        std::vector<T> sub(xs.begin() + offset, xs.begin() + offset + ar);
        return f(std::span<const T>(sub));
    });
}

TotalSpaceField LinearVectorField::as_total() const {
    const int nn = n(), kk = k();
    std::vector<ScalarField> bp;
    bp.reserve(uz(nn));
    for (int i = 0; i < nn; ++i) bp.push_back(embed_field(base.comps[uz(i)], nn + kk, 0));
    std::vector<ScalarField> fp;
    fp.reserve(uz(kk));
    for (int a = 0; a < kk; ++a) {
        auto row = fiber_m[uz(a)];
        int nl = nn, kl = kk;
        fp.push_back(make_field(nn + kk, [row, nl, kl](auto xs) {
            using T = std::remove_cvref_t<decltype(xs[0])>;
            std::vector<T> base_pt(xs.begin(), xs.begin() + nl);
            T acc(0.0);
            for (int b = 0; b < kl; ++b)
                acc = acc + row[uz(b)](std::span<const T>(base_pt)) * xs[uz(nl + b)];
            return acc;
        }));
    }
    return TotalSpaceField(nn, kk, std::move(bp), std::move(fp));
}

SectionA CovDiffOp::apply(const SectionA& x) const {
    if (x.dim() != k()) throw ConfigError("cdo apply: dimension mismatch");
    std::vector<ScalarField> comps;
    comps.reserve(uz(k()));
    for (int a = 0; a < k(); ++a) {
        ScalarField acc = base.apply(x.comps[uz(a)]);
        for (int b = 0; b < k(); ++b) acc = acc + gamma[uz(a)][uz(b)] * x.comps[uz(b)];
        comps.push_back(acc);
    }
    return SectionA(std::move(comps));
}

DualSection CovDiffOp::apply_dual(const DualSection& phi) const {
    if (phi.dim() != k()) throw ConfigError("cdo apply_dual: dimension mismatch");
    std::vector<ScalarField> comps;
    comps.reserve(uz(k()));
    for (int a = 0; a < k(); ++a) {
        // <D* phi, e_a> = x(phi_a) - <phi, D e_a> = x(phi_a) - phi_b G^b_a
        ScalarField acc = base.apply(phi.comps[uz(a)]);
        for (int b = 0; b < k(); ++b) acc = acc - phi.comps[uz(b)] * gamma[uz(b)][uz(a)];
        comps.push_back(acc);
    }
    return DualSection(std::move(comps));
}

LinearVectorField linear_from_cdo(const CovDiffOp& d) {
    LinearVectorField xi;
    xi.base = d.base;
    xi.fiber_m.resize(d.gamma.size());
    for (std::size_t a = 0; a < d.gamma.size(); ++a) {
        xi.fiber_m[a].reserve(d.gamma[a].size());
        for (const auto& g : d.gamma[a]) xi.fiber_m[a].push_back(-g);
    }
    return xi;
}

CovDiffOp cdo_from_linear(const LinearVectorField& xi) {
    CovDiffOp d;
    d.base = xi.base;
    d.gamma.resize(xi.fiber_m.size());
    for (std::size_t a = 0; a < xi.fiber_m.size(); ++a) {
        d.gamma[a].reserve(xi.fiber_m[a].size());
        for (const auto& g : xi.fiber_m[a]) d.gamma[a].push_back(-g);
    }
    return d;
}

ScalarField ell(const DualSection& phi) {
    const int n = phi.arity();
    const int k = phi.dim();
    DualSection p = phi;
    return make_field(n + k, [p, n, k](auto xs) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        std::vector<T> base_pt(xs.begin(), xs.begin() + n);
        T acc(0.0);
        for (int a = 0; a < k; ++a)
            acc = acc + p.comps[uz(a)](std::span<const T>(base_pt)) * xs[uz(n + a)];
        return acc;
    });
}

TotalSpaceField vertical_lift(const SectionA& x) {
    const int n = x.arity();
    const int k = x.dim();
    std::vector<ScalarField> bp(uz(n), zero_field(n + k));
    std::vector<ScalarField> fp;
    fp.reserve(uz(k));
    for (int a = 0; a < k; ++a) fp.push_back(embed_field(x.comps[uz(a)], n + k, 0));
    return TotalSpaceField(n, k, std::move(bp), std::move(fp));
}

TotalTangent translation_tau(const TotalPoint& x, const std::vector<double>& y_fiber) {
    if (y_fiber.size() != x.fiber.size())
        throw ConfigError("translation_tau: fiber dimension mismatch");
    TotalTangent t;
    t.at = x;
    t.base_dir.assign(x.base.size(), 0.0);
    t.fiber_dir = y_fiber;
    return t;
}

double tangent_apply(const TotalTangent& t, const ScalarField& f) {
    auto pt = t.at.joined();
    std::vector<double> dir = t.base_dir;
    dir.insert(dir.end(), t.fiber_dir.begin(), t.fiber_dir.end());
    return directional(f, pt, dir);
}

LinearityVerdict is_linear(const TotalSpaceField& xi, Rng& rng, int samples, double tol) {
    LinearityVerdict v;
    for (int s = 0; s < samples; ++s) {
        auto m = rng.box_point(xi.n);
        auto fv = rng.box_point(xi.k);
        auto fw = rng.box_point(xi.k);
        double t = rng.uniform(-2.0, 2.0);

        TotalPoint pv{m, fv}, pw{m, fw};
        std::vector<double> sum(uz(xi.k)), scaled(uz(xi.k));
        for (int a = 0; a < xi.k; ++a) {
            sum[uz(a)] = fv[uz(a)] + fw[uz(a)];
            scaled[uz(a)] = t * fv[uz(a)];
        }
        TotalPoint psum{m, sum}, pscaled{m, scaled}, pzero{m, std::vector<double>(uz(xi.k), 0.0)};

        auto ev = xi.eval(pv), ew = xi.eval(pw), es = xi.eval(psum), et = xi.eval(pscaled),
             e0 = xi.eval(pzero);

        for (int i = 0; i < xi.n; ++i) {
            // base part must not see the fiber variables
            v.residual = std::max(v.residual, std::abs(ev.base_dir[uz(i)] - e0.base_dir[uz(i)]));
            v.residual = std::max(v.residual, std::abs(es.base_dir[uz(i)] - e0.base_dir[uz(i)]));
        }
        for (int a = 0; a < xi.k; ++a) {
            v.residual = std::max(v.residual, std::abs(es.fiber_dir[uz(a)] - ev.fiber_dir[uz(a)] -
                                                       ew.fiber_dir[uz(a)]));
            v.residual = std::max(v.residual,
                                  std::abs(et.fiber_dir[uz(a)] - t * ev.fiber_dir[uz(a)]));
        }
    }
    v.linear = v.residual < tol;
    return v;
}

LinearVectorField complete_lift(const LieAlgebroid& a, const SectionA& x) {
    const int n = a.base_dim();
    const int k = a.fiber_dim();
    if (x.dim() != k || x.arity() != n) throw ConfigError("complete_lift: dimension mismatch");
    // CDO is D = [X, .]: G^c_b = C^c_{ab} X^a - a^i_b d_i X^c
    CovDiffOp d;
    d.base = a.anchor_apply(x);
    d.gamma.assign(uz(k), std::vector<ScalarField>());
    for (int c = 0; c < k; ++c) {
        d.gamma[uz(c)].reserve(uz(k));
        for (int b = 0; b < k; ++b) {
            ScalarField acc = zero_field(n);
            for (int av = 0; av < k; ++av)
                acc = acc + a.structure(c, av, b) * x.comps[uz(av)];
            acc = acc - a.anchor_column(b).apply(x.comps[uz(c)]);
            d.gamma[uz(c)].push_back(acc);
        }
    }
    return linear_from_cdo(d);
}

std::vector<double> intrinsic_derivative(const LinearVectorField& xi, const SectionA& x,
                                         const ChartPoint& m) {
    CovDiffOp d = cdo_from_linear(xi);
    return d.apply(x)(m);
}

double tangent_pairing(const TotalTangent& on_dual, const TotalTangent& on_a,
                       const DualSection& phi_ext, const SectionA& x_ext) {
    const std::size_t nn = on_a.at.base.size();
    if (on_dual.at.base.size() != nn) throw ConfigError("tangent_pairing: base dimension");
    for (std::size_t i = 0; i < nn; ++i) {
        if (std::abs(on_dual.at.base[i] - on_a.at.base[i]) > 1e-12)
            throw ConfigError("tangent_pairing: tangents sit over different base points");
        if (std::abs(on_dual.base_dir[i] - on_a.base_dir[i]) > 1e-12)
            throw ConfigError("tangent_pairing: tangents project to different base tangents");
    }
    // frakX(l_X) + xi(l_phi) - x(<phi,X>), with any extensions through the points
    ScalarField lX = ell(DualSection{std::vector<ScalarField>(x_ext.comps)}); // l on A*: X^a w_a
    ScalarField lphi = ell(phi_ext);
    double term1 = tangent_apply(on_dual, lX);
    double term2 = tangent_apply(on_a, lphi);
    ScalarField pair_fn = dual_pairing(phi_ext, x_ext);
    double term3 = directional(pair_fn, on_a.at.base, on_a.base_dir);
    return term1 + term2 - term3;
}

LinearVectorField dual_linear_field(const LinearVectorField& xi) {
    LinearVectorField dual;
    dual.base = xi.base;
    const int kk = xi.k();
    dual.fiber_m.assign(uz(kk), std::vector<ScalarField>());
    for (int a = 0; a < kk; ++a) {
        dual.fiber_m[uz(a)].reserve(uz(kk));
        for (int b = 0; b < kk; ++b) dual.fiber_m[uz(a)].push_back(-xi.fiber_m[uz(b)][uz(a)]);
    }
    return dual;
}

Decomposition decompose(const TotalSpaceField& field, const TotalPoint& at,
                        const std::vector<LinearVectorField>& star_basis) {
    const int n = field.n;
    const int k = field.k;
    if (static_cast<int>(star_basis.size()) != n)
        throw ConfigError("decompose: need exactly n linear fields with independent base values");
    TotalTangent value = field.eval(at);

    std::vector<std::vector<double>> mat(uz(n), std::vector<double>(uz(n)));
    for (int j = 0; j < n; ++j) {
        auto bj = star_basis[uz(j)].base(at.base);
        for (int i = 0; i < n; ++i) mat[uz(i)][uz(j)] = bj[uz(i)];
    }
    Decomposition out;
    out.coefficients = solve_dense(mat, value.base_dir, &out.condition);

    out.core_remainder = value.fiber_dir;
    for (int j = 0; j < n; ++j) {
        auto tj = star_basis[uz(j)].as_total().eval(at);
        for (int a = 0; a < k; ++a)
            out.core_remainder[uz(a)] -= out.coefficients[uz(j)] * tj.fiber_dir[uz(a)];
    }
    return out;
}

MorphicVerdict is_morphic(const LieAlgebroid& a, const LinearVectorField& xi, Rng& rng,
                          const std::vector<ChartPoint>& points, double tol) {
    MorphicVerdict v;
    const int k = a.fiber_dim();
    const int n = a.base_dim();
    CovDiffOp d = cdo_from_linear(xi);

    std::vector<SectionA> sections;
    for (int i = 0; i < k; ++i) sections.push_back(a.basis_section(i));
    sections.push_back(random_section(n, k, rng));
    sections.push_back(random_section(n, k, rng));

    for (std::size_t i = 0; i < sections.size(); ++i) {
        // anchor compatibility: a(D(X)) = [x, a(X)]
        ChartVectorField lhs = a.anchor_apply(d.apply(sections[i]));
        ChartVectorField rhs = lie_bracket(d.base, a.anchor_apply(sections[i]));
        for (const auto& p : points) {
            auto l = lhs(p);
            auto r = rhs(p);
            for (int c = 0; c < n; ++c)
                v.anchor_residual = std::max(v.anchor_residual, std::abs(l[uz(c)] - r[uz(c)]));
        }
        for (std::size_t j = i + 1; j < sections.size(); ++j) {
            SectionA lhs2 = d.apply(a.bracket(sections[i], sections[j]));
            SectionA rhs2 = a.bracket(d.apply(sections[i]), sections[j]);
            SectionA rhs3 = a.bracket(sections[i], d.apply(sections[j]));
            for (const auto& p : points) {
                auto l = lhs2(p);
                auto r2 = rhs2(p);
                auto r3 = rhs3(p);
                for (int c = 0; c < k; ++c)
                    v.derivation_residual =
                        std::max(v.derivation_residual,
                                 std::abs(l[uz(c)] - r2[uz(c)] - r3[uz(c)]));
            }
        }
    }
    v.morphic = v.derivation_residual < tol && v.anchor_residual < tol;
    return v;
}

ScalarField TotalSpaceForm::pair_with(const TotalSpaceField& v) const {
    if (v.n != n || v.k != k) throw ConfigError("form pairing: dimension mismatch");
    TotalSpaceForm self = *this;
    TotalSpaceField w = v;
    return make_field(n + k, [self, w](auto xs) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        T acc(0.0);
        for (int i = 0; i < self.n; ++i) acc = acc + self.base_part[uz(i)](xs) * w.base_part[uz(i)](xs);
        for (int a = 0; a < self.k; ++a)
            acc = acc + self.fiber_part[uz(a)](xs) * w.fiber_part[uz(a)](xs);
        return acc;
    });
}

std::vector<double> TotalSpaceForm::eval(const TotalPoint& p) const {
    auto xs = p.joined();
    auto out = eval_all(base_part, std::span<const double>(xs));
    auto f = eval_all(fiber_part, std::span<const double>(xs));
    out.insert(out.end(), f.begin(), f.end());
    return out;
}

TotalSpaceForm pullback_form(const ChartOneForm& omega, int fiber_dim) {
    const int n = omega.dim();
    TotalSpaceForm f;
    f.n = n;
    f.k = fiber_dim;
    for (int i = 0; i < n; ++i)
        f.base_part.push_back(embed_field(omega.comps[uz(i)], n + fiber_dim, 0));
    f.fiber_part.assign(uz(fiber_dim), zero_field(n + fiber_dim));
    return f;
}

TotalSpaceForm linear_oneform_pairings(int base_dim, int fiber_dim, const DualSection& phi,
                                       const std::vector<LinearVectorField>& fields,
                                       const std::vector<ScalarField>& field_pairings) {
    const int n = base_dim;
    const int k = fiber_dim;
    if (static_cast<int>(fields.size()) != n || field_pairings.size() != fields.size())
        throw ConfigError("linear_oneform_pairings: need n linear fields with pairings");
    for (const auto& p : field_pairings)
        if (p.arity() != n + k) throw ConfigError("linear_oneform_pairings: pairing arity");

    TotalSpaceForm out;
    out.n = n;
    out.k = k;
    // fiber components come from the vertical pairings directly
    for (int a = 0; a < k; ++a) out.fiber_part.push_back(embed_field(phi.comps[uz(a)], n + k, 0));

    // base components from a pointwise solve against the linear fields
    auto solve_component = [=](int want) {
        return make_field(n + k, [=](auto xs) {
            using T = std::remove_cvref_t<decltype(xs[0])>;
            std::vector<T> base_pt(xs.begin(), xs.begin() + n);
            std::span<const T> bspan(base_pt);
            std::vector<std::vector<T>> mat(uz(n), std::vector<T>(uz(n)));
            std::vector<T> rhs(uz(n));
            for (int j = 0; j < n; ++j) {
                const auto& fj = fields[uz(j)];
                for (int i = 0; i < n; ++i) mat[uz(j)][uz(i)] = fj.base.comps[uz(i)](bspan);
                // subtract the known fiber contribution c_a (G~ v)^a
                T known(0.0);
                for (int a2 = 0; a2 < k; ++a2) {
                    T gv(0.0);
                    for (int b = 0; b < k; ++b)
                        gv = gv + fj.fiber_m[uz(a2)][uz(b)](bspan) * xs[uz(n + b)];
                    known = known + phi.comps[uz(a2)](bspan) * gv;
                }
                rhs[uz(j)] = field_pairings[uz(j)](xs) - known;
            }
            auto b = solve_dense(std::move(mat), std::move(rhs));
            return b[uz(want)];
        });
    };
    for (int i = 0; i < n; ++i) out.base_part.push_back(solve_component(i));
    return out;
}

} // namespace algd
