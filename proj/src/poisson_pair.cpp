#include "algd/poisson_pair.hpp"

namespace algd {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

std::vector<double> join2(const ChartPoint& y, const ChartPoint& x) {
    std::vector<double> g = y;
    g.insert(g.end(), x.begin(), x.end());
    return g;
}

/// m |-> derivative of the groupoid function F at (m,m) along (Z(m), 0),
/// i.e. the action of a section of the algebroid on F at units.
ScalarField section_derivative_on_units(const ScalarField& f, const ChartVectorField& z) {
    const int n = z.dim();
    if (f.arity() != 2 * n) throw ConfigError("section_derivative_on_units: arity");
    return make_field(n, [f, z, n](auto xs) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        std::vector<T> pt(uz(2 * n)), dir(uz(2 * n), T(0.0));
        for (int i = 0; i < n; ++i) pt[uz(i)] = pt[uz(n + i)] = xs[uz(i)];
        auto zv = z(xs);
        for (int i = 0; i < n; ++i) dir[uz(i)] = zv[uz(i)];
        return detail::derive_along(f, std::span<const T>(pt), std::span<const T>(dir));
    });
}

ScalarField form_field_pairing(const GroupoidOneForm& w, const GroupoidField& v) {
    if (w.n != v.n) throw ConfigError("form/field pairing: dimension mismatch");
    GroupoidOneForm wc = w;
    GroupoidField vc = v;
    return make_field(2 * w.n, [wc, vc](auto xs) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        T acc(0.0);
        for (int i = 0; i < wc.n; ++i) {
            acc = acc + wc.first[uz(i)](xs) * vc.first[uz(i)](xs);
            acc = acc + wc.second[uz(i)](xs) * vc.second[uz(i)](xs);
        }
        return acc;
    });
}

ChartOneForm derived_star_base(const GroupoidOneForm& w) {
    std::vector<ScalarField> comps;
    for (int i = 0; i < w.n; ++i) comps.push_back(-restrict_diag(w.second[uz(i)]));
    return ChartOneForm(std::move(comps));
}

ChartOneForm to_chart(const TotalSpaceForm& f) {
    std::vector<ScalarField> comps = f.base_part;
    comps.insert(comps.end(), f.fiber_part.begin(), f.fiber_part.end());
    return ChartOneForm(std::move(comps));
}

} // namespace

GroupoidOneForm::GroupoidOneForm(int dim, std::vector<ScalarField> f, std::vector<ScalarField> s)
    : n(dim), first(std::move(f)), second(std::move(s)) {
    if (static_cast<int>(first.size()) != n || static_cast<int>(second.size()) != n)
        throw ConfigError("groupoid one-form: component counts");
    for (const auto& c : first)
        if (c.arity() != 2 * n) throw ConfigError("groupoid one-form: component arity");
    for (const auto& c : second)
        if (c.arity() != 2 * n) throw ConfigError("groupoid one-form: component arity");
}

ChartOneForm GroupoidOneForm::as_chart_form() const {
    std::vector<ScalarField> comps = first;
    comps.insert(comps.end(), second.begin(), second.end());
    return ChartOneForm(std::move(comps));
}

GroupoidOneForm GroupoidOneForm::from_chart_form(int n, const ChartOneForm& w) {
    if (w.dim() != 2 * n || w.arity() != 2 * n)
        throw ConfigError("groupoid one-form: chart form shape");
    std::vector<ScalarField> f(w.comps.begin(), w.comps.begin() + n);
    std::vector<ScalarField> s(w.comps.begin() + n, w.comps.end());
    return GroupoidOneForm(n, std::move(f), std::move(s));
}

CoarsePoissonGroupoid::CoarsePoissonGroupoid(int dim, Bivector p) : n(dim), pi(std::move(p)) {
    if (pi.n != n || (n > 1 && pi.arity() != n))
        throw ConfigError("coarse groupoid: bivector shape mismatch");
}

namespace {

Bivector product_of(const Bivector& pi, double first_sign, double second_sign) {
    const int n = pi.n;
    const int d = 2 * n;
    std::vector<ScalarField> upper;
    upper.reserve(uz(d * (d - 1) / 2));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            if (j < n)
                upper.push_back(first_sign * embed_field(pi.component(i, j), d, 0));
            else if (i >= n)
                upper.push_back(second_sign * embed_field(pi.component(i - n, j - n), d, n));
            else
                upper.push_back(zero_field(d));
        }
    return Bivector(d, std::move(upper));
}

} // namespace

Bivector CoarsePoissonGroupoid::product_structure() const { return product_of(pi, -1.0, 1.0); }

Bivector CoarsePoissonGroupoid::reversed_structure() const { return product_of(pi, 1.0, -1.0); }

std::vector<ScalarField> target_projection(const GroupoidOneForm& w) { return w.first; }

std::vector<ScalarField> source_projection(const GroupoidOneForm& w) {
    std::vector<ScalarField> out;
    out.reserve(w.second.size());
    for (const auto& c : w.second) out.push_back(-c);
    return out;
}

std::pair<std::vector<double>, std::vector<double>> cotangent_projections(
    const CoarsePoissonGroupoid& g, const ChartPoint& y, const ChartPoint& x,
    const std::vector<double>& covector) {
    if (static_cast<int>(covector.size()) != 2 * g.n)
        throw ConfigError("cotangent_projections: covector size");
    std::vector<double> beta_side(covector.begin(), covector.begin() + g.n);
    std::vector<double> alpha_side(uz(g.n));
    for (int i = 0; i < g.n; ++i) alpha_side[uz(i)] = -covector[uz(g.n + i)];
    (void)y;
    (void)x;
    return {beta_side, alpha_side};
}

GroupoidVerdict is_star_oneform(const CoarsePoissonGroupoid& g, const GroupoidOneForm& w,
                                const ChartOneForm& phi, Rng& rng, int samples, double tol) {
    if (w.n != g.n || phi.dim() != g.n) throw ConfigError("is_star_oneform: dimension mismatch");
    GroupoidVerdict v;
    for (int s = 0; s < samples; ++s) {
        auto y = rng.box_point(g.n);
        auto x = rng.box_point(g.n);
        auto gp = join2(y, x), up = join2(y, y);
        auto phix = phi(x);
        auto phiy = phi(y);
        for (int i = 0; i < g.n; ++i) {
            // source projection: -w.second = phi o alpha, everywhere
            double r1 = -w.second[uz(i)](gp) - phix[uz(i)];
            // unit values (phi, -phi)
            double r2 = w.first[uz(i)](up) - phiy[uz(i)];
            double r3 = w.second[uz(i)](up) + phiy[uz(i)];
            for (double r : {r1, r2, r3}) v.residual = std::max(v.residual, std::abs(r));
        }
    }
    v.ok = v.residual < tol;
    return v;
}

GroupoidVerdict is_multiplicative_oneform(const CoarsePoissonGroupoid& g,
                                          const GroupoidOneForm& w, const ChartOneForm& phi,
                                          Rng& rng, int samples, double tol) {
    GroupoidVerdict v = is_star_oneform(g, w, phi, rng, samples, tol);
    for (int s = 0; s < samples; ++s) {
        auto z = rng.box_point(g.n);
        auto y = rng.box_point(g.n);
        auto x = rng.box_point(g.n);
        auto g_zx = join2(z, x), g_zy = join2(z, y), g_yx = join2(y, x);
        auto phiz = phi(z);
        for (int i = 0; i < g.n; ++i) {
            // additivity over composable pairs, blockwise
            double r1 = w.first[uz(i)](g_zx) - w.first[uz(i)](g_zy);
            double r2 = w.second[uz(i)](g_zx) - w.second[uz(i)](g_yx);
            double r3 = w.second[uz(i)](g_zy) + w.first[uz(i)](g_yx);
            // target projection: w.first = phi o beta
            double r4 = w.first[uz(i)](g_zx) - phiz[uz(i)];
            for (double r : {r1, r2, r3, r4}) v.residual = std::max(v.residual, std::abs(r));
        }
    }
    v.ok = v.residual < tol;
    return v;
}

GroupoidOneForm multiplicative_pair_form(const ChartOneForm& omega) {
    const int n = omega.dim();
    std::vector<ScalarField> f, s;
    for (int i = 0; i < n; ++i) f.push_back(embed_field(omega.comps[uz(i)], 2 * n, 0));
    for (int i = 0; i < n; ++i) s.push_back(-embed_field(omega.comps[uz(i)], 2 * n, n));
    return GroupoidOneForm(n, std::move(f), std::move(s));
}

GroupoidOneForm random_star_oneform(const ChartOneForm& phi, Rng& rng) {
    const int n = phi.dim();
    std::vector<ScalarField> f, s;
    for (int i = 0; i < n; ++i) {
        ScalarField acc = embed_field(phi.comps[uz(i)], 2 * n, 0);
        for (int j = 0; j < n; ++j) {
            ScalarField r = random_polynomial(2 * n, rng);
            acc = acc + r * (coord(j, 2 * n) - coord(n + j, 2 * n));
        }
        f.push_back(acc);
    }
    for (int i = 0; i < n; ++i) s.push_back(-embed_field(phi.comps[uz(i)], 2 * n, n));
    return GroupoidOneForm(n, std::move(f), std::move(s));
}

ChartOneForm koszul_bracket(const Bivector& pi, const ChartOneForm& omega,
                            const ChartOneForm& theta) {
    if (omega.dim() != pi.n || theta.dim() != pi.n)
        throw ConfigError("koszul_bracket: dimension mismatch");
    ChartVectorField sw = bivector_sharp(pi, omega);
    ChartVectorField st = bivector_sharp(pi, theta);
    ChartOneForm lw = lie_derivative_form(sw, theta);
    ChartOneForm lt = lie_derivative_form(st, omega);
    ChartOneForm dp = exterior_derivative(pi.contract(omega, theta));
    std::vector<ScalarField> comps;
    for (int i = 0; i < pi.n; ++i)
        comps.push_back(lw.comps[uz(i)] - lt.comps[uz(i)] - dp.comps[uz(i)]);
    return ChartOneForm(std::move(comps));
}

GroupoidField groupoid_sharp(const CoarsePoissonGroupoid& g, const GroupoidOneForm& w) {
    return GroupoidField::from_chart_field(
        g.n, bivector_sharp(g.reversed_structure(), w.as_chart_form()));
}

GroupoidOneForm groupoid_form_bracket(const CoarsePoissonGroupoid& g, const GroupoidOneForm& a,
                                      const GroupoidOneForm& b) {
    return GroupoidOneForm::from_chart_form(
        g.n, koszul_bracket(g.reversed_structure(), a.as_chart_form(), b.as_chart_form()));
}

GroupoidOneForm target_pullback(const ChartOneForm& omega) {
    const int n = omega.dim();
    std::vector<ScalarField> f;
    for (int i = 0; i < n; ++i) f.push_back(embed_field(omega.comps[uz(i)], 2 * n, 0));
    std::vector<ScalarField> s(uz(n), zero_field(2 * n));
    return GroupoidOneForm(n, std::move(f), std::move(s));
}

ChartOneForm d_phi_operator(const CoarsePoissonGroupoid& g, const GroupoidOneForm& w,
                            const ChartOneForm& phi, const ChartOneForm& omega, Rng& rng,
                            int samples, double tol) {
    auto star = is_star_oneform(g, w, phi, rng, samples, tol);
    if (!star.ok)
        throw ConfigError("d_phi_operator: star check failed (residual " +
                          std::to_string(star.residual) + ")");
    GroupoidOneForm br = groupoid_form_bracket(g, w, target_pullback(omega));
    // the bracket must annihilate beta-vertical (source-slot) directions
    double vert = 0.0;
    for (int s = 0; s < samples; ++s) {
        auto pt = join2(rng.box_point(g.n), rng.box_point(g.n));
        for (int i = 0; i < g.n; ++i) vert = std::max(vert, std::abs(br.second[uz(i)](pt)));
    }
    if (vert > tol)
        throw Error("d_phi_operator: bracket does not annihilate target-vertical directions "
                    "(residual " +
                    std::to_string(vert) + "); orientation conventions are inconsistent");
    std::vector<ScalarField> comps;
    for (int i = 0; i < g.n; ++i) comps.push_back(restrict_diag(br.first[uz(i)]));
    return ChartOneForm(std::move(comps));
}

ScalarField lba_bracket(const CoarsePoissonGroupoid& g, const ChartOneForm& phi,
                        const ChartOneForm& psi, const GroupoidOneForm& w_phi,
                        const GroupoidOneForm& w_psi, const ChartVectorField& z, Rng& rng,
                        double tol) {
    auto s1 = is_star_oneform(g, w_phi, phi, rng, 20, tol);
    auto s2 = is_star_oneform(g, w_psi, psi, rng, 20, tol);
    if (!s1.ok || !s2.ok)
        throw ConfigError("lba_bracket: star checks failed (residuals " +
                          std::to_string(s1.residual) + ", " + std::to_string(s2.residual) + ")");

    ChartVectorField a_phi = bivector_sharp(g.pi, phi); // anchor on the dual side
    ChartVectorField a_psi = bivector_sharp(g.pi, psi);
    GroupoidField xi = groupoid_sharp(g, w_phi);
    GroupoidField eta = groupoid_sharp(g, w_psi);

    ChartVectorField d_eta_z = d_xi(eta, a_psi, z, rng, tol);
    ChartVectorField d_xi_z = d_xi(xi, a_phi, z, rng, tol);

    ScalarField t1 = a_phi.apply(pairing(psi, z));
    ScalarField t2 = a_psi.apply(pairing(phi, z));
    ScalarField t3 = pairing(phi, d_eta_z);
    ScalarField t4 = pairing(psi, d_xi_z);
    ScalarField t5 = section_derivative_on_units(form_field_pairing(w_psi, xi), z);

    return t1 - t2 + t3 - t4 - t5;
}

OperatorSuiteReport d_phi_theorem_suite(const CoarsePoissonGroupoid& g, const ChartOneForm& omega0,
                                        const ChartOneForm& omega, const ChartOneForm& theta,
                                        Rng& rng, int samples, double tol) {
    GroupoidOneForm w = multiplicative_pair_form(omega0);
    auto mult = is_multiplicative_oneform(g, w, omega0, rng, samples, tol);
    if (!mult.ok)
        throw ConfigError("d_phi_theorem_suite: multiplicativity check failed (residual " +
                          std::to_string(mult.residual) + ")");

    OperatorSuiteReport rep;
    ChartOneForm d_w_omega = d_phi_operator(g, w, omega0, omega, rng, samples, tol);
    ChartOneForm kz = koszul_bracket(g.pi, omega0, omega);
    for (int s = 0; s < samples; ++s) {
        auto m = rng.box_point(g.n);
        auto a = d_w_omega(m);
        auto b = kz(m);
        for (int i = 0; i < g.n; ++i)
            rep.koszul_reduction = std::max(rep.koszul_reduction, std::abs(a[uz(i)] - b[uz(i)]));
    }

    // groupoid bracket against the pullback of the reduced operator, at
    // general (not just unit) points
    GroupoidOneForm br = groupoid_form_bracket(g, w, target_pullback(omega));
    GroupoidOneForm pb = target_pullback(d_w_omega);
    for (int s = 0; s < samples; ++s) {
        auto pt = join2(rng.box_point(g.n), rng.box_point(g.n));
        for (int i = 0; i < g.n; ++i) {
            rep.pullback_bracket = std::max(
                rep.pullback_bracket, std::abs(br.first[uz(i)](pt) - pb.first[uz(i)](pt)));
            rep.pullback_bracket = std::max(
                rep.pullback_bracket, std::abs(br.second[uz(i)](pt) - pb.second[uz(i)](pt)));
        }
    }

    ChartOneForm d_w_theta = d_phi_operator(g, w, omega0, theta, rng, samples, tol);
    ChartOneForm lhs = d_phi_operator(g, w, omega0, koszul_bracket(g.pi, omega, theta), rng,
                                      samples, tol);
    ChartOneForm rhs1 = koszul_bracket(g.pi, d_w_omega, theta);
    ChartOneForm rhs2 = koszul_bracket(g.pi, omega, d_w_theta);
    for (int s = 0; s < samples; ++s) {
        auto m = rng.box_point(g.n);
        auto a = lhs(m);
        auto b = rhs1(m);
        auto c = rhs2(m);
        for (int i = 0; i < g.n; ++i)
            rep.derivation =
                std::max(rep.derivation, std::abs(a[uz(i)] - b[uz(i)] - c[uz(i)]));
    }
    return rep;
}

TotalSpaceForm tilde_oneform(const CoarsePoissonGroupoid& g, const GroupoidOneForm& w,
                             const ChartOneForm& phi, Rng& rng, double tol) {
    auto star = is_star_oneform(g, w, phi, rng, 20, tol);
    if (!star.ok)
        throw ConfigError("tilde_oneform: star check failed (residual " +
                          std::to_string(star.residual) + ")");
    const int n = g.n;

    std::vector<LinearVectorField> lifts;
    std::vector<ScalarField> pairings;
    for (int j = 0; j < n; ++j) {
        ChartVectorField ej = ChartVectorField::coordinate(j, n);
        GroupoidField xi_j = diagonal_field(ej);
        ScalarField f_j = form_field_pairing(w, xi_j);
        // star data pairs to zero on units; the fiber derivative along the
        // algebroid directions is then the induced fiberwise-linear function
        double on_units = 0.0;
        for (int s = 0; s < 10; ++s) {
            auto m = rng.box_point(n);
            on_units = std::max(on_units, std::abs(f_j(join2(m, m))));
        }
        if (on_units > tol)
            throw Error("tilde_oneform: pairing with a star field does not vanish on units "
                        "(residual " +
                        std::to_string(on_units) + ")");
        lifts.push_back(lie_functor_lift(xi_j, ej, rng, tol));
        pairings.push_back(make_field(2 * n, [f_j, n](auto xs) {
            using T = std::remove_cvref_t<decltype(xs[0])>;
            std::vector<T> pt(uz(2 * n)), dir(uz(2 * n), T(0.0));
            for (int i = 0; i < n; ++i) {
                pt[uz(i)] = pt[uz(n + i)] = xs[uz(i)];
                dir[uz(i)] = xs[uz(n + i)];
            }
            return detail::derive_along(f_j, std::span<const T>(pt), std::span<const T>(dir));
        }));
    }
    DualSection base{std::vector<ScalarField>(phi.comps)};
    return linear_oneform_pairings(n, n, base, lifts, pairings);
}

LinearPoissonStructure algebroid_side_poisson(const CoarsePoissonGroupoid& g) {
    return LinearPoissonStructure(cotangent_algebroid(g.pi));
}

LiftBracketReport theorem_last_suite(const CoarsePoissonGroupoid& g, const GroupoidOneForm& w_phi,
                                     const ChartOneForm& phi, const GroupoidOneForm& w_psi,
                                     const ChartOneForm& psi, const ChartOneForm& omega,
                                     const ChartOneForm& theta, Rng& rng, int samples,
                                     double tol) {
    LiftBracketReport rep;
    const int n = g.n;
    Bivector pi_tp = algebroid_side_poisson(g).bivector();

    ChartOneForm tphi = to_chart(tilde_oneform(g, w_phi, phi, rng, tol));
    ChartOneForm tpsi = to_chart(tilde_oneform(g, w_psi, psi, rng, tol));

    // [w~, t~] = [w, t]~
    ChartOneForm lhs1 = koszul_bracket(pi_tp, tphi, tpsi);
    GroupoidOneForm br = groupoid_form_bracket(g, w_phi, w_psi);
    ChartOneForm rhs1 = to_chart(tilde_oneform(g, br, derived_star_base(br), rng, tol));
    for (int s = 0; s < samples; ++s) {
        auto pt = join2(rng.box_point(n), rng.box_point(n)); // (m, v)
        auto a = lhs1(pt);
        auto b = rhs1(pt);
        for (int i = 0; i < 2 * n; ++i)
            rep.bracket_homomorphism =
                std::max(rep.bracket_homomorphism, std::abs(a[uz(i)] - b[uz(i)]));
    }

    // [w~, q* omega] = q* D_w(omega)
    ChartOneForm q_omega = to_chart(pullback_form(omega, n));
    ChartOneForm lhs2 = koszul_bracket(pi_tp, tphi, q_omega);
    ChartOneForm rhs2 =
        to_chart(pullback_form(d_phi_operator(g, w_phi, phi, omega, rng, samples, tol), n));
    for (int s = 0; s < samples; ++s) {
        auto pt = join2(rng.box_point(n), rng.box_point(n));
        auto a = lhs2(pt);
        auto b = rhs2(pt);
        for (int i = 0; i < 2 * n; ++i)
            rep.pullback_operator = std::max(rep.pullback_operator, std::abs(a[uz(i)] - b[uz(i)]));
    }

    // [q* theta, q* omega] = 0
    ChartOneForm lhs3 = koszul_bracket(pi_tp, to_chart(pullback_form(theta, n)), q_omega);
    for (int s = 0; s < samples; ++s) {
        auto pt = join2(rng.box_point(n), rng.box_point(n));
        auto a = lhs3(pt);
        for (int i = 0; i < 2 * n; ++i)
            rep.pullback_commute = std::max(rep.pullback_commute, std::abs(a[uz(i)]));
    }

    // closing identity: <D_w(omega), z> - <phi, D_zeta(a**omega)> =
    // (a**omega)<w, zeta> + d omega(a* phi, z), for star fields (zeta, z)
    {
        ChartOneForm d_w_omega = d_phi_operator(g, w_phi, phi, omega, rng, samples, tol);
        ChartVectorField a_star_phi = bivector_sharp(g.pi, phi);
        // a**(omega) = -pi^#(omega) as a section of the algebroid
        ChartVectorField a_pull = [&] {
            ChartVectorField sharp_om = bivector_sharp(g.pi, omega);
            std::vector<ScalarField> comps;
            for (int i = 0; i < n; ++i) comps.push_back(-sharp_om.comps[uz(i)]);
            return ChartVectorField(std::move(comps));
        }();
        TwoForm d_omega = exterior_derivative(omega);

        auto run_case = [&](const GroupoidField& zeta, const ChartVectorField& z) {
            ChartVectorField d_zeta = d_xi(zeta, z, a_pull, rng, tol);
            ScalarField term1 = pairing(d_w_omega, z);
            ScalarField term2 = pairing(phi, d_zeta);
            ScalarField term3 =
                section_derivative_on_units(form_field_pairing(w_phi, zeta), a_pull);
            for (int s = 0; s < samples; ++s) {
                auto m = rng.box_point(n);
                double val = term1(m) - term2(m) - term3(m) - d_omega(m, a_star_phi(m), z(m));
                rep.closing_identity = std::max(rep.closing_identity, std::abs(val));
            }
        };
        run_case(groupoid_sharp(g, w_phi), a_star_phi);
        ChartVectorField z2 = random_vector_field(n, rng);
        run_case(random_star_field(z2, rng), z2);
    }
    return rep;
}

} // namespace algd
