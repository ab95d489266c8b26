#include "algd/dual_poisson.hpp"

namespace algd {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

} // namespace

Bivector LinearPoissonStructure::bivector() const {
    const int nn = n();
    const int kk = k();
    const int d = nn + kk;
    std::vector<ScalarField> upper;
    upper.reserve(uz(d * (d - 1) / 2));
    // coordinates ordered (x^0..x^{n-1}, w_0..w_{k-1})
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            if (j < nn) {
                upper.push_back(zero_field(d)); // {x^i, x^j} = 0
            } else if (i < nn) {
                int a = j - nn; // {x^i, w_a} = -a^i_a
                upper.push_back(-embed_field(a_.anchor_column(a).comps[uz(i)], d, 0));
            } else {
                int a = i - nn, b = j - nn; // {w_a, w_b} = C^c_{ab} w_c
                LieAlgebroid alg = a_;
                int nl = nn, kl = kk;
                upper.push_back(make_field(d, [alg, a, b, nl, kl](auto xs) {
                    using T = std::remove_cvref_t<decltype(xs[0])>;
                    std::vector<T> base_pt(xs.begin(), xs.begin() + nl);
                    std::span<const T> bspan(base_pt);
                    T acc(0.0);
                    for (int c = 0; c < kl; ++c)
                        acc = acc + alg.structure(c, a, b)(bspan) * xs[uz(nl + c)];
                    return acc;
                }));
            }
        }
    return Bivector(d, std::move(upper));
}

ScalarField LinearPoissonStructure::ell_section(const SectionA& x) const {
    if (x.dim() != k() || x.arity() != n()) throw ConfigError("ell_section: dimension mismatch");
    return ell(DualSection{std::vector<ScalarField>(x.comps)});
}

TotalSpaceField LinearPoissonStructure::hamiltonian_field(const ScalarField& f) const {
    if (f.arity() != n() + k()) throw ConfigError("hamiltonian_field: arity mismatch");
    return TotalSpaceField::from_chart_field(n(), k(),
                                             hamiltonian_of(bivector(), f));
}

PoissonFieldVerdict is_poisson_field(const LinearPoissonStructure& s, const TotalSpaceField& v,
                                     Rng& rng, int samples, double tol) {
    if (v.n != s.n() || v.k != s.k()) throw ConfigError("is_poisson_field: dimension mismatch");
    PoissonFieldVerdict out;

    std::vector<ScalarField> gens;
    for (int a = 0; a < s.k(); ++a) gens.push_back(s.ell_section(s.algebroid().basis_section(a)));
    for (int i = 0; i < s.n(); ++i) gens.push_back(s.pull(coord(i, s.n())));

    ChartVectorField vc = v.as_chart_field();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            ScalarField defect = vc.apply(s.poisson_bracket(gens[i], gens[j])) -
                                 s.poisson_bracket(vc.apply(gens[i]), gens[j]) -
                                 s.poisson_bracket(gens[i], vc.apply(gens[j]));
            for (int t = 0; t < samples; ++t) {
                auto p = rng.box_point(s.n() + s.k());
                out.residual = std::max(out.residual, std::abs(defect(p)));
            }
        }
    out.poisson = out.residual < tol;
    return out;
}

CoisotropyVerdict is_coisotropic_graph(const LinearPoissonStructure& s, const DualSection& phi,
                                       const std::vector<ChartPoint>& points, double tol) {
    if (phi.dim() != s.k() || phi.arity() != s.n())
        throw ConfigError("is_coisotropic_graph: dimension mismatch");
    CoisotropyVerdict out;
    const auto& alg = s.algebroid();

    for (int a = 0; a < s.k(); ++a)
        for (int b = a + 1; b < s.k(); ++b) {
            SectionA ea = alg.basis_section(a);
            SectionA eb = alg.basis_section(b);
            // vanishing-ideal generators l_X - q*<phi,X> for X = e_a, e_b
            ScalarField ga = s.ell_section(ea) - s.pull(dual_pairing(phi, ea));
            ScalarField gb = s.ell_section(eb) - s.pull(dual_pairing(phi, eb));
            ScalarField br = s.poisson_bracket(ga, gb);
            ScalarField dphi = alg.d_phi(phi, ea, eb);
            for (const auto& m : points) {
                TotalPoint on_graph{m, phi(m)};
                out.bracket_residual =
                    std::max(out.bracket_residual, std::abs(br(on_graph.joined())));
                out.dphi_residual = std::max(out.dphi_residual, std::abs(dphi(m)));
            }
        }
    out.coisotropic = out.bracket_residual < tol;
    out.dphi_closed = out.dphi_residual < tol;
    return out;
}

TangentCoisotropyVerdict poisson_field_via_tangent_coisotropy(const Bivector& p,
                                                              const ChartVectorField& x,
                                                              const std::vector<ChartPoint>& points,
                                                              double tol) {
    if (x.dim() != p.n) throw ConfigError("tangent coisotropy: dimension mismatch");
    if (max_jacobi_residual(p, points) > 1e-9)
        throw ConfigError("tangent coisotropy: bivector fails the Jacobi residual test");

    LinearPoissonStructure tp(cotangent_algebroid(p));
    // X as a section of the dual of T*P, i.e. of TP itself
    DualSection xs{std::vector<ScalarField>(x.comps)};
    CoisotropyVerdict c = is_coisotropic_graph(tp, xs, points, tol);

    TangentCoisotropyVerdict out;
    out.coisotropic = c.coisotropic;
    out.bracket_residual = c.bracket_residual;

    Bivector lx = lie_derivative_bivector(x, p);
    for (const auto& m : points)
        for (const auto& e : lx.upper)
            out.lie_residual = std::max(out.lie_residual, std::abs(e(m)));
    out.lie_derivative_zero = out.lie_residual < tol;
    return out;
}

} // namespace algd
