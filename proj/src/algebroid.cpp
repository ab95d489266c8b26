#include "algd/algebroid.hpp"

namespace algd {

ScalarField dual_pairing(const DualSection& phi, const SectionA& x) {
    if (phi.dim() != x.dim() || phi.arity() != x.arity())
        throw ConfigError("dual_pairing: dimension mismatch");
    DualSection p = phi;
    SectionA s = x;
    return make_field(phi.arity(), [p, s](auto xs) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        T acc(0.0);
        for (std::size_t a = 0; a < p.comps.size(); ++a) acc = acc + p.comps[a](xs) * s.comps[a](xs);
        return acc;
    });
}

LieAlgebroid::LieAlgebroid(int base_dim, int fiber_dim,
                           std::vector<ChartVectorField> anchor_columns,
                           std::vector<std::vector<ScalarField>> structure_upper)
    : n_(base_dim), k_(fiber_dim), anchor_cols_(std::move(anchor_columns)),
      struct_upper_(std::move(structure_upper)) {
    if (n_ < 1) throw ConfigError("algebroid: base dimension must be >= 1");
    if (k_ < 1) throw ConfigError("algebroid: fiber dimension must be >= 1");
    if (static_cast<int>(anchor_cols_.size()) != k_)
        throw ConfigError("algebroid: expected one anchor column per frame section");
    for (const auto& col : anchor_cols_)
        if (col.dim() != n_ || col.arity() != n_)
            throw ConfigError("algebroid: anchor column has wrong shape");
    if (static_cast<int>(struct_upper_.size()) != k_ * (k_ - 1) / 2)
        throw ConfigError("algebroid: expected k(k-1)/2 structure rows");
    for (const auto& row : struct_upper_) {
        if (static_cast<int>(row.size()) != k_)
            throw ConfigError("algebroid: structure row has wrong length");
        for (const auto& f : row)
            if (f.arity() != n_) throw ConfigError("algebroid: structure entry arity");
    }
}

ScalarField LieAlgebroid::structure(int c, int a, int b) const {
    if (a < 0 || b < 0 || c < 0 || a >= k_ || b >= k_ || c >= k_)
        throw ConfigError("algebroid structure: index out of range");
    if (a == b) return zero_field(n_);
    if (a < b) return struct_upper_[pair_index(a, b)][static_cast<std::size_t>(c)];
    return -struct_upper_[pair_index(b, a)][static_cast<std::size_t>(c)];
}

SectionA LieAlgebroid::basis_section(int a) const {
    std::vector<ScalarField> comps(static_cast<std::size_t>(k_), zero_field(n_));
    comps[static_cast<std::size_t>(a)] = constant(1.0, n_);
    return SectionA(std::move(comps));
}

DualSection LieAlgebroid::basis_dual(int a) const {
    std::vector<ScalarField> comps(static_cast<std::size_t>(k_), zero_field(n_));
    comps[static_cast<std::size_t>(a)] = constant(1.0, n_);
    return DualSection(std::move(comps));
}

ChartVectorField LieAlgebroid::anchor_apply(const SectionA& x) const {
    if (x.dim() != k_ || x.arity() != n_) throw ConfigError("anchor_apply: dimension mismatch");
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        ScalarField acc = zero_field(n_);
        for (int a = 0; a < k_; ++a)
            acc = acc + anchor_cols_[static_cast<std::size_t>(a)].comps[static_cast<std::size_t>(i)] *
                            x.comps[static_cast<std::size_t>(a)];
        comps.push_back(acc);
    }
    return ChartVectorField(std::move(comps));
}

SectionA LieAlgebroid::bracket(const SectionA& x, const SectionA& y) const {
    if (x.dim() != k_ || y.dim() != k_ || x.arity() != n_ || y.arity() != n_)
        throw ConfigError("algebroid bracket: dimension mismatch");
    ChartVectorField ax = anchor_apply(x);
    ChartVectorField ay = anchor_apply(y);
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(k_));
    for (int c = 0; c < k_; ++c) {
        ScalarField acc = ax.apply(y.comps[static_cast<std::size_t>(c)]) -
                          ay.apply(x.comps[static_cast<std::size_t>(c)]);
        for (int a = 0; a < k_; ++a)
            for (int b = a + 1; b < k_; ++b) {
                // C^c_{ab}(X^a Y^b - X^b Y^a)
                acc = acc + structure(c, a, b) *
                                (x.comps[static_cast<std::size_t>(a)] *
                                     y.comps[static_cast<std::size_t>(b)] -
                                 x.comps[static_cast<std::size_t>(b)] *
                                     y.comps[static_cast<std::size_t>(a)]);
            }
        comps.push_back(acc);
    }
    return SectionA(std::move(comps));
}

DualSection LieAlgebroid::lie_derivative_dual(const SectionA& x, const DualSection& phi) const {
    if (x.dim() != k_ || phi.dim() != k_)
        throw ConfigError("lie_derivative_dual: dimension mismatch");
    ChartVectorField ax = anchor_apply(x);
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(k_));
    for (int b = 0; b < k_; ++b) {
        // <L_X phi, e_b> = a(X)(phi_b) - <phi, [X, e_b]>
        ScalarField acc = ax.apply(phi.comps[static_cast<std::size_t>(b)]);
        SectionA br = bracket(x, basis_section(b));
        for (int c = 0; c < k_; ++c)
            acc = acc - phi.comps[static_cast<std::size_t>(c)] * br.comps[static_cast<std::size_t>(c)];
        comps.push_back(acc);
    }
    return DualSection(std::move(comps));
}

ScalarField LieAlgebroid::d_phi(const DualSection& phi, const SectionA& x, const SectionA& y) const {
    ChartVectorField ax = anchor_apply(x);
    ChartVectorField ay = anchor_apply(y);
    return ax.apply(dual_pairing(phi, y)) - ay.apply(dual_pairing(phi, x)) -
           dual_pairing(phi, bracket(x, y));
}

LieAlgebroid tangent_algebroid(int n) {
    std::vector<ChartVectorField> anchor;
    anchor.reserve(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) anchor.push_back(ChartVectorField::coordinate(a, n));
    std::vector<std::vector<ScalarField>> cs(
        static_cast<std::size_t>(n * (n - 1) / 2),
        std::vector<ScalarField>(static_cast<std::size_t>(n), zero_field(n)));
    return LieAlgebroid(n, n, std::move(anchor), std::move(cs));
}

LieAlgebroid lie_algebra(int k, const std::vector<StructureEntry>& entries) {
    const int n = 1; // dummy base; all data constant, anchor zero
    std::vector<ChartVectorField> anchor(static_cast<std::size_t>(k), ChartVectorField::zero(n));
    std::vector<std::vector<ScalarField>> cs(
        static_cast<std::size_t>(k * (k - 1) / 2),
        std::vector<ScalarField>(static_cast<std::size_t>(k), zero_field(n)));
    for (const auto& e : entries) {
        if (e.a < 0 || e.b < 0 || e.c < 0 || e.a >= k || e.b >= k || e.c >= k)
            throw ConfigError("lie_algebra: structure index out of range");
        if (e.a >= e.b) throw ConfigError("lie_algebra: structure entries require a < b");
        std::size_t idx = static_cast<std::size_t>(e.a * (2 * k - e.a - 1) / 2 + (e.b - e.a - 1));
        cs[idx][static_cast<std::size_t>(e.c)] = constant(e.value, n);
    }
    return LieAlgebroid(n, k, std::move(anchor), std::move(cs));
}

LieAlgebroid cotangent_algebroid(const Bivector& pi) {
    const int n = pi.n;
    std::vector<ChartVectorField> anchor;
    anchor.reserve(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) anchor.push_back(bivector_sharp(pi, ChartOneForm::coordinate(a, n)));
    std::vector<std::vector<ScalarField>> cs;
    cs.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            std::vector<ScalarField> row;
            row.reserve(static_cast<std::size_t>(n));
            for (int c = 0; c < n; ++c) row.push_back(partial(pi.component(a, b), c));
            cs.push_back(std::move(row));
        }
    return LieAlgebroid(n, n, std::move(anchor), std::move(cs));
}

ScalarField random_polynomial(int arity, Rng& rng) {
    // degree <= 2 with coefficients in [-1,1]
    std::vector<double> c0{rng.uniform(-1.0, 1.0)};
    std::vector<double> lin(static_cast<std::size_t>(arity));
    for (auto& c : lin) c = rng.uniform(-1.0, 1.0);
    std::vector<double> quad(static_cast<std::size_t>(arity * (arity + 1) / 2));
    for (auto& c : quad) c = rng.uniform(-1.0, 1.0);
    return make_field(arity, [c0, lin, quad, arity](auto xs) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        T acc(c0[0]);
        for (int i = 0; i < arity; ++i) acc = acc + xs[static_cast<std::size_t>(i)] * lin[static_cast<std::size_t>(i)];
        std::size_t q = 0;
        for (int i = 0; i < arity; ++i)
            for (int j = i; j < arity; ++j)
                acc = acc + xs[static_cast<std::size_t>(i)] * xs[static_cast<std::size_t>(j)] * quad[q++];
        return acc;
    });
}

SectionA random_section(int n, int k, Rng& rng) {
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) comps.push_back(random_polynomial(n, rng));
    return SectionA(std::move(comps));
}

DualSection random_dual_section(int n, int k, Rng& rng) {
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) comps.push_back(random_polynomial(n, rng));
    return DualSection(std::move(comps));
}

ChartVectorField random_vector_field(int n, Rng& rng) {
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) comps.push_back(random_polynomial(n, rng));
    return ChartVectorField(std::move(comps));
}

ChartOneForm random_one_form(int n, Rng& rng) {
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) comps.push_back(random_polynomial(n, rng));
    return ChartOneForm(std::move(comps));
}

ValidationReport validate(const LieAlgebroid& a, const std::vector<ChartPoint>& points, Rng& rng,
                          double tol) {
    if (points.empty()) throw ConfigError("validate: empty sample set");
    ValidationReport rep;
    rep.tol = tol;
    rep.worst_point = points.front();

    const int n = a.base_dim();
    const int k = a.fiber_dim();

    std::vector<SectionA> sections;
    for (int i = 0; i < k; ++i) sections.push_back(a.basis_section(i));
    for (int i = 0; i < 3; ++i) sections.push_back(random_section(n, k, rng));

    double worst_overall = -1.0;
    auto note = [&](double r, const ChartPoint& p, const char* what, double& slot) {
        slot = std::max(slot, r);
        if (r > worst_overall) {
            worst_overall = r;
            rep.worst_point = p;
            rep.worst_check = what;
        }
    };

    // anchor preserves brackets: a([X,Y]) = [a(X), a(Y)]
    for (std::size_t i = 0; i < sections.size(); ++i)
        for (std::size_t j = i + 1; j < sections.size(); ++j) {
            ChartVectorField lhs = a.anchor_apply(a.bracket(sections[i], sections[j]));
            ChartVectorField rhs = lie_bracket(a.anchor_apply(sections[i]), a.anchor_apply(sections[j]));
            for (const auto& p : points) {
                auto l = lhs(p);
                auto r = rhs(p);
                for (int c = 0; c < n; ++c)
                    note(std::abs(l[static_cast<std::size_t>(c)] - r[static_cast<std::size_t>(c)]), p,
                         "anchor-morphism", rep.anchor_residual);
            }
        }

    // Jacobi on section triples
    for (std::size_t i = 0; i < sections.size(); ++i)
        for (std::size_t j = i + 1; j < sections.size(); ++j)
            for (std::size_t l = j + 1; l < sections.size(); ++l) {
                SectionA s = a.bracket(a.bracket(sections[i], sections[j]), sections[l]);
                SectionA t = a.bracket(a.bracket(sections[j], sections[l]), sections[i]);
                SectionA u = a.bracket(a.bracket(sections[l], sections[i]), sections[j]);
                for (const auto& p : points) {
                    auto sv = s(p);
                    auto tv = t(p);
                    auto uv = u(p);
                    for (int c = 0; c < k; ++c) {
                        auto cc = static_cast<std::size_t>(c);
                        note(std::abs(sv[cc] + tv[cc] + uv[cc]), p, "jacobi", rep.jacobi_residual);
                    }
                }
            }

    return rep;
}

} // namespace algd
