#pragma once

#include "algd/lifts.hpp"

namespace algd {

/// The pair groupoid over the chart: elements g = (y, x), source alpha(g) = x,
/// target beta(g) = y, composition (z,y)(y,x) = (z,x), unit 1_m = (m,m).
/// Its algebroid is identified with TM via A_m = {(v,0)} at (m,m); the
/// right-invariant extension of a section X is (X(y), 0), the left-invariant
/// one is (0, X(x)).
struct PairGroupoid {
    int n = 0;

    struct Element {
        ChartPoint target; // y
        ChartPoint source; // x
    };

    static ChartPoint alpha(const Element& g) { return g.source; }
    static ChartPoint beta(const Element& g) { return g.target; }
    static Element unit(const ChartPoint& m) { return {m, m}; }
    static Element inverse(const Element& g) { return {g.source, g.target}; }

    /// (z,y)(y,x) = (z,x); the sources and targets must match.
    static Element compose(const Element& g, const Element& h) {
        if (g.source != h.target) throw ConfigError("pair groupoid: elements not composable");
        return {g.target, h.source};
    }
};

/// Vector field on the pair groupoid: two blocks of n components, each a
/// function of the 2n variables (y first, then x).
struct GroupoidField {
    int n = 0;
    std::vector<ScalarField> first;  // target-slot block, arity 2n
    std::vector<ScalarField> second; // source-slot block, arity 2n

    GroupoidField() = default;
    GroupoidField(int dim, std::vector<ScalarField> f, std::vector<ScalarField> s);

    ChartVectorField as_chart_field() const;
    static GroupoidField from_chart_field(int n, const ChartVectorField& v);
};

GroupoidField right_invariant(const ChartVectorField& x);
GroupoidField left_invariant(const ChartVectorField& x);

/// The multiplicative field x X x.
GroupoidField diagonal_field(const ChartVectorField& x);

/// Restrict a 2n-variable function to the diagonal (m,m).
ScalarField restrict_diag(const ScalarField& f);

/// Commutator as 2n-dimensional fields.
GroupoidField groupoid_bracket(const GroupoidField& a, const GroupoidField& b);

struct GroupoidVerdict {
    bool ok = false;
    double residual = 0.0;
};

/// Morphism law on composable pairs plus unit compatibility.
GroupoidVerdict is_multiplicative(const GroupoidField& xi, const ChartVectorField& x, Rng& rng,
                                  int samples = 25, double tol = 1e-9);

/// Source-projection and unit compatibility only.
GroupoidVerdict is_star(const GroupoidField& xi, const ChartVectorField& x, Rng& rng,
                        int samples = 25, double tol = 1e-9);

/// D_xi(X) = [xi, X->] restricted to units, A-part. Requires a star field.
ChartVectorField d_xi(const GroupoidField& xi, const ChartVectorField& base_x,
                      const ChartVectorField& x, Rng& rng, double tol = 1e-9);

/// The linear field on the algebroid (= TM) induced by a star field:
/// base x(m) = xi_second(m,m), fiber matrix d(xi_first)/dy at the diagonal.
LinearVectorField lie_functor_lift(const GroupoidField& xi, const ChartVectorField& base_x,
                                   Rng& rng, double tol = 1e-9);

/// Star field over x built like the extension construction: second block
/// exactly x(x), first block x(y) plus terms vanishing on the diagonal.
GroupoidField random_star_field(const ChartVectorField& x, Rng& rng);

/// Affine test (translation bisections at sampled composable pairs) plus
/// alpha/beta projectability, then the splitting xi = multiplicative + X->.
struct AffineDecomposition {
    bool affine = false;
    bool projectable = false;
    double affine_residual = 0.0;
    double projectable_residual = 0.0;
    ChartVectorField right_section;  // X with xi = eta + X->
    GroupoidField multiplicative_part;
    GroupoidVerdict multiplicative_check;
};
AffineDecomposition affine_decompose(const GroupoidField& xi, Rng& rng, int samples = 25,
                                     double tol = 1e-8);

/// For multiplicative F (F(z,x) = F(z,y) + F(y,x)) and multiplicative xi,
/// checks that xi(F) is multiplicative again.
struct MultiplicativeFunctionVerdict {
    double precondition_residual = 0.0;
    double result_residual = 0.0;
    bool ok = false;
};
MultiplicativeFunctionVerdict multiplicative_function_check(const ScalarField& f,
                                                            const GroupoidField& xi, Rng& rng,
                                                            int samples = 25, double tol = 1e-8);

} // namespace algd
