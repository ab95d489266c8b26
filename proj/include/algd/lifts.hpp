#pragma once

#include "algd/algebroid.hpp"
#include "algd/linsolve.hpp"

namespace algd {

/// Point of the total space of A (or A* in dual contexts): base point plus
/// fiber components.
struct TotalPoint {
    ChartPoint base;
    std::vector<double> fiber;

    std::vector<double> joined() const {
        std::vector<double> out = base;
        out.insert(out.end(), fiber.begin(), fiber.end());
        return out;
    }
};

/// Tangent vector to the total space at a TotalPoint.
struct TotalTangent {
    TotalPoint at;
    std::vector<double> base_dir;
    std::vector<double> fiber_dir;
};

/// General vector field on the total space, components functions of the n
/// base and k fiber variables (base variables first).
struct TotalSpaceField {
    int n = 0, k = 0;
    std::vector<ScalarField> base_part;  // n components, arity n+k
    std::vector<ScalarField> fiber_part; // k components, arity n+k

    TotalSpaceField() = default;
    TotalSpaceField(int base_dim, int fiber_dim, std::vector<ScalarField> bp,
                    std::vector<ScalarField> fp);

    int arity() const { return n + k; }

    /// View as a plain vector field on (n+k)-space.
    ChartVectorField as_chart_field() const;

    TotalTangent eval(const TotalPoint& p) const;

    /// Apply to a function on the total space.
    ScalarField apply(const ScalarField& f) const { return as_chart_field().apply(f); }

    static TotalSpaceField from_chart_field(int base_dim, int fiber_dim,
                                            const ChartVectorField& v);
};

/// Commutator of total-space fields.
TotalSpaceField total_bracket(const TotalSpaceField& a, const TotalSpaceField& b);

/// Vector field on a vector bundle that is linear over the base: base part
/// x(m) plus fiber part G^a_b(m) v^b. Equivalent data to a covariant
/// differential operator; the sign conventions are fixed in cdo_from_linear.
struct LinearVectorField {
    ChartVectorField base;                         // n comps, arity n
    std::vector<std::vector<ScalarField>> fiber_m; // k x k, arity n

    int n() const { return base.dim(); }
    int k() const { return static_cast<int>(fiber_m.size()); }

    TotalSpaceField as_total() const;
};

/// First-order operator on sections over a base field: D(X)^a = x(X^a) + G^a_b X^b.
struct CovDiffOp {
    ChartVectorField base;
    std::vector<std::vector<ScalarField>> gamma; // k x k, arity n

    int n() const { return base.dim(); }
    int k() const { return static_cast<int>(gamma.size()); }

    SectionA apply(const SectionA& x) const;

    /// Dual operator: <D* phi, X> = x<phi,X> - <phi, D X>.
    DualSection apply_dual(const DualSection& phi) const;
};

/// The two faces of the linear-field/CDO correspondence. The coordinate
/// relation G = -G~ is fixed by requiring xi(l_phi) = l_{D* phi}.
LinearVectorField linear_from_cdo(const CovDiffOp& d);
CovDiffOp cdo_from_linear(const LinearVectorField& xi);

/// Fiberwise-linear function l_phi(m,v) = phi_a(m) v^a on the total space.
ScalarField ell(const DualSection& phi);

/// Pullback of a base function to the total space (k extra fiber variables).
ScalarField pull_to_total(const ScalarField& f, int fiber_dim);

/// Embed a base-variable field into a wider variable list starting at `offset`.
ScalarField embed_field(const ScalarField& f, int total_arity, int offset);

/// Core (vertical) lift: X^(m,v) = (0, X(m)).
TotalSpaceField vertical_lift(const SectionA& x);

/// Vertical tangent at X parallel to Y (same base point required).
TotalTangent translation_tau(const TotalPoint& x, const std::vector<double>& y_fiber);

/// Directional derivative of a total-space function along a TotalTangent.
double tangent_apply(const TotalTangent& t, const ScalarField& f);

/// Linearity test: samples fiber additivity and homogeneity and base-part
/// independence of the fiber variables.
struct LinearityVerdict {
    bool linear = false;
    double residual = 0.0;
};
LinearityVerdict is_linear(const TotalSpaceField& xi, Rng& rng, int samples = 20,
                           double tol = 1e-9);

/// Linear field with base a(X) whose CDO is bracketing by X.
LinearVectorField complete_lift(const LieAlgebroid& a, const SectionA& x);

/// D(X)(m) for the CDO of a linear field; when X(m) = 0 this is the intrinsic
/// derivative of X along xi at m.
std::vector<double> intrinsic_derivative(const LinearVectorField& xi, const SectionA& x,
                                         const ChartPoint& m);

/// Tangent pairing of a tangent to A* with a tangent to A over the same base
/// tangent, computed from extending sections (the value is extension-free).
double tangent_pairing(const TotalTangent& on_dual, const TotalTangent& on_a,
                       const DualSection& phi_ext, const SectionA& x_ext);

/// The dual linear field on A*: same base, fiber matrix -G~^T; annihilates
/// the tangent pairing against the original field.
LinearVectorField dual_linear_field(const LinearVectorField& xi);

/// Pointwise splitting of a field value into a combination of the given
/// linear fields plus a vertical remainder.
struct Decomposition {
    std::vector<double> coefficients;
    std::vector<double> core_remainder;
    double condition = 0.0;
};
Decomposition decompose(const TotalSpaceField& field, const TotalPoint& at,
                        const std::vector<LinearVectorField>& star_basis);

/// Derivation test for the CDO of a linear field, plus anchor compatibility
/// a(D(X)) = [x, a(X)].
struct MorphicVerdict {
    bool morphic = false;
    double derivation_residual = 0.0;
    double anchor_residual = 0.0;
};
MorphicVerdict is_morphic(const LieAlgebroid& a, const LinearVectorField& xi, Rng& rng,
                          const std::vector<ChartPoint>& points, double tol = 1e-7);

/// 1-form on the total space in coordinates (x^i, v^a).
struct TotalSpaceForm {
    int n = 0, k = 0;
    std::vector<ScalarField> base_part;  // n comps, arity n+k
    std::vector<ScalarField> fiber_part; // k comps, arity n+k

    int arity() const { return n + k; }

    ScalarField pair_with(const TotalSpaceField& v) const;
    std::vector<double> eval(const TotalPoint& p) const;
};

/// Pullback q* omega of a base 1-form (no fiber components).
TotalSpaceForm pullback_form(const ChartOneForm& omega, int fiber_dim);

/// 1-form determined pointwise by its pairings: against vertical lifts it
/// gives <phi, X> pulled back, against each supplied linear field the supplied
/// fiberwise-linear function. Built by pointwise linear solve.
TotalSpaceForm linear_oneform_pairings(int base_dim, int fiber_dim, const DualSection& phi,
                                       const std::vector<LinearVectorField>& fields,
                                       const std::vector<ScalarField>& field_pairings);

} // namespace algd
