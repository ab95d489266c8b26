#pragma once

#include <vector>

#include "algd/calculus.hpp"
#include "algd/rng.hpp"

namespace algd {

/// Section of the bundle A: k fiber components as functions of the base point.
struct SectionA {
    std::vector<ScalarField> comps;

    SectionA() = default;
    explicit SectionA(std::vector<ScalarField> c) : comps(std::move(c)) {
        detail::require_components(comps, "section");
    }

    int dim() const { return static_cast<int>(comps.size()); }
    int arity() const { return comps.front().arity(); }

    std::vector<double> operator()(const ChartPoint& m) const {
        return eval_all(comps, std::span<const double>(m));
    }
};

/// Section of the dual bundle A*.
struct DualSection {
    std::vector<ScalarField> comps;

    DualSection() = default;
    explicit DualSection(std::vector<ScalarField> c) : comps(std::move(c)) {
        detail::require_components(comps, "dual section");
    }

    int dim() const { return static_cast<int>(comps.size()); }
    int arity() const { return comps.front().arity(); }

    std::vector<double> operator()(const ChartPoint& m) const {
        return eval_all(comps, std::span<const double>(m));
    }
};

/// <phi, X> as a field on the base.
ScalarField dual_pairing(const DualSection& phi, const SectionA& x);

/// Trivialized Lie algebroid over the global chart: anchor columns a(e_a) and
/// antisymmetric structure functions C^c_{ab} (stored for a < b).
class LieAlgebroid {
  public:
    LieAlgebroid(int base_dim, int fiber_dim, std::vector<ChartVectorField> anchor_columns,
                 std::vector<std::vector<ScalarField>> structure_upper);

    int base_dim() const { return n_; }
    int fiber_dim() const { return k_; }

    const ChartVectorField& anchor_column(int a) const {
        return anchor_cols_[static_cast<std::size_t>(a)];
    }

    /// C^c_{ab}, antisymmetric in (a,b) by storage.
    ScalarField structure(int c, int a, int b) const;

    SectionA basis_section(int a) const;
    DualSection basis_dual(int a) const;

    /// a(X)^i = a^i_a X^a.
    ChartVectorField anchor_apply(const SectionA& x) const;

    /// [X,Y]^c = C^c_{ab} X^a Y^b + a(X)(Y^c) - a(Y)(X^c).
    SectionA bracket(const SectionA& x, const SectionA& y) const;

    /// <L_X phi, Y> = a(X)<phi,Y> - <phi,[X,Y]>, realized componentwise.
    DualSection lie_derivative_dual(const SectionA& x, const DualSection& phi) const;

    /// d phi(X,Y) = a(X)<phi,Y> - a(Y)<phi,X> - <phi,[X,Y]>.
    ScalarField d_phi(const DualSection& phi, const SectionA& x, const SectionA& y) const;

  private:
    int n_, k_;
    std::vector<ChartVectorField> anchor_cols_;          // k entries
    std::vector<std::vector<ScalarField>> struct_upper_; // pair (a<b) -> k entries

    std::size_t pair_index(int a, int b) const {
        return static_cast<std::size_t>(a * (2 * k_ - a - 1) / 2 + (b - a - 1));
    }
};

/// Tangent algebroid: anchor identity, C == 0.
LieAlgebroid tangent_algebroid(int n);

/// Lie algebra as an algebroid over a 1-dimensional dummy base: zero anchor,
/// constant structure. Entries are (a, b, c, value) with a < b.
struct StructureEntry {
    int a, b, c;
    double value;
};
LieAlgebroid lie_algebra(int k, const std::vector<StructureEntry>& entries);

/// Cotangent algebroid of a bivector: anchor a(dx^a) = pi^#(dx^a) and frame
/// bracket [dx^a, dx^b] = d(pi^{ab}), i.e. C^c_{ab} = d_c pi^{ab}.
LieAlgebroid cotangent_algebroid(const Bivector& pi);

/// Numeric axiom check at sample points: anchor is bracket-preserving and the
/// section bracket satisfies Jacobi, over basis and random polynomial sections.
struct ValidationReport {
    double anchor_residual = 0.0;
    double jacobi_residual = 0.0;
    ChartPoint worst_point;
    std::string worst_check;
    double tol = 1e-9;

    bool pass() const { return anchor_residual < tol && jacobi_residual < tol; }
};

ValidationReport validate(const LieAlgebroid& a, const std::vector<ChartPoint>& points,
                          Rng& rng, double tol = 1e-9);

/// Random polynomial section of degree <= 2 with coefficients in [-1,1].
SectionA random_section(int n, int k, Rng& rng);
DualSection random_dual_section(int n, int k, Rng& rng);
ChartVectorField random_vector_field(int n, Rng& rng);
ChartOneForm random_one_form(int n, Rng& rng);
ScalarField random_polynomial(int arity, Rng& rng);

} // namespace algd
