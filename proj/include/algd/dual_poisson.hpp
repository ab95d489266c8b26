#pragma once

#include "algd/lifts.hpp"

namespace algd {

/// The fiberwise-linear Poisson structure on the dual bundle A*, generated by
/// {l_X, l_Y} = l_{[X,Y]}, {l_X, q*f} = q*(a(X)f), {q*f, q*g} = 0. The
/// bivector is derived from the algebroid on demand, never stored separately.
class LinearPoissonStructure {
  public:
    explicit LinearPoissonStructure(LieAlgebroid a) : a_(std::move(a)) {}

    const LieAlgebroid& algebroid() const { return a_; }
    int n() const { return a_.base_dim(); }
    int k() const { return a_.fiber_dim(); }

    /// Coordinate bivector on (x^i, w_a): {w_a, w_b} = C^c_{ab} w_c,
    /// {x^i, w_a} = -a^i_a, {x^i, x^j} = 0.
    Bivector bivector() const;

    /// l_X as a function on A*.
    ScalarField ell_section(const SectionA& x) const;

    /// f pulled back along the bundle projection.
    ScalarField pull(const ScalarField& f) const { return pull_to_total(f, k()); }

    ScalarField poisson_bracket(const ScalarField& f, const ScalarField& g) const {
        return poisson_bracket_fn(bivector(), f, g);
    }

    /// {F, .} as a field on A*; for F = l_X this is the field H_X with
    /// H_X(l_Y) = l_{[X,Y]} and H_X(f o q) = a(X)(f) o q.
    TotalSpaceField hamiltonian_field(const ScalarField& f) const;

    TotalSpaceField hamiltonian_of_section(const SectionA& x) const {
        return hamiltonian_field(ell_section(x));
    }

  private:
    LieAlgebroid a_;
};

/// Derivation-of-the-bracket test on the generating family
/// {l_{e_a}} u {q* x^i} at sample points on A*.
struct PoissonFieldVerdict {
    bool poisson = false;
    double residual = 0.0;
};
PoissonFieldVerdict is_poisson_field(const LinearPoissonStructure& s, const TotalSpaceField& v,
                                     Rng& rng, int samples = 25, double tol = 1e-7);

/// Coisotropy of im(phi) tested two ways: the vanishing-ideal bracket
/// {l_X - q*f_X, l_Y - q*f_Y} on im(phi) for basis sections, and the
/// independent d phi residual; the two verdicts agree.
struct CoisotropyVerdict {
    bool coisotropic = false;
    bool dphi_closed = false;
    double bracket_residual = 0.0;
    double dphi_residual = 0.0;
};
CoisotropyVerdict is_coisotropic_graph(const LinearPoissonStructure& s, const DualSection& phi,
                                       const std::vector<ChartPoint>& points, double tol = 1e-7);

/// Poisson vector fields via tangent-space coisotropy: builds the cotangent
/// algebroid of P, treats X as a section of its dual (= TP), and compares the
/// graph-coisotropy verdict with L_X pi = 0.
struct TangentCoisotropyVerdict {
    bool coisotropic = false;
    bool lie_derivative_zero = false;
    double bracket_residual = 0.0;
    double lie_residual = 0.0;
};
TangentCoisotropyVerdict poisson_field_via_tangent_coisotropy(const Bivector& p,
                                                              const ChartVectorField& x,
                                                              const std::vector<ChartPoint>& points,
                                                              double tol = 1e-7);

} // namespace algd
