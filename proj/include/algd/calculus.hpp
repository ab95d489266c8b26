#pragma once

#include "algd/chart.hpp"

namespace algd {

/// [x,y]^i = x^j d_j y^i - y^j d_j x^i, with exact forward-mode derivatives.
ChartVectorField lie_bracket(const ChartVectorField& x, const ChartVectorField& y);

/// df as a 1-form.
ChartOneForm exterior_derivative(const ScalarField& f);

/// d(omega), with (d omega)_{ij} = d_i omega_j - d_j omega_i.
TwoForm exterior_derivative(const ChartOneForm& omega);

/// Cartan formula: L_x omega = d(i_x omega) + i_x(d omega).
ChartOneForm lie_derivative_form(const ChartVectorField& x, const ChartOneForm& omega);

/// (pi^# omega)^j = sum_i pi^{ij} omega_i, i.e. pi^#(omega) = pi(omega, .).
/// With this orientation the Hamiltonian field of F is pi^#(dF).
ChartVectorField bivector_sharp(const Bivector& pi, const ChartOneForm& omega);

/// {F,G} = pi(dF, dG).
ScalarField poisson_bracket_fn(const Bivector& pi, const ScalarField& f, const ScalarField& g);

/// Hamiltonian vector field pi^#(dF) = {F, .}.
ChartVectorField hamiltonian_of(const Bivector& pi, const ScalarField& f);

/// Jacobi (Schouten) residual J^{ijk} = pi^{li} d_l pi^{jk} + cyclic, as fields
/// indexed by i<j<k. Empty for n < 3 (every bivector is then Poisson).
std::vector<ScalarField> jacobi_residual(const Bivector& pi);

/// Max |J^{ijk}| over the given points.
double max_jacobi_residual(const Bivector& pi, const std::vector<ChartPoint>& pts);

/// (L_x pi)^{ij} = x^l d_l pi^{ij} - pi^{lj} d_l x^i - pi^{il} d_l x^j.
Bivector lie_derivative_bivector(const ChartVectorField& x, const Bivector& pi);

/// Classical fixed-step RK4 approximation of the time-t flow of x from p.
ChartPoint flow_rk4(const ChartVectorField& x, const ChartPoint& p, double t, int steps);

} // namespace algd
