#pragma once

#include "algd/model.hpp"
#include "algd/report.hpp"

namespace algd {

struct SuiteOptions {
    std::uint64_t seed = 1;
    int points = 30;
    double tol_override = 0.0; // 0 keeps per-check defaults
};

/// Run one of the invariant batteries ("lifts", "dual", "pair",
/// "poisson-pair") or all of them, over every applicable model in the
/// gallery. One check entry per anchor; residuals aggregate across models.
SuiteReport run_suite(const std::string& name, const std::vector<Model>& gallery,
                      const SuiteOptions& opt);

/// Algebroid axioms plus bivector Jacobi residuals for each model.
SuiteReport run_validation(const std::vector<Model>& gallery, const SuiteOptions& opt);

/// The fixed anchor set of each suite; reports must carry exactly these.
std::vector<std::string> suite_anchor_set(const std::string& name);

/// Boolean-agreement battery between the derivation test on linear fields
/// and the Poisson test on their duals, with designed-true and designed-false
/// operators mixed into random ones.
struct MorphicAgreement {
    int cases = 0;
    int disagreements = 0;
    int designed_true = 0;
    int designed_false = 0;
    bool designed_verdicts_ok = true;
};
MorphicAgreement morphic_poisson_agreement(const LieAlgebroid& a, Rng& rng, int random_cases,
                                           const std::vector<ChartPoint>& pts, double tol);

/// Max residual between the operator of the functor lift and the bracket
/// operator, over seeded star fields on the pair groupoid.
double lift_operator_agreement(int base_dim, Rng& rng, int fields, int points);

/// Max |explicit dual bracket - <Koszul, Z>| over seeded cases.
double lba_koszul_residual(const CoarsePoissonGroupoid& g, Rng& rng, int cases, int points);

/// Coisotropy battery: graph cases and tangent-field cases; returns total
/// cases and verdict disagreements between the two routes.
struct CoisotropyBattery {
    int cases = 0;
    int disagreements = 0;
};
CoisotropyBattery coisotropy_agreement(Rng& rng, int random_cases, int points, double tol);

} // namespace algd
