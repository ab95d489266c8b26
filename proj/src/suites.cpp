#include "algd/suites.hpp"

#include <chrono>
#include <sstream>
#include <functional>
#include <map>

namespace algd {

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

struct Accum {
    double residual = 0.0;
    int points = 0;
    void note(double r) {
        residual = std::max(residual, std::abs(r));
        ++points;
    }
    void note_bool(bool agree) { note(agree ? 0.0 : 1.0); }
};

class Battery {
  public:
    Battery(SuiteReport& rep, const SuiteOptions& opt) : rep_(rep), opt_(opt) {}

    void check(const std::string& anchor, const std::string& label, double default_tol,
               const std::function<void(Rng&, Accum&)>& fn) {
        auto start = std::chrono::steady_clock::now();
        Rng rng = derived_rng(opt_.seed, anchor);
        Accum acc;
        fn(rng, acc);
        CheckResult c;
        c.label = label;
        c.anchor = anchor;
        c.residual = acc.residual;
        c.tol = opt_.tol_override > 0 ? opt_.tol_override : default_tol;
        c.pass = c.residual < c.tol;
        c.points = acc.points;
        c.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
                   .count();
        rep_.checks.push_back(c);
    }

  private:
    SuiteReport& rep_;
    const SuiteOptions& opt_;
};

std::vector<ChartPoint> box_points(Rng& rng, int n, int count) {
    std::vector<ChartPoint> pts;
    for (int i = 0; i < count; ++i) pts.push_back(rng.box_point(n));
    return pts;
}

double field_distance(const TotalSpaceField& a, const TotalSpaceField& b, Rng& rng, int count) {
    double worst = 0.0;
    for (int t = 0; t < count; ++t) {
        TotalPoint p{rng.box_point(a.n), rng.box_point(a.k)};
        auto ea = a.eval(p), eb = b.eval(p);
        for (std::size_t i = 0; i < ea.base_dir.size(); ++i)
            worst = std::max(worst, std::abs(ea.base_dir[i] - eb.base_dir[i]));
        for (std::size_t i = 0; i < ea.fiber_dir.size(); ++i)
            worst = std::max(worst, std::abs(ea.fiber_dir[i] - eb.fiber_dir[i]));
    }
    return worst;
}

/// Damped random section: keeps RK4 trajectories from [-1,1]^n bounded over
/// unit time, which the flow tolerances assume.
SectionA tame_section(const LieAlgebroid& a, Rng& rng) {
    SectionA s = random_section(a.base_dim(), a.fiber_dim(), rng);
    for (auto& c : s.comps) c = 0.3 * c;
    return s;
}

CovDiffOp random_cdo(const LieAlgebroid& a, Rng& rng) {
    CovDiffOp d;
    d.base = random_vector_field(a.base_dim(), rng);
    d.gamma.assign(uz(a.fiber_dim()), std::vector<ScalarField>());
    for (int i = 0; i < a.fiber_dim(); ++i)
        for (int j = 0; j < a.fiber_dim(); ++j)
            d.gamma[uz(i)].push_back(random_polynomial(a.base_dim(), rng));
    return d;
}

/// Models carrying a VALID algebroid. The identity batteries assume the
/// axioms hold, so deliberately corrupted gallery entries are screened out
/// here (they still fail `validate`, which is their purpose).
std::vector<const Model*> with_algebroid(const std::vector<Model>& gallery) {
    std::vector<const Model*> out;
    for (const auto& m : gallery) {
        if (!m.algebroid) continue;
        Rng rng = derived_rng(0xA15EBA0ull, m.name);
        auto pts = box_points(rng, m.base_dim, 12);
        if (validate(*m.algebroid, pts, rng).pass()) out.push_back(&m);
    }
    return out;
}

std::vector<CoarsePoissonGroupoid> poisson_cases(const std::vector<Model>& gallery) {
    std::vector<CoarsePoissonGroupoid> out;
    for (const auto& m : gallery)
        if (m.poisson_pair)
            out.emplace_back(m.base_dim, m.bivector_named(m.poisson_pair->bivector));
    return out;
}

std::vector<int> base_dims(const std::vector<Model>& gallery) {
    std::vector<int> dims;
    for (const auto& m : gallery) {
        int n = std::min(m.base_dim, 2);
        if (std::find(dims.begin(), dims.end(), n) == dims.end()) dims.push_back(n);
    }
    if (dims.empty()) dims = {1, 2};
    std::sort(dims.begin(), dims.end());
    return dims;
}

void suite_lifts(Battery& bat, const std::vector<Model>& gallery, const SuiteOptions& opt) {
    auto algs = with_algebroid(gallery);

    bat.check("lifts.linear.bracket-closure",
              "commutators of linear vector fields are linear", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      SectionA x = random_section(a.base_dim(), a.fiber_dim(), rng);
                      SectionA y = random_section(a.base_dim(), a.fiber_dim(), rng);
                      TotalSpaceField br = total_bracket(complete_lift(a, x).as_total(),
                                                         complete_lift(a, y).as_total());
                      auto v = is_linear(br, rng, opt.points / 2 + 5);
                      acc.note(v.residual);
                  }
              });

    bat.check("lifts.lift.homomorphism",
              "complete lifts respect brackets against lifts and verticals", 1e-8,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      SectionA x = random_section(a.base_dim(), a.fiber_dim(), rng);
                      SectionA y = random_section(a.base_dim(), a.fiber_dim(), rng);
                      TotalSpaceField lhs1 = total_bracket(complete_lift(a, x).as_total(),
                                                           complete_lift(a, y).as_total());
                      TotalSpaceField rhs1 = complete_lift(a, a.bracket(x, y)).as_total();
                      acc.note(field_distance(lhs1, rhs1, rng, opt.points / 2 + 5));
                      TotalSpaceField lhs2 =
                          total_bracket(complete_lift(a, x).as_total(), vertical_lift(y));
                      TotalSpaceField rhs2 = vertical_lift(a.bracket(x, y));
                      acc.note(field_distance(lhs2, rhs2, rng, opt.points / 2 + 5));
                  }
              });

    bat.check("lifts.core.commute", "vertical lifts commute", 1e-12,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      SectionA x = random_section(a.base_dim(), a.fiber_dim(), rng);
                      SectionA y = random_section(a.base_dim(), a.fiber_dim(), rng);
                      TotalSpaceField br = total_bracket(vertical_lift(x), vertical_lift(y));
                      for (int t = 0; t < opt.points; ++t) {
                          TotalPoint p{rng.box_point(br.n), rng.box_point(br.k)};
                          auto e = br.eval(p);
                          for (double c : e.base_dir) acc.note(c);
                          for (double c : e.fiber_dir) acc.note(c);
                      }
                  }
              });

    bat.check("lifts.cdo.bracket-preserving",
              "the linear-field/operator correspondence preserves brackets", 1e-8,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      const int n = a.base_dim(), k = a.fiber_dim();
                      SectionA x = random_section(n, k, rng);
                      SectionA y = random_section(n, k, rng);
                      LinearVectorField xi = complete_lift(a, x);
                      LinearVectorField eta = complete_lift(a, y);
                      TotalSpaceField br = total_bracket(xi.as_total(), eta.as_total());
                      CovDiffOp d_br;
                      {
                          std::vector<ScalarField> base;
                          for (int i = 0; i < n; ++i) {
                              ScalarField comp = br.base_part[uz(i)];
                              base.push_back(make_field(n, [comp, n, k](auto xs) {
                                  using T = std::remove_cvref_t<decltype(xs[0])>;
                                  std::vector<T> tp(xs.begin(), xs.end());
                                  tp.resize(uz(n + k), T(0.0));
                                  return comp(std::span<const T>(tp));
                              }));
                          }
                          d_br.base = ChartVectorField(std::move(base));
                          d_br.gamma.assign(uz(k), std::vector<ScalarField>());
                          for (int i = 0; i < k; ++i)
                              for (int b = 0; b < k; ++b) {
                                  ScalarField comp = br.fiber_part[uz(i)];
                                  int slot = n + b;
                                  d_br.gamma[uz(i)].push_back(-make_field(n, [comp, n, k,
                                                                               slot](auto xs) {
                                      using T = std::remove_cvref_t<decltype(xs[0])>;
                                      std::vector<T> tp(xs.begin(), xs.end());
                                      tp.resize(uz(n + k), T(0.0));
                                      return detail::derive_coord(comp, std::span<const T>(tp),
                                                                  slot);
                                  }));
                              }
                      }
                      SectionA s = random_section(n, k, rng);
                      SectionA lhs = d_br.apply(s);
                      SectionA r1 = cdo_from_linear(xi).apply(cdo_from_linear(eta).apply(s));
                      SectionA r2 = cdo_from_linear(eta).apply(cdo_from_linear(xi).apply(s));
                      for (const auto& p : box_points(rng, n, opt.points / 3 + 3)) {
                          auto l = lhs(p);
                          auto a1 = r1(p);
                          auto a2 = r2(p);
                          for (int c = 0; c < k; ++c)
                              acc.note(l[uz(c)] - a1[uz(c)] + a2[uz(c)]);
                      }
                  }
              });

    bat.check("lifts.flow.fiber-linear", "flows of linear fields are fiberwise linear", 1e-6,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      SectionA x = tame_section(a, rng);
                      ChartVectorField f = complete_lift(a, x).as_total().as_chart_field();
                      const int n = a.base_dim(), k = a.fiber_dim();
                      for (double t : {0.1, 0.5, 1.0}) {
                          ChartPoint mm = rng.box_point(n);
                          auto v = rng.box_point(k);
                          auto w = rng.box_point(k);
                          std::vector<double> sum(uz(k));
                          for (int i = 0; i < k; ++i) sum[uz(i)] = v[uz(i)] + w[uz(i)];
                          auto fv = flow_rk4(f, TotalPoint{mm, v}.joined(), t, 64);
                          auto fw = flow_rk4(f, TotalPoint{mm, w}.joined(), t, 64);
                          auto fs = flow_rk4(f, TotalPoint{mm, sum}.joined(), t, 64);
                          for (int i = 0; i < k; ++i)
                              acc.note(fs[uz(n + i)] - fv[uz(n + i)] - fw[uz(n + i)]);
                      }
                  }
              });

    bat.check("lifts.flow.dual-pairing",
              "the dual field flows by the inverse transpose of the flow", 1e-5,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      const int n = a.base_dim(), k = a.fiber_dim();
                      SectionA x = tame_section(a, rng);
                      LinearVectorField xi = complete_lift(a, x);
                      ChartVectorField fa = xi.as_total().as_chart_field();
                      ChartVectorField fd = dual_linear_field(xi).as_total().as_chart_field();
                      for (double t : {0.2, 0.5}) {
                          ChartPoint mm = rng.box_point(n);
                          auto w = rng.box_point(k);
                          auto moved = flow_rk4(fd, TotalPoint{mm, w}.joined(), t, 64);
                          ChartPoint m_end(moved.begin(), moved.begin() + n);
                          for (int b = 0; b < k; ++b) {
                              std::vector<double> e(uz(k), 0.0);
                              e[uz(b)] = 1.0;
                              auto back = flow_rk4(fa, TotalPoint{m_end, e}.joined(), -t, 64);
                              double lhs = moved[uz(n + b)];
                              double rhs = 0.0;
                              for (int c = 0; c < k; ++c) rhs += w[uz(c)] * back[uz(n + c)];
                              acc.note(lhs - rhs);
                          }
                      }
                  }
              });

    bat.check("lifts.pairing.extension-free",
              "the tangent pairing is independent of the extending sections", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      const int n = a.base_dim(), k = a.fiber_dim();
                      ChartPoint mm = rng.box_point(n);
                      std::vector<double> xdir = rng.box_point(n);
                      TotalTangent on_a{TotalPoint{mm, rng.box_point(k)}, xdir, rng.box_point(k)};
                      TotalTangent on_d{TotalPoint{mm, rng.box_point(k)}, xdir, rng.box_point(k)};
                      double vals[2];
                      for (int rep = 0; rep < 2; ++rep) {
                          DualSection phi = random_dual_section(n, k, rng);
                          SectionA s = random_section(n, k, rng);
                          for (int c = 0; c < k; ++c) {
                              phi.comps[uz(c)] =
                                  phi.comps[uz(c)] + (on_d.at.fiber[uz(c)] - phi.comps[uz(c)](mm));
                              s.comps[uz(c)] =
                                  s.comps[uz(c)] + (on_a.at.fiber[uz(c)] - s.comps[uz(c)](mm));
                          }
                          vals[rep] = tangent_pairing(on_d, on_a, phi, s);
                      }
                      acc.note(vals[0] - vals[1]);
                  }
              });

    bat.check("lifts.dual-field.annihilation",
              "the dual linear field annihilates the tangent pairing", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      const int n = a.base_dim(), k = a.fiber_dim();
                      LinearVectorField xi = complete_lift(a, random_section(n, k, rng));
                      TotalSpaceField xt = xi.as_total();
                      TotalSpaceField dt = dual_linear_field(xi).as_total();
                      for (int t = 0; t < opt.points / 3 + 3; ++t) {
                          ChartPoint mm = rng.box_point(n);
                          TotalPoint pa{mm, rng.box_point(k)};
                          TotalPoint pd{mm, rng.box_point(k)};
                          std::vector<ScalarField> pc, sc;
                          for (int c = 0; c < k; ++c) {
                              pc.push_back(constant(pd.fiber[uz(c)], n));
                              sc.push_back(constant(pa.fiber[uz(c)], n));
                          }
                          acc.note(tangent_pairing(dt.eval(pd), xt.eval(pa),
                                                   DualSection{std::move(pc)},
                                                   SectionA{std::move(sc)}));
                      }
                  }
              });

    bat.check("lifts.morphic.dual-agreement",
              "derivation verdicts agree with dual-side Poisson verdicts", 0.5,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      auto pts = box_points(rng, a.base_dim(), 8);
                      MorphicAgreement mg = morphic_poisson_agreement(a, rng, 6, pts, 1e-7);
                      acc.note_bool(mg.disagreements == 0 && mg.designed_verdicts_ok);
                  }
              });

    bat.check("lifts.decompose.reconstruction",
              "pointwise splitting into lifts plus verticals reconstructs fields", 1e-10,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      const int n = a.base_dim(), k = a.fiber_dim();
                      std::vector<LinearVectorField> basis;
                      for (int j = 0; j < n; ++j) {
                          SectionA s = random_section(n, k, rng);
                          LinearVectorField f = complete_lift(a, s);
                          // ensure spanning base values by mixing in coordinates
                          std::vector<ScalarField> comps;
                          for (int i = 0; i < n; ++i)
                              comps.push_back(f.base.comps[uz(i)] +
                                              (i == j ? constant(2.0, n) : zero_field(n)));
                          f.base = ChartVectorField(std::move(comps));
                          basis.push_back(f);
                      }
                      std::vector<ScalarField> bp, fp;
                      for (int i = 0; i < n; ++i) bp.push_back(random_polynomial(n + k, rng));
                      for (int i = 0; i < k; ++i) fp.push_back(random_polynomial(n + k, rng));
                      TotalSpaceField target(n, k, std::move(bp), std::move(fp));
                      for (int t = 0; t < opt.points / 3 + 3; ++t) {
                          TotalPoint at{rng.box_point(n), rng.box_point(k)};
                          Decomposition d = decompose(target, at, basis);
                          auto value = target.eval(at);
                          std::vector<double> rb(uz(n), 0.0);
                          std::vector<double> rf = d.core_remainder;
                          for (int j = 0; j < n; ++j) {
                              auto tj = basis[uz(j)].as_total().eval(at);
                              for (int i = 0; i < n; ++i)
                                  rb[uz(i)] += d.coefficients[uz(j)] * tj.base_dir[uz(i)];
                              for (int i = 0; i < k; ++i)
                                  rf[uz(i)] += d.coefficients[uz(j)] * tj.fiber_dir[uz(i)];
                          }
                          for (int i = 0; i < n; ++i) acc.note(rb[uz(i)] - value.base_dir[uz(i)]);
                          for (int i = 0; i < k; ++i) acc.note(rf[uz(i)] - value.fiber_dir[uz(i)]);
                      }
                  }
              });

    bat.check("lifts.intrinsic.vertical-identity",
              "the operator value matches the vertical defect of the section map", 1e-7,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      const int n = a.base_dim(), k = a.fiber_dim();
                      LinearVectorField xi = complete_lift(a, random_section(n, k, rng));
                      SectionA s = random_section(n, k, rng);
                      TotalSpaceField total = xi.as_total();
                      for (const auto& mm : box_points(rng, n, opt.points / 3 + 3)) {
                          auto d = intrinsic_derivative(xi, s, mm);
                          auto xv = xi.base(mm);
                          auto val = total.eval(TotalPoint{mm, s(mm)});
                          for (int c = 0; c < k; ++c) {
                              double ts = directional(s.comps[uz(c)], mm, xv);
                              acc.note(d[uz(c)] - (ts - val.fiber_dir[uz(c)]));
                          }
                      }
                  }
              });
}

void suite_dual(Battery& bat, const std::vector<Model>& gallery, const SuiteOptions& opt) {
    auto algs = with_algebroid(gallery);

    bat.check("dual.bracket.jacobi", "the fiberwise-linear bracket satisfies Jacobi", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      LinearPoissonStructure s(*m->algebroid);
                      auto pts = box_points(rng, s.n() + s.k(), opt.points);
                      acc.note(max_jacobi_residual(s.bivector(), pts));
                      acc.points += static_cast<int>(pts.size()) - 1;
                  }
              });

    bat.check("dual.bracket.generators",
              "generating bracket relations of the dual structure", 1e-10,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      LinearPoissonStructure s(a);
                      SectionA x = random_section(a.base_dim(), a.fiber_dim(), rng);
                      SectionA y = random_section(a.base_dim(), a.fiber_dim(), rng);
                      ScalarField f = random_polynomial(a.base_dim(), rng);
                      ScalarField g = random_polynomial(a.base_dim(), rng);
                      ScalarField r1 = s.poisson_bracket(s.ell_section(x), s.ell_section(y)) -
                                       s.ell_section(a.bracket(x, y));
                      ScalarField r2 = s.poisson_bracket(s.ell_section(x), s.pull(f)) -
                                       s.pull(a.anchor_apply(x).apply(f));
                      ScalarField r3 = s.poisson_bracket(s.pull(f), s.pull(g));
                      for (int t = 0; t < opt.points; ++t) {
                          auto p = rng.box_point(s.n() + s.k());
                          acc.note(r1(p));
                          acc.note(r2(p));
                          acc.note(r3(p));
                      }
                  }
              });

    bat.check("dual.hamiltonian.identities",
              "Hamiltonian fields act by the bracket on linear and pullback functions", 1e-10,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      LinearPoissonStructure s(a);
                      SectionA x = random_section(a.base_dim(), a.fiber_dim(), rng);
                      SectionA y = random_section(a.base_dim(), a.fiber_dim(), rng);
                      ScalarField f = random_polynomial(a.base_dim(), rng);
                      TotalSpaceField h = s.hamiltonian_of_section(x);
                      ScalarField r1 = h.apply(s.ell_section(y)) - s.ell_section(a.bracket(x, y));
                      ScalarField r2 = h.apply(s.pull(f)) - s.pull(a.anchor_apply(x).apply(f));
                      for (int t = 0; t < opt.points; ++t) {
                          auto p = rng.box_point(s.n() + s.k());
                          acc.note(r1(p));
                          acc.note(r2(p));
                      }
                  }
              });

    bat.check("dual.sharp.pullback-form",
              "the sharp of a pullback form is minus a vertical lift", 1e-10,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      const int n = a.base_dim(), k = a.fiber_dim();
                      LinearPoissonStructure s(a);
                      ChartOneForm omega = random_one_form(n, rng);
                      std::vector<ScalarField> comps;
                      for (int i = 0; i < n; ++i) comps.push_back(s.pull(omega.comps[uz(i)]));
                      for (int i = 0; i < k; ++i) comps.push_back(zero_field(n + k));
                      ChartVectorField sharp =
                          bivector_sharp(s.bivector(), ChartOneForm(std::move(comps)));
                      // a*(omega)_a = <omega, a(e_a)>
                      std::vector<ScalarField> dual_comps;
                      for (int c = 0; c < k; ++c)
                          dual_comps.push_back(pairing(omega, a.anchor_column(c)));
                      TotalSpaceField vert = vertical_lift(SectionA{std::move(dual_comps)});
                      ChartVectorField want = vert.as_chart_field();
                      for (int t = 0; t < opt.points; ++t) {
                          auto p = rng.box_point(n + k);
                          auto g = sharp(p);
                          auto w = want(p);
                          for (int i = 0; i < n + k; ++i) acc.note(g[uz(i)] + w[uz(i)]);
                      }
                  }
              });

    bat.check("dual.sharp.exact-linear",
              "the sharp of the differential of a linear function is its Hamiltonian field",
              1e-10, [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      LinearPoissonStructure s(a);
                      SectionA x = random_section(a.base_dim(), a.fiber_dim(), rng);
                      ChartVectorField lhs = hamiltonian_of(s.bivector(), s.ell_section(x));
                      ChartVectorField rhs = s.hamiltonian_of_section(x).as_chart_field();
                      for (int t = 0; t < opt.points; ++t) {
                          auto p = rng.box_point(s.n() + s.k());
                          auto l = lhs(p);
                          auto r = rhs(p);
                          for (std::size_t i = 0; i < l.size(); ++i) acc.note(l[i] - r[i]);
                      }
                  }
              });

    bat.check("dual.morphic.equivalence",
              "boolean agreement of the derivation and dual-Poisson verdicts", 0.5,
              [&](Rng& rng, Accum& acc) {
                  for (const Model* m : algs) {
                      const auto& a = *m->algebroid;
                      auto pts = box_points(rng, a.base_dim(), 8);
                      MorphicAgreement mg = morphic_poisson_agreement(a, rng, 10, pts, 1e-7);
                      acc.note_bool(mg.disagreements == 0 && mg.designed_verdicts_ok);
                      acc.points += mg.cases - 1;
                  }
              });

    bat.check("dual.coisotropy.graph-agreement",
              "graph coisotropy agrees with the closedness residual", 0.5,
              [&](Rng& rng, Accum& acc) {
                  CoisotropyBattery b = coisotropy_agreement(rng, opt.points / 3 + 4, 10, 1e-7);
                  acc.note_bool(b.disagreements == 0);
                  acc.points += b.cases - 1;
              });

    bat.check("dual.coisotropy.tangent-field",
              "field graphs in the tangent space detect Poisson fields", 0.5,
              [&](Rng& rng, Accum& acc) {
                  Bivector sympl(2, std::vector<ScalarField>{constant(1.0, 2)});
                  auto pts = box_points(rng, 2, 10);
                  auto v1 = poisson_field_via_tangent_coisotropy(
                      sympl, ChartVectorField::coordinate(0, 2), pts, 1e-7);
                  acc.note_bool(v1.coisotropic && v1.lie_derivative_zero);
                  ChartVectorField bad(std::vector<ScalarField>{coord(0, 2), zero_field(2)});
                  auto v2 = poisson_field_via_tangent_coisotropy(sympl, bad, pts, 1e-7);
                  acc.note_bool(!v2.coisotropic && !v2.lie_derivative_zero);
              });
}

void suite_pair(Battery& bat, const std::vector<Model>& gallery, const SuiteOptions& opt) {
    auto dims = base_dims(gallery);

    bat.check("pair.mult.diagonal", "diagonal extensions are multiplicative", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (int n : dims) {
                      ChartVectorField x = random_vector_field(n, rng);
                      acc.note(is_multiplicative(diagonal_field(x), x, rng, opt.points).residual);
                  }
              });

    bat.check("pair.star.bracket-closure", "star fields close under the bracket", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (int n : dims) {
                      ChartVectorField x = random_vector_field(n, rng);
                      ChartVectorField y = random_vector_field(n, rng);
                      GroupoidField br =
                          groupoid_bracket(random_star_field(x, rng), random_star_field(y, rng));
                      acc.note(is_star(br, lie_bracket(x, y), rng, opt.points).residual);
                  }
              });

    bat.check("pair.mult.bracket-closure",
              "multiplicative fields close under the bracket", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (int n : dims) {
                      ChartVectorField x = random_vector_field(n, rng);
                      ChartVectorField y = random_vector_field(n, rng);
                      GroupoidField br = groupoid_bracket(diagonal_field(x), diagonal_field(y));
                      acc.note(is_multiplicative(br, lie_bracket(x, y), rng, opt.points).residual);
                  }
              });

    bat.check("pair.cdo.right-invariant",
              "brackets with right-invariant fields stay right-invariant", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (int n : dims) {
                      ChartVectorField x = random_vector_field(n, rng);
                      ChartVectorField s = random_vector_field(n, rng);
                      GroupoidField br =
                          groupoid_bracket(diagonal_field(x), right_invariant(s));
                      for (int t = 0; t < opt.points; ++t) {
                          auto y = rng.box_point(n);
                          auto x1 = rng.box_point(n);
                          auto x2 = rng.box_point(n);
                          std::vector<double> g1 = y, g2 = y;
                          g1.insert(g1.end(), x1.begin(), x1.end());
                          g2.insert(g2.end(), x2.begin(), x2.end());
                          for (int i = 0; i < n; ++i) {
                              acc.note(br.second[uz(i)](g1));
                              acc.note(br.first[uz(i)](g1) - br.first[uz(i)](g2));
                          }
                      }
                  }
              });

    bat.check("pair.cdo.bracket-preserving",
              "the induced operator respects commutators of multiplicative fields", 1e-8,
              [&](Rng& rng, Accum& acc) {
                  for (int n : dims) {
                      ChartVectorField x = random_vector_field(n, rng);
                      ChartVectorField y = random_vector_field(n, rng);
                      ChartVectorField s = random_vector_field(n, rng);
                      GroupoidField xi = diagonal_field(x);
                      GroupoidField eta = diagonal_field(y);
                      ChartVectorField lhs =
                          d_xi(groupoid_bracket(xi, eta), lie_bracket(x, y), s, rng);
                      ChartVectorField r1 = d_xi(xi, x, d_xi(eta, y, s, rng), rng);
                      ChartVectorField r2 = d_xi(eta, y, d_xi(xi, x, s, rng), rng);
                      for (const auto& p : box_points(rng, n, opt.points / 2 + 5)) {
                          auto l = lhs(p);
                          auto a1 = r1(p);
                          auto a2 = r2(p);
                          for (int i = 0; i < n; ++i) acc.note(l[uz(i)] - a1[uz(i)] + a2[uz(i)]);
                      }
                  }
              });

    bat.check("pair.cdo.extension-free",
              "the operator is independent of the section extension", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (int n : dims) {
                      ChartVectorField x = random_vector_field(n, rng);
                      GroupoidField xi = random_star_field(x, rng);
                      ChartVectorField s = random_vector_field(n, rng);
                      GroupoidField ext1 = right_invariant(s);
                      std::vector<ScalarField> f2 = ext1.first, s2 = ext1.second;
                      for (int i = 0; i < n; ++i)
                          f2[uz(i)] = f2[uz(i)] + random_polynomial(2 * n, rng) *
                                                      (coord(i, 2 * n) - coord(n + i, 2 * n));
                      GroupoidField ext2(n, std::move(f2), std::move(s2));
                      GroupoidField b1 = groupoid_bracket(xi, ext1);
                      GroupoidField b2 = groupoid_bracket(xi, ext2);
                      for (const auto& p : box_points(rng, n, opt.points / 2 + 5))
                          for (int i = 0; i < n; ++i)
                              acc.note(restrict_diag(b1.first[uz(i)])(p) -
                                       restrict_diag(b2.first[uz(i)])(p));
                  }
              });

    bat.check("pair.lift.cdo-agreement",
              "the functor lift induces the same operator as the unit-restricted bracket", 1e-7,
              [&](Rng& rng, Accum& acc) {
                  for (int n : dims) acc.note(lift_operator_agreement(n, rng, 5, opt.points));
              });

    bat.check("pair.lift.tilde-equations",
              "lifts act as expected on pullbacks and fiberwise-linear functions", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (int n : dims) {
                      ChartVectorField x = random_vector_field(n, rng);
                      GroupoidField xi = random_star_field(x, rng);
                      LinearVectorField lift = lie_functor_lift(xi, x, rng);
                      ScalarField f = random_polynomial(n, rng);
                      DualSection phi = random_dual_section(n, n, rng);
                      ScalarField r1 = lift.as_total().apply(pull_to_total(f, n)) -
                                       pull_to_total(x.apply(f), n);
                      ScalarField r2 = lift.as_total().apply(ell(phi)) -
                                       ell(cdo_from_linear(lift).apply_dual(phi));
                      for (int t = 0; t < opt.points; ++t) {
                          auto p = rng.box_point(2 * n);
                          acc.note(r1(p));
                          acc.note(r2(p));
                      }
                  }
              });

    bat.check("pair.generation.decompose",
              "star lifts plus verticals generate the fields on the algebroid", 1e-10,
              [&](Rng& rng, Accum& acc) {
                  for (int n : dims) {
                      std::vector<LinearVectorField> basis;
                      for (int j = 0; j < n; ++j) {
                          ChartVectorField ej = ChartVectorField::coordinate(j, n);
                          basis.push_back(lie_functor_lift(random_star_field(ej, rng), ej, rng));
                      }
                      std::vector<ScalarField> bp, fp;
                      for (int i = 0; i < n; ++i) bp.push_back(random_polynomial(2 * n, rng));
                      for (int i = 0; i < n; ++i) fp.push_back(random_polynomial(2 * n, rng));
                      TotalSpaceField target(n, n, std::move(bp), std::move(fp));
                      for (int t = 0; t < opt.points / 3 + 3; ++t) {
                          TotalPoint at{rng.box_point(n), rng.box_point(n)};
                          Decomposition d = decompose(target, at, basis);
                          auto value = target.eval(at);
                          std::vector<double> rb(uz(n), 0.0), rf = d.core_remainder;
                          for (int j = 0; j < n; ++j) {
                              auto tj = basis[uz(j)].as_total().eval(at);
                              for (int i = 0; i < n; ++i) {
                                  rb[uz(i)] += d.coefficients[uz(j)] * tj.base_dir[uz(i)];
                                  rf[uz(i)] += d.coefficients[uz(j)] * tj.fiber_dir[uz(i)];
                              }
                          }
                          for (int i = 0; i < n; ++i) {
                              acc.note(rb[uz(i)] - value.base_dir[uz(i)]);
                              acc.note(rf[uz(i)] - value.fiber_dir[uz(i)]);
                          }
                      }
                  }
              });

    bat.check("pair.affine.decomposition",
              "affine projectable fields split into multiplicative plus right-invariant", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (int n : dims) {
                      ChartVectorField x = random_vector_field(n, rng);
                      ChartVectorField s = random_vector_field(n, rng);
                      GroupoidField diag = diagonal_field(x);
                      GroupoidField rinv = right_invariant(s);
                      std::vector<ScalarField> f, sc;
                      for (int i = 0; i < n; ++i) {
                          f.push_back(diag.first[uz(i)] + rinv.first[uz(i)]);
                          sc.push_back(diag.second[uz(i)] + rinv.second[uz(i)]);
                      }
                      AffineDecomposition d =
                          affine_decompose(GroupoidField(n, std::move(f), std::move(sc)), rng,
                                           opt.points);
                      acc.note(d.multiplicative_check.residual);
                      for (const auto& p : box_points(rng, n, 5)) {
                          auto got = d.right_section(p);
                          auto want = s(p);
                          for (int i = 0; i < n; ++i) acc.note(got[uz(i)] - want[uz(i)]);
                      }
                  }
              });

    bat.check("pair.function.multiplicative",
              "multiplicative fields preserve multiplicative functions", 1e-8,
              [&](Rng& rng, Accum& acc) {
                  for (int n : dims) {
                      ScalarField f = random_polynomial(n, rng);
                      ScalarField cap_f = embed_field(f, 2 * n, 0) - embed_field(f, 2 * n, n);
                      ChartVectorField x = random_vector_field(n, rng);
                      auto v = multiplicative_function_check(cap_f, diagonal_field(x), rng,
                                                             opt.points);
                      acc.note(v.result_residual);
                  }
              });
}

void suite_poisson_pair(Battery& bat, const std::vector<Model>& gallery,
                        const SuiteOptions& opt) {
    auto cases = poisson_cases(gallery);

    bat.check("ppair.target.anti-poisson",
              "the target projection is anti-Poisson, the source Poisson", 1e-10,
              [&](Rng& rng, Accum& acc) {
                  for (const auto& g : cases) {
                      Bivector prod = g.product_structure();
                      ScalarField f = random_polynomial(g.n, rng);
                      ScalarField h = random_polynomial(g.n, rng);
                      ScalarField base_br = poisson_bracket_fn(g.pi, f, h);
                      ScalarField t_br = poisson_bracket_fn(prod, embed_field(f, 2 * g.n, 0),
                                                            embed_field(h, 2 * g.n, 0));
                      ScalarField s_br = poisson_bracket_fn(prod, embed_field(f, 2 * g.n, g.n),
                                                            embed_field(h, 2 * g.n, g.n));
                      for (int t = 0; t < opt.points; ++t) {
                          auto y = rng.box_point(g.n);
                          auto x = rng.box_point(g.n);
                          std::vector<double> pt = y;
                          pt.insert(pt.end(), x.begin(), x.end());
                          acc.note(t_br(pt) + base_br(y));
                          acc.note(s_br(pt) - base_br(x));
                      }
                  }
              });

    bat.check("ppair.projection.unit-form", "unit covectors project to their base on both sides",
              1e-12, [&](Rng& rng, Accum& acc) {
                  for (const auto& g : cases) {
                      auto phi = rng.box_point(g.n);
                      std::vector<double> unit_form = phi;
                      for (double c : phi) unit_form.push_back(-c);
                      auto mm = rng.box_point(g.n);
                      auto [beta_side, alpha_side] = cotangent_projections(g, mm, mm, unit_form);
                      for (int i = 0; i < g.n; ++i) {
                          acc.note(beta_side[uz(i)] - phi[uz(i)]);
                          acc.note(alpha_side[uz(i)] - phi[uz(i)]);
                      }
                  }
              });

    bat.check("ppair.star.extension",
              "constructed and declared star forms satisfy the star clauses", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (const auto& g : cases) {
                      ChartOneForm phi = random_one_form(g.n, rng);
                      acc.note(is_star_oneform(g, random_star_oneform(phi, rng), phi, rng,
                                               opt.points)
                                   .residual);
                      acc.note(is_multiplicative_oneform(g, multiplicative_pair_form(phi), phi,
                                                         rng, opt.points)
                                   .residual);
                  }
                  // star 1-forms declared in model files, over their derived base
                  for (const auto& m : gallery) {
                      if (!m.poisson_pair) continue;
                      CoarsePoissonGroupoid g(m.base_dim,
                                              m.bivector_named(m.poisson_pair->bivector));
                      for (const auto& [nm, w] : m.poisson_pair->star_one_forms) {
                          std::vector<ScalarField> base;
                          for (int i = 0; i < g.n; ++i)
                              base.push_back(-restrict_diag(w.second[uz(i)]));
                          acc.note(is_star_oneform(g, w, ChartOneForm(std::move(base)), rng,
                                                   opt.points)
                                       .residual);
                      }
                  }
              });

    bat.check("ppair.koszul.exact-forms", "the bracket of exact forms is exact", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (const auto& g : cases) {
                      ScalarField f = random_polynomial(g.n, rng);
                      ScalarField h = random_polynomial(g.n, rng);
                      ChartOneForm lhs =
                          koszul_bracket(g.pi, exterior_derivative(f), exterior_derivative(h));
                      ChartOneForm rhs = exterior_derivative(poisson_bracket_fn(g.pi, f, h));
                      for (const auto& p : box_points(rng, g.n, opt.points))
                          for (int i = 0; i < g.n; ++i)
                              acc.note(lhs.comps[uz(i)](p) - rhs.comps[uz(i)](p));
                  }
              });

    bat.check("ppair.dphi.koszul-reduction",
              "the induced operator of a multiplicative form is the base bracket", 1e-7,
              [&](Rng& rng, Accum& acc) {
                  for (const auto& g : cases) {
                      ChartOneForm w0 = random_one_form(g.n, rng);
                      ChartOneForm omega = random_one_form(g.n, rng);
                      ChartOneForm got =
                          d_phi_operator(g, multiplicative_pair_form(w0), w0, omega, rng);
                      ChartOneForm want = koszul_bracket(g.pi, w0, omega);
                      for (const auto& p : box_points(rng, g.n, opt.points / 2 + 5))
                          for (int i = 0; i < g.n; ++i)
                              acc.note(got.comps[uz(i)](p) - want.comps[uz(i)](p));
                  }
              });

    bat.check("ppair.dphi.suite",
              "pullback-bracket and derivation identities of the induced operator", 1e-7,
              [&](Rng& rng, Accum& acc) {
                  for (const auto& g : cases) {
                      OperatorSuiteReport rep = d_phi_theorem_suite(
                          g, random_one_form(g.n, rng), random_one_form(g.n, rng),
                          random_one_form(g.n, rng), rng, opt.points / 3 + 4);
                      acc.note(rep.koszul_reduction);
                      acc.note(rep.pullback_bracket);
                      acc.note(rep.derivation);
                  }
              });

    bat.check("ppair.lba.koszul-agreement",
              "the explicit dual bracket equals the base Koszul bracket", 1e-6,
              [&](Rng& rng, Accum& acc) {
                  for (const auto& g : cases) {
                      acc.note(lba_koszul_residual(g, rng, 5, opt.points));
                      acc.points += 4;
                  }
              });

    bat.check("ppair.sharp.star-compat",
              "sharps of star forms are star fields over the dual anchor image", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (const auto& g : cases) {
                      ChartOneForm phi = random_one_form(g.n, rng);
                      GroupoidField xi = groupoid_sharp(g, random_star_oneform(phi, rng));
                      acc.note(is_star(xi, bivector_sharp(g.pi, phi), rng, opt.points).residual);
                  }
              });

    bat.check("ppair.sharp.naturality",
              "the dual anchor intertwines the induced operators", 1e-6,
              [&](Rng& rng, Accum& acc) {
                  for (const auto& g : cases) {
                      ChartOneForm phi = random_one_form(g.n, rng);
                      ChartOneForm omega = random_one_form(g.n, rng);
                      GroupoidOneForm w = multiplicative_pair_form(phi);
                      ChartOneForm d_w = d_phi_operator(g, w, phi, omega, rng);
                      auto a_pull = [&](const ChartOneForm& om) {
                          ChartVectorField s = bivector_sharp(g.pi, om);
                          std::vector<ScalarField> comps;
                          for (const auto& c : s.comps) comps.push_back(-c);
                          return ChartVectorField(std::move(comps));
                      };
                      ChartVectorField lhs = a_pull(d_w);
                      ChartVectorField rhs = d_xi(groupoid_sharp(g, w),
                                                  bivector_sharp(g.pi, phi), a_pull(omega), rng);
                      for (const auto& p : box_points(rng, g.n, opt.points / 2 + 5)) {
                          auto l = lhs(p);
                          auto r = rhs(p);
                          for (int i = 0; i < g.n; ++i) acc.note(l[uz(i)] - r[uz(i)]);
                      }
                  }
              });

    bat.check("ppair.tilde.complete-lift",
              "induced forms of multiplicative data are classical complete lifts", 1e-9,
              [&](Rng& rng, Accum& acc) {
                  for (const auto& g : cases) {
                      ChartOneForm omega = random_one_form(g.n, rng);
                      TotalSpaceForm got =
                          tilde_oneform(g, multiplicative_pair_form(omega), omega, rng);
                      for (int t = 0; t < opt.points / 2 + 5; ++t) {
                          ChartPoint m = rng.box_point(g.n);
                          auto v = rng.box_point(g.n);
                          auto vals = got.eval(TotalPoint{m, v});
                          for (int i = 0; i < g.n; ++i) {
                              double want = 0.0;
                              for (int j = 0; j < g.n; ++j)
                                  want += v[uz(j)] * partial(omega.comps[uz(i)], j)(m);
                              acc.note(vals[uz(i)] - want);
                              acc.note(vals[uz(g.n + i)] - omega.comps[uz(i)](m));
                          }
                      }
                  }
              });

    bat.check("ppair.tilde.sharp-exchange",
              "the sharp of the induced form is the lift of the sharp", 1e-6,
              [&](Rng& rng, Accum& acc) {
                  for (const auto& g : cases) {
                      ChartOneForm phi = random_one_form(g.n, rng);
                      GroupoidOneForm w = multiplicative_pair_form(phi);
                      TotalSpaceForm tw = tilde_oneform(g, w, phi, rng);
                      Bivector pi_tp = algebroid_side_poisson(g).bivector();
                      std::vector<ScalarField> comps = tw.base_part;
                      comps.insert(comps.end(), tw.fiber_part.begin(), tw.fiber_part.end());
                      ChartVectorField sharp_tw =
                          bivector_sharp(pi_tp, ChartOneForm(std::move(comps)));
                      LinearVectorField lift = lie_functor_lift(
                          groupoid_sharp(g, w), bivector_sharp(g.pi, phi), rng);
                      ChartVectorField want = lift.as_total().as_chart_field();
                      for (int t = 0; t < opt.points / 2 + 5; ++t) {
                          auto p = rng.box_point(2 * g.n);
                          auto a = sharp_tw(p);
                          auto b = want(p);
                          for (int i = 0; i < 2 * g.n; ++i) acc.note(a[uz(i)] - b[uz(i)]);
                      }
                  }
              });

    bat.check("ppair.tilde.bracket-homomorphism",
              "the lift of the form bracket is the bracket of the lifts", 1e-6,
              [&](Rng& rng, Accum& acc) {
                  for (const auto& g : cases) {
                      ChartOneForm f1 = random_one_form(g.n, rng);
                      ChartOneForm f2 = random_one_form(g.n, rng);
                      LiftBracketReport rep = theorem_last_suite(
                          g, multiplicative_pair_form(f1), f1, multiplicative_pair_form(f2), f2,
                          random_one_form(g.n, rng), random_one_form(g.n, rng), rng,
                          opt.points / 3 + 4);
                      acc.note(rep.bracket_homomorphism);
                      acc.note(rep.pullback_operator);
                      acc.note(rep.closing_identity);
                  }
              });

    bat.check("ppair.tilde.pullback-commute", "pullback forms commute on the algebroid side",
              1e-12, [&](Rng& rng, Accum& acc) {
                  for (const auto& g : cases) {
                      Bivector pi_tp = algebroid_side_poisson(g).bivector();
                      ChartOneForm theta = random_one_form(g.n, rng);
                      ChartOneForm omega = random_one_form(g.n, rng);
                      auto to_chart = [&](const TotalSpaceForm& f) {
                          std::vector<ScalarField> comps = f.base_part;
                          comps.insert(comps.end(), f.fiber_part.begin(), f.fiber_part.end());
                          return ChartOneForm(std::move(comps));
                      };
                      ChartOneForm br = koszul_bracket(pi_tp, to_chart(pullback_form(theta, g.n)),
                                                       to_chart(pullback_form(omega, g.n)));
                      for (const auto& p : box_points(rng, 2 * g.n, opt.points))
                          for (int i = 0; i < 2 * g.n; ++i) acc.note(br.comps[uz(i)](p));
                  }
              });
}

} // namespace

MorphicAgreement morphic_poisson_agreement(const LieAlgebroid& a, Rng& rng, int random_cases,
                                           const std::vector<ChartPoint>& pts, double tol) {
    MorphicAgreement out;
    LinearPoissonStructure s(a);
    auto run = [&](const LinearVectorField& xi, int expect /* -1 none, 0 false, 1 true */) {
        auto mv = is_morphic(a, xi, rng, pts, tol);
        auto pv = is_poisson_field(s, dual_linear_field(xi).as_total(), rng, 15, tol);
        ++out.cases;
        if (mv.morphic != pv.poisson) ++out.disagreements;
        if (expect == 1 && !(mv.morphic && pv.poisson)) out.designed_verdicts_ok = false;
        if (expect == 0 && (mv.morphic || pv.poisson)) out.designed_verdicts_ok = false;
    };

    // designed-true: complete lifts of sections
    for (int i = 0; i < 5; ++i) {
        run(complete_lift(a, random_section(a.base_dim(), a.fiber_dim(), rng)), 1);
        ++out.designed_true;
    }
    // designed-false: a random operator whose derivation defect is verified large
    for (int i = 0; i < 5; ++i) {
        for (int attempt = 0; attempt < 10; ++attempt) {
            CovDiffOp d = random_cdo(a, rng);
            LinearVectorField xi = linear_from_cdo(d);
            auto mv = is_morphic(a, xi, rng, pts, tol);
            if (mv.derivation_residual > 1000 * tol || mv.anchor_residual > 1000 * tol) {
                run(xi, 0);
                ++out.designed_false;
                break;
            }
        }
    }
    for (int i = 0; i < random_cases; ++i) run(linear_from_cdo(random_cdo(a, rng)), -1);
    return out;
}

double lift_operator_agreement(int base_dim, Rng& rng, int fields, int points) {
    double worst = 0.0;
    for (int c = 0; c < fields; ++c) {
        ChartVectorField x = random_vector_field(base_dim, rng);
        GroupoidField xi = (c % 2 == 0) ? diagonal_field(x) : random_star_field(x, rng);
        LinearVectorField lift = lie_functor_lift(xi, x, rng);
        CovDiffOp op = cdo_from_linear(lift);
        ChartVectorField s = random_vector_field(base_dim, rng);
        SectionA sec{std::vector<ScalarField>(s.comps)};
        SectionA lhs = op.apply(sec);
        ChartVectorField rhs = d_xi(xi, x, s, rng);
        for (int t = 0; t < points; ++t) {
            ChartPoint p = rng.box_point(base_dim);
            auto l = lhs(p);
            auto r = rhs(p);
            for (int i = 0; i < base_dim; ++i)
                worst = std::max(worst, std::abs(l[uz(i)] - r[uz(i)]));
        }
    }
    return worst;
}

double lba_koszul_residual(const CoarsePoissonGroupoid& g, Rng& rng, int cases, int points) {
    double worst = 0.0;
    for (int c = 0; c < cases; ++c) {
        ChartOneForm phi = random_one_form(g.n, rng);
        ChartOneForm psi = random_one_form(g.n, rng);
        ChartVectorField z = random_vector_field(g.n, rng);
        GroupoidOneForm w_phi =
            (c % 2 == 0) ? multiplicative_pair_form(phi) : random_star_oneform(phi, rng);
        GroupoidOneForm w_psi =
            (c % 2 == 0) ? multiplicative_pair_form(psi) : random_star_oneform(psi, rng);
        ScalarField got = lba_bracket(g, phi, psi, w_phi, w_psi, z, rng);
        ScalarField want = pairing(koszul_bracket(g.pi, phi, psi), z);
        for (int t = 0; t < points; ++t) {
            ChartPoint p = rng.box_point(g.n);
            worst = std::max(worst, std::abs(got(p) - want(p)));
        }
    }
    return worst;
}

CoisotropyBattery coisotropy_agreement(Rng& rng, int random_cases, int points, double tol) {
    CoisotropyBattery out;
    auto run = [&](const LinearPoissonStructure& s, const DualSection& phi, int base_dim,
                   int expect /* -1, 0, 1 */) {
        auto v = is_coisotropic_graph(s, phi, box_points(rng, base_dim, points), tol);
        ++out.cases;
        if (v.coisotropic != v.dphi_closed) ++out.disagreements;
        if (expect == 1 && !v.coisotropic) ++out.disagreements;
        if (expect == 0 && v.coisotropic) ++out.disagreements;
    };

    LinearPoissonStructure tangent2(tangent_algebroid(2));
    // the classical closed-graph case and a non-closed one
    {
        ScalarField f = random_polynomial(2, rng);
        DualSection closed{std::vector<ScalarField>{partial(f, 0), partial(f, 1)}};
        run(tangent2, closed, 2, 1);
        DualSection open{std::vector<ScalarField>{coord(1, 2), zero_field(2)}};
        run(tangent2, open, 2, 0);
    }
    // algebra duals: points are coisotropic exactly where the structure vanishes
    LinearPoissonStructure so3(
        lie_algebra(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 1, -1.0}}));
    {
        DualSection zero{std::vector<ScalarField>(3, zero_field(1))};
        run(so3, zero, 1, 1);
        DualSection pt{std::vector<ScalarField>{constant(0.4, 1), constant(-0.3, 1),
                                                constant(0.8, 1)}};
        run(so3, pt, 1, 0);
    }
    // random graphs on the tangent algebroid
    for (int i = 0; i < random_cases; ++i)
        run(tangent2, random_dual_section(2, 2, rng), 2, -1);
    // tangent-field cases via the cotangent construction
    Bivector sympl(2, std::vector<ScalarField>{constant(1.0, 2)});
    Bivector weighted(2, std::vector<ScalarField>{coord(0, 2)});
    for (int i = 0; i < random_cases; ++i) {
        const Bivector& pi = (i % 2 == 0) ? sympl : weighted;
        ChartVectorField x = random_vector_field(2, rng);
        auto v = poisson_field_via_tangent_coisotropy(pi, x, box_points(rng, 2, points), tol);
        ++out.cases;
        if (v.coisotropic != v.lie_derivative_zero) ++out.disagreements;
    }
    // a designed Poisson field: a Hamiltonian field of the symplectic structure
    {
        ScalarField h = random_polynomial(2, rng);
        ChartVectorField x = hamiltonian_of(sympl, h);
        auto v = poisson_field_via_tangent_coisotropy(sympl, x, box_points(rng, 2, points), tol);
        ++out.cases;
        if (!(v.coisotropic && v.lie_derivative_zero)) ++out.disagreements;
    }
    return out;
}

SuiteReport run_suite(const std::string& name, const std::vector<Model>& gallery,
                      const SuiteOptions& opt) {
    SuiteReport rep;
    rep.suite = name;
    rep.seed = opt.seed;
    Battery bat(rep, opt);
    bool needs_algebroid = name == "lifts" || name == "dual" || name == "all";
    bool needs_poisson = name == "poisson-pair" || name == "all";
    if (needs_algebroid && with_algebroid(gallery).empty())
        throw ConfigError("suite " + name + ": no model with a valid algebroid in the gallery");
    if (needs_poisson && poisson_cases(gallery).empty())
        throw ConfigError("suite " + name + ": no model declares a poisson_pair block");
    if (name == "lifts")
        suite_lifts(bat, gallery, opt);
    else if (name == "dual")
        suite_dual(bat, gallery, opt);
    else if (name == "pair")
        suite_pair(bat, gallery, opt);
    else if (name == "poisson-pair")
        suite_poisson_pair(bat, gallery, opt);
    else if (name == "all") {
        suite_lifts(bat, gallery, opt);
        suite_dual(bat, gallery, opt);
        suite_pair(bat, gallery, opt);
        suite_poisson_pair(bat, gallery, opt);
    } else {
        throw ConfigError("unknown suite '" + name +
                          "' (expected lifts, dual, pair, poisson-pair, all)");
    }
    rep.sort_checks();
    return rep;
}

SuiteReport run_validation(const std::vector<Model>& gallery, const SuiteOptions& opt) {
    SuiteReport rep;
    rep.suite = "validate";
    rep.seed = opt.seed;
    Battery bat(rep, opt);
    for (const auto& m : gallery) {
        std::string nm = m.name.empty() ? "model" : m.name;
        if (m.algebroid) {
            // run the validation up front so a failure can name the worst
            // check and the point where it peaked
            Rng vr = derived_rng(opt.seed, "validate.algebroid." + nm);
            auto pts = box_points(vr, m.base_dim, opt.points);
            ValidationReport v = validate(*m.algebroid, pts, vr,
                                          opt.tol_override > 0 ? opt.tol_override : 1e-9);
            std::string label = "anchor and Jacobi axioms for " + nm;
            if (!v.pass()) {
                std::ostringstream at;
                at << " (worst: " << v.worst_check << " at (";
                for (std::size_t i = 0; i < v.worst_point.size(); ++i)
                    at << (i ? ", " : "") << v.worst_point[i];
                at << "))";
                label += at.str();
            }
            bat.check("validate.algebroid." + nm, label, 1e-9, [&](Rng&, Accum& acc) {
                acc.note(v.anchor_residual);
                acc.note(v.jacobi_residual);
                acc.points += static_cast<int>(pts.size()) - 2;
            });
        }
        for (const auto& [bname, pi] : m.bivectors) {
            const Bivector* ppi = &pi;
            bat.check("validate.bivector." + nm + "." + bname,
                      "Jacobi residual of bivector " + bname + " in " + nm, 1e-9,
                      [&, ppi](Rng& rng, Accum& acc) {
                          auto pts = box_points(rng, ppi->n, opt.points);
                          acc.note(max_jacobi_residual(*ppi, pts));
                          acc.points += static_cast<int>(pts.size()) - 1;
                      });
        }
    }
    rep.sort_checks();
    return rep;
}

std::vector<std::string> suite_anchor_set(const std::string& name) {
    static const std::vector<std::string> lifts = {
        "lifts.linear.bracket-closure", "lifts.lift.homomorphism",
        "lifts.core.commute",           "lifts.cdo.bracket-preserving",
        "lifts.flow.fiber-linear",      "lifts.flow.dual-pairing",
        "lifts.pairing.extension-free", "lifts.dual-field.annihilation",
        "lifts.morphic.dual-agreement", "lifts.decompose.reconstruction",
        "lifts.intrinsic.vertical-identity"};
    static const std::vector<std::string> dual = {
        "dual.bracket.jacobi",           "dual.bracket.generators",
        "dual.hamiltonian.identities",   "dual.sharp.pullback-form",
        "dual.sharp.exact-linear",       "dual.morphic.equivalence",
        "dual.coisotropy.graph-agreement", "dual.coisotropy.tangent-field"};
    static const std::vector<std::string> pair = {
        "pair.mult.diagonal",        "pair.star.bracket-closure", "pair.mult.bracket-closure",
        "pair.cdo.right-invariant",  "pair.cdo.bracket-preserving", "pair.cdo.extension-free",
        "pair.lift.cdo-agreement",   "pair.lift.tilde-equations", "pair.generation.decompose",
        "pair.affine.decomposition", "pair.function.multiplicative"};
    static const std::vector<std::string> ppair = {
        "ppair.target.anti-poisson",  "ppair.projection.unit-form",
        "ppair.star.extension",       "ppair.koszul.exact-forms",
        "ppair.dphi.koszul-reduction", "ppair.dphi.suite",
        "ppair.lba.koszul-agreement", "ppair.sharp.star-compat",
        "ppair.sharp.naturality",     "ppair.tilde.complete-lift",
        "ppair.tilde.sharp-exchange", "ppair.tilde.bracket-homomorphism",
        "ppair.tilde.pullback-commute"};
    std::vector<std::string> out;
    if (name == "lifts" || name == "all") out.insert(out.end(), lifts.begin(), lifts.end());
    if (name == "dual" || name == "all") out.insert(out.end(), dual.begin(), dual.end());
    if (name == "pair" || name == "all") out.insert(out.end(), pair.begin(), pair.end());
    if (name == "poisson-pair" || name == "all") out.insert(out.end(), ppair.begin(), ppair.end());
    if (out.empty()) throw ConfigError("unknown suite '" + name + "'");
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace algd
