#pragma once

#include <vector>

#include "algd/scalar_field.hpp"

namespace algd {

/// A point of the global coordinate chart (all of n-space).
using ChartPoint = std::vector<double>;

namespace detail {

inline void require_components(const std::vector<ScalarField>& comps, const char* what) {
    if (comps.empty()) throw ConfigError(std::string(what) + ": no components");
    int ar = comps.front().arity();
    for (const auto& c : comps)
        if (c.arity() != ar) throw ConfigError(std::string(what) + ": mixed component arity");
}

} // namespace detail

/// Vector field on the chart: n components, each a function of the n coordinates.
struct ChartVectorField {
    std::vector<ScalarField> comps;

    ChartVectorField() = default;
    explicit ChartVectorField(std::vector<ScalarField> c) : comps(std::move(c)) {
        detail::require_components(comps, "vector field");
    }

    int dim() const { return static_cast<int>(comps.size()); }
    int arity() const { return comps.front().arity(); }

    template <class T>
    std::vector<T> operator()(std::span<const T> x) const {
        return eval_all(comps, x);
    }
    std::vector<double> operator()(const ChartPoint& x) const {
        return eval_all(comps, std::span<const double>(x));
    }

    /// Apply to a function: x(f) = sum_i x^i d_i f.
    ScalarField apply(const ScalarField& f) const;

    static ChartVectorField zero(int n) {
        return ChartVectorField(std::vector<ScalarField>(static_cast<std::size_t>(n),
                                                         zero_field(n)));
    }
    static ChartVectorField coordinate(int i, int n) {
        std::vector<ScalarField> c(static_cast<std::size_t>(n), zero_field(n));
        c[static_cast<std::size_t>(i)] = constant(1.0, n);
        return ChartVectorField(std::move(c));
    }
};

/// 1-form on the chart: n covariant components.
struct ChartOneForm {
    std::vector<ScalarField> comps;

    ChartOneForm() = default;
    explicit ChartOneForm(std::vector<ScalarField> c) : comps(std::move(c)) {
        detail::require_components(comps, "one-form");
    }

    int dim() const { return static_cast<int>(comps.size()); }
    int arity() const { return comps.front().arity(); }

    std::vector<double> operator()(const ChartPoint& x) const {
        return eval_all(comps, std::span<const double>(x));
    }

    static ChartOneForm zero(int n) {
        return ChartOneForm(std::vector<ScalarField>(static_cast<std::size_t>(n), zero_field(n)));
    }
    static ChartOneForm coordinate(int i, int n) {
        std::vector<ScalarField> c(static_cast<std::size_t>(n), zero_field(n));
        c[static_cast<std::size_t>(i)] = constant(1.0, n);
        return ChartOneForm(std::move(c));
    }
};

/// Pointwise pairing <omega, x> as a field.
ScalarField pairing(const ChartOneForm& omega, const ChartVectorField& x);

/// Antisymmetric (2,0)-tensor, stored as the strict upper triangle (i<j, lex
/// order), so pi^{ij} = -pi^{ji} holds structurally.
struct Bivector {
    int n = 0;
    std::vector<ScalarField> upper; // n(n-1)/2 entries

    Bivector() = default;
    Bivector(int dim, std::vector<ScalarField> upper_entries)
        : n(dim), upper(std::move(upper_entries)) {
        if (static_cast<int>(upper.size()) != n * (n - 1) / 2)
            throw ConfigError("bivector: expected n(n-1)/2 upper entries");
        for (const auto& e : upper)
            if (!e.valid()) throw ConfigError("bivector: invalid entry");
    }

    static Bivector zero(int dim, int arity) {
        return Bivector(dim, std::vector<ScalarField>(
                                 static_cast<std::size_t>(dim * (dim - 1) / 2),
                                 zero_field(arity)));
    }

    // components are always functions of the same chart the tensor lives on
    int arity() const { return upper.empty() ? n : upper.front().arity(); }

    std::size_t upper_index(int i, int j) const {
        // lexicographic over pairs i<j
        return static_cast<std::size_t>(i * (2 * n - i - 1) / 2 + (j - i - 1));
    }

    /// Component pi^{ij} as a field (zero on the diagonal).
    ScalarField component(int i, int j) const {
        if (i < 0 || j < 0 || i >= n || j >= n) throw ConfigError("bivector: index out of range");
        int ar = upper.empty() ? 0 : arity();
        if (i == j) return zero_field(ar);
        if (i < j) return upper[upper_index(i, j)];
        return -upper[upper_index(j, i)];
    }

    /// pi(omega, theta) as a field.
    ScalarField contract(const ChartOneForm& omega, const ChartOneForm& theta) const;
};

/// Values of an antisymmetric 2-form, stored like Bivector but covariant.
struct TwoForm {
    int n = 0;
    std::vector<ScalarField> upper;

    TwoForm() = default;
    TwoForm(int dim, std::vector<ScalarField> upper_entries)
        : n(dim), upper(std::move(upper_entries)) {
        if (static_cast<int>(upper.size()) != n * (n - 1) / 2)
            throw ConfigError("two-form: expected n(n-1)/2 upper entries");
    }

    std::size_t upper_index(int i, int j) const {
        return static_cast<std::size_t>(i * (2 * n - i - 1) / 2 + (j - i - 1));
    }

    ScalarField component(int i, int j) const {
        int ar = upper.empty() ? n : upper.front().arity();
        if (i == j) return zero_field(ar);
        if (i < j) return upper[upper_index(i, j)];
        return -upper[upper_index(j, i)];
    }

    /// omega(u, v) at a point.
    double operator()(const ChartPoint& p, const std::vector<double>& u,
                      const std::vector<double>& v) const;
};

inline ScalarField ChartVectorField::apply(const ScalarField& f) const {
    if (f.arity() != arity()) throw ConfigError("vector field apply: arity mismatch");
    ChartVectorField self = *this;
    return make_field(f.arity(), [self, f](auto xs) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        T acc(0.0);
        for (int i = 0; i < self.dim(); ++i) {
            T xi = self.comps[static_cast<std::size_t>(i)](xs);
            acc = acc + xi * detail::derive_coord(f, xs, i);
        }
        return acc;
    });
}

inline ScalarField pairing(const ChartOneForm& omega, const ChartVectorField& x) {
    if (omega.dim() != x.dim() || omega.arity() != x.arity())
        throw ConfigError("pairing: dimension mismatch");
    return make_field(omega.arity(), [omega, x](auto xs) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        T acc(0.0);
        for (std::size_t i = 0; i < omega.comps.size(); ++i)
            acc = acc + omega.comps[i](xs) * x.comps[i](xs);
        return acc;
    });
}

inline ScalarField Bivector::contract(const ChartOneForm& omega, const ChartOneForm& theta) const {
    if (omega.dim() != n || theta.dim() != n) throw ConfigError("bivector contract: dimension");
    Bivector self = *this;
    return make_field(omega.arity(), [self, omega, theta](auto xs) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        T acc(0.0);
        for (int i = 0; i < self.n; ++i)
            for (int j = i + 1; j < self.n; ++j) {
                T pij = self.upper[self.upper_index(i, j)](xs);
                // pi^{ij}(w_i t_j - w_j t_i)
                acc = acc + pij * (omega.comps[static_cast<std::size_t>(i)](xs) *
                                       theta.comps[static_cast<std::size_t>(j)](xs) -
                                   omega.comps[static_cast<std::size_t>(j)](xs) *
                                       theta.comps[static_cast<std::size_t>(i)](xs));
            }
        return acc;
    });
}

inline double TwoForm::operator()(const ChartPoint& p, const std::vector<double>& u,
                                  const std::vector<double>& v) const {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double w = upper[upper_index(i, j)](p);
            acc += w * (u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] -
                        u[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(i)]);
        }
    return acc;
}

} // namespace algd
