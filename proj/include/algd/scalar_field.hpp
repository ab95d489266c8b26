#pragma once

#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "algd/dual.hpp"
#include "algd/errors.hpp"

namespace algd {

/// Evaluation node. A field can be evaluated on plain doubles or on nested
/// jets up to depth 4; differentiation operators consume one level per nesting.
struct FieldNode {
    virtual ~FieldNode() = default;
    virtual double eval0(std::span<const double>) const = 0;
    virtual J1 eval1(std::span<const J1>) const = 0;
    virtual J2 eval2(std::span<const J2>) const = 0;
    virtual J3 eval3(std::span<const J3>) const = 0;
    virtual J4 eval4(std::span<const J4>) const = 0;
};

namespace detail {

template <class F>
struct LambdaNode final : FieldNode {
    F f;
    explicit LambdaNode(F fn) : f(std::move(fn)) {}
    double eval0(std::span<const double> x) const override { return f(x); }
    J1 eval1(std::span<const J1> x) const override { return f(x); }
    J2 eval2(std::span<const J2> x) const override { return f(x); }
    J3 eval3(std::span<const J3> x) const override { return f(x); }
    J4 eval4(std::span<const J4> x) const override { return f(x); }
};

template <class T>
struct NextJet;
template <>
struct NextJet<double> {
    using type = J1;
};
template <>
struct NextJet<J1> {
    using type = J2;
};
template <>
struct NextJet<J2> {
    using type = J3;
};
template <>
struct NextJet<J3> {
    using type = J4;
};

} // namespace detail

/// A smooth real-valued function of `arity` chart variables, immutable and
/// cheap to copy. Composition builds a DAG of shared nodes; evaluation is pure.
class ScalarField {
  public:
    ScalarField() = default;
    ScalarField(int arity, std::shared_ptr<const FieldNode> node)
        : arity_(arity), node_(std::move(node)) {}

    int arity() const { return arity_; }
    bool valid() const { return node_ != nullptr; }

    double operator()(std::span<const double> x) const { return node_->eval0(check(x)); }
    J1 operator()(std::span<const J1> x) const { return node_->eval1(check(x)); }
    J2 operator()(std::span<const J2> x) const { return node_->eval2(check(x)); }
    J3 operator()(std::span<const J3> x) const { return node_->eval3(check(x)); }
    J4 operator()(std::span<const J4> x) const { return node_->eval4(check(x)); }

    double operator()(const std::vector<double>& x) const {
        return (*this)(std::span<const double>(x));
    }
    template <class T>
    T operator()(const std::vector<T>& x) const {
        return (*this)(std::span<const T>(x));
    }

  private:
    template <class T>
    std::span<const T> check(std::span<const T> x) const {
        if (!node_) throw ConfigError("scalar field: evaluating a default-constructed field");
        if (static_cast<int>(x.size()) != arity_)
            throw ConfigError("scalar field: expected " + std::to_string(arity_) +
                              " variables, got " + std::to_string(x.size()));
        return x;
    }

    int arity_ = 0;
    std::shared_ptr<const FieldNode> node_;
};

/// Wrap a generic callable `T f(span<const T>)` as a field of the given arity.
template <class F>
ScalarField make_field(int arity, F f) {
    return ScalarField(arity, std::make_shared<detail::LambdaNode<F>>(std::move(f)));
}

inline ScalarField constant(double c, int arity) {
    return make_field(arity, [c](auto xs) {
        using T = std::remove_cvref_t<decltype(xs[0])>;
        (void)xs;
        return T(c);
    });
}

/// The i-th coordinate function.
inline ScalarField coord(int i, int arity) {
    if (i < 0 || i >= arity) throw ConfigError("coord: index out of range");
    return make_field(arity, [i](auto xs) { return xs[static_cast<std::size_t>(i)]; });
}

inline ScalarField zero_field(int arity) { return constant(0.0, arity); }

namespace detail {

inline void require_same_arity(const ScalarField& f, const ScalarField& g) {
    if (f.arity() != g.arity())
        throw ConfigError("scalar field: mixing fields of arity " + std::to_string(f.arity()) +
                          " and " + std::to_string(g.arity()));
}

} // namespace detail

inline ScalarField operator+(const ScalarField& f, const ScalarField& g) {
    detail::require_same_arity(f, g);
    return make_field(f.arity(), [f, g](auto xs) { return f(xs) + g(xs); });
}
inline ScalarField operator-(const ScalarField& f, const ScalarField& g) {
    detail::require_same_arity(f, g);
    return make_field(f.arity(), [f, g](auto xs) { return f(xs) - g(xs); });
}
inline ScalarField operator*(const ScalarField& f, const ScalarField& g) {
    detail::require_same_arity(f, g);
    return make_field(f.arity(), [f, g](auto xs) { return f(xs) * g(xs); });
}
inline ScalarField operator-(const ScalarField& f) {
    return make_field(f.arity(), [f](auto xs) { return -f(xs); });
}
inline ScalarField operator*(double s, const ScalarField& f) {
    return make_field(f.arity(), [s, f](auto xs) { return f(xs) * s; });
}
inline ScalarField operator*(const ScalarField& f, double s) { return s * f; }
inline ScalarField operator+(const ScalarField& f, double s) {
    return make_field(f.arity(), [s, f](auto xs) { return f(xs) + s; });
}
inline ScalarField operator+(double s, const ScalarField& f) { return f + s; }
inline ScalarField operator-(const ScalarField& f, double s) { return f + (-s); }
inline ScalarField operator/(const ScalarField& f, const ScalarField& g) {
    detail::require_same_arity(f, g);
    return make_field(f.arity(), [f, g](auto xs) { return f(xs) / g(xs); });
}

/// Partial derivative along coordinate i, as a field. Consumes one jet level.
ScalarField partial(const ScalarField& f, int i);

/// Evaluate several fields at a common point.
template <class T>
std::vector<T> eval_all(const std::vector<ScalarField>& fs, std::span<const T> x) {
    std::vector<T> out;
    out.reserve(fs.size());
    for (const auto& f : fs) out.push_back(f(x));
    return out;
}

/// Truncated Taylor data of order two along a direction.
struct Jet2 {
    double value = 0;
    double d1 = 0; // directional derivative
    double d2 = 0; // second directional derivative
};

Jet2 jet2(const ScalarField& f, std::span<const double> p, std::span<const double> dir);

/// First directional derivative at a point.
double directional(const ScalarField& f, std::span<const double> p, std::span<const double> dir);

namespace detail {

/// Seed one jet level along `dir` and evaluate; the workhorse behind partial()
/// and every nested-derivative operation in the library.
template <class T>
T derive_along(const ScalarField& f, std::span<const T> x, std::span<const T> dir) {
    if constexpr (std::is_same_v<T, J4>) {
        (void)f;
        (void)x;
        (void)dir;
        throw ConfigError("scalar field: nested derivative depth exceeds the jet tower (4)");
    } else {
        using U = typename NextJet<T>::type;
        std::vector<U> seeded(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) seeded[j] = U(x[j], dir[j]);
        return f(std::span<const U>(seeded)).b;
    }
}

template <class T>
T derive_coord(const ScalarField& f, std::span<const T> x, int i) {
    if constexpr (std::is_same_v<T, J4>) {
        (void)f;
        (void)x;
        (void)i;
        throw ConfigError("scalar field: nested derivative depth exceeds the jet tower (4)");
    } else {
        using U = typename NextJet<T>::type;
        std::vector<U> seeded(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) seeded[j] = U(x[j], T(0.0));
        seeded[static_cast<std::size_t>(i)].b = T(1.0);
        return f(std::span<const U>(seeded)).b;
    }
}

} // namespace detail

inline ScalarField partial(const ScalarField& f, int i) {
    if (i < 0 || i >= f.arity()) throw ConfigError("partial: index out of range");
    return make_field(f.arity(), [f, i](auto xs) { return detail::derive_coord(f, xs, i); });
}

inline double directional(const ScalarField& f, std::span<const double> p,
                          std::span<const double> dir) {
    if (static_cast<int>(dir.size()) != f.arity())
        throw ConfigError("directional: direction dimension mismatch");
    return detail::derive_along(f, p, dir);
}

inline Jet2 jet2(const ScalarField& f, std::span<const double> p, std::span<const double> dir) {
    if (static_cast<int>(p.size()) != f.arity() || dir.size() != p.size())
        throw ConfigError("jet2: dimension mismatch");
    std::vector<J2> seeded(p.size());
    for (std::size_t j = 0; j < p.size(); ++j)
        seeded[j] = J2(J1(p[j], dir[j]), J1(dir[j], 0.0));
    J2 r = f(std::span<const J2>(seeded));
    return Jet2{r.a.a, r.a.b, r.b.b};
}

} // namespace algd
