#pragma once

#include <cmath>
#include <ostream>

#include "algd/errors.hpp"

namespace algd {

/// First-order truncated Taylor value: a + eps*b with eps^2 = 0.
/// Nesting Dual<Dual<...>> yields mixed higher derivatives; the public tower
/// used throughout the library lives in scalar_field.hpp.
template <class T>
struct Dual {
    T a{}; // value
    T b{}; // derivative part

    constexpr Dual() = default;
    constexpr Dual(double s) : a(s), b() {}
    constexpr Dual(T value, T deriv) : a(std::move(value)), b(std::move(deriv)) {}
};

using J1 = Dual<double>;
using J2 = Dual<J1>;
using J3 = Dual<J2>;
using J4 = Dual<J3>;

// -- primal extraction (for pivoting, domain checks, diagnostics) ------------

inline double primal_of(double x) { return x; }
template <class T>
double primal_of(const Dual<T>& x) {
    return primal_of(x.a);
}

inline bool finite_rec(double x) { return std::isfinite(x); }
template <class T>
bool finite_rec(const Dual<T>& x) {
    return finite_rec(x.a) && finite_rec(x.b);
}

// -- arithmetic ---------------------------------------------------------------

template <class T>
Dual<T> operator+(const Dual<T>& x) {
    return x;
}
template <class T>
Dual<T> operator-(const Dual<T>& x) {
    return {-x.a, -x.b};
}

template <class T>
Dual<T> operator+(const Dual<T>& x, const Dual<T>& y) {
    return {x.a + y.a, x.b + y.b};
}
template <class T>
Dual<T> operator-(const Dual<T>& x, const Dual<T>& y) {
    return {x.a - y.a, x.b - y.b};
}
template <class T>
Dual<T> operator*(const Dual<T>& x, const Dual<T>& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a};
}
template <class T>
Dual<T> operator/(const Dual<T>& x, const Dual<T>& y) {
    T q = x.a / y.a;
    return {q, (x.b - q * y.b) / y.a};
}

template <class T>
Dual<T> operator+(const Dual<T>& x, double s) {
    return {x.a + s, x.b};
}
template <class T>
Dual<T> operator+(double s, const Dual<T>& x) {
    return {x.a + s, x.b};
}
template <class T>
Dual<T> operator-(const Dual<T>& x, double s) {
    return {x.a - s, x.b};
}
template <class T>
Dual<T> operator-(double s, const Dual<T>& x) {
    return {s - x.a, -x.b};
}
template <class T>
Dual<T> operator*(const Dual<T>& x, double s) {
    return {x.a * s, x.b * s};
}
template <class T>
Dual<T> operator*(double s, const Dual<T>& x) {
    return {x.a * s, x.b * s};
}
template <class T>
Dual<T> operator/(const Dual<T>& x, double s) {
    return {x.a / s, x.b / s};
}
template <class T>
Dual<T> operator/(double s, const Dual<T>& x) {
    return Dual<T>(s) / x;
}

template <class T>
Dual<T>& operator+=(Dual<T>& x, const Dual<T>& y) {
    x = x + y;
    return x;
}
template <class T>
Dual<T>& operator-=(Dual<T>& x, const Dual<T>& y) {
    x = x - y;
    return x;
}
template <class T>
Dual<T>& operator*=(Dual<T>& x, const Dual<T>& y) {
    x = x * y;
    return x;
}

// -- elementary functions -----------------------------------------------------

using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;

template <class T>
Dual<T> sin(const Dual<T>& x) {
    return {sin(x.a), cos(x.a) * x.b};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
    return {cos(x.a), -(sin(x.a) * x.b)};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
    T e = exp(x.a);
    return {e, e * x.b};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
    return {log(x.a), x.b / x.a};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
    T r = sqrt(x.a);
    return {r, x.b / (2.0 * r)};
}

/// x^y for positive base, via exp(y*log(x)). Integer powers of possibly
/// non-positive bases go through ipow instead.
template <class T>
Dual<T> pow(const Dual<T>& x, const Dual<T>& y) {
    return exp(y * log(x));
}

template <class T>
T ipow(const T& x, long long e) {
    if (e < 0) return T(1.0) / ipow(x, -e);
    T acc(1.0);
    T base = x;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}
inline double ipow(double x, long long e) {
    if (e < 0) return 1.0 / ipow(x, -e);
    double acc = 1.0;
    while (e > 0) {
        if (e & 1) acc *= x;
        x *= x;
        e >>= 1;
    }
    return acc;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Dual<T>& x) {
    return os << "(" << x.a << " + eps*" << x.b << ")";
}

} // namespace algd
