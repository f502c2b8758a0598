// Scalar fields used throughout: exact rationals backed by GMP, and a
// tolerance-based floating field for the approximate mode. All algorithms are
// templated on the field; the two are never mixed inside one computation.
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace radtrace {

// Exact rational scalar. mpq_class keeps values in lowest terms with a
// positive denominator after every arithmetic operation.
using Rat = mpq_class;

// Floating scalar with a global comparison tolerance. Two values compare
// equal when |a-b| <= tol * max(1, |a|, |b|).
struct Approx {
    double v = 0.0;

    Approx() = default;
    Approx(int n) : v(n) {}
    Approx(long n) : v(static_cast<double>(n)) {}
    Approx(double d) : v(d) {}

    static double tolerance;

    Approx operator-() const { return Approx(-v); }
    Approx& operator+=(const Approx& o) { v += o.v; return *this; }
    Approx& operator-=(const Approx& o) { v -= o.v; return *this; }
    Approx& operator*=(const Approx& o) { v *= o.v; return *this; }
    Approx& operator/=(const Approx& o) { v /= o.v; return *this; }

    friend Approx operator+(Approx a, const Approx& b) { return a += b; }
    friend Approx operator-(Approx a, const Approx& b) { return a -= b; }
    friend Approx operator*(Approx a, const Approx& b) { return a *= b; }
    friend Approx operator/(Approx a, const Approx& b) { return a /= b; }

    friend bool operator==(const Approx& a, const Approx& b) {
        double scale = std::max({1.0, std::fabs(a.v), std::fabs(b.v)});
        return std::fabs(a.v - b.v) <= tolerance * scale;
    }
    friend bool operator!=(const Approx& a, const Approx& b) { return !(a == b); }
};

inline double Approx::tolerance = 1e-8;

template <class K>
inline constexpr bool is_exact_field_v = false;
template <>
inline constexpr bool is_exact_field_v<Rat> = true;

inline bool is_zero(const Rat& a) { return sgn(a) == 0; }
inline bool is_zero(const Approx& a) { return std::fabs(a.v) <= Approx::tolerance; }

inline bool scalar_eq(const Rat& a, const Rat& b) { return a == b; }
inline bool scalar_eq(const Approx& a, const Approx& b) { return a == b; }

// Magnitude used for pivot selection in the tolerant mode.
inline double pivot_weight(const Rat& a) { return std::fabs(a.get_d()); }
inline double pivot_weight(const Approx& a) { return std::fabs(a.v); }

inline double to_double(const Rat& a) { return a.get_d(); }
inline double to_double(const Approx& a) { return a.v; }

inline std::string scalar_str(const Rat& a) { return a.get_str(); }
inline std::string scalar_str(const Approx& a) {
    std::ostringstream os;
    os.precision(17);
    os << a.v;
    return os.str();
}

// Rational from "p" or "p/q" text. Throws on a zero denominator.
inline Rat rat_from_string(const std::string& s) {
    Rat r(s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

}  // namespace radtrace
