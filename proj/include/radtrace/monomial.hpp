// Monomials as exponent vectors, ordered by total degree first and then
// lexicographically with the last variable most significant, so enumeration
// of two variables runs 1, x1, x2, x1^2, x1*x2, x2^2, ...
#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace radtrace {

struct Monomial {
    std::vector<int> e;  // one exponent per variable

    Monomial() = default;
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}

    static Monomial one(int nvars) { return Monomial(std::vector<int>(nvars, 0)); }
    static Monomial var(int i, int nvars, int power = 1) {
        Monomial m = one(nvars);
        m.e[i] = power;
        return m;
    }

    int nvars() const { return static_cast<int>(e.size()); }
    int degree() const { return std::accumulate(e.begin(), e.end(), 0); }
    bool is_one() const { return degree() == 0; }

    Monomial times(const Monomial& o) const {
        Monomial r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

// Graded order: lower total degree first; ties broken lexicographically on
// the exponent vector read from the last variable down.
inline bool graded_less(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (int i = a.nvars() - 1; i >= 0; --i) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    }
    return false;
}

struct GradedLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return graded_less(a, b); }
};

// All monomials in m variables of degree <= d, ascending. Length C(m+d, m).
inline std::vector<Monomial> monomial_basis(int m, int d) {
    if (m < 1 || d < 0) throw std::invalid_argument("monomial_basis: need m >= 1, d >= 0");
    std::vector<Monomial> out;
    std::vector<int> cur(m, 0);
    // enumerate exponent vectors of total degree exactly t, ascending under
    // graded_less: the last variable varies slowest
    auto rec = [&](auto&& self, int var, int remaining) -> void {
        if (var == 0) {
            cur[0] = remaining;
            out.push_back(Monomial(cur));
            cur[0] = 0;
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            cur[var] = k;
            self(self, var - 1, remaining - k);
        }
        cur[var] = 0;
    };
    for (int t = 0; t <= d; ++t) rec(rec, m - 1, t);
    return out;
}

}  // namespace radtrace
