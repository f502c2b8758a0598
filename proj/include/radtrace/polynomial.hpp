// Sparse multivariate polynomials over a scalar field K, plus the polynomial
// system type used as pipeline input.
#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "radtrace/monomial.hpp"
#include "radtrace/scalar.hpp"

namespace radtrace {

constexpr int kDegZero = -1;  // degree sentinel for the zero polynomial

template <class K>
struct Polynomial {
    int nvars = 0;
    std::map<Monomial, K, GradedLess> terms;  // zero coefficients never stored

    Polynomial() = default;
    explicit Polynomial(int nv) : nvars(nv) {}

    static Polynomial constant(const K& c, int nv) {
        Polynomial p(nv);
        if (!is_zero(c)) p.terms.emplace(Monomial::one(nv), c);
        return p;
    }
    static Polynomial variable(int i, int nv) {
        Polynomial p(nv);
        p.terms.emplace(Monomial::var(i, nv), K(1));
        return p;
    }
    static Polynomial monomial(const Monomial& m, const K& c) {
        Polynomial p(m.nvars());
        if (!is_zero(c)) p.terms.emplace(m, c);
        return p;
    }

    bool is_zero_poly() const { return terms.empty(); }
    int degree() const { return terms.empty() ? kDegZero : terms.rbegin()->first.degree(); }

    K coeff(const Monomial& m) const {
        auto it = terms.find(m);
        return it == terms.end() ? K(0) : it->second;
    }

    void add_term(const Monomial& m, const K& c) {
        if (is_zero(c)) return;
        auto [it, inserted] = terms.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (is_zero(it->second)) terms.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r(nvars);
        for (auto& [m, c] : terms) r.terms.emplace(m, -c);
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) {
        check_vars(o);
        for (auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_vars(o);
        for (auto& [m, c] : o.terms) add_term(m, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_vars(b);
        Polynomial r(a.nvars);
        for (auto& [ma, ca] : a.terms)
            for (auto& [mb, cb] : b.terms) r.add_term(ma.times(mb), ca * cb);
        return r;
    }
    Polynomial scaled(const K& c) const {
        Polynomial r(nvars);
        if (is_zero(c)) return r;
        for (auto& [m, k] : terms) r.add_term(m, k * c);
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.nvars != b.nvars || a.terms.size() != b.terms.size()) return false;
        auto ia = a.terms.begin();
        for (auto& [m, c] : b.terms) {
            if (ia->first != m || !scalar_eq(ia->second, c)) return false;
            ++ia;
        }
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    K evaluate(const std::vector<K>& point) const {
        if (static_cast<int>(point.size()) != nvars)
            throw std::invalid_argument("evaluate: point dimension mismatch");
        K total(0);
        for (auto& [m, c] : terms) {
            K v = c;
            for (int i = 0; i < nvars; ++i)
                for (int k = 0; k < m.e[i]; ++k) v *= point[i];
            total += v;
        }
        return total;
    }

    Polynomial derivative(int var) const {
        Polynomial r(nvars);
        for (auto& [m, c] : terms) {
            if (m.e[var] == 0) continue;
            Monomial d = m;
            d.e[var] -= 1;
            r.add_term(d, c * K(m.e[var]));
        }
        return r;
    }

    // Reinterpret over nv_new variables, variable i becoming var_map[i].
    Polynomial map_vars(const std::vector<int>& var_map, int nv_new) const {
        Polynomial r(nv_new);
        for (auto& [m, c] : terms) {
            Monomial t = Monomial::one(nv_new);
            for (int i = 0; i < nvars; ++i) t.e[var_map[i]] += m.e[i];
            r.add_term(t, c);
        }
        return r;
    }

   private:
    void check_vars(const Polynomial& o) const {
        if (nvars != o.nvars) throw std::invalid_argument("polynomial variable-count mismatch");
    }
};

// Coefficient vector of p over an ordered monomial basis. Every monomial of p
// must appear in the basis.
template <class K>
std::vector<K> coeff_vector(const Polynomial<K>& p, const std::vector<Monomial>& basis) {
    std::map<Monomial, int, GradedLess> pos;
    for (size_t i = 0; i < basis.size(); ++i) pos.emplace(basis[i], static_cast<int>(i));
    std::vector<K> v(basis.size(), K(0));
    for (auto& [m, c] : p.terms) {
        auto it = pos.find(m);
        if (it == pos.end()) throw std::invalid_argument("coeff_vector: monomial not in basis");
        v[it->second] = c;
    }
    return v;
}

// Exact division: returns q with p = q * d. Throws if the division leaves a
// remainder (the callers rely on divisibility being structural).
template <class K>
Polynomial<K> divide_exact(Polynomial<K> p, const Polynomial<K>& d) {
    if (d.is_zero_poly()) throw std::invalid_argument("divide_exact: zero divisor");
    Polynomial<K> q(p.nvars);
    const auto& dlead = *d.terms.rbegin();
    while (!p.is_zero_poly()) {
        const auto& plead = *p.terms.rbegin();
        Monomial t = plead.first;
        bool divisible = true;
        for (int i = 0; i < p.nvars; ++i) {
            t.e[i] -= dlead.first.e[i];
            if (t.e[i] < 0) divisible = false;
        }
        if (!divisible) throw std::runtime_error("divide_exact: nonzero remainder");
        K c = plead.second / dlead.second;
        q.add_term(t, c);
        p -= d * Polynomial<K>::monomial(t, c);
    }
    return q;
}

template <class K>
struct PolySystem {
    std::vector<std::string> vars;        // variable names, defines nvars
    std::vector<Polynomial<K>> polys;     // sorted by degree, non-increasing

    PolySystem() = default;
    PolySystem(std::vector<std::string> v, std::vector<Polynomial<K>> ps)
        : vars(std::move(v)), polys(std::move(ps)) {
        for (auto& p : polys) {
            if (p.is_zero_poly()) throw std::invalid_argument("PolySystem: zero polynomial");
            if (p.nvars != nvars()) throw std::invalid_argument("PolySystem: nvars mismatch");
        }
        if (polys.empty()) throw std::invalid_argument("PolySystem: empty system");
        std::stable_sort(polys.begin(), polys.end(),
                         [](const Polynomial<K>& a, const Polynomial<K>& b) {
                             return a.degree() > b.degree();
                         });
    }

    int nvars() const { return static_cast<int>(vars.size()); }
    int size() const { return static_cast<int>(polys.size()); }
    std::vector<int> degrees() const {
        std::vector<int> d;
        d.reserve(polys.size());
        for (auto& p : polys) d.push_back(p.degree());
        return d;
    }
};

// Determinant of a square polynomial matrix by cofactor expansion. Sizes here
// are small (m+1 rows at most).
template <class K>
Polynomial<K> poly_det(const std::vector<std::vector<Polynomial<K>>>& a) {
    size_t n = a.size();
    if (n == 1) return a[0][0];
    int nv = a[0][0].nvars;
    Polynomial<K> det(nv);
    for (size_t i = 0; i < n; ++i) {
        if (a[i][0].is_zero_poly()) continue;
        std::vector<std::vector<Polynomial<K>>> minor;
        minor.reserve(n - 1);
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            minor.emplace_back(a[r].begin() + 1, a[r].end());
        }
        Polynomial<K> term = a[i][0] * poly_det(minor);
        if (i % 2 == 0)
            det += term;
        else
            det -= term;
    }
    return det;
}

// Determinant of the Jacobian matrix of a square system, expanded symbolically.
template <class K>
Polynomial<K> jacobian_det(const PolySystem<K>& F) {
    int m = F.nvars();
    if (F.size() != m) throw std::invalid_argument("jacobian_det: needs as many polynomials as variables");
    std::vector<std::vector<Polynomial<K>>> a(m, std::vector<Polynomial<K>>());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a[i].push_back(F.polys[i].derivative(j));
    return poly_det(a);
}

template <class K>
std::string poly_str(const Polynomial<K>& p, const std::vector<std::string>& vars) {
    if (p.is_zero_poly()) return "0";
    std::string out;
    bool first = true;
    // highest-degree terms first reads naturally
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = scalar_str(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) out += "-", cs = cs.substr(1);
        } else {
            out += neg ? " - " : " + ";
            if (neg) cs = cs.substr(1);
        }
        first = false;
        std::string mono;
        for (size_t i = 0; i < vars.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
        }
        if (mono.empty()) {
            out += cs;
        } else if (cs == "1") {
            out += mono;
        } else {
            out += cs + "*" + mono;
        }
    }
    return out;
}

}  // namespace radtrace
