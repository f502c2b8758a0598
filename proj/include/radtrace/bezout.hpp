// Bezout matrices: the univariate Bezoutian as a trace matrix in the Horner
// basis with square-free extraction from its kernel, and the multivariate
// (Dixon) Bezoutian giving radical generators and, through an iterative
// reduction of the coefficient matrices, multiplication matrices of the
// radical of an affine complete intersection.
#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "radtrace/matrix.hpp"
#include "radtrace/momtrace.hpp"
#include "radtrace/polynomial.hpp"

namespace radtrace {

// ---------------------------------------------------------------------------
// univariate
// ---------------------------------------------------------------------------

template <class K>
struct BezoutMatrixUni {
    int d = 0;
    DenseMatrix<K> c;  // c(i, j) = coefficient of x^i y^j in the Bezoutian

    Polynomial<K> reconstruct() const {
        Polynomial<K> p(2);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                p.add_term(Monomial(std::vector<int>{i, j}), c(i, j));
        return p;
    }
};

// (f(x) g(y) - f(y) g(x)) / (x - y) as a d x d coefficient grid.
template <class K>
BezoutMatrixUni<K> uni_bezout(const Polynomial<K>& f, const Polynomial<K>& g) {
    if (f.nvars != 1 || g.nvars != 1)
        throw std::invalid_argument("uni_bezout: univariate polynomials required");
    int d = f.degree();
    if (d < 1 || g.degree() > d)
        throw std::invalid_argument("uni_bezout: need deg g <= deg f and deg f >= 1");
    auto fx = f.map_vars({0}, 2), fy = f.map_vars({1}, 2);
    auto gx = g.map_vars({0}, 2), gy = g.map_vars({1}, 2);
    Polynomial<K> xminusy(2);
    xminusy.add_term(Monomial::var(0, 2), K(1));
    xminusy.add_term(Monomial::var(1, 2), K(-1));
    Polynomial<K> quot = divide_exact(fx * gy - fy * gx, xminusy);
    BezoutMatrixUni<K> b;
    b.d = d;
    b.c = DenseMatrix<K>(d, d);
    for (auto& [m, v] : quot.terms) b.c(m.e[0], m.e[1]) = v;
    return b;
}

// Horner polynomials H_i = a_{i+1} + a_{i+2} x + ... + a_d x^{d-i-1}.
template <class K>
std::vector<Polynomial<K>> horner_basis(const Polynomial<K>& f) {
    if (f.nvars != 1 || f.degree() < 1)
        throw std::invalid_argument("horner_basis: univariate of positive degree required");
    int d = f.degree();
    std::vector<K> a(d + 1, K(0));
    for (auto& [m, v] : f.terms) a[m.e[0]] = v;
    std::vector<Polynomial<K>> h(d, Polynomial<K>(1));
    for (int i = 0; i < d; ++i)
        for (int t = i + 1; t <= d; ++t)
            h[i].add_term(Monomial(std::vector<int>{t - i - 1}), a[t]);
    return h;
}

// The Bezout matrix of f and f' is the matrix of traces in the Horner basis.
template <class K>
BezoutMatrixUni<K> uni_trace_matrix(const Polynomial<K>& f) {
    return uni_bezout(f, f.derivative(0));
}

template <class K>
Polynomial<K> monic(const Polynomial<K>& f) {
    if (f.is_zero_poly()) return f;
    return f.scaled(K(1) / f.terms.rbegin()->second);
}

// Square-free part of f from the kernel of its Bezout trace matrix: the
// kernel combination of Horner polynomials of least degree. An empty kernel
// means f is already square-free.
template <class K>
Polynomial<K> uni_squarefree(const Polynomial<K>& f) {
    BezoutMatrixUni<K> b = uni_trace_matrix(f);
    DenseMatrix<K> kern = nullspace(b.c);
    if (kern.cols() == 0) return monic(f);
    // latest possible leading index = least degree in the Horner filtration
    RrefResult<K> red = rref(kern.transpose());
    int last = red.rank - 1;
    auto h = horner_basis(f);
    Polynomial<K> p(1);
    for (int j = 0; j < b.d; ++j) {
        const K& r = red.mat(last, j);
        if (!is_zero(r)) p += h[j].scaled(r);
    }
    return monic(p);
}

// ---------------------------------------------------------------------------
// multivariate
// ---------------------------------------------------------------------------

// Bezoutian of [f0, f_1..f_m] in 2m variables (x block then y block), with
// the x- and y-side monomial supports it actually touches.
template <class K>
struct BezoutianMulti {
    int m = 0;
    Polynomial<K> poly;             // over x_1..x_m, y_1..y_m
    std::vector<Monomial> e_x;      // occurring x-side monomials, ascending
    std::vector<Monomial> e_y;      // occurring y-side monomials, ascending
};

namespace detail {

inline std::pair<Monomial, Monomial> split_xy(const Monomial& mo, int m) {
    Monomial a = Monomial::one(m), b = Monomial::one(m);
    for (int i = 0; i < m; ++i) {
        a.e[i] = mo.e[i];
        b.e[i] = mo.e[m + i];
    }
    return {a, b};
}

template <class K>
void collect_supports(BezoutianMulti<K>& bz) {
    std::map<Monomial, bool, GradedLess> sx, sy;
    for (auto& [mo, c] : bz.poly.terms) {
        auto [a, b] = split_xy(mo, bz.m);
        sx.emplace(a, true);
        sy.emplace(b, true);
    }
    for (auto& [mo, _] : sx) bz.e_x.push_back(mo);
    for (auto& [mo, _] : sy) bz.e_y.push_back(mo);
}

}  // namespace detail

// Difference-quotient determinant with every first-column entry evaluated at
// the all-x point.
template <class K>
BezoutianMulti<K> bezoutian_multi(const Polynomial<K>& f0, const PolySystem<K>& F) {
    int m = F.nvars();
    if (F.size() != m)
        throw std::invalid_argument("bezoutian_multi: requires a square system");
    if (f0.nvars != m) throw std::invalid_argument("bezoutian_multi: f0 variable count mismatch");
    // substitution maps for X_j = [y_1..y_j, x_{j+1}..x_m]
    auto subst = [&](const Polynomial<K>& p, int j) {
        std::vector<int> vm(m);
        for (int i = 0; i < m; ++i) vm[i] = i < j ? m + i : i;
        return p.map_vars(vm, 2 * m);
    };
    std::vector<Polynomial<K>> rows_src{f0};
    for (auto& p : F.polys) rows_src.push_back(p);

    std::vector<std::vector<Polynomial<K>>> mat(m + 1);
    for (int r = 0; r <= m; ++r) {
        mat[r].push_back(subst(rows_src[r], 0));
        for (int j = 1; j <= m; ++j) {
            Polynomial<K> num = subst(rows_src[r], j - 1) - subst(rows_src[r], j);
            Polynomial<K> den(2 * m);
            den.add_term(Monomial::var(j - 1, 2 * m), K(1));
            den.add_term(Monomial::var(m + j - 1, 2 * m), K(-1));
            if (num.is_zero_poly())
                mat[r].push_back(Polynomial<K>(2 * m));
            else
                mat[r].push_back(divide_exact(num, den));
        }
    }
    BezoutianMulti<K> bz;
    bz.m = m;
    bz.poly = poly_det(mat);
    detail::collect_supports(bz);
    return bz;
}

// Coefficient matrix over explicit row (x-side) and column (y-side) supports.
template <class K>
DenseMatrix<K> bez_coeff_matrix(const BezoutianMulti<K>& bz, const std::vector<Monomial>& rows,
                                const std::vector<Monomial>& cols) {
    std::map<Monomial, int, GradedLess> ri, ci;
    for (size_t i = 0; i < rows.size(); ++i) ri.emplace(rows[i], static_cast<int>(i));
    for (size_t j = 0; j < cols.size(); ++j) ci.emplace(cols[j], static_cast<int>(j));
    DenseMatrix<K> c(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (auto& [mo, v] : bz.poly.terms) {
        auto [a, b] = detail::split_xy(mo, bz.m);
        auto ia = ri.find(a), ib = ci.find(b);
        if (ia == ri.end() || ib == ci.end())
            throw std::invalid_argument("bez_coeff_matrix: support not covered");
        c(ia->second, ib->second) = v;
    }
    return c;
}

inline std::vector<Monomial> merge_supports(const std::vector<std::vector<Monomial>>& lists) {
    std::map<Monomial, bool, GradedLess> s;
    for (auto& l : lists)
        for (auto& mo : l) s.emplace(mo, true);
    std::vector<Monomial> out;
    for (auto& [mo, _] : s) out.push_back(mo);
    return out;
}

// Radical generators from the non-reduced Bezoutians: images under the
// coefficient map of 1 of the kernel of the coefficient map of the Jacobian
// Bezoutian, together with the input system. The kernel may optionally be
// restricted to the orthogonal complement of the kernel of the map of 1.
template <class K>
std::vector<Polynomial<K>> radical_from_bezout(const PolySystem<K>& F,
                                               bool restrict_kernel = false) {
    int m = F.nvars();
    if (F.size() != m)
        throw std::invalid_argument("radical_from_bezout: requires a square system");
    Polynomial<K> jac = jacobian_det(F);
    BezoutianMulti<K> b1 = bezoutian_multi(Polynomial<K>::constant(K(1), m), F);
    BezoutianMulti<K> bj = bezoutian_multi(jac, F);
    std::vector<Monomial> cols = merge_supports({b1.e_y, bj.e_y});
    DenseMatrix<K> cj = bez_coeff_matrix(bj, bj.e_x, cols);
    DenseMatrix<K> c1 = bez_coeff_matrix(b1, b1.e_x, cols);

    DenseMatrix<K> kern = nullspace(cj);
    std::vector<std::vector<K>> lambdas;
    for (int j = 0; j < kern.cols(); ++j) lambdas.push_back(kern.col(j));
    if (restrict_kernel && !lambdas.empty()) {
        // intersect with the row space of the map of 1 (the orthogonal
        // complement of its kernel)
        DenseMatrix<K> c1t = c1.transpose();
        int nk = static_cast<int>(lambdas.size());
        DenseMatrix<K> stack(static_cast<int>(cols.size()), nk + c1t.cols());
        for (int i = 0; i < stack.rows(); ++i) {
            for (int j = 0; j < nk; ++j) stack(i, j) = lambdas[j][i];
            for (int j = 0; j < c1t.cols(); ++j) stack(i, nk + j) = -c1t(i, j);
        }
        DenseMatrix<K> rel = nullspace(stack);
        std::vector<std::vector<K>> restricted;
        RowSpan<K> seen(static_cast<int>(cols.size()));
        for (int j = 0; j < rel.cols(); ++j) {
            std::vector<K> v(cols.size(), K(0));
            for (size_t i = 0; i < cols.size(); ++i)
                for (int t = 0; t < nk; ++t) v[i] += rel(t, j) * lambdas[t][i];
            if (seen.insert(v)) restricted.push_back(std::move(v));
        }
        lambdas = std::move(restricted);
    }

    std::vector<Polynomial<K>> gens;
    for (auto& lam : lambdas) {
        Polynomial<K> g(m);
        for (size_t i = 0; i < b1.e_x.size(); ++i) {
            K acc(0);
            for (size_t j = 0; j < cols.size(); ++j)
                if (!is_zero(c1(static_cast<int>(i), static_cast<int>(j))))
                    acc += c1(static_cast<int>(i), static_cast<int>(j)) * lam[j];
            g.add_term(b1.e_x[i], acc);
        }
        if (!g.is_zero_poly()) gens.push_back(std::move(g));
    }
    for (auto& f : F.polys) gens.push_back(f);
    return gens;
}

// ---------------------------------------------------------------------------
// reduction loop
// ---------------------------------------------------------------------------

template <class K>
struct ReductionResult {
    std::vector<Monomial> basis;             // monomial basis of the radical quotient
    std::vector<DenseMatrix<K>> mult;        // multiplication operators on that basis
    std::vector<Polynomial<K>> radical_elems;  // collected elements of the radical
    std::vector<Polynomial<K>> radical_elems_y;  // mirror side, over the y support
    bool connected_to_one = true;
    bool rank_deficient_core = false;        // coefficient matrix of 1 not of full size
    bool commuting = true;
    int iterations = 0;
};

namespace detail {

template <class K>
Polynomial<K> poly_from_coords(const std::vector<K>& v, const std::vector<Monomial>& basis,
                               int m) {
    Polynomial<K> p(m);
    for (size_t i = 0; i < v.size(); ++i) p.add_term(basis[i], v[i]);
    return p;
}

// Coefficient polynomials of bz in the y-monomials, as vectors over rows,
// added when their support fits the row space (these all lie in the ideal).
template <class K>
void coefficient_vectors_in(const Polynomial<K>& two_sided, int m,
                            const std::map<Monomial, int, GradedLess>& row_index, int nrows,
                            std::vector<std::vector<K>>& out) {
    std::map<Monomial, std::vector<K>, GradedLess> per_y;
    bool fits = true;
    for (auto& [mo, c] : two_sided.terms) {
        auto [a, b] = split_xy(mo, m);
        auto it = row_index.find(a);
        if (it == row_index.end()) {
            fits = false;
            continue;  // that coefficient polynomial leaves the coordinate space
        }
        auto [slot, _] = per_y.emplace(b, std::vector<K>(nrows, K(0)));
        slot->second[it->second] += c;
    }
    (void)fits;
    // only keep y-slices whose full support fit the rows
    for (auto& [b, vec] : per_y) {
        bool complete = true;
        for (auto& [mo, c] : two_sided.terms) {
            auto [xa, yb] = split_xy(mo, m);
            if (yb == b && row_index.find(xa) == row_index.end()) complete = false;
        }
        if (complete) out.push_back(vec);
    }
}

// Loop body over a fixed pair of coordinate windows. The kernel of the
// Jacobian Bezoutian seeds radical elements; after that, any functional
// whose image under the matrix of 1 already lies in the collected span has
// its images under the shifted matrices in the radical as well (they differ
// from coordinate multiples of a radical element by ideal members). The
// collected span is grown to a fixed point and quotiented out; the resulting
// multiplication matrices are verified exactly against the reduced pairing.
template <class K>
ReductionResult<K> reduction_loop_on(const PolySystem<K>& F, const BezoutianMulti<K>& b1,
                                     const BezoutianMulti<K>& bj,
                                     const std::vector<BezoutianMulti<K>>& bx,
                                     const std::vector<Monomial>& ex,
                                     const std::vector<Monomial>& ey) {
    int m = F.nvars();
    std::map<Monomial, int, GradedLess> xi, yi;
    for (size_t i = 0; i < ex.size(); ++i) xi.emplace(ex[i], static_cast<int>(i));
    for (size_t j = 0; j < ey.size(); ++j) yi.emplace(ey[j], static_cast<int>(j));

    DenseMatrix<K> n1 = bez_coeff_matrix(b1, ex, ey);
    DenseMatrix<K> nj = bez_coeff_matrix(bj, ex, ey);
    std::vector<DenseMatrix<K>> nx;
    for (auto& b : bx) nx.push_back(bez_coeff_matrix(b, ex, ey));

    ReductionResult<K> rr;
    int n = static_cast<int>(ex.size());
    int nw = static_cast<int>(ey.size());
    {
        int r1 = rank(n1);
        rr.rank_deficient_core = r1 < n || r1 < nw;
    }

    // seeds: images of the Jacobian-Bezoutian kernels on both sides, plus the
    // coefficient slices of x_k B_1 - B_{x_k} (and their y mirrors) that fit
    // inside the supports; all of these lie in the radical
    std::vector<std::vector<K>> k_elems, h_elems;
    {
        DenseMatrix<K> kern = nullspace(nj);
        for (int j = 0; j < kern.cols(); ++j) k_elems.push_back(n1 * kern.col(j));
        DenseMatrix<K> kern_t = nullspace(nj.transpose());
        DenseMatrix<K> n1t = n1.transpose();
        for (int j = 0; j < kern_t.cols(); ++j) h_elems.push_back(n1t * kern_t.col(j));
        std::vector<int> swap_vars(2 * m);
        for (int i = 0; i < m; ++i) {
            swap_vars[i] = m + i;
            swap_vars[m + i] = i;
        }
        for (int k = 0; k < m; ++k) {
            Polynomial<K> shift = Polynomial<K>::variable(k, 2 * m) * b1.poly - bx[k].poly;
            detail::coefficient_vectors_in(shift, m, xi, n, k_elems);
            Polynomial<K> shift_y =
                Polynomial<K>::variable(m + k, 2 * m) * b1.poly - bx[k].poly;
            detail::coefficient_vectors_in(shift_y.map_vars(swap_vars, 2 * m), m, yi, nw,
                                           h_elems);
        }
        // monomial multiples of the inputs that stay inside the supports are
        // ideal members and absorb support directions the pairing cannot see
        auto seed_multiples = [&](const std::map<Monomial, int, GradedLess>& index, int dim,
                                  std::vector<std::vector<K>>& out) {
            int top = index.rbegin()->first.degree();
            for (auto& f : F.polys) {
                int room = top - f.degree();
                if (room < 0) continue;
                for (auto& alpha : monomial_basis(m, room)) {
                    Polynomial<K> prod = f * Polynomial<K>::monomial(alpha, K(1));
                    std::vector<K> vec(dim, K(0));
                    bool fits = true;
                    for (auto& [mo, c] : prod.terms) {
                        auto it = index.find(mo);
                        if (it == index.end()) {
                            fits = false;
                            break;
                        }
                        vec[it->second] = c;
                    }
                    if (fits) out.push_back(std::move(vec));
                }
            }
        };
        seed_multiples(xi, n, k_elems);
        seed_multiples(yi, nw, h_elems);
    }

    // connectivity of the x-side support to 1
    {
        auto pos_one = std::find(ex.begin(), ex.end(), Monomial::one(m));
        if (pos_one == ex.end()) {
            rr.connected_to_one = false;
        } else {
            std::map<Monomial, bool, GradedLess> reach;
            reach.emplace(Monomial::one(m), true);
            bool grew = true;
            while (grew) {
                grew = false;
                for (auto& mo : ex) {
                    if (reach.count(mo)) continue;
                    for (int k = 0; k < m; ++k) {
                        if (mo.e[k] == 0) continue;
                        Monomial down = mo;
                        down.e[k] -= 1;
                        if (reach.count(down)) {
                            reach.emplace(mo, true);
                            grew = true;
                            break;
                        }
                    }
                }
            }
            for (auto& mo : ex)
                if (!reach.count(mo)) rr.connected_to_one = false;
        }
    }

    // saturation scaffolding: ideal multiples of the inputs over a support
    // one degree larger, used to pull variable-multiples of collected
    // elements back into the coordinate space
    int top_degree = ex.empty() ? 0 : ex.back().degree();
    std::vector<Monomial> ex_plus = monomial_basis(m, top_degree + 1);
    std::map<Monomial, int, GradedLess> xplus;
    for (size_t i = 0; i < ex_plus.size(); ++i) xplus.emplace(ex_plus[i], static_cast<int>(i));
    int np = static_cast<int>(ex_plus.size());
    RowSpan<K> ideal_plus(np);
    for (auto& f : F.polys) {
        int room = top_degree + 1 - f.degree();
        if (room < 0) continue;
        for (auto& alpha : monomial_basis(m, room)) {
            Polynomial<K> prod = f * Polynomial<K>::monomial(alpha, K(1));
            std::vector<K> vec(np, K(0));
            for (auto& [mo, c] : prod.terms) vec[xplus.at(mo)] = c;
            ideal_plus.insert(std::move(vec));
        }
    }
    auto saturate_once = [&](RowSpan<K>& span, bool& grew) {
        auto snapshot = span.rows();
        for (auto& v : snapshot) {
            for (int k = 0; k < m; ++k) {
                std::vector<K> lifted(np, K(0));
                for (int i = 0; i < n; ++i) {
                    if (is_zero(v[i])) continue;
                    lifted[xplus.at(ex[i].times(Monomial::var(k, m)))] = v[i];
                }
                std::vector<K> red = ideal_plus.reduce(std::move(lifted));
                std::vector<K> back(n, K(0));
                bool fits = true;
                for (int i = 0; i < np && fits; ++i) {
                    if (is_zero(red[i])) continue;
                    auto it = xi.find(ex_plus[i]);
                    if (it == xi.end())
                        fits = false;
                    else
                        back[it->second] = red[i];
                }
                if (fits && span.insert(std::move(back))) grew = true;
            }
        }
    };

    // grow both spans to a fixed point: saturation by the variables, plus
    // harvesting functionals whose image under the matrix of 1 lies in the
    // span already (their shifted images then differ from radical elements
    // by ideal members)
    RowSpan<K> kspan(n), hspan(nw);
    for (auto& v : k_elems) kspan.insert(v);
    for (auto& w : h_elems) hspan.insert(w);
    DenseMatrix<K> n1t = n1.transpose();
    std::vector<DenseMatrix<K>> nxt;
    for (auto& q : nx) nxt.push_back(q.transpose());
    bool grew = true;
    int guard = 2 * (n + nw) + 4;
    while (grew && rr.iterations < guard) {
        grew = false;
        ++rr.iterations;
        saturate_once(kspan, grew);

        DenseMatrix<K> reduced(n, nw);
        for (int j = 0; j < nw; ++j) {
            auto res = kspan.reduce(n1.col(j));
            for (int i = 0; i < n; ++i) reduced(i, j) = res[i];
        }
        DenseMatrix<K> lam = nullspace(reduced);
        for (int j = 0; j < lam.cols(); ++j)
            for (int k = 0; k < m; ++k)
                if (kspan.insert(nx[k] * lam.col(j))) grew = true;

        DenseMatrix<K> reduced_t(nw, n);
        for (int j = 0; j < n; ++j) {
            auto res = hspan.reduce(n1t.col(j));
            for (int i = 0; i < nw; ++i) reduced_t(i, j) = res[i];
        }
        DenseMatrix<K> mu = nullspace(reduced_t);
        for (int j = 0; j < mu.cols(); ++j)
            for (int k = 0; k < m; ++k)
                if (hspan.insert(nxt[k] * mu.col(j))) grew = true;
    }

    for (auto& v : kspan.rows()) rr.radical_elems.push_back(detail::poly_from_coords(v, ex, m));
    for (auto& w : hspan.rows())
        rr.radical_elems_y.push_back(detail::poly_from_coords(w, ey, m));

    // quotient basis: greedy monomial complement of the collected span
    RowSpan<K> probe = kspan;
    std::vector<int> basis_pos;
    for (int i = 0; i < n; ++i) {
        std::vector<K> unit(n, K(0));
        unit[i] = K(1);
        if (probe.insert(unit)) {
            basis_pos.push_back(i);
            rr.basis.push_back(ex[i]);
        }
    }
    int r = static_cast<int>(basis_pos.size());
    if (r == 0)
        throw ContractError("reduction_loop: the radical span absorbed the whole support");

    // express every matrix column in the adapted basis [span rows | basis
    // monomials]; the basis-row blocks give the reduced pairing and shifts
    int sc = kspan.rank();
    DenseMatrix<K> p(n, n);
    for (int j = 0; j < sc; ++j)
        for (int i = 0; i < n; ++i) p(i, j) = kspan.rows()[j][i];
    for (int j = 0; j < r; ++j) p(basis_pos[j], sc + j) = K(1);

    DenseMatrix<K> stacked(n, nw * (m + 1));
    for (int j = 0; j < nw; ++j) {
        for (int i = 0; i < n; ++i) stacked(i, j) = n1(i, j);
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < n; ++i) stacked(i, (k + 1) * nw + j) = nx[k](i, j);
    }
    DenseMatrix<K> coords = solve_right(p, stacked);
    auto block = [&](int which) {
        DenseMatrix<K> q(r, nw);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < nw; ++j) q(i, j) = coords(sc + i, which * nw + j);
        return q;
    };
    DenseMatrix<K> q1 = block(0);

    // the reduced pairing must reach the whole quotient; its independent
    // columns pin the multiplication matrices, verified on all columns
    std::vector<int> piv = rref(q1).pivot_cols;
    if (static_cast<int>(piv.size()) < r)
        throw ContractError("reduction_loop: reduced pairing is rank-deficient at termination");
    std::vector<int> all_r(r);
    for (int i = 0; i < r; ++i) all_r[i] = i;
    DenseMatrix<K> core_inv = inverse(q1.submatrix(all_r, piv));
    for (int k = 0; k < m; ++k) {
        DenseMatrix<K> qk = block(k + 1);
        DenseMatrix<K> mk = qk.submatrix(all_r, piv) * core_inv;
        if (!(mk * q1 == qk))
            throw ContractError("reduction_loop: multiplication relation failed verification");
        rr.mult.push_back(std::move(mk));
    }
    for (int a = 0; a < m && rr.commuting; ++a)
        for (int b = a + 1; b < m; ++b)
            if (!(rr.mult[a] * rr.mult[b] == rr.mult[b] * rr.mult[a])) rr.commuting = false;
    return rr;
}

}  // namespace detail

template <class K>
ReductionResult<K> reduction_loop(const PolySystem<K>& F) {
    int m = F.nvars();
    if (F.size() != m)
        throw std::invalid_argument("reduction_loop: requires a square system");
    Polynomial<K> jac = jacobian_det(F);
    BezoutianMulti<K> b1 = bezoutian_multi(Polynomial<K>::constant(K(1), m), F);
    BezoutianMulti<K> bj = bezoutian_multi(jac, F);
    std::vector<BezoutianMulti<K>> bx;
    for (int k = 0; k < m; ++k)
        bx.push_back(bezoutian_multi(Polynomial<K>::variable(k, m), F));

    std::vector<std::vector<Monomial>> xs{b1.e_x, bj.e_x}, ys{b1.e_y, bj.e_y};
    for (auto& b : bx) {
        xs.push_back(b.e_x);
        ys.push_back(b.e_y);
    }
    std::vector<Monomial> ex_support = merge_supports(xs), ey_support = merge_supports(ys);
    std::vector<Monomial> ex_full = monomial_basis(m, ex_support.back().degree());
    std::vector<Monomial> ey_full = monomial_basis(m, ey_support.back().degree());

    // the padded degree window lets every ideal multiple participate; some
    // systems with degenerate parts at infinity only close up on the tight
    // support window, so that is the fallback
    if (ex_full.size() == ex_support.size() && ey_full.size() == ey_support.size())
        return detail::reduction_loop_on(F, b1, bj, bx, ex_full, ey_full);
    try {
        return detail::reduction_loop_on(F, b1, bj, bx, ex_full, ey_full);
    } catch (const ContractError&) {
        return detail::reduction_loop_on(F, b1, bj, bx, ex_support, ey_support);
    }
}

}  // namespace radtrace
