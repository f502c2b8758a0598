// Moment matrices from the Macaulay nullspace, the generalized Jacobian via
// the dual basis, matrices of traces, and the extraction of multiplication
// matrices, generators and roots of the radical.
//
// The same code drives the Gorenstein and non-Gorenstein cases: a maximal
// nonsingular minor of the moment matrix selects a sub-basis; when the
// moment matrix is invertible that sub-basis is the whole quotient basis.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "radtrace/eigen_solve.hpp"
#include "radtrace/macaulay.hpp"
#include "radtrace/matrix.hpp"
#include "radtrace/polynomial.hpp"

namespace radtrace {

struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class K>
struct MomentData {
    std::vector<K> y;           // kernel element, indexed like qd.columns
    DenseMatrix<K> moment;      // N x N, entry (i,j) = y at exponent sum b_i b_j
    int rank = 0;
    std::vector<int> alpha;     // basis indices of the selected nonsingular minor
    DenseMatrix<K> extension;   // X: |columns| x N with mac * X = 0, basis rows = moment
    int retries_used = 0;
    bool gorenstein = false;
};

// Moment matrix and its kernel extension for a fixed kernel vector y.
template <class K>
MomentData<K> moment_from_y(const QuotientData<K>& qd, std::vector<K> y) {
    int n = qd.dimension;
    if (n == 0) throw std::invalid_argument("moment_from_y: zero-dimensional quotient");
    MomentData<K> md;
    md.moment = DenseMatrix<K>(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const Monomial prod = qd.basis[i].times(qd.basis[j]);
            const K& v = y[qd.col_index.at(prod)];
            md.moment(i, j) = v;
            md.moment(j, i) = v;
        }
    // extension rows: basis monomials carry the moment rows, pivot monomials
    // their rewrite combination (this is what makes mac * X vanish)
    md.extension = DenseMatrix<K>(static_cast<int>(qd.columns.size()), n);
    for (int j = 0; j < n; ++j)
        for (int c = 0; c < n; ++c) md.extension(qd.basis_cols[j], c) = md.moment(j, c);
    DenseMatrix<K> pivot_rows = qd.rewrite * md.moment;
    for (size_t i = 0; i < qd.pivots.size(); ++i) {
        int r = qd.col_index.at(qd.pivots[i]);
        for (int c = 0; c < n; ++c) md.extension(r, c) = pivot_rows(static_cast<int>(i), c);
    }
    auto [rows, cols] = max_nonsingular_submatrix(md.moment);
    md.alpha = cols;  // symmetric: the principal minor on these columns is invertible
    md.rank = static_cast<int>(cols.size());
    md.gorenstein = md.rank == n;
    md.y = std::move(y);
    return md;
}

// Random kernel combination with retries: seeds seed, seed+1, ... are tried
// until the moment matrix reaches full rank, keeping the best draw.
template <class K>
MomentData<K> sample_moment(const QuotientData<K>& qd, std::uint64_t seed, int max_retries = 5) {
    if (qd.dimension == 0)
        throw std::invalid_argument("sample_moment: quotient dimension is zero (unit radical)");
    DenseMatrix<K> kernel = nullspace(qd.mac);
    std::optional<MomentData<K>> best;
    for (int t = 0; t <= max_retries; ++t) {
        MomentData<K> md = moment_from_y(qd, random_combination(kernel, seed + t));
        md.retries_used = t;
        if (md.rank == qd.dimension) return md;
        if (!best || md.rank > best->rank) best = std::move(md);
    }
    return *best;
}

template <class K>
bool gorenstein_test(const MomentData<K>& md, int dimension) {
    return md.rank == dimension;
}

template <class K>
struct TraceData {
    Polynomial<K> jac;                      // generalized Jacobian, reduced into span(B)
    std::vector<int> alpha;                 // basis indices the trace matrices live on
    DenseMatrix<K> trace;                   // r x r matrix of traces
    std::vector<DenseMatrix<K>> trace_shift;  // one per variable
    std::vector<int> tilde;                 // positions into alpha of the selected minor
    int rank_trace = 0;
};

// Rows are the coefficient vectors of b * P over the working-degree columns,
// for b running over the selected basis monomials.
template <class K>
DenseMatrix<K> syl_basis(const Polynomial<K>& P, const QuotientData<K>& qd,
                         const std::vector<int>& which) {
    DenseMatrix<K> rows(static_cast<int>(which.size()), static_cast<int>(qd.columns.size()));
    for (size_t i = 0; i < which.size(); ++i) {
        Polynomial<K> prod = Polynomial<K>::monomial(qd.basis[which[i]], K(1)) * P;
        if (prod.degree() > qd.bounds.working_degree)
            throw std::invalid_argument("syl_basis: product degree exceeds the working degree");
        for (auto& [mon, c] : prod.terms) rows(static_cast<int>(i), qd.col_index.at(mon)) = c;
    }
    return rows;
}

template <class K>
DenseMatrix<K> syl_B(const Polynomial<K>& P, const QuotientData<K>& qd) {
    std::vector<int> all(qd.dimension);
    for (int i = 0; i < qd.dimension; ++i) all[i] = i;
    return syl_basis(P, qd, all);
}

// Dual basis of the selected minor and the generalized Jacobian
// J = sum_i b_i b_i^*, reduced into span(B).
template <class K>
TraceData<K> dual_basis_and_jacobian(const MomentData<K>& md, const QuotientData<K>& qd) {
    if (md.rank < 1) throw ContractError("dual_basis_and_jacobian: moment matrix of rank zero");
    TraceData<K> td;
    td.alpha = md.alpha;
    DenseMatrix<K> minor = md.moment.submatrix(md.alpha, md.alpha);
    DenseMatrix<K> minv = inverse(minor);
    Polynomial<K> raw(qd.system.nvars());
    int r = md.rank;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (is_zero(minv(i, j))) continue;
            Monomial prod = qd.basis[md.alpha[i]].times(qd.basis[md.alpha[j]]);
            raw.add_term(prod, minv(i, j));
        }
    td.jac = qd.normal_form(raw);
    return td;
}

// Matrices of traces: trace = Syl(J) X and shifted variants Syl(x_k J) X,
// with columns of X restricted to the selected basis.
template <class K>
void trace_matrices(TraceData<K>& td, const MomentData<K>& md, const QuotientData<K>& qd) {
    std::vector<int> all_rows(static_cast<int>(qd.columns.size()));
    for (size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = static_cast<int>(i);
    DenseMatrix<K> x_alpha = md.extension.submatrix(all_rows, td.alpha);

    td.trace = syl_basis(td.jac, qd, td.alpha) * x_alpha;
    td.trace_shift.clear();
    int m = qd.system.nvars();
    for (int k = 0; k < m; ++k) {
        Polynomial<K> shifted = Polynomial<K>::variable(k, m) * td.jac;
        td.trace_shift.push_back(syl_basis(shifted, qd, td.alpha) * x_alpha);
    }
}

template <class K>
struct RadicalResult {
    bool unit_ideal = false;
    std::vector<Monomial> basis_tilde;          // basis of the radical quotient
    std::vector<DenseMatrix<K>> mult;           // solutions of T~ M = T~_{x_k}
    std::vector<Polynomial<K>> generators;      // elements of the radical
    std::vector<std::vector<std::complex<double>>> roots;
};

namespace detail {

template <class K>
void push_generator(std::vector<Polynomial<K>>& gens, Polynomial<K> g) {
    if (g.is_zero_poly()) return;
    for (auto& have : gens)
        if (have == g) return;
    gens.push_back(std::move(g));
}

// Relations read from the multiplication matrices: x_k b_i - sum_j M(j,i) b_j
// lies in the radical; nonzero ones are emitted as generators.
template <class K>
void append_mult_relations(std::vector<Polynomial<K>>& gens,
                           const std::vector<Monomial>& tilde_basis,
                           const std::vector<DenseMatrix<K>>& mult, int nvars) {
    int r = static_cast<int>(tilde_basis.size());
    for (int k = 0; k < nvars; ++k) {
        for (int i = 0; i < r; ++i) {
            Polynomial<K> g(nvars);
            g.add_term(tilde_basis[i].times(Monomial::var(k, nvars)), K(1));
            for (int j = 0; j < r; ++j) g.add_term(tilde_basis[j], -mult[k](j, i));
            push_generator(gens, std::move(g));
        }
    }
}

}  // namespace detail

// Maximal nonsingular submatrix of the trace matrix, multiplication matrices
// of the radical, and generators assembled from their rows, the trace-kernel
// combinations, and (in the non-Gorenstein case) the moment kernel.
template <class K>
RadicalResult<K> radical_mult_matrices(TraceData<K>& td, const MomentData<K>& md,
                                       const QuotientData<K>& qd) {
    RadicalResult<K> rr;
    td.tilde = rref(td.trace).pivot_cols;  // symmetric: principal minor is invertible
    td.rank_trace = static_cast<int>(td.tilde.size());
    if (td.rank_trace == 0)
        throw ContractError("radical_mult_matrices: trace matrix vanished on a nonzero quotient");
    int m = qd.system.nvars();
    DenseMatrix<K> tt = td.trace.submatrix(td.tilde, td.tilde);
    for (int t : td.tilde) rr.basis_tilde.push_back(qd.basis[td.alpha[t]]);
    for (int k = 0; k < m; ++k)
        rr.mult.push_back(solve_right(tt, td.trace_shift[k].submatrix(td.tilde, td.tilde)));

    detail::append_mult_relations(rr.generators, rr.basis_tilde, rr.mult, m);

    // selected-basis monomials outside the radical basis reduce against it
    for (int c = 0; c < static_cast<int>(td.alpha.size()); ++c) {
        if (std::find(td.tilde.begin(), td.tilde.end(), c) != td.tilde.end()) continue;
        DenseMatrix<K> rhs(td.rank_trace, 1);
        for (int i = 0; i < td.rank_trace; ++i) rhs(i, 0) = td.trace(td.tilde[i], c);
        DenseMatrix<K> w = solve_right(tt, rhs);
        Polynomial<K> g(m);
        g.add_term(qd.basis[td.alpha[c]], K(1));
        for (int j = 0; j < td.rank_trace; ++j) g.add_term(rr.basis_tilde[j], -w(j, 0));
        detail::push_generator(rr.generators, std::move(g));
    }

    // moment-kernel combinations annihilate the functional and sit inside the
    // radical; they cover the directions dropped from the selected basis
    if (!md.gorenstein) {
        DenseMatrix<K> mk = nullspace(md.moment);
        for (int j = 0; j < mk.cols(); ++j) {
            Polynomial<K> g(m);
            for (int i = 0; i < qd.dimension; ++i) g.add_term(qd.basis[i], mk(i, j));
            detail::push_generator(rr.generators, std::move(g));
        }
    }
    return rr;
}

// Eigenvalue-based root extraction. A seeded combination of the shifted trace
// matrices separates the roots; coordinates are read off the eigenvectors
// normalized at the constant monomial, falling back to the multiplication
// matrices for variables missing from the radical basis.
template <class K>
std::vector<std::vector<std::complex<double>>> extract_roots(const RadicalResult<K>& rr,
                                                             const TraceData<K>& td,
                                                             const QuotientData<K>& qd,
                                                             std::uint64_t seed,
                                                             double tol = 1e-8) {
    int r = static_cast<int>(rr.basis_tilde.size());
    int m = qd.system.nvars();
    if (r == 0) return {};
    int pos_one = -1;
    std::vector<int> var_pos(m, -1);
    for (int i = 0; i < r; ++i) {
        if (rr.basis_tilde[i].is_one()) pos_one = i;
        for (int k = 0; k < m; ++k)
            if (rr.basis_tilde[i] == Monomial::var(k, m)) var_pos[k] = i;
    }
    if (pos_one < 0)
        throw ContractError("extract_roots: constant monomial missing from the radical basis");

    DenseMatrix<K> tt = td.trace.submatrix(td.tilde, td.tilde);
    Eigen::MatrixXd t0 = to_eigen(tt);
    std::vector<Eigen::MatrixXd> tk;
    for (int k = 0; k < m; ++k)
        tk.push_back(to_eigen(td.trace_shift[k].submatrix(td.tilde, td.tilde)));

    // separating form: a fixed variable suffices in one dimension, otherwise a
    // seeded integer combination of the coordinate shifts
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(r, r);
    if (m == 1) {
        a = tk[0];
    } else {
        SeededInts rng(seed * 0x9E3779B97F4A7C15ULL + 17);
        for (int k = 0; k < m; ++k) a += static_cast<double>(rng.draw(97)) * tk[k];
    }

    // hand the eigensolver plain double data through the Approx field
    DenseMatrix<Approx> aa(r, r), bb(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            aa(i, j) = Approx(a(i, j));
            bb(i, j) = Approx(t0(i, j));
        }
    auto pairs = eig_generalized(aa, bb, tol);

    std::vector<Eigen::MatrixXd> mult_d;
    for (int k = 0; k < m; ++k) mult_d.push_back(to_eigen(rr.mult[k]));

    std::vector<std::vector<std::complex<double>>> roots;
    for (auto& p : pairs) {
        // v = T~ w carries the basis values at one root
        Eigen::VectorXcd w(r);
        for (int i = 0; i < r; ++i) w(i) = p.vec[i];
        Eigen::VectorXcd v = t0.cast<std::complex<double>>() * w;
        std::complex<double> unit = v(pos_one);
        if (std::abs(unit) < 1e-12)
            throw ContractError("extract_roots: eigenvector not normalizable at 1");
        v /= unit;
        std::vector<std::complex<double>> coord(m);
        for (int k = 0; k < m; ++k) {
            if (var_pos[k] >= 0) {
                coord[k] = v(var_pos[k]);
            } else {
                Eigen::VectorXcd img = mult_d[k].cast<std::complex<double>>() * v;
                coord[k] = img(pos_one);
            }
        }
        roots.push_back(std::move(coord));
    }
    return roots;
}

// Square-system shortcut: the classical Jacobian determinant plus any
// full-rank kernel extension recovers the same multiplication matrices.
template <class K>
RadicalResult<K> jacobian_shortcut(const QuotientData<K>& qd) {
    const PolySystem<K>& F = qd.system;
    int m = F.nvars();
    if (F.size() != m)
        throw std::invalid_argument("jacobian_shortcut: requires a square system");
    RadicalResult<K> rr;
    if (qd.dimension == 0) {
        rr.unit_ideal = true;
        rr.generators.push_back(Polynomial<K>::constant(K(1), m));
        return rr;
    }
    Polynomial<K> jac = qd.normal_form(jacobian_det(F));
    DenseMatrix<K> x = nullspace(qd.mac);
    DenseMatrix<K> q = syl_B(jac, qd) * x;
    std::vector<DenseMatrix<K>> qk;
    for (int k = 0; k < m; ++k)
        qk.push_back(syl_B(Polynomial<K>::variable(k, m) * jac, qd) * x);

    auto [rows, cols] = max_nonsingular_submatrix(q);
    if (rows.empty())
        throw ContractError("jacobian_shortcut: trace surrogate vanished on a nonzero quotient");
    DenseMatrix<K> qt = q.submatrix(rows, cols).transpose();
    for (int r : rows) rr.basis_tilde.push_back(qd.basis[r]);
    for (int k = 0; k < m; ++k)
        rr.mult.push_back(solve_right(qt, qk[k].submatrix(rows, cols).transpose()));

    detail::append_mult_relations(rr.generators, rr.basis_tilde, rr.mult, m);
    for (int i = 0; i < qd.dimension; ++i) {
        if (std::find(rows.begin(), rows.end(), i) != rows.end()) continue;
        DenseMatrix<K> rhs(static_cast<int>(cols.size()), 1);
        for (size_t j = 0; j < cols.size(); ++j) rhs(static_cast<int>(j), 0) = q(i, cols[j]);
        DenseMatrix<K> w = solve_right(qt, rhs);
        Polynomial<K> g(m);
        g.add_term(qd.basis[i], K(1));
        for (size_t j = 0; j < rows.size(); ++j) g.add_term(rr.basis_tilde[j], -w(int(j), 0));
        detail::push_generator(rr.generators, std::move(g));
    }
    return rr;
}

}  // namespace radtrace
