// Degree-bound selection, Sylvester and Macaulay matrix construction, and
// quotient-basis extraction for a zero-dimensional system.
//
// The Macaulay matrix at working degree d has rows spanning the intersection
// of the degree-(d+1) ideal truncation with the polynomials of degree <= d.
// One elimination with columns ordered from the highest monomial down yields
// the matrix, the quotient basis (non-pivot columns), and the rewrite table
// used for normal forms.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "radtrace/matrix.hpp"
#include "radtrace/polynomial.hpp"

namespace radtrace {

struct BoundsError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegreeBounds {
    int basis_degree = 0;      // k: quotient basis monomials have degree <= k
    int truncation_degree = 0; // delta: ideal truncation degree realizing the quotient
    int working_degree = 0;    // Delta: column degree of the Macaulay matrix
    int basis_max_degree = -1; // D: filled in after basis extraction
    bool at_infinity = true;
};

// Bounds on (k, delta) for a system with finitely many projective roots.
// Square systems use sum(d_i - 1); overdetermined ones sum the m+1 largest
// degrees minus m. When roots at infinity are possible, delta = k + 1.
inline DegreeBounds degree_bounds(const std::vector<int>& degrees_desc, int nvars,
                                  bool at_infinity) {
    int s = static_cast<int>(degrees_desc.size());
    for (int i = 1; i < s; ++i)
        if (degrees_desc[i] > degrees_desc[i - 1])
            throw std::invalid_argument("degree_bounds: degrees must be non-increasing");
    if (s < nvars)
        throw BoundsError("degree_bounds: fewer polynomials than variables (ideal not zero-dimensional)");
    DegreeBounds b;
    b.at_infinity = at_infinity;
    if (s == nvars) {
        b.basis_degree = 0;
        for (int d : degrees_desc) b.basis_degree += d - 1;
    } else {
        b.basis_degree = -nvars;
        for (int i = 0; i <= nvars; ++i) b.basis_degree += degrees_desc[i];
    }
    b.truncation_degree = at_infinity ? b.basis_degree + 1 : b.basis_degree;
    // provisional working degree: enough columns to read the basis, final
    // value set after the basis degree D is known
    b.working_degree = std::max(b.truncation_degree - 1, b.basis_degree);
    return b;
}

// Rows are all multiples f_i * x^a of degree at most t, labelled (i, a);
// columns are the monomials of degree <= t, ascending.
template <class K>
struct SylvesterMatrix {
    DenseMatrix<K> mat;
    std::vector<Monomial> columns;
    std::vector<std::pair<int, Monomial>> row_labels;
};

template <class K>
SylvesterMatrix<K> sylvester_matrix(const PolySystem<K>& F, int t) {
    if (t < F.degrees()[0])
        throw std::invalid_argument("sylvester_matrix: degree below the largest input degree");
    int m = F.nvars();
    SylvesterMatrix<K> s;
    s.columns = monomial_basis(m, t);
    std::vector<std::pair<int, Monomial>> labels;
    for (int i = 0; i < F.size(); ++i) {
        int room = t - F.polys[i].degree();
        for (auto& a : monomial_basis(m, room)) labels.emplace_back(i, a);
    }
    s.mat = DenseMatrix<K>(static_cast<int>(labels.size()), static_cast<int>(s.columns.size()));
    std::map<Monomial, int, GradedLess> pos;
    for (size_t j = 0; j < s.columns.size(); ++j) pos.emplace(s.columns[j], static_cast<int>(j));
    for (size_t r = 0; r < labels.size(); ++r) {
        Polynomial<K> prod = F.polys[labels[r].first] *
                             Polynomial<K>::monomial(labels[r].second, K(1));
        for (auto& [mon, c] : prod.terms) s.mat(static_cast<int>(r), pos.at(mon)) = c;
    }
    s.row_labels = std::move(labels);
    return s;
}

// Macaulay data at the bounds' working degree, including the quotient basis
// and the rewrite table for normal forms.
template <class K>
struct QuotientData {
    PolySystem<K> system;
    DegreeBounds bounds;
    std::vector<Monomial> columns;      // Mon_<=(Delta), ascending
    DenseMatrix<K> mac;                 // rows independent, spanning the truncation
    std::vector<Monomial> basis;        // quotient basis B (non-pivot columns)
    std::vector<int> basis_cols;        // positions of B inside columns
    int dimension = 0;                  // N = |B| = corank of mac
    // rewrite rows: mac row i reads  x^{pivot_i} = sum_j rewrite(i,j) * B_j
    std::vector<Monomial> pivots;       // pivot monomial per mac row
    DenseMatrix<K> rewrite;
    std::map<Monomial, int, GradedLess> pivot_row;  // pivot monomial -> row
    std::map<Monomial, int, GradedLess> col_index;  // monomial -> column

    int working_degree() const { return bounds.working_degree; }

    // Normal form: the unique representative in span(B) modulo the row space.
    Polynomial<K> normal_form(const Polynomial<K>& p) const {
        if (p.degree() > bounds.working_degree)
            throw std::invalid_argument("normal_form: degree exceeds the working degree");
        Polynomial<K> out(p.nvars);
        for (auto& [mon, c] : p.terms) {
            auto pit = pivot_row.find(mon);
            if (pit == pivot_row.end()) {
                out.add_term(mon, c);  // basis monomial, already reduced
                continue;
            }
            int row = pit->second;
            for (int j = 0; j < dimension; ++j) {
                const K& w = rewrite(row, j);
                if (!is_zero(w)) out.add_term(basis[j], c * w);
            }
        }
        return out;
    }

    std::vector<K> normal_form_coords(const Polynomial<K>& p) const {
        return coeff_vector(normal_form(p), basis);
    }
};

// Builds the Macaulay matrix by eliminating the degree-(Delta+1) block of the
// Sylvester matrix. Columns are processed from the highest monomial down, so
// pivots prefer high monomials and the surviving non-pivot columns form the
// graded-least quotient basis.
template <class K>
QuotientData<K> macaulay_matrix(const PolySystem<K>& F, const DegreeBounds& bounds) {
    int delta_w = bounds.working_degree;
    auto syl = sylvester_matrix(F, delta_w + 1);
    int total_cols = static_cast<int>(syl.columns.size());

    // reverse columns: highest monomial first
    DenseMatrix<K> rev(syl.mat.rows(), total_cols);
    for (int i = 0; i < syl.mat.rows(); ++i)
        for (int j = 0; j < total_cols; ++j) rev(i, j) = syl.mat(i, total_cols - 1 - j);
    RrefResult<K> red = rref(std::move(rev));

    QuotientData<K> qd;
    qd.system = F;
    qd.bounds = bounds;
    qd.columns = monomial_basis(F.nvars(), delta_w);
    int low_cols = static_cast<int>(qd.columns.size());
    for (int j = 0; j < low_cols; ++j) qd.col_index.emplace(qd.columns[j], j);

    // pivot columns in reversed coordinates; translate and split by degree
    std::vector<bool> is_pivot(total_cols, false);
    std::vector<int> mac_rows;
    for (size_t r = 0; r < red.pivot_cols.size(); ++r) {
        int orig = total_cols - 1 - red.pivot_cols[r];
        is_pivot[orig] = true;
        if (orig < low_cols) mac_rows.push_back(static_cast<int>(r));
    }
    for (int j = 0; j < low_cols; ++j)
        if (!is_pivot[j]) {
            qd.basis_cols.push_back(j);
            qd.basis.push_back(qd.columns[j]);
        }
    qd.dimension = static_cast<int>(qd.basis.size());

    // assemble mac (ascending columns) and the rewrite table
    qd.mac = DenseMatrix<K>(static_cast<int>(mac_rows.size()), low_cols);
    qd.rewrite = DenseMatrix<K>(static_cast<int>(mac_rows.size()), qd.dimension);
    for (size_t i = 0; i < mac_rows.size(); ++i) {
        int r = mac_rows[i];
        for (int j = 0; j < low_cols; ++j)
            qd.mac(static_cast<int>(i), j) = red.mat(r, total_cols - 1 - j);
        Monomial piv = qd.columns[total_cols - 1 - red.pivot_cols[r]];
        qd.pivots.push_back(piv);
        qd.pivot_row.emplace(piv, static_cast<int>(i));
        for (int j = 0; j < qd.dimension; ++j)
            qd.rewrite(static_cast<int>(i), j) = -qd.mac(static_cast<int>(i), qd.basis_cols[j]);
    }
    return qd;
}

// Validates the extracted basis against the degree bound k, records D, and
// finalizes the working degree. Shifted rows b_i * x_k * J reach degree
// 2D + 1, hence the widening beyond max(delta - 1, 2D).
template <class K>
std::vector<Monomial> quotient_basis(QuotientData<K>& qd) {
    int k = qd.bounds.basis_degree;
    int d_max = 0;
    for (auto& b : qd.basis) {
        if (b.degree() > k)
            throw BoundsError("quotient_basis: basis monomial exceeds degree bound; raise delta");
        d_max = std::max(d_max, b.degree());
    }
    qd.bounds.basis_max_degree = qd.dimension == 0 ? 0 : d_max;
    qd.bounds.working_degree =
        std::max(qd.bounds.truncation_degree - 1, 2 * qd.bounds.basis_max_degree + 1);
    return qd.basis;
}

// Full quotient construction: provisional pass to learn D, then the final
// Macaulay matrix at the finalized working degree.
template <class K>
QuotientData<K> quotient_setup(const PolySystem<K>& F, DegreeBounds bounds) {
    QuotientData<K> first = macaulay_matrix(F, bounds);
    quotient_basis(first);
    if (first.bounds.working_degree == bounds.working_degree) return first;
    DegreeBounds final_bounds = first.bounds;
    QuotientData<K> qd = macaulay_matrix(F, final_bounds);
    quotient_basis(qd);
    if (qd.basis != first.basis)
        throw BoundsError(
            "quotient_setup: basis drifts between working degrees; the degree bounds do not "
            "stabilize this system");
    return qd;
}

}  // namespace radtrace
