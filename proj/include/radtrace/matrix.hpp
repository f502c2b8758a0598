// Dense linear algebra over the scalar field: elimination with deterministic
// pivoting, rank, nullspace, inverse, maximal nonsingular submatrix, seeded
// random kernel combinations, and characteristic polynomials.
//
// Exact mode picks the first nonzero pivot so the output (and everything that
// depends on pivot columns downstream) is reproducible bit for bit. Tolerant
// mode picks the entry of largest magnitude and snaps small entries to zero.
#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "radtrace/scalar.hpp"

namespace radtrace {

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class K>
class DenseMatrix {
   public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols, K(0)) {}

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    K& operator()(int i, int j) { return data_[size_t(i) * cols_ + j]; }
    const K& operator()(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    DenseMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
        DenseMatrix s(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) s(int(i), int(j)) = (*this)(rows[i], cols[j]);
        return s;
    }

    std::vector<K> col(int j) const {
        std::vector<K> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    std::vector<K> row(int i) const {
        std::vector<K> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        DenseMatrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const K& aik = a(i, k);
                if (is_zero(aik)) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend std::vector<K> operator*(const DenseMatrix& a, const std::vector<K>& v) {
        if (a.cols_ != static_cast<int>(v.size()))
            throw std::invalid_argument("matrix-vector product: shape mismatch");
        std::vector<K> r(a.rows_, K(0));
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j)
                if (!is_zero(a(i, j))) r[i] += a(i, j) * v[j];
        return r;
    }
    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix difference: shape mismatch");
        DenseMatrix r(a.rows_, a.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) r(i, j) = a(i, j) - b(i, j);
        return r;
    }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (size_t i = 0; i < a.data_.size(); ++i)
            if (!scalar_eq(a.data_[i], b.data_[i])) return false;
        return true;
    }

    bool all_zero() const {
        for (auto& v : data_)
            if (!is_zero(v)) return false;
        return true;
    }

   private:
    int rows_ = 0, cols_ = 0;
    std::vector<K> data_;
};

template <class K>
struct RrefResult {
    DenseMatrix<K> mat;
    std::vector<int> pivot_cols;
    int rank = 0;
};

namespace detail {

// Pivot row choice in [from, rows): exact fields take the first nonzero
// entry, the tolerant field the entry of largest magnitude above threshold.
template <class K>
int choose_pivot(const DenseMatrix<K>& m, int col, int from) {
    if constexpr (is_exact_field_v<K>) {
        for (int i = from; i < m.rows(); ++i)
            if (!is_zero(m(i, col))) return i;
        return -1;
    } else {
        int best = -1;
        double best_w = 0.0;
        for (int i = from; i < m.rows(); ++i) {
            double w = pivot_weight(m(i, col));
            if (w > best_w) best_w = w, best = i;
        }
        if (best >= 0 && is_zero(m(best, col))) return -1;
        return best;
    }
}

template <class K>
void swap_rows(DenseMatrix<K>& m, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

// Snap entries below tol * (row max) to exact zero; no-op over exact fields.
template <class K>
void snap_row(DenseMatrix<K>& m, int i) {
    if constexpr (!is_exact_field_v<K>) {
        double rmax = 0.0;
        for (int j = 0; j < m.cols(); ++j) rmax = std::max(rmax, pivot_weight(m(i, j)));
        if (rmax == 0.0) return;
        for (int j = 0; j < m.cols(); ++j)
            if (pivot_weight(m(i, j)) <= Approx::tolerance * rmax) m(i, j) = K(0);
    }
}

}  // namespace detail

template <class K>
RrefResult<K> rref(DenseMatrix<K> m) {
    RrefResult<K> res;
    int r = 0;
    for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
        int p = detail::choose_pivot(m, col, r);
        if (p < 0) continue;
        detail::swap_rows(m, p, r);
        K inv = K(1) / m(r, col);
        for (int j = col; j < m.cols(); ++j) m(r, j) *= inv;
        m(r, col) = K(1);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, col))) continue;
            K f = m(i, col);
            for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
            m(i, col) = K(0);
            detail::snap_row(m, i);
        }
        res.pivot_cols.push_back(col);
        ++r;
    }
    res.rank = r;
    res.mat = std::move(m);
    return res;
}

template <class K>
int rank(const DenseMatrix<K>& m) {
    return rref(m).rank;
}

// Columns form a basis of the right kernel; count = cols - rank. In exact
// mode M * nullspace(M) vanishes identically.
template <class K>
DenseMatrix<K> nullspace(const DenseMatrix<K>& m) {
    RrefResult<K> r = rref(m);
    std::vector<int> free_cols;
    {
        size_t pi = 0;
        for (int j = 0; j < m.cols(); ++j) {
            if (pi < r.pivot_cols.size() && r.pivot_cols[pi] == j)
                ++pi;
            else
                free_cols.push_back(j);
        }
    }
    DenseMatrix<K> k(m.cols(), static_cast<int>(free_cols.size()));
    for (size_t fj = 0; fj < free_cols.size(); ++fj) {
        int f = free_cols[fj];
        k(f, int(fj)) = K(1);
        for (size_t i = 0; i < r.pivot_cols.size(); ++i)
            k(r.pivot_cols[i], int(fj)) = -r.mat(int(i), f);
    }
    return k;
}

// Deterministic maximal nonsingular submatrix: greedy leftmost independent
// columns, then greedy topmost independent rows within those columns.
template <class K>
std::pair<std::vector<int>, std::vector<int>> max_nonsingular_submatrix(const DenseMatrix<K>& m) {
    std::vector<int> cols = rref(m).pivot_cols;
    std::vector<int> all_rows(m.rows());
    for (int i = 0; i < m.rows(); ++i) all_rows[i] = i;
    DenseMatrix<K> sel = m.submatrix(all_rows, cols);
    std::vector<int> rows = rref(sel.transpose()).pivot_cols;
    return {rows, cols};
}

// Solves A X = B for square invertible A.
template <class K>
DenseMatrix<K> solve_right(const DenseMatrix<K>& a, const DenseMatrix<K>& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve_right: A must be square");
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_right: shape mismatch");
    int n = a.rows(), w = b.cols();
    DenseMatrix<K> aug(n, n + w);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        for (int j = 0; j < w; ++j) aug(i, n + j) = b(i, j);
    }
    for (int col = 0; col < n; ++col) {
        int p = detail::choose_pivot(aug, col, col);
        if (p < 0) throw SingularMatrixError("solve_right: singular matrix");
        detail::swap_rows(aug, p, col);
        K inv = K(1) / aug(col, col);
        for (int j = col; j < n + w; ++j) aug(col, j) *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == col || is_zero(aug(i, col))) continue;
            K f = aug(i, col);
            for (int j = col; j < n + w; ++j) aug(i, j) -= f * aug(col, j);
        }
    }
    DenseMatrix<K> x(n, w);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < w; ++j) x(i, j) = aug(i, n + j);
    return x;
}

template <class K>
DenseMatrix<K> inverse(const DenseMatrix<K>& a) {
    return solve_right(a, DenseMatrix<K>::identity(a.rows()));
}

// Seeded integer draws, uniform over [-bound, bound] \ {0}. mt19937_64 output
// is pinned by the standard; the draw loop avoids distribution objects so the
// stream is identical across standard libraries.
class SeededInts {
   public:
    explicit SeededInts(std::uint64_t seed) : gen_(seed) {}
    long draw(long bound) {
        while (true) {
            std::uint64_t span = 2 * static_cast<std::uint64_t>(bound) + 1;
            long v = static_cast<long>(gen_() % span) - bound;
            if (v != 0) return v;
        }
    }

   private:
    std::mt19937_64 gen_;
};

inline constexpr long kRandomCoeffBound = 1L << 16;

// Random combination of the kernel basis columns; deterministic per seed.
// An empty kernel signals dimension zero upstream and is rejected here.
template <class K>
std::vector<K> random_combination(const DenseMatrix<K>& kernel, std::uint64_t seed) {
    if (kernel.cols() == 0)
        throw std::invalid_argument("random_combination: empty kernel");
    SeededInts rng(seed);
    std::vector<K> y(kernel.rows(), K(0));
    for (int j = 0; j < kernel.cols(); ++j) {
        K c(static_cast<int>(rng.draw(kRandomCoeffBound)));
        for (int i = 0; i < kernel.rows(); ++i) y[i] += c * kernel(i, j);
    }
    return y;
}

// Characteristic polynomial by the Faddeev-LeVerrier recurrence; returns the
// monic coefficient list [1, c1, ..., cn] for lambda^n + c1 lambda^{n-1} + ...
template <class K>
std::vector<K> charpoly(const DenseMatrix<K>& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("charpoly: square matrix required");
    int n = a.rows();
    std::vector<K> c(n + 1, K(0));
    c[0] = K(1);
    DenseMatrix<K> m = DenseMatrix<K>::identity(n);
    for (int k = 1; k <= n; ++k) {
        m = a * m;
        K tr(0);
        for (int i = 0; i < n; ++i) tr += m(i, i);
        c[k] = -tr / K(k);
        for (int i = 0; i < n; ++i) m(i, i) += c[k];
    }
    return c;
}

// Incremental row-echelon span, used to track growing subspaces.
template <class K>
class RowSpan {
   public:
    explicit RowSpan(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    // Reduces v against the span; the returned vector is zero iff v is in it.
    std::vector<K> reduce(std::vector<K> v) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            const K& lead = v[lead_cols_[i]];
            if (is_zero(lead)) continue;
            K f = lead;
            for (int j = 0; j < dim_; ++j) v[j] -= f * rows_[i][j];
        }
        return v;
    }

    // Inserts v if independent; returns true when the span grew.
    bool insert(std::vector<K> v) {
        v = reduce(std::move(v));
        int lead = -1;
        for (int j = 0; j < dim_; ++j)
            if (!is_zero(v[j])) {
                lead = j;
                break;
            }
        if (lead < 0) return false;
        K inv = K(1) / v[lead];
        for (int j = 0; j < dim_; ++j) v[j] *= inv;
        // keep earlier rows reduced against the new one
        for (size_t i = 0; i < rows_.size(); ++i) {
            K f = rows_[i][lead];
            if (is_zero(f)) continue;
            for (int j = 0; j < dim_; ++j) rows_[i][j] -= f * v[j];
        }
        size_t pos = 0;
        while (pos < lead_cols_.size() && lead_cols_[pos] < lead) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
        lead_cols_.insert(lead_cols_.begin() + pos, lead);
        return true;
    }

    bool contains(const std::vector<K>& v) const {
        auto r = reduce(v);
        for (auto& x : r)
            if (!is_zero(x)) return false;
        return true;
    }

    const std::vector<std::vector<K>>& rows() const { return rows_; }
    const std::vector<int>& lead_cols() const { return lead_cols_; }

   private:
    int dim_;
    std::vector<std::vector<K>> rows_;   // echelon rows, unit leading entry
    std::vector<int> lead_cols_;         // ascending
};

}  // namespace radtrace
