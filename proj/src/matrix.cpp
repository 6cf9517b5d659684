#include "bt/matrix.hpp"

#include <sstream>

#include "bt/errors.hpp"

namespace bt {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Laurent::one();
    return m;
}

Matrix Matrix::unit(int n, int i, int j) {
    Matrix m(n, n);
    m.at(i, j) = Laurent::one();
    return m;
}

Matrix Matrix::diagonal(const std::vector<Laurent>& d) {
    Matrix m((int)d.size(), (int)d.size());
    for (size_t i = 0; i < d.size(); ++i) m.at((int)i, (int)i) = d[i];
    return m;
}

Matrix Matrix::t_power_diagonal(const std::vector<int>& exps) {
    Matrix m((int)exps.size(), (int)exps.size());
    for (size_t i = 0; i < exps.size(); ++i) m.at((int)i, (int)i) = Laurent::t_power(exps[i]);
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

Matrix Matrix::operator-() const {
    Matrix m(rows_, cols_);
    for (int i = 0; i < rows_ * cols_; ++i) m.data_[i] = -data_[i];
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ValidationError("matrix shape mismatch in +");
    Matrix m(a.rows_, a.cols_);
    for (size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] + b.data_[i];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ValidationError("matrix shape mismatch in *");
    Matrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Laurent& aik = a.at(i, k);
            if (aik.is_exact_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) {
                const Laurent& bkj = b.at(k, j);
                if (bkj.is_exact_zero()) continue;
                m.at(i, j) += aik * bkj;
            }
        }
    return m;
}

Matrix operator*(const Laurent& s, const Matrix& a) {
    Matrix m(a.rows_, a.cols_);
    for (size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = s * a.data_[i];
    return m;
}

namespace {

// Gauss-Jordan on [A | B]; returns X with A X = B.
Matrix gauss_solve(Matrix a, Matrix b) {
    int n = a.rows();
    if (a.cols() != n) throw ValidationError("gauss_solve: A not square");
    for (int col = 0; col < n; ++col) {
        // pivot: minimal valuation among certified-nonzero entries
        int pivot = -1, best_val = Laurent::kInf;
        bool saw_indeterminate = false;
        for (int i = col; i < n; ++i) {
            const Laurent& e = a.at(i, col);
            if (e.known_nonzero()) {
                if (e.valuation() < best_val) { best_val = e.valuation(); pivot = i; }
            } else if (!e.is_exact_zero()) {
                saw_indeterminate = true;
            }
        }
        if (pivot < 0) {
            if (saw_indeterminate) throw PrecisionExhausted("pivot selection in solve");
            throw RankDeficient("singular matrix in solve");
        }
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a.at(pivot, j), a.at(col, j));
            for (int j = 0; j < b.cols(); ++j) std::swap(b.at(pivot, j), b.at(col, j));
        }
        Laurent inv = a.at(col, col).inverse();
        for (int j = 0; j < n; ++j) a.at(col, j) = inv * a.at(col, j);
        for (int j = 0; j < b.cols(); ++j) b.at(col, j) = inv * b.at(col, j);
        a.at(col, col) = Laurent::one();
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            Laurent f = a.at(i, col);
            if (f.is_exact_zero()) continue;
            for (int j = 0; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
            for (int j = 0; j < b.cols(); ++j) b.at(i, j) -= f * b.at(col, j);
            a.at(i, col) = Laurent();
        }
    }
    return b;
}

} // namespace

Matrix Matrix::inverse() const { return gauss_solve(*this, identity(rows_)); }

Matrix Matrix::solve(const Matrix& b) const { return gauss_solve(*this, b); }

bool Matrix::is_certified_zero() const {
    for (const Laurent& e : data_) {
        if (e.known_nonzero()) return false;
        if (!e.is_exact_zero()) throw PrecisionExhausted("matrix zero test");
    }
    return true;
}

bool certified_equal(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    return (a - b).is_certified_zero();
}

Matrix Matrix::col(int j) const { return cols_range(j, 1); }

Matrix Matrix::cols_range(int j0, int count) const {
    Matrix m(rows_, count);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < count; ++j) m.at(i, j) = at(i, j0 + j);
    return m;
}

Matrix Matrix::submatrix(int i0, int j0, int r, int c) const {
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = at(i0 + i, j0 + j);
    return m;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw ValidationError("hcat shape mismatch");
    Matrix m(a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols_; ++j) m.at(i, a.cols_ + j) = b.at(i, j);
    }
    return m;
}

Matrix vcat(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw ValidationError("vcat shape mismatch");
    Matrix m(a.rows_ + b.rows_, a.cols_);
    for (int j = 0; j < a.cols_; ++j) {
        for (int i = 0; i < a.rows_; ++i) m.at(i, j) = a.at(i, j);
        for (int i = 0; i < b.rows_; ++i) m.at(a.rows_ + i, j) = b.at(i, j);
    }
    return m;
}

Matrix Matrix::vectorize() const {
    Matrix v(rows_ * cols_, 1);
    for (int j = 0; j < cols_; ++j)
        for (int i = 0; i < rows_; ++i) v.at(j * rows_ + i, 0) = at(i, j);
    return v;
}

Matrix Matrix::unvectorize(const Matrix& v, int rows, int cols) {
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m.at(i, j) = v.at(j * rows + i, 0);
    return m;
}

Matrix Matrix::kernel_basis() const {
    // row-echelon with full pivoting bookkeeping over the field F
    Matrix a = *this;
    int r = rows_, c = cols_;
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < c && row < r; ++col) {
        int pivot = -1, best_val = Laurent::kInf;
        bool saw_indeterminate = false;
        for (int i = row; i < r; ++i) {
            const Laurent& e = a.at(i, col);
            if (e.known_nonzero()) {
                if (e.valuation() < best_val) { best_val = e.valuation(); pivot = i; }
            } else if (!e.is_exact_zero()) {
                saw_indeterminate = true;
            }
        }
        if (pivot < 0) {
            if (saw_indeterminate) throw PrecisionExhausted("pivot selection in kernel");
            continue;
        }
        if (pivot != row)
            for (int j = 0; j < c; ++j) std::swap(a.at(pivot, j), a.at(row, j));
        Laurent inv = a.at(row, col).inverse();
        for (int j = col; j < c; ++j) a.at(row, j) = inv * a.at(row, j);
        a.at(row, col) = Laurent::one();
        for (int i = 0; i < r; ++i) {
            if (i == row) continue;
            Laurent f = a.at(i, col);
            if (f.is_exact_zero()) continue;
            for (int j = col; j < c; ++j) a.at(i, j) -= f * a.at(row, j);
            a.at(i, col) = Laurent();
        }
        pivot_col.push_back(col);
        ++row;
    }
    // free columns give the kernel basis
    std::vector<bool> is_pivot(c, false);
    for (int p : pivot_col) is_pivot[p] = true;
    int nfree = c - (int)pivot_col.size();
    Matrix k(c, nfree);
    int out = 0;
    for (int col = 0; col < c; ++col) {
        if (is_pivot[col]) continue;
        k.at(col, out) = Laurent::one();
        for (size_t pr = 0; pr < pivot_col.size(); ++pr)
            k.at(pivot_col[pr], out) = -a.at((int)pr, col);
        ++out;
    }
    return k;
}

Matrix Matrix::column_space_basis() const {
    // echelon on the transpose picks independent columns
    Matrix a = *this;
    int r = rows_, c = cols_;
    std::vector<int> keep;
    int row = 0;
    for (int col = 0; col < c && row < r; ++col) {
        int pivot = -1, best_val = Laurent::kInf;
        for (int i = row; i < r; ++i) {
            const Laurent& e = a.at(i, col);
            if (e.known_nonzero() && e.valuation() < best_val) { best_val = e.valuation(); pivot = i; }
            else if (!e.known_nonzero() && !e.is_exact_zero())
                throw PrecisionExhausted("pivot selection in column space");
        }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int j = 0; j < c; ++j) std::swap(a.at(pivot, j), a.at(row, j));
        Laurent inv = a.at(row, col).inverse();
        for (int j = col; j < c; ++j) a.at(row, j) = inv * a.at(row, j);
        for (int i = row + 1; i < r; ++i) {
            Laurent f = a.at(i, col);
            if (f.is_exact_zero()) continue;
            for (int j = col; j < c; ++j) a.at(i, j) -= f * a.at(row, j);
            a.at(i, col) = Laurent();
        }
        keep.push_back(col);
        ++row;
    }
    Matrix b(rows_, (int)keep.size());
    for (size_t j = 0; j < keep.size(); ++j)
        for (int i = 0; i < rows_; ++i) b.at(i, (int)j) = at(i, keep[j]);
    return b;
}

int Matrix::rank() const { return column_space_basis().cols(); }

Matrix product_map(const Matrix& a, const Matrix& b, int p, int q) {
    // vec(A X B) = (B^T (x) A) vec(X) in column-major convention
    int out_rows = a.rows() * b.cols();
    Matrix m(out_rows, p * q);
    for (int j = 0; j < q; ++j)
        for (int i = 0; i < p; ++i) {
            // image of E_{i,j}: A e_i e_j^T B = (col i of A)(row j of B)
            for (int bj = 0; bj < b.cols(); ++bj) {
                const Laurent& brow = b.at(j, bj);
                if (brow.is_exact_zero()) continue;
                for (int ai = 0; ai < a.rows(); ++ai) {
                    const Laurent& acol = a.at(ai, i);
                    if (acol.is_exact_zero()) continue;
                    m.at(bj * a.rows() + ai, j * p + i) += acol * brow;
                }
            }
        }
    return m;
}

std::string Matrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << "[ ";
        for (int j = 0; j < cols_; ++j) os << at(i, j).str() << (j + 1 < cols_ ? ", " : " ");
        os << "]\n";
    }
    return os.str();
}

} // namespace bt
