#ifndef BT_MATRIX_HPP
#define BT_MATRIX_HPP

#include <vector>

#include "bt/laurent.hpp"

namespace bt {

// Dense matrix over F = F_q((t)).
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(int n);
    static Matrix unit(int n, int i, int j); // E_{i,j}, 0-based
    static Matrix diagonal(const std::vector<Laurent>& d);
    static Matrix t_power_diagonal(const std::vector<int>& exps);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Laurent& at(int i, int j) { return data_[i * cols_ + j]; }
    const Laurent& at(int i, int j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const;
    Matrix operator-() const;
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Laurent& s, const Matrix& a);

    Matrix inverse() const; // throws RankDeficient
    // solve A X = B for X (A square invertible)
    Matrix solve(const Matrix& b) const;

    bool is_certified_zero() const;   // throws PrecisionExhausted if undecidable
    friend bool certified_equal(const Matrix& a, const Matrix& b);

    Matrix col(int j) const;
    Matrix cols_range(int j0, int count) const;
    Matrix submatrix(int i0, int j0, int r, int c) const;
    friend Matrix hcat(const Matrix& a, const Matrix& b);
    friend Matrix vcat(const Matrix& a, const Matrix& b);

    // column-major vectorization: F^{r x c} -> F^{rc}
    Matrix vectorize() const;               // (rows*cols) x 1
    static Matrix unvectorize(const Matrix& v, int rows, int cols);

    // basis of {x : A x = 0}, columns; exact Gaussian elimination
    Matrix kernel_basis() const;
    // basis of the column space, columns
    Matrix column_space_basis() const;
    int rank() const;

    std::string str() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Laurent> data_;
};

// vec of a matrix-product linear map: M such that vec(A X B) = M vec(X),
// i.e. the Kronecker-style conjugation matrix for X of shape (p x q).
Matrix product_map(const Matrix& a, const Matrix& b, int p, int q);

} // namespace bt

#endif
