#pragma once

#include <cstddef>
#include <vector>

namespace rpboost {

using Vector = std::vector<double>;

/// Dense real matrix, row-major storage. Immutable by convention once built
/// by an operation; all operations are pure functions of their inputs.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    double& operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }

    /// Row-major contiguous storage, rows*cols entries.
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    const double* row(std::size_t r) const { return data_.data() + r * cols_; }
    double* row(std::size_t r) { return data_.data() + r * cols_; }

    bool all_finite() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// Standard product a*b. Throws DimensionError naming both shapes when
/// a.cols != b.rows.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

/// Weighted Gram matrix Z^T W Z = sum_i w_i z_i z_i^T for row vectors z_i.
/// One triangle is computed and mirrored, so the result is exactly symmetric.
/// Requires w.size() == z.rows() and every w_i >= 0.
DenseMatrix gram_weighted(const DenseMatrix& z, const Vector& w);

/// Solves a*x = rhs for symmetric positive definite a via an in-place
/// Cholesky factorization (never an explicit inverse). The matrix is taken
/// by value: move it in to avoid the copy. Throws NotPositiveDefinite when a
/// non-positive pivot is met; the caller decides whether to raise lambda.
Vector solve_spd(DenseMatrix a, const Vector& rhs);

/// a + lambda*I for square a, lambda >= 0. Taken by value: move in to
/// shift the diagonal without copying the matrix.
DenseMatrix add_ridge(DenseMatrix a, double lambda);

DenseMatrix transpose(const DenseMatrix& a);

/// a*x (a.cols == x.size()).
Vector matvec(const DenseMatrix& a, const Vector& x);

/// a^T*x (a.rows == x.size()).
Vector tmatvec(const DenseMatrix& a, const Vector& x);

double dot(const Vector& a, const Vector& b);
double max_abs(const Vector& v);

}  // namespace rpboost
