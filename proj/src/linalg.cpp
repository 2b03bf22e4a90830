#include "rpboost/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>

#include "rpboost/errors.hpp"

namespace rpboost {

namespace {

using EigenRowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRowMajor = Eigen::Map<const EigenRowMajor>;

std::string shape_str(const DenseMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("DenseMatrix: data length " +
                             std::to_string(data_.size()) +
                             " does not match " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool DenseMatrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: dimension mismatch " + shape_str(a) +
                             " * " + shape_str(b));
    }
    DenseMatrix out(a.rows(), b.cols());
    if (a.rows() == 0 || b.cols() == 0 || a.cols() == 0) return out;
    MapRowMajor am(a.data(), a.rows(), a.cols());
    MapRowMajor bm(b.data(), b.rows(), b.cols());
    Eigen::Map<EigenRowMajor> om(out.data(), out.rows(), out.cols());
    om.noalias() = am * bm;
    return out;
}

DenseMatrix gram_weighted(const DenseMatrix& z, const Vector& w) {
    if (w.size() != z.rows()) {
        throw DimensionError("gram_weighted: " + std::to_string(w.size()) +
                             " weights for " + shape_str(z) + " matrix");
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!(w[i] >= 0.0)) {
            throw ValueError("gram_weighted: negative weight w[" +
                             std::to_string(i) + "] = " + std::to_string(w[i]));
        }
    }
    const std::size_t n = z.rows(), m = z.cols();

    // Scale rows by w (not sqrt(w)): Zᵀ·(WZ) reproduces Σ wᵢ·zᵢzᵢᵀ exactly
    // when the inputs are exact, which sqrt-scaling would not.
    EigenRowMajor scaled(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        const double* src = z.row(i);
        double* dst = scaled.data() + i * m;
        for (std::size_t j = 0; j < m; ++j) dst[j] = w[i] * src[j];
    }
    MapRowMajor zmap(z.data(), n, m);
    Eigen::MatrixXd g(m, m);
    g.noalias() = zmap.transpose() * scaled;

    // Mirror the computed lower triangle; symmetry holds bit-for-bit.
    DenseMatrix out(m, m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c <= r; ++c) {
            const double v = g(static_cast<Eigen::Index>(r),
                               static_cast<Eigen::Index>(c));
            out(r, c) = v;
            out(c, r) = v;
        }
    }
    return out;
}

Vector solve_spd(DenseMatrix a, const Vector& rhs) {
    const std::size_t n = a.rows();
    if (n == 0) throw ValueError("solve_spd: empty matrix");
    if (a.cols() != n) {
        throw DimensionError("solve_spd: matrix not square: " + shape_str(a));
    }
    if (rhs.size() != n) {
        throw DimensionError("solve_spd: rhs length " +
                             std::to_string(rhs.size()) + " for " +
                             shape_str(a) + " matrix");
    }
    double max_entry = 0.0, max_asym = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < r; ++c) {
            max_asym = std::max(max_asym, std::abs(a(r, c) - a(c, r)));
        }
        for (std::size_t c = r; c < n; ++c) {
            max_entry = std::max(max_entry, std::abs(a(r, c)));
        }
    }
    if (!std::isfinite(max_entry)) {
        throw ValueError("solve_spd: non-finite matrix entry");
    }
    if (max_asym > 1e-12 * std::max(1.0, max_entry)) {
        throw ValueError("solve_spd: matrix not symmetric (max asymmetry " +
                         std::to_string(max_asym) + ")");
    }

    // A symmetric row-major buffer reads identically as column-major, so the
    // factorization can run in place over the by-value copy.
    Eigen::Map<Eigen::MatrixXd> am(a.data(), static_cast<Eigen::Index>(n),
                                   static_cast<Eigen::Index>(n));
    Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt(am);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite(
            "solve_spd: non-positive-definite pivot; system is singular or "
            "indefinite");
    }
    Vector x(n);
    Eigen::Map<const Eigen::VectorXd> bm(rhs.data(),
                                         static_cast<Eigen::Index>(n));
    Eigen::Map<Eigen::VectorXd> xm(x.data(), static_cast<Eigen::Index>(n));
    xm = llt.solve(bm);
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw NotPositiveDefinite(
                "solve_spd: non-finite solution from near-singular system");
        }
    }
    return x;
}

DenseMatrix add_ridge(DenseMatrix a, double lambda) {
    if (a.rows() != a.cols()) {
        throw DimensionError("add_ridge: matrix not square: " + shape_str(a));
    }
    if (!(lambda >= 0.0)) {
        throw ValueError("add_ridge: lambda must be >= 0, got " +
                         std::to_string(lambda));
    }
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += lambda;
    return a;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
    }
    return out;
}

Vector matvec(const DenseMatrix& a, const Vector& x) {
    if (a.cols() != x.size()) {
        throw DimensionError("matvec: " + shape_str(a) + " * vector of " +
                             std::to_string(x.size()));
    }
    Vector out(a.rows());
    MapRowMajor am(a.data(), a.rows(), a.cols());
    Eigen::Map<const Eigen::VectorXd> xm(x.data(),
                                         static_cast<Eigen::Index>(x.size()));
    Eigen::Map<Eigen::VectorXd> om(out.data(),
                                   static_cast<Eigen::Index>(out.size()));
    om.noalias() = am * xm;
    return out;
}

Vector tmatvec(const DenseMatrix& a, const Vector& x) {
    if (a.rows() != x.size()) {
        throw DimensionError("tmatvec: " + shape_str(a) + "^T * vector of " +
                             std::to_string(x.size()));
    }
    Vector out(a.cols());
    MapRowMajor am(a.data(), a.rows(), a.cols());
    Eigen::Map<const Eigen::VectorXd> xm(x.data(),
                                         static_cast<Eigen::Index>(x.size()));
    Eigen::Map<Eigen::VectorXd> om(out.data(),
                                   static_cast<Eigen::Index>(out.size()));
    om.noalias() = am.transpose() * xm;
    return out;
}

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw DimensionError("dot: lengths " + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double max_abs(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace rpboost
