#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace alloymsa {

// dense row-major matrix
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    std::vector<double> column(std::size_t j) const;
    std::vector<double> multiply(std::span<const double> x) const;
    double max_asymmetry() const;
    double frobenius_norm() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

struct SymmetricEigen {
    std::vector<double> values;  // ascending
    Matrix vectors;              // columns, empty unless requested
    int iterations = 0;
};

// Householder reduction to tridiagonal form followed by the implicit QL
// iteration; eigenvalues sorted ascending.  Throws a solver error if some
// eigenvalue fails to converge.
SymmetricEigen symmetric_eigen(const Matrix& a, bool want_vectors);

// LU factorization with partial pivoting
class LUFactorization {
public:
    explicit LUFactorization(const Matrix& a);
    std::vector<double> solve(std::span<const double> b) const;
    double min_abs_pivot() const { return min_pivot_; }
    std::size_t size() const { return lu_.rows(); }

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
    double min_pivot_ = 0;
};

}  // namespace alloymsa
