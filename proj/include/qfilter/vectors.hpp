#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qfilter {

/// Dense real state vector. Amplitudes are signed reals; a vector used as a
/// quantum state is expected to have unit norm, intermediate (unnormalized)
/// vectors are allowed.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::size_t dim) : amps_(dim, 0.0) {}
    explicit StateVector(std::vector<double> amplitudes) : amps_(std::move(amplitudes)) {}

    /// Builds scale * signs, used for the +-1/sqrt(D) vectors that dominate
    /// this code base.
    static StateVector from_signs(std::span<const std::int8_t> signs, double scale);

    std::size_t dim() const { return amps_.size(); }
    double operator[](std::size_t i) const { return amps_[i]; }
    double& operator[](std::size_t i) { return amps_[i]; }
    const std::vector<double>& amplitudes() const { return amps_; }

    double norm_sq() const;
    double norm() const;
    bool is_normalized(double tol = 1e-12) const;

    void scale(double c);
    /// *this += c * v
    void add_scaled(const StateVector& v, double c);

    bool operator==(const StateVector&) const = default;

private:
    std::vector<double> amps_;
};

/// <u|v> for real amplitudes. Throws std::invalid_argument on dim mismatch.
double inner(const StateVector& u, const StateVector& v);

struct Projection {
    StateVector component;  ///< sum_b <b|v> b
    double norm_sq = 0.0;   ///< sum_b <b|v>^2
};

/// Projects v onto the span of an orthonormal set. The set is checked for
/// orthonormality within ortho_tol; a violation throws std::invalid_argument.
Projection project_parallel(const StateVector& v,
                            std::span<const StateVector> subspace,
                            double ortho_tol = 1e-10);

/// Dense row-major matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
StateVector apply(const Matrix& a, const StateVector& x);
/// max_ij |a_ij - b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Real symmetric matrix; set() writes both triangles so symmetry is exact
/// by construction.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

    std::size_t dim() const { return dim_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        data_[i * dim_ + j] = v;
        data_[j * dim_ + i] = v;
    }

    Matrix dense() const;

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

struct SymmetricEigen {
    std::vector<double> values;  ///< ascending
    Matrix vectors;              ///< columns are eigenvectors, same order
};

SymmetricEigen eigen_sym(const SymmetricMatrix& m);

/// Symmetric factor B with B*B = m (B is the principal square root, so
/// B^T B = m as well). Eigenvalues in [-tol, 0] are clipped to zero;
/// anything below -tol raises NotPsdError carrying the smallest eigenvalue.
Matrix psd_factor(const SymmetricMatrix& m, double tol);

/// Modified Gram-Schmidt with re-orthogonalization. Inputs whose residual
/// norm falls below rank_tol are dropped, so the result is an orthonormal
/// basis of the span.
std::vector<StateVector> orthonormalize(std::span<const StateVector> vectors,
                                        double rank_tol = 1e-10);

/// Extends an orthonormal frame by `count` vectors drawn from the canonical
/// coordinate directions (deterministic choice: the candidate with the
/// largest residual, scanning e_0, e_1, ... in order).
std::vector<StateVector> orthonormal_completion(std::span<const StateVector> frame,
                                                std::size_t dim,
                                                std::size_t count);

}  // namespace qfilter
