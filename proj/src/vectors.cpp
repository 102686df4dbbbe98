#include "qfilter/vectors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qfilter/errors.hpp"

namespace qfilter {

StateVector StateVector::from_signs(std::span<const std::int8_t> signs, double scale) {
    std::vector<double> amps(signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i) {
        amps[i] = signs[i] >= 0 ? scale : -scale;
    }
    return StateVector(std::move(amps));
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (double a : amps_) s += a * a;
    return s;
}

double StateVector::norm() const { return std::sqrt(norm_sq()); }

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm() - 1.0) <= tol;
}

void StateVector::scale(double c) {
    for (double& a : amps_) a *= c;
}

void StateVector::add_scaled(const StateVector& v, double c) {
    if (v.dim() != dim()) throw std::invalid_argument("add_scaled: dimension mismatch");
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += c * v.amps_[i];
}

double inner(const StateVector& u, const StateVector& v) {
    if (u.dim() != v.dim()) throw std::invalid_argument("inner: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) s += u[i] * v[i];
    return s;
}

Projection project_parallel(const StateVector& v,
                            std::span<const StateVector> subspace,
                            double ortho_tol) {
    for (std::size_t i = 0; i < subspace.size(); ++i) {
        if (subspace[i].dim() != v.dim())
            throw std::invalid_argument("project_parallel: dimension mismatch");
        for (std::size_t j = i; j < subspace.size(); ++j) {
            const double g = inner(subspace[i], subspace[j]);
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - want) > ortho_tol)
                throw std::invalid_argument("project_parallel: subspace not orthonormal");
        }
    }
    Projection out;
    out.component = StateVector(v.dim());
    for (const StateVector& b : subspace) {
        const double c = inner(b, v);
        out.component.add_scaled(b, c);
        out.norm_sq += c * c;
    }
    return out;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

StateVector apply(const Matrix& a, const StateVector& x) {
    if (a.cols() != x.dim()) throw std::invalid_argument("apply: shape mismatch");
    StateVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

Matrix SymmetricMatrix::dense() const {
    Matrix m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

SymmetricEigen eigen_sym(const SymmetricMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXd em(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            em(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(em);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigen_sym: eigendecomposition failed");

    SymmetricEigen out;
    out.values.resize(m.dim());
    out.vectors = Matrix(m.dim(), m.dim());
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        for (Eigen::Index r = 0; r < n; ++r)
            out.vectors(static_cast<std::size_t>(r), static_cast<std::size_t>(i)) =
                solver.eigenvectors()(r, i);
    }
    return out;
}

Matrix psd_factor(const SymmetricMatrix& m, double tol) {
    const SymmetricEigen eig = eigen_sym(m);
    const std::size_t n = m.dim();
    if (n > 0 && eig.values.front() < -tol)
        throw NotPsdError("psd_factor: matrix is not positive semidefinite", eig.values.front());

    std::vector<double> roots(n);
    for (std::size_t i = 0; i < n; ++i)
        roots[i] = eig.values[i] > 0.0 ? std::sqrt(eig.values[i]) : 0.0;

    // Principal square root V sqrt(L) V^T: unique and basis independent,
    // which keeps exported factors reproducible even at degenerate spectra.
    Matrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += eig.vectors(i, k) * roots[k] * eig.vectors(j, k);
            b(i, j) = s;
            b(j, i) = s;
        }
    }
    return b;
}

namespace {

// One MGS sweep with a second pass against the accepted set.
StateVector residual_against(const StateVector& v, std::span<const StateVector> basis) {
    StateVector r = v;
    for (int pass = 0; pass < 2; ++pass) {
        for (const StateVector& b : basis) {
            r.add_scaled(b, -inner(b, r));
        }
    }
    return r;
}

}  // namespace

std::vector<StateVector> orthonormalize(std::span<const StateVector> vectors, double rank_tol) {
    std::vector<StateVector> basis;
    basis.reserve(vectors.size());
    for (const StateVector& v : vectors) {
        StateVector r = residual_against(v, basis);
        const double nrm = r.norm();
        if (nrm > rank_tol) {
            r.scale(1.0 / nrm);
            basis.push_back(std::move(r));
        }
    }
    return basis;
}

std::vector<StateVector> orthonormal_completion(std::span<const StateVector> frame,
                                                std::size_t dim,
                                                std::size_t count) {
    std::vector<StateVector> all(frame.begin(), frame.end());
    std::vector<StateVector> added;
    added.reserve(count);
    for (std::size_t round = 0; round < count; ++round) {
        std::size_t best = dim;
        double best_norm = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            double used = 0.0;
            for (const StateVector& b : all) used += b[c] * b[c];
            const double res_sq = 1.0 - used;
            if (res_sq > best_norm) {
                best_norm = res_sq;
                best = c;
            }
        }
        if (best == dim)
            throw std::invalid_argument("orthonormal_completion: frame already spans the space");
        StateVector e(dim);
        e[best] = 1.0;
        StateVector r = residual_against(e, all);
        r.scale(1.0 / r.norm());
        all.push_back(r);
        added.push_back(all.back());
    }
    return added;
}

}  // namespace qfilter
