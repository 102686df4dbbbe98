#include "qfilter/povm_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qfilter/errors.hpp"

namespace qfilter {

namespace {

constexpr double kPsdTol = 1e-10;
constexpr double kRankTol = 1e-10;

void check_q1(double q1) {
    if (!(q1 > 0.0 && q1 <= 1.0))
        throw std::invalid_argument("q1 must lie in (0, 1]");
}

SymmetricMatrix reduced_gram_of(const std::vector<StateVector>& states, double q1) {
    const std::size_t n = states.size();
    std::vector<double> o(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) o[j] = inner(states[0], states[j]);

    SymmetricMatrix m(n);
    m.set(0, 0, 1.0 - q1);
    for (std::size_t j = 1; j < n; ++j) {
        m.set(0, j, 0.0);
        for (std::size_t k = j; k < n; ++k)
            m.set(j, k, inner(states[j], states[k]) - o[j] * o[k] / q1);
    }
    return m;
}

StateVector embed(const StateVector& v) {
    StateVector out(v.dim() + 1);
    for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v[i];
    return out;
}

}  // namespace

SymmetricMatrix reduced_gram(const FilterProblem& problem, double q1) {
    check_q1(q1);
    std::vector<StateVector> states;
    states.reserve(problem.num_states());
    states.push_back(problem.psi1());
    states.insert(states.end(), problem.others().begin(), problem.others().end());
    return reduced_gram_of(states, q1);
}

DilationUnitary synthesize_dilation(const FilterProblem& problem, double q1) {
    check_q1(q1);
    const std::size_t d = problem.dim();

    if (problem.h2_basis().size() != problem.others().size())
        throw std::invalid_argument("synthesize_dilation: competing set is rank deficient");

    DilationUnitary out;
    out.dim_system = d;
    out.q1 = q1;
    out.num_original = problem.num_states();
    out.h2_basis = problem.h2_basis();

    // Pad to D states with orthonormal completions of span(psi1, others);
    // they are perfectly distinguishable and carry q = 0.
    out.inputs.reserve(d);
    out.inputs.push_back(problem.psi1());
    out.inputs.insert(out.inputs.end(), problem.others().begin(), problem.others().end());
    if (out.inputs.size() > d)
        throw std::invalid_argument("synthesize_dilation: more independent states than dimensions");
    {
        std::vector<StateVector> spanned = out.h2_basis;
        spanned.push_back(problem.psi1_perp());
        const auto pads = orthonormal_completion(spanned, d, d - out.inputs.size());
        out.inputs.insert(out.inputs.end(), pads.begin(), pads.end());
    }

    const SymmetricMatrix m = reduced_gram_of(out.inputs, q1);
    const Matrix b = psd_factor(m, kPsdTol);  // NotPsdError for infeasible q1

    // Expansion frame: the direction of psi1 orthogonal to H_2, then the
    // orthonormalized competing set, then the pads. psi'_j takes column j
    // of B against this frame, which reproduces Gram(psi') = M and puts
    // psi'_1 along the perpendicular direction.
    std::vector<StateVector> frame;
    frame.reserve(d);
    frame.push_back(problem.psi1_perp());
    frame.insert(frame.end(), out.h2_basis.begin(), out.h2_basis.end());
    frame.insert(frame.end(), out.inputs.begin() + static_cast<std::ptrdiff_t>(out.num_original),
                 out.inputs.end());

    out.q.resize(d);
    out.p.resize(d);
    out.signs.resize(d);
    out.output_vectors.reserve(d);
    out.q[0] = q1;
    out.signs[0] = 1.0;
    for (std::size_t j = 1; j < d; ++j) {
        if (j >= out.num_original) {  // pads are orthogonal to psi1 by construction
            out.q[j] = 0.0;
            out.signs[j] = 1.0;
            continue;
        }
        const double o = inner(problem.psi1(), out.inputs[j]);
        out.q[j] = o * o / q1;
        out.signs[j] = o < 0.0 ? -1.0 : 1.0;
    }
    for (std::size_t j = 0; j < d; ++j) {
        out.p[j] = 1.0 - out.q[j];
        StateVector phi(d);
        for (std::size_t i = 0; i < d; ++i) phi.add_scaled(frame[i], b(i, j));
        out.output_vectors.push_back(std::move(phi));
    }

    // Images in the extended space.
    std::vector<StateVector> images;
    images.reserve(d);
    for (std::size_t j = 0; j < d; ++j) {
        StateVector img = embed(out.output_vectors[j]);
        img[d] = out.signs[j] * std::sqrt(out.q[j]);
        images.push_back(std::move(img));
    }

    // Gram-Schmidt the embedded inputs, tracking coefficients, then push the
    // same recurrence through the images. Both frames are orthonormal
    // because the construction preserves the Gram matrix, so
    // U = [image frame | completion] [input frame | e_A]^T is orthogonal.
    std::vector<StateVector> qd, qo;
    qd.reserve(d);
    qo.reserve(d);
    for (std::size_t j = 0; j < d; ++j) {
        StateVector v = embed(out.inputs[j]);
        StateVector w = images[j];
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < qd.size(); ++i) {
                const double c = inner(qd[i], v);
                v.add_scaled(qd[i], -c);
                w.add_scaled(qo[i], -c);
            }
        }
        const double nrm = v.norm();
        if (nrm <= kRankTol)
            throw std::invalid_argument("synthesize_dilation: input states are rank deficient");
        v.scale(1.0 / nrm);
        w.scale(1.0 / nrm);
        qd.push_back(std::move(v));
        qo.push_back(std::move(w));
    }
    qd.push_back(orthonormal_completion(qd, d + 1, 1).front());  // = e_A
    qo.push_back(orthonormal_completion(qo, d + 1, 1).front());

    out.matrix = Matrix(d + 1, d + 1);
    for (std::size_t c = 0; c <= d; ++c)
        for (std::size_t r = 0; r <= d; ++r)
            for (std::size_t s = 0; s <= d; ++s)
                out.matrix(r, s) += qo[c][r] * qd[c][s];
    return out;
}

double DilationValidation::max_deviation() const {
    return std::max({unitarity, structure, ortho, qproduct, prob_sum, gram});
}

DilationValidation validate_dilation(const DilationUnitary& d, const FilterProblem& problem) {
    const std::size_t dim = d.dim_system;
    if (problem.dim() != dim || d.inputs.size() != dim || problem.num_states() != d.num_original)
        throw std::invalid_argument("validate_dilation: problem does not match the dilation");

    DilationValidation v;
    v.unitarity = max_abs_diff(multiply(transpose(d.matrix), d.matrix), Matrix::identity(dim + 1));

    for (std::size_t j = 0; j < dim; ++j) {
        const StateVector img = apply(d.matrix, embed(d.inputs[j]));
        for (std::size_t i = 0; i < dim; ++i)
            v.structure = std::max(v.structure, std::abs(img[i] - d.output_vectors[j][i]));
        v.structure = std::max(
            v.structure, std::abs(img[dim] - d.signs[j] * std::sqrt(d.q[j])));

        v.prob_sum = std::max(v.prob_sum,
                              std::abs(d.output_vectors[j].norm_sq() + d.q[j] - 1.0));
        if (j >= 1) {
            v.ortho = std::max(v.ortho,
                               std::abs(inner(d.output_vectors[0], d.output_vectors[j])));
            const double o = inner(d.inputs[0], d.inputs[j]);
            v.qproduct = std::max(v.qproduct, std::abs(d.q1 * d.q[j] - o * o));
        }
    }

    const SymmetricMatrix m = reduced_gram_of(d.inputs, d.q1);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = j; k < dim; ++k)
            v.gram = std::max(v.gram, std::abs(inner(d.output_vectors[j], d.output_vectors[k]) -
                                               m(j, k)));
    return v;
}

GeneralInputFailure failure_for_general_input(const DilationUnitary& d, const StateVector& psi,
                                              double tol) {
    if (psi.dim() != d.dim_system)
        throw std::invalid_argument("failure_for_general_input: dimension mismatch");

    StateVector residual = psi;
    for (int pass = 0; pass < 2; ++pass)
        for (const StateVector& b : d.h2_basis) residual.add_scaled(b, -inner(b, residual));
    if (residual.norm() > tol)
        throw std::invalid_argument("failure_for_general_input: psi lies outside H_2");

    GeneralInputFailure out;
    const double o = inner(d.inputs[0], psi);
    out.q_formula = o * o / d.q1;

    const StateVector img = apply(d.matrix, embed(psi));
    out.q_measured = img[d.dim_system] * img[d.dim_system];

    if (std::abs(out.q_formula - out.q_measured) > tol)
        throw ValidationError("failure_for_general_input: U disagrees with the closed form");
    return out;
}

}  // namespace qfilter
