#pragma once

#include <cstdint>
#include <vector>

#include "qfilter/filtering.hpp"
#include "qfilter/vectors.hpp"

namespace qfilter {

/// Reduced Gram matrix M of the problem at failure parameter q1:
///   M_11     = 1 - q1
///   M_1j     = 0                                   (j >= 2)
///   M_jk     = <psi_j|psi_k> - <psi_j|psi_1><psi_1|psi_k> / q1
/// The dilation exists iff M is positive semidefinite.
SymmetricMatrix reduced_gram(const FilterProblem& problem, double q1);

/// Orthogonal dilation on the system plus a one-dimensional failure space.
/// U maps each input state j (the problem's states, padded with
/// perfectly-distinguishable orthonormal completions up to D states) to
///   output_vectors[j] + signs[j] sqrt(q[j]) e_A,
/// where e_A is the ancilla axis and output_vectors[j] lives in the system
/// space with squared norm p[j].
struct DilationUnitary {
    std::size_t dim_system = 0;
    double q1 = 0.0;
    Matrix matrix;  ///< (D+1) x (D+1), orthogonal

    std::vector<double> q;      ///< per-state failure probabilities
    std::vector<double> p;      ///< per-state success probabilities, p + q = 1
    std::vector<double> signs;  ///< the phases e^{i theta_j}, here +-1
    std::vector<StateVector> output_vectors;  ///< unnormalized, norm^2 = p[j]

    std::size_t num_original = 0;      ///< problem states; the rest is padding
    std::vector<StateVector> inputs;   ///< padded input list, inputs[0] = psi1
    std::vector<StateVector> h2_basis; ///< orthonormal span of the original competing set
};

/// Builds the dilation. Throws NotPsdError when q1 is infeasible (the
/// feasible window is [||psi1_par||^2, 1]) and std::invalid_argument for a
/// rank-deficient input set or q1 outside (0, 1].
DilationUnitary synthesize_dilation(const FilterProblem& problem, double q1);

/// Maximum deviations of the defining identities. Always returns the
/// record; pass() applies the tolerance.
struct DilationValidation {
    double unitarity = 0.0;  ///< max |U^T U - I|
    double structure = 0.0;  ///< max_j |U psi_j - (psi'_j + s_j sqrt(q_j) e_A)|_inf
    double ortho = 0.0;      ///< max_{j>=2} |<psi'_1|psi'_j>|
    double qproduct = 0.0;   ///< max_{j>=2} |q1 q_j - <psi1|psi_j>^2|
    double prob_sum = 0.0;   ///< max_j |p_j + q_j - 1|
    double gram = 0.0;       ///< max |Gram(psi') - M|

    double max_deviation() const;
    bool pass(double tol = 1e-10) const { return max_deviation() <= tol; }
};

DilationValidation validate_dilation(const DilationUnitary& d, const FilterProblem& problem);

/// Failure probability when the dilation built for the problem's basis is
/// applied to an arbitrary state of H_2 = span(competing set). Returns the
/// closed form <psi1|psi>^2 / q1 and the value read off U directly (squared
/// ancilla amplitude); the two are checked against each other.
struct GeneralInputFailure {
    double q_formula = 0.0;
    double q_measured = 0.0;
};

GeneralInputFailure failure_for_general_input(const DilationUnitary& d, const StateVector& psi,
                                              double tol = 1e-10);

}  // namespace qfilter
