#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qfilter/vectors.hpp"

namespace qfilter {

/// One distinguished state psi1, the competing set, and the priors
/// (priors[0] belongs to psi1). Construction validates unit norms, the
/// prior distribution, and that psi1 is linearly independent from the span
/// of the competing set; the orthonormalized span and the parallel
/// component of psi1 are cached.
class FilterProblem {
public:
    static FilterProblem create(StateVector psi1,
                                std::vector<StateVector> others,
                                std::vector<double> priors);

    const StateVector& psi1() const { return psi1_; }
    const std::vector<StateVector>& others() const { return others_; }
    const std::vector<double>& priors() const { return priors_; }

    std::size_t dim() const { return psi1_.dim(); }
    std::size_t num_states() const { return 1 + others_.size(); }

    /// Orthonormal basis of span(others).
    const std::vector<StateVector>& h2_basis() const { return h2_basis_; }
    /// ||psi1_parallel||^2 against span(others).
    double par_norm_sq() const { return par_norm_sq_; }
    /// Normalized component of psi1 orthogonal to span(others).
    const StateVector& psi1_perp() const { return psi1_perp_; }

private:
    FilterProblem() = default;

    StateVector psi1_;
    std::vector<StateVector> others_;
    std::vector<double> priors_;
    std::vector<StateVector> h2_basis_;
    StateVector psi1_perp_;
    double par_norm_sq_ = 0.0;
};

enum class Strategy {
    VN1,   ///< projection onto the complement of psi1; fails with eta1 + S
    VN2,   ///< three-outcome projective measurement; fails with eta1 ||par||^2 + S/||par||^2
    POVM,  ///< optimal generalized measurement; fails with 2 sqrt(eta1 S)
};

std::string_view to_string(Strategy s);

/// Prior-weighted overlap of psi1 with the competing set:
/// S = sum_{j>=2} eta_j <psi1|psi_j>^2.
double overlap_S(const FilterProblem& problem);

struct FailureProbabilities {
    double Q1 = 0.0;
    double Q2 = 0.0;
    std::optional<double> Qpovm;  ///< present iff eta1 ||par||^4 <= S <= eta1
    double q1_opt = 0.0;          ///< argmin of eta1 q + S/q over [||par||^2, 1]
};

FailureProbabilities failure_probabilities(const FilterProblem& problem);

struct StrategyReport {
    double S = 0.0;
    double par_norm_sq = 0.0;
    double Q1 = 0.0;
    double Q2 = 0.0;
    std::optional<double> Qpovm;
    double q1_opt = 0.0;
    Strategy chosen = Strategy::VN1;
    double q_min = 0.0;       ///< failure probability of the chosen strategy
    bool degenerate = false;  ///< eta1 in {0, 1}: always answer the certain set
};

/// Picks the strategy minimizing the attainable failure probability.
/// Ties at the regime boundaries resolve to the POVM (all branches agree
/// there). Depends only on priors and overlaps, so permuting the competing
/// set leaves the report unchanged.
StrategyReport choose_strategy(const FilterProblem& problem);

/// Closed forms for the problem of filtering w_k against the D-1 balanced
/// basis vectors at equal priors (1 - eta1)/(D - 1).
struct WkClosedForms {
    int n = 0;
    int k = 0;
    double eta1 = 0.0;
    double f_k = 0.0;          ///< (2^k - 1) / 2^{2k-2}
    double par_norm_sq = 0.0;  ///< equals f_k
    double S = 0.0;            ///< (1 - eta1) f_k / (D - 1)
    double zeta1 = 0.0;        ///< upper prior threshold of the POVM window
    double zeta2 = 0.0;        ///< lower prior threshold of the POVM window
    double Q1 = 0.0;
    double Q2 = 0.0;
    double Qpovm = 0.0;  ///< valid only when povm_valid
    bool povm_valid = false;
    double q1_opt = 0.0;
    Strategy regime = Strategy::VN1;
};

WkClosedForms wk_closed_forms(int n, int k, double eta1);

/// The explicit problem behind wk_closed_forms: psi1 = w_k, the competing
/// set is the canonical basis restricted to p >= 1, priors equal.
FilterProblem wk_basis_problem(int n, int k, double eta1);

/// Grid scan of the minimizing branch over eta1 in (0, 1). Locates the two
/// regime switches and checks them against the zeta thresholds; this is the
/// empirical resolution of which projective measurement rules which end of
/// the prior range (VN1 below zeta2, VN2 above zeta1).
struct RegimeScan {
    int n = 0;
    int k = 0;
    std::size_t points = 0;
    double step = 0.0;
    double zeta1 = 0.0;
    double zeta2 = 0.0;
    /// eta1 of the first grid point past each switch; NaN when absent.
    double switch_low = 0.0;   ///< VN1 -> POVM, near zeta2
    double switch_high = 0.0;  ///< POVM -> VN2, near zeta1
    std::vector<Strategy> regimes;  ///< per grid point, eta1_i = (i + 0.5) step
};

RegimeScan regime_scan(int n, int k, std::size_t points);

}  // namespace qfilter
