#include "qfilter/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qfilter/walsh_basis.hpp"

namespace qfilter {

namespace {

constexpr double kPriorSumTol = 1e-12;
constexpr double kNormTol = 1e-12;
constexpr double kRankTol = 1e-10;
constexpr double kDegenerateParTol = 1e-12;

double pow2(int e) { return std::ldexp(1.0, e); }

}  // namespace

FilterProblem FilterProblem::create(StateVector psi1,
                                    std::vector<StateVector> others,
                                    std::vector<double> priors) {
    if (others.empty()) throw std::invalid_argument("FilterProblem: competing set is empty");
    if (priors.size() != others.size() + 1)
        throw std::invalid_argument("FilterProblem: need one prior per state");

    double sum = 0.0;
    for (double p : priors) {
        if (p < 0.0) throw std::invalid_argument("FilterProblem: negative prior");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kPriorSumTol)
        throw std::invalid_argument("FilterProblem: priors must sum to 1");

    if (!psi1.is_normalized(kNormTol))
        throw std::invalid_argument("FilterProblem: psi1 is not unit norm");
    for (const StateVector& v : others) {
        if (v.dim() != psi1.dim())
            throw std::invalid_argument("FilterProblem: dimension mismatch");
        if (!v.is_normalized(kNormTol))
            throw std::invalid_argument("FilterProblem: competing state is not unit norm");
    }

    FilterProblem out;
    out.h2_basis_ = orthonormalize(others, kRankTol);

    // Independence of the sets: stacking psi1 on the competing set must
    // raise the rank by one.
    StateVector perp = psi1;
    for (int pass = 0; pass < 2; ++pass)
        for (const StateVector& b : out.h2_basis_) perp.add_scaled(b, -inner(b, perp));
    const double perp_norm = perp.norm();
    if (perp_norm <= kRankTol)
        throw std::invalid_argument("FilterProblem: psi1 lies in the span of the competing set");
    perp.scale(1.0 / perp_norm);

    out.psi1_perp_ = std::move(perp);
    out.par_norm_sq_ = std::max(0.0, 1.0 - perp_norm * perp_norm);
    out.psi1_ = std::move(psi1);
    out.others_ = std::move(others);
    out.priors_ = std::move(priors);
    return out;
}

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::VN1: return "VN1";
        case Strategy::VN2: return "VN2";
        case Strategy::POVM: return "POVM";
    }
    return "unknown";
}

double overlap_S(const FilterProblem& problem) {
    double s = 0.0;
    for (std::size_t j = 0; j < problem.others().size(); ++j) {
        const double o = inner(problem.psi1(), problem.others()[j]);
        s += problem.priors()[j + 1] * o * o;
    }
    return s;
}

FailureProbabilities failure_probabilities(const FilterProblem& problem) {
    const double eta1 = problem.priors()[0];
    const double S = overlap_S(problem);
    const double par2 = problem.par_norm_sq();

    FailureProbabilities out;
    out.Q1 = eta1 + S;

    if (par2 < kDegenerateParTol) {
        // psi1 orthogonal to the span of the competing set: both subsets are
        // perfectly distinguishable.
        out.Q2 = 0.0;
        out.q1_opt = 0.0;
        return out;
    }

    out.Q2 = eta1 * par2 + S / par2;
    if (eta1 > 0.0 && eta1 * par2 * par2 <= S && S <= eta1) {
        out.q1_opt = std::sqrt(S / eta1);
        out.Qpovm = 2.0 * std::sqrt(eta1 * S);
    } else if (S > eta1) {  // sqrt(S/eta1) clamps to the upper end
        out.q1_opt = 1.0;
    } else {
        out.q1_opt = par2;
    }
    return out;
}

StrategyReport choose_strategy(const FilterProblem& problem) {
    const double eta1 = problem.priors()[0];
    const FailureProbabilities fp = failure_probabilities(problem);

    StrategyReport r;
    r.S = overlap_S(problem);
    r.par_norm_sq = problem.par_norm_sq();
    r.Q1 = fp.Q1;
    r.Q2 = fp.Q2;
    r.Qpovm = fp.Qpovm;
    r.q1_opt = fp.q1_opt;

    if (eta1 == 0.0 || eta1 == 1.0) {
        // The preparation is certain; always answering the certain set never
        // fails.
        r.degenerate = true;
        r.chosen = eta1 == 0.0 ? Strategy::VN1 : Strategy::VN2;
        r.q_min = 0.0;
        return r;
    }
    if (r.par_norm_sq < kDegenerateParTol) {
        r.chosen = Strategy::VN2;
        r.q_min = 0.0;
        return r;
    }
    if (fp.Qpovm) {
        r.chosen = Strategy::POVM;
        r.q_min = *fp.Qpovm;
    } else if (r.S > eta1) {
        r.chosen = Strategy::VN1;
        r.q_min = r.Q1;
    } else {
        r.chosen = Strategy::VN2;
        r.q_min = r.Q2;
    }
    return r;
}

WkClosedForms wk_closed_forms(int n, int k, double eta1) {
    if (k < 2 || k > n || n > 50)
        throw std::invalid_argument("wk_closed_forms: need 2 <= k <= n <= 50");
    if (!(eta1 >= 0.0 && eta1 <= 1.0))
        throw std::invalid_argument("wk_closed_forms: eta1 must lie in [0, 1]");

    WkClosedForms r;
    r.n = n;
    r.k = k;
    r.eta1 = eta1;

    const double twok = pow2(k);
    const double dm1 = pow2(n) - 1.0;  // 2^n - 1
    const double f = (twok - 1.0) / pow2(2 * k - 2);
    r.f_k = f;
    r.par_norm_sq = f;
    r.S = (1.0 - eta1) * f / dm1;

    r.zeta1 = pow2(2 * k - 2) / (pow2(2 * k - 2) + dm1 * (twok - 1.0));
    r.zeta2 = (twok - 1.0) / (pow2(2 * k - 2) * dm1 + (twok - 1.0));

    r.Q1 = eta1 + (1.0 - eta1) * (twok - 1.0) / (pow2(2 * k - 2) * dm1);
    r.Q2 = eta1 * (twok - 1.0) / pow2(2 * k - 2) + (1.0 - eta1) / dm1;
    r.Qpovm = std::sqrt(eta1 * (1.0 - eta1) * (twok - 1.0) / dm1) / pow2(k - 2);
    r.povm_valid = r.zeta2 <= eta1 && eta1 <= r.zeta1;

    if (eta1 == 0.0) {
        r.q1_opt = 1.0;
        r.regime = Strategy::VN1;
    } else if (eta1 == 1.0) {
        r.q1_opt = f;
        r.regime = Strategy::VN2;
    } else if (r.povm_valid) {
        r.q1_opt = std::sqrt(r.S / eta1);
        r.regime = Strategy::POVM;
    } else if (eta1 < r.zeta2) {
        r.q1_opt = 1.0;
        r.regime = Strategy::VN1;
    } else {
        r.q1_opt = f;
        r.regime = Strategy::VN2;
    }
    return r;
}

FilterProblem wk_basis_problem(int n, int k, double eta1) {
    if (k < 2 || k > n) throw std::invalid_argument("wk_basis_problem: need 2 <= k <= n");
    if (!(eta1 >= 0.0 && eta1 <= 1.0))
        throw std::invalid_argument("wk_basis_problem: eta1 must lie in [0, 1]");

    std::vector<StateVector> basis = full_basis(n);
    std::vector<StateVector> others(basis.begin() + 1, basis.end());

    const std::size_t d = std::size_t{1} << n;
    std::vector<double> priors(d, (1.0 - eta1) / static_cast<double>(d - 1));
    priors[0] = eta1;
    return FilterProblem::create(wk_vector(n, k), std::move(others), std::move(priors));
}

RegimeScan regime_scan(int n, int k, std::size_t points) {
    if (points < 2) throw std::invalid_argument("regime_scan: need at least 2 points");

    RegimeScan scan;
    scan.n = n;
    scan.k = k;
    scan.points = points;
    scan.step = 1.0 / static_cast<double>(points);
    scan.switch_low = std::numeric_limits<double>::quiet_NaN();
    scan.switch_high = std::numeric_limits<double>::quiet_NaN();
    scan.regimes.reserve(points);

    const WkClosedForms probe = wk_closed_forms(n, k, 0.5);
    scan.zeta1 = probe.zeta1;
    scan.zeta2 = probe.zeta2;

    for (std::size_t i = 0; i < points; ++i) {
        const double eta1 = (static_cast<double>(i) + 0.5) * scan.step;
        const WkClosedForms c = wk_closed_forms(n, k, eta1);
        // Minimizing branch, POVM winning ties inside its window.
        Strategy s;
        if (c.povm_valid && c.Qpovm <= c.Q1 && c.Qpovm <= c.Q2)
            s = Strategy::POVM;
        else
            s = c.Q1 <= c.Q2 ? Strategy::VN1 : Strategy::VN2;
        if (!scan.regimes.empty() && scan.regimes.back() != s) {
            if (scan.regimes.back() == Strategy::VN1 && s == Strategy::POVM)
                scan.switch_low = eta1;
            if (s == Strategy::VN2) scan.switch_high = eta1;
        }
        scan.regimes.push_back(s);
    }
    return scan;
}

}  // namespace qfilter
