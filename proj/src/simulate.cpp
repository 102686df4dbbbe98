#include "qfilter/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "qfilter/errors.hpp"

namespace qfilter {

namespace {

constexpr double kValidationTol = 1e-10;
// Born probabilities below this are structural zeros of the construction
// (cross terms that the output orthogonality forces to machine precision);
// clamping them keeps the unambiguity guarantee exact in the sampled
// statistics.
constexpr double kStructuralZero = 1e-18;

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform_at(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(splitmix64_at(seed, index) >> 11) * 0x1.0p-53;
}

std::size_t sample_cdf(const std::vector<double>& cdf, double u) {
    for (std::size_t i = 0; i < cdf.size(); ++i)
        if (u < cdf[i]) return i;
    return cdf.size() - 1;
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::IsPsi1: return "is_psi1";
        case Verdict::IsOther: return "is_other";
        case Verdict::Failure: return "failure";
    }
    return "unknown";
}

SimulationSummary run_trials(const FilterProblem& problem, const DilationUnitary& d,
                             std::uint64_t trials, std::uint64_t seed) {
    if (!validate_dilation(d, problem).pass(kValidationTol))
        throw ValidationError("run_trials: dilation fails validation");

    const std::size_t dim = d.dim_system;
    const std::size_t n_states = problem.num_states();

    // Detector frame.
    std::vector<StateVector> detectors;
    std::vector<Verdict> verdicts;
    const double p1 = d.output_vectors[0].norm_sq();
    if (p1 > 1e-12) {
        StateVector dir = d.output_vectors[0];
        dir.scale(1.0 / dir.norm());
        detectors.push_back(std::move(dir));
        verdicts.push_back(Verdict::IsPsi1);
    }
    const auto completion =
        orthonormal_completion(detectors, dim, dim - detectors.size());
    for (const auto& c : completion) {
        detectors.push_back(c);
        verdicts.push_back(Verdict::IsOther);
    }

    // Born probabilities per problem state over [system detectors, ancilla].
    std::vector<std::vector<double>> cdf(n_states);
    for (std::size_t j = 0; j < n_states; ++j) {
        std::vector<double> prob(detectors.size() + 1, 0.0);
        for (std::size_t i = 0; i < detectors.size(); ++i) {
            const double a = inner(detectors[i], d.output_vectors[j]);
            prob[i] = a * a;
        }
        prob.back() = d.q[j];
        double total = 0.0;
        for (double& pr : prob) {
            if (pr < kStructuralZero) pr = 0.0;
            total += pr;
        }
        cdf[j].resize(prob.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < prob.size(); ++i) {
            acc += prob[i] / total;
            cdf[j][i] = acc;
        }
    }

    std::vector<double> prior_cdf(n_states);
    {
        double acc = 0.0;
        for (std::size_t j = 0; j < n_states; ++j) {
            acc += problem.priors()[j];
            prior_cdf[j] = acc;
        }
    }

    SimulationSummary s;
    s.trials = trials;
    s.seed = seed;
    s.detector_verdict = verdicts;
    s.detector_verdict.push_back(Verdict::Failure);
    s.detector_counts.assign(detectors.size() + 1, 0);
    s.state_draws.assign(n_states, 0);
    s.state_failures.assign(n_states, 0);
    for (std::size_t j = 0; j < n_states; ++j) s.analytic_Q += problem.priors()[j] * d.q[j];

    for (std::uint64_t t = 0; t < trials; ++t) {
        TrialOutcome trial;
        trial.truth = sample_cdf(prior_cdf, uniform_at(seed, 2 * t));
        trial.detector = sample_cdf(cdf[trial.truth], uniform_at(seed, 2 * t + 1));
        trial.verdict = s.detector_verdict[trial.detector];

        ++s.state_draws[trial.truth];
        ++s.detector_counts[trial.detector];
        switch (trial.verdict) {
            case Verdict::IsPsi1:
                ++s.count_is_psi1;
                if (trial.truth != 0) ++s.count_misidentified;
                break;
            case Verdict::IsOther:
                ++s.count_is_other;
                if (trial.truth == 0) ++s.count_misidentified;
                break;
            case Verdict::Failure:
                ++s.count_failure;
                ++s.state_failures[trial.truth];
                break;
        }
    }

    s.empirical_Q = trials ? static_cast<double>(s.count_failure) / static_cast<double>(trials) : 0.0;
    s.empirical_error_rate =
        trials ? static_cast<double>(s.count_misidentified) / static_cast<double>(trials) : 0.0;
    s.per_state_failure.resize(n_states, 0.0);
    for (std::size_t j = 0; j < n_states; ++j)
        if (s.state_draws[j] > 0)
            s.per_state_failure[j] =
                static_cast<double>(s.state_failures[j]) / static_cast<double>(s.state_draws[j]);
    return s;
}

AnalyticComparison summarize_vs_analytic(const SimulationSummary& summary,
                                         const StrategyReport& report, double z_limit) {
    AnalyticComparison c;
    c.empirical = summary.empirical_Q;
    c.analytic = report.q_min;
    if (summary.trials == 0) {
        c.degenerate = true;
        return c;
    }
    c.sigma = std::sqrt(c.analytic * (1.0 - c.analytic) / static_cast<double>(summary.trials));
    if (c.sigma == 0.0) {
        c.degenerate = c.empirical != c.analytic;
        c.pass = c.empirical == c.analytic;
        return c;
    }
    c.z = (c.empirical - c.analytic) / c.sigma;
    c.pass = std::abs(c.z) <= z_limit;
    return c;
}

}  // namespace qfilter
