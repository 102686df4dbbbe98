#pragma once

#include <cstdint>
#include <vector>

#include "qfilter/filtering.hpp"
#include "qfilter/povm_synthesis.hpp"

namespace qfilter {

enum class Verdict { IsPsi1, IsOther, Failure };

std::string_view to_string(Verdict v);

/// One single-shot measurement. The psi1 verdict can only come from the
/// detector along psi'_1 and Failure only from the ancilla detector.
struct TrialOutcome {
    std::size_t truth = 0;     ///< index of the drawn input state
    std::size_t detector = 0;  ///< detector that clicked
    Verdict verdict = Verdict::Failure;
};

/// Aggregated outcome statistics of repeated single-shot measurements.
/// The detector frame is the direction of psi'_1 (omitted when p_1 = 0),
/// an orthonormal completion of the system space, and the ancilla axis;
/// any system detector other than psi'_1's answers "not psi1".
struct SimulationSummary {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    double empirical_Q = 0.0;
    double empirical_error_rate = 0.0;  ///< structurally zero for a valid dilation
    double analytic_Q = 0.0;            ///< sum_j eta_j q_j from the dilation

    std::uint64_t count_is_psi1 = 0;
    std::uint64_t count_is_other = 0;
    std::uint64_t count_failure = 0;
    std::uint64_t count_misidentified = 0;

    std::vector<std::uint64_t> state_draws;     ///< per problem state
    std::vector<std::uint64_t> state_failures;  ///< per problem state
    std::vector<double> per_state_failure;      ///< failures/draws (0 when no draws)

    std::vector<Verdict> detector_verdict;       ///< verdict of each detector
    std::vector<std::uint64_t> detector_counts;  ///< clicks per detector
};

/// Runs `trials` independent single-shot measurements: draw a state by
/// prior, apply U, sample a detector from the Born probabilities. The
/// per-trial randomness is a counter-based stream derived from the seed, so
/// the summary is reproducible bit for bit and independent of any
/// partitioning of the trial range. Refuses dilations that fail validation.
SimulationSummary run_trials(const FilterProblem& problem, const DilationUnitary& d,
                             std::uint64_t trials, std::uint64_t seed);

struct AnalyticComparison {
    double empirical = 0.0;
    double analytic = 0.0;
    double sigma = 0.0;  ///< sqrt(Q (1 - Q) / trials)
    double z = 0.0;
    bool pass = false;
    bool degenerate = false;  ///< zero trials or zero-variance comparison
};

/// z-score of the empirical failure rate against the report's predicted
/// minimum failure probability; pass iff |z| <= z_limit.
AnalyticComparison summarize_vs_analytic(const SimulationSummary& summary,
                                         const StrategyReport& report, double z_limit = 3.0);

}  // namespace qfilter
