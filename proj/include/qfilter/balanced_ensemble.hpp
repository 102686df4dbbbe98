#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

#include "qfilter/boolean_function.hpp"

namespace qfilter {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(std::uint64_t n, std::uint64_t k);

/// num/den as a double, safe for operands far beyond the double range.
double big_ratio(const BigInt& num, const BigInt& den);

/// Agreement-class counts for balanced functions against w_k. Class m holds
/// the balanced functions whose encoded vector has m entries +1 in the last
/// D/2^k places:
///   C_m = C(D/2^k, m) * C(D(2^k-1)/2^k, D/2 - m)
/// The sums are computed from their closed forms
///   s0 = C(D, D/2)
///   s1 = (D/2^k) C(D-1, D/2-1)
///   s2 = (D/2^k)(D/2^k - 1) C(D-2, D/2-2) + s1
/// and must equal sum C_m, sum m C_m, sum m^2 C_m exactly.
struct EnsembleCounts {
    int n = 0;
    int k = 0;
    std::vector<BigInt> C;  ///< m = 0 .. D/2^k
    BigInt s0, s1, s2;
};

EnsembleCounts ensemble_counts(int n, int k);

/// (1 - eta1) (2^k - 1) / (2^{2k-2} (D - 1)); identical to the average
/// overlap of the basis-vector problem.
double sb_closed(int n, int k, double eta1);

/// The average overlap over all balanced functions, computed three ways.
struct SbReport {
    double enumerated = 0.0;  ///< literal enumeration, encode + inner
    double weighted = 0.0;    ///< C_m-weighted overlap sum
    double closed = 0.0;      ///< closed form
};

/// Computes all three routes and checks they agree within tol (throws
/// ValidationError otherwise). Enumeration obeys the cap.
SbReport sb_bruteforce(int n, int k, double eta1,
                       int cap = kDefaultEnumerationCap, double tol = 1e-12);

struct EnsembleSummary {
    EnsembleCounts counts;
    double eta1 = 0.0;
    SbReport sb;
};

EnsembleSummary ensemble_summary(int n, int k, double eta1,
                                 int cap = kDefaultEnumerationCap);

}  // namespace qfilter
