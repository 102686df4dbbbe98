#include "qfilter/balanced_ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include "qfilter/errors.hpp"
#include "qfilter/walsh_basis.hpp"

namespace qfilter {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;  // exact at every step
    }
    return r;
}

double big_ratio(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("big_ratio: zero denominator");
    const std::size_t bits = std::max(boost::multiprecision::msb(num == 0 ? BigInt(1) : num),
                                      boost::multiprecision::msb(den));
    if (bits <= 512) return num.convert_to<double>() / den.convert_to<double>();
    const unsigned shift = static_cast<unsigned>(bits - 512);
    const BigInt n2 = num >> shift;
    const BigInt d2 = den >> shift;
    return n2.convert_to<double>() / d2.convert_to<double>();
}

namespace {

void check_nk(int n, int k) {
    if (k < 2 || k > n) throw std::invalid_argument("ensemble: need 2 <= k <= n");
    if (n > 16) throw std::invalid_argument("ensemble: n > 16 not supported for exact counts");
}

double pow2d(int e) { return std::ldexp(1.0, e); }

}  // namespace

EnsembleCounts ensemble_counts(int n, int k) {
    check_nk(n, k);

    EnsembleCounts out;
    out.n = n;
    out.k = k;

    const std::uint64_t d = std::uint64_t{1} << n;
    const std::uint64_t tail = d >> k;       // D / 2^k
    const std::uint64_t front = d - tail;    // D (2^k - 1) / 2^k
    const std::uint64_t half = d / 2;

    // Two incrementally updated binomial sequences; every division below is
    // exact because it follows the Pascal ratio of the sequence.
    BigInt c_tail = 1;                        // C(tail, m), m = 0
    BigInt c_front = binomial(front, half);   // C(front, half - m), m = 0
    out.C.reserve(tail + 1);
    for (std::uint64_t m = 0; m <= tail; ++m) {
        out.C.push_back(c_tail * c_front);
        if (m == tail) break;
        c_tail *= (tail - m);
        c_tail /= (m + 1);
        c_front *= (half - m);
        c_front /= (front - half + m + 1);
    }

    out.s0 = binomial(d, half);
    out.s1 = BigInt(tail) * binomial(d - 1, half - 1);
    out.s2 = BigInt(tail) * BigInt(tail - 1) * binomial(d - 2, half - 2) + out.s1;
    return out;
}

double sb_closed(int n, int k, double eta1) {
    check_nk(n, k);
    if (!(eta1 >= 0.0 && eta1 <= 1.0))
        throw std::invalid_argument("sb_closed: eta1 must lie in [0, 1]");
    const double f = (pow2d(k) - 1.0) / pow2d(2 * k - 2);
    return (1.0 - eta1) * f / (pow2d(n) - 1.0);
}

SbReport sb_bruteforce(int n, int k, double eta1, int cap, double tol) {
    check_nk(n, k);
    if (!(eta1 >= 0.0 && eta1 <= 1.0))
        throw std::invalid_argument("sb_bruteforce: eta1 must lie in [0, 1]");

    SbReport r;
    r.closed = sb_closed(n, k, eta1);

    const EnsembleCounts counts = ensemble_counts(n, k);
    const double m_bal = counts.s0.convert_to<double>();
    const std::uint64_t d = std::uint64_t{1} << n;

    // Route (b): sum_m C_m (1/2^{k-1} - 4m/D)^2, with the overlap written as
    // (2^{n-k+1} - 4m)/D so the numerator stays an exact integer.
    BigInt weighted_num = 0;
    for (std::uint64_t m = 0; m < counts.C.size(); ++m) {
        const std::int64_t num =
            static_cast<std::int64_t>(std::uint64_t{1} << (n - k + 1)) - 4 * static_cast<std::int64_t>(m);
        weighted_num += counts.C[m] * (num * num);
    }
    r.weighted = (1.0 - eta1) * big_ratio(weighted_num, counts.s0) /
                 (static_cast<double>(d) * static_cast<double>(d));

    // Route (a): literal enumeration.
    const StateVector wk = wk_vector(n, k);
    BalancedStream stream(n, cap);
    double overlap_sq_sum = 0.0;
    std::uint64_t seen = 0;
    while (auto f = stream.next()) {
        const double o = inner(wk, encode(*f));
        overlap_sq_sum += o * o;
        ++seen;
    }
    if (BigInt(seen) != counts.s0)
        throw ValidationError("sb_bruteforce: enumeration count disagrees with C(D, D/2)");
    r.enumerated = (1.0 - eta1) * overlap_sq_sum / m_bal;

    if (std::abs(r.enumerated - r.weighted) > tol || std::abs(r.enumerated - r.closed) > tol)
        throw ValidationError("sb_bruteforce: the three routes disagree beyond tolerance");
    return r;
}

EnsembleSummary ensemble_summary(int n, int k, double eta1, int cap) {
    EnsembleSummary out;
    out.counts = ensemble_counts(n, k);
    out.eta1 = eta1;
    out.sb = sb_bruteforce(n, k, eta1, cap);
    return out;
}

}  // namespace qfilter
