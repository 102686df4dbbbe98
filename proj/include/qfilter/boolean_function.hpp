#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfilter/vectors.hpp"

namespace qfilter {

inline constexpr int kMaxBits = 20;
inline constexpr int kDefaultEnumerationCap = 4;

/// Truth table of a Boolean function on n bits, packed 64 values per word
/// and indexed by the argument x ascending (x = 0 is the leftmost character
/// of the binary string form).
class BooleanFunction {
public:
    explicit BooleanFunction(int n);

    /// Parses "00000011" style tables; length must be a power of two.
    static BooleanFunction from_binary(std::string_view table);
    /// Parses hex digits, 4 table values per digit in argument order
    /// (so "03" is the 3-bit table 00000011). Needs n >= 2.
    static BooleanFunction from_hex(std::string_view digits);
    /// Binary string, or hex with a 0x prefix.
    static BooleanFunction parse(std::string_view text);

    int n() const { return n_; }
    std::size_t size() const { return std::size_t{1} << n_; }  // D = 2^n

    int value(std::size_t x) const {
        return static_cast<int>((words_[x >> 6] >> (x & 63)) & 1u);
    }
    void set(std::size_t x, int v);

    std::uint64_t ones() const;                     ///< m1
    std::uint64_t zeros() const { return size() - ones(); }
    std::int64_t sign_sum() const;                  ///< m0 - m1, exact
    std::vector<std::int8_t> sign_table() const;    ///< (-1)^f(x)

    std::string to_binary() const;
    std::string to_hex() const;

    bool operator==(const BooleanFunction&) const = default;

private:
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Number of arguments where the two tables agree.
std::uint64_t agreement_count(const BooleanFunction& a, const BooleanFunction& b);

enum class FunctionKind { Constant, Balanced, Biased };

std::string_view to_string(FunctionKind kind);

/// Identifies a member of the two-function biased family: the table is
/// constant on the first D - D/2^k arguments (value = polarity) and takes
/// the opposite value on the last D/2^k.
struct WkIndex {
    int k = 0;
    int polarity = 0;

    bool operator==(const WkIndex&) const = default;
};

struct FunctionClass {
    FunctionKind kind = FunctionKind::Constant;
    std::uint64_t m0 = 0;
    std::uint64_t m1 = 0;
    std::optional<WkIndex> wk;
};

FunctionClass classify(const BooleanFunction& f);

/// Component x is (-1)^f(x) / sqrt(D).
StateVector encode(const BooleanFunction& f);

/// The W_k table with the given polarity on the leading block. 2 <= k <= n.
BooleanFunction make_wk(int n, int k, int polarity);

/// Streams every balanced truth table exactly once, in lexicographic table
/// order. Single consumer. Throws CapExceededError when n exceeds the cap.
class BalancedStream {
public:
    explicit BalancedStream(int n, int cap = kDefaultEnumerationCap);
    std::optional<BooleanFunction> next();

private:
    int n_;
    std::vector<std::uint8_t> table_;
    bool exhausted_ = false;
    bool first_ = true;
};

struct WorstCaseReport {
    std::uint64_t evaluations = 0;  ///< 2^{n-1} + 2^{n-k} + 1
    BooleanFunction witness;        ///< balanced, maximally agreeing with w_k
    std::uint64_t agreements = 0;   ///< 2^{n-1} + 2^{n-k}
};

/// Worst-case classical query count for telling the W_k member with the
/// minority value on the trailing block apart from all balanced functions,
/// together with the balanced witness that forces it.
WorstCaseReport classical_worst_case(int n, int k);

}  // namespace qfilter
