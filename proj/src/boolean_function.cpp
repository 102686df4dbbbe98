#include "qfilter/boolean_function.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qfilter/errors.hpp"

namespace qfilter {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

int log2_exact(std::size_t v) { return std::countr_zero(v); }

}  // namespace

BooleanFunction::BooleanFunction(int n) : n_(n) {
    if (n < 1 || n > kMaxBits)
        throw std::invalid_argument("BooleanFunction: n must be in [1, " +
                                    std::to_string(kMaxBits) + "]");
    words_.assign((size() + 63) / 64, 0);
}

void BooleanFunction::set(std::size_t x, int v) {
    if (x >= size()) throw std::out_of_range("BooleanFunction::set: argument out of range");
    if (v)
        words_[x >> 6] |= (std::uint64_t{1} << (x & 63));
    else
        words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
}

BooleanFunction BooleanFunction::from_binary(std::string_view table) {
    if (!is_power_of_two(table.size()) || table.size() < 2)
        throw std::invalid_argument("from_binary: table length must be a power of two >= 2");
    BooleanFunction f(log2_exact(table.size()));
    for (std::size_t x = 0; x < table.size(); ++x) {
        if (table[x] == '1')
            f.set(x, 1);
        else if (table[x] != '0')
            throw std::invalid_argument("from_binary: table must contain only 0 and 1");
    }
    return f;
}

BooleanFunction BooleanFunction::from_hex(std::string_view digits) {
    if (!is_power_of_two(digits.size() * 4))
        throw std::invalid_argument("from_hex: digit count must give a power-of-two table");
    const std::size_t d = digits.size() * 4;
    if (d < 4) throw std::invalid_argument("from_hex: need at least one digit");
    BooleanFunction f(log2_exact(d));
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const char c = digits[i];
        int v;
        if (c >= '0' && c <= '9')
            v = c - '0';
        else if (c >= 'a' && c <= 'f')
            v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            v = c - 'A' + 10;
        else
            throw std::invalid_argument("from_hex: invalid digit");
        for (int b = 0; b < 4; ++b) f.set(i * 4 + b, (v >> (3 - b)) & 1);
    }
    return f;
}

BooleanFunction BooleanFunction::parse(std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) return from_hex(text.substr(2));
    return from_binary(text);
}

std::uint64_t BooleanFunction::ones() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

std::int64_t BooleanFunction::sign_sum() const {
    // m0 - m1 = D - 2 m1
    return static_cast<std::int64_t>(size()) - 2 * static_cast<std::int64_t>(ones());
}

std::vector<std::int8_t> BooleanFunction::sign_table() const {
    std::vector<std::int8_t> signs(size());
    for (std::size_t x = 0; x < size(); ++x) signs[x] = value(x) ? -1 : 1;
    return signs;
}

std::string BooleanFunction::to_binary() const {
    std::string s(size(), '0');
    for (std::size_t x = 0; x < size(); ++x)
        if (value(x)) s[x] = '1';
    return s;
}

std::string BooleanFunction::to_hex() const {
    if (n_ < 2) throw std::invalid_argument("to_hex: needs n >= 2");
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s(size() / 4, '0');
    for (std::size_t i = 0; i < s.size(); ++i) {
        int v = 0;
        for (int b = 0; b < 4; ++b) v = (v << 1) | value(i * 4 + b);
        s[i] = kDigits[v];
    }
    return s;
}

std::uint64_t agreement_count(const BooleanFunction& a, const BooleanFunction& b) {
    if (a.n() != b.n()) throw std::invalid_argument("agreement_count: size mismatch");
    std::uint64_t agree = 0;
    for (std::size_t x = 0; x < a.size(); ++x) agree += (a.value(x) == b.value(x)) ? 1 : 0;
    return agree;
}

std::string_view to_string(FunctionKind kind) {
    switch (kind) {
        case FunctionKind::Constant: return "constant";
        case FunctionKind::Balanced: return "balanced";
        case FunctionKind::Biased: return "biased";
    }
    return "unknown";
}

FunctionClass classify(const BooleanFunction& f) {
    FunctionClass out;
    const std::size_t d = f.size();
    out.m1 = f.ones();
    out.m0 = d - out.m1;

    if (out.m0 == 0 || out.m1 == 0) {
        out.kind = FunctionKind::Constant;
        return out;
    }
    if (out.m0 == out.m1) {
        out.kind = FunctionKind::Balanced;
        return out;
    }
    out.kind = FunctionKind::Biased;

    // W_k pattern: one change point, constant blocks on both sides, and the
    // trailing block is D/2^k long for some 2 <= k <= n.
    const int head = f.value(0);
    std::size_t split = 1;
    while (split < d && f.value(split) == head) ++split;
    bool tail_constant = true;
    for (std::size_t x = split; x < d; ++x) {
        if (f.value(x) == head) {
            tail_constant = false;
            break;
        }
    }
    const std::size_t tail = d - split;
    if (tail_constant && is_power_of_two(tail) && tail <= d / 4) {
        const int k = f.n() - log2_exact(tail);
        out.wk = WkIndex{k, head};
    }
    return out;
}

StateVector encode(const BooleanFunction& f) {
    const auto signs = f.sign_table();
    return StateVector::from_signs(signs, 1.0 / std::sqrt(static_cast<double>(f.size())));
}

BooleanFunction make_wk(int n, int k, int polarity) {
    if (k < 2 || k > n) throw std::invalid_argument("make_wk: need 2 <= k <= n");
    if (polarity != 0 && polarity != 1) throw std::invalid_argument("make_wk: polarity is 0 or 1");
    BooleanFunction f(n);
    const std::size_t d = f.size();
    const std::size_t tail = d >> k;  // D / 2^k
    for (std::size_t x = 0; x < d; ++x) f.set(x, x < d - tail ? polarity : 1 - polarity);
    return f;
}

BalancedStream::BalancedStream(int n, int cap) : n_(n) {
    if (n < 1 || n > kMaxBits) throw std::invalid_argument("BalancedStream: n out of range");
    if (n > cap)
        throw CapExceededError("BalancedStream: n = " + std::to_string(n) +
                               " exceeds enumeration cap " + std::to_string(cap));
    const std::size_t d = std::size_t{1} << n;
    table_.assign(d, 0);
    std::fill(table_.begin() + static_cast<std::ptrdiff_t>(d / 2), table_.end(), 1);
}

std::optional<BooleanFunction> BalancedStream::next() {
    if (exhausted_) return std::nullopt;
    if (!first_) {
        if (!std::next_permutation(table_.begin(), table_.end())) {
            exhausted_ = true;
            return std::nullopt;
        }
    }
    first_ = false;
    BooleanFunction f(n_);
    for (std::size_t x = 0; x < table_.size(); ++x)
        if (table_[x]) f.set(x, 1);
    return f;
}

WorstCaseReport classical_worst_case(int n, int k) {
    if (k < 2 || k > n) throw std::invalid_argument("classical_worst_case: need 2 <= k <= n");
    const std::size_t d = std::size_t{1} << n;
    const std::size_t half = d / 2;
    const std::size_t tail = d >> k;  // m1 of the minority-polarity member

    WorstCaseReport out{.evaluations = half + tail + 1, .witness = BooleanFunction(n)};

    // Balanced function returning 1 wherever the biased one does: its
    // remaining half - tail ones go to the front, so it agrees with w_k on
    // the whole zero middle plus the trailing block.
    for (std::size_t x = 0; x < half - tail; ++x) out.witness.set(x, 1);
    for (std::size_t x = d - tail; x < d; ++x) out.witness.set(x, 1);
    out.agreements = agreement_count(out.witness, make_wk(n, k, 0));
    return out;
}

}  // namespace qfilter
