#include "qfilter/walsh_basis.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace qfilter {

namespace {

void check_n(int n) {
    if (n < 0 || n > 20) throw std::invalid_argument("walsh basis: n out of range");
}

void check_index(int n, BasisIndex idx) {
    check_n(n);
    if (idx.p < 0 || idx.p > n) throw std::invalid_argument("basis index: p out of range");
    if (idx.j < 1 || static_cast<std::size_t>(idx.j) > index_count(idx.p))
        throw std::invalid_argument("basis index: j out of range");
}

std::mutex g_cache_mutex;
std::unordered_map<int, std::vector<std::vector<std::int8_t>>> g_sign_cache;

// Assumes the cache already holds every level below p when p >= 1.
std::vector<std::int8_t> build_signs(int n, BasisIndex idx,
                                     const std::unordered_map<int, std::vector<std::vector<std::int8_t>>>& cache) {
    const std::size_t d = std::size_t{1} << n;
    if (idx.p == 0) return std::vector<std::int8_t>(d, 1);

    // Blocks (u, -u) of length D/2^p, one pair per component of the level
    // p-1 basis vector number j.
    const auto& sub = cache.at(idx.p - 1)[static_cast<std::size_t>(idx.j) - 1];
    const std::size_t block = d >> idx.p;
    std::vector<std::int8_t> out(d);
    std::size_t pos = 0;
    for (const std::int8_t s : sub) {
        for (std::size_t i = 0; i < block; ++i) out[pos++] = s;
        for (std::size_t i = 0; i < block; ++i) out[pos++] = static_cast<std::int8_t>(-s);
    }
    return out;
}

const std::vector<std::vector<std::int8_t>>& full_basis_signs_locked(int n) {
    auto it = g_sign_cache.find(n);
    if (it != g_sign_cache.end()) return it->second;
    if (n > 0) full_basis_signs_locked(n - 1);

    std::vector<std::vector<std::int8_t>> level;
    const std::size_t d = std::size_t{1} << n;
    level.reserve(d);
    for (std::size_t q = 0; q < d; ++q)
        level.push_back(build_signs(n, canonical_index(n, q), g_sign_cache));
    return g_sign_cache.emplace(n, std::move(level)).first->second;
}

}  // namespace

std::size_t index_count(int p) { return p <= 1 ? 1 : (std::size_t{1} << (p - 1)); }

std::size_t canonical_position(int n, BasisIndex idx) {
    check_index(n, idx);
    if (idx.p == 0) return 0;
    return (std::size_t{1} << (idx.p - 1)) + static_cast<std::size_t>(idx.j) - 1;
}

BasisIndex canonical_index(int n, std::size_t position) {
    check_n(n);
    if (position >= (std::size_t{1} << n))
        throw std::invalid_argument("canonical_index: position out of range");
    if (position == 0) return {0, 1};
    const int p = std::bit_width(position);
    const int j = static_cast<int>(position - (std::size_t{1} << (p - 1))) + 1;
    return {p, j};
}

std::vector<std::int8_t> basis_signs(int n, BasisIndex idx) {
    check_index(n, idx);
    std::scoped_lock lock(g_cache_mutex);
    if (idx.p >= 1) full_basis_signs_locked(idx.p - 1);
    return build_signs(n, idx, g_sign_cache);
}

StateVector basis_vector(int n, BasisIndex idx) {
    const auto signs = basis_signs(n, idx);
    return StateVector::from_signs(signs, 1.0 / std::sqrt(static_cast<double>(signs.size())));
}

const std::vector<std::vector<std::int8_t>>& full_basis_signs(int n) {
    check_n(n);
    std::scoped_lock lock(g_cache_mutex);
    return full_basis_signs_locked(n);
}

std::vector<StateVector> full_basis(int n) {
    const auto& signs = full_basis_signs(n);
    std::vector<StateVector> out;
    out.reserve(signs.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(std::size_t{1} << n));
    for (const auto& s : signs) out.push_back(StateVector::from_signs(s, scale));
    return out;
}

std::vector<std::int8_t> wk_signs(int n, int k) {
    check_n(n);
    if (k < 2 || k > n) throw std::invalid_argument("wk_signs: need 2 <= k <= n");
    const std::size_t d = std::size_t{1} << n;
    const std::size_t tail = d >> k;
    std::vector<std::int8_t> signs(d, 1);
    for (std::size_t x = d - tail; x < d; ++x) signs[x] = -1;
    return signs;
}

StateVector wk_vector(int n, int k) {
    const auto signs = wk_signs(n, k);
    return StateVector::from_signs(signs, 1.0 / std::sqrt(static_cast<double>(signs.size())));
}

double overlap_with_wk(int n, int k, BasisIndex idx) {
    const auto v = basis_signs(n, idx);
    const auto w = wk_signs(n, k);
    std::int64_t dot = 0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += static_cast<std::int64_t>(v[i]) * w[i];
    // Division by D = 2^n is exact in binary floating point.
    return static_cast<double>(dot) / static_cast<double>(v.size());
}

}  // namespace qfilter
