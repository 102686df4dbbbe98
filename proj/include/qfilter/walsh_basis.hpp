#pragma once

#include <cstdint>
#include <vector>

#include "qfilter/vectors.hpp"

namespace qfilter {

/// Index of a basis vector of the recursive block basis of H_D.
/// (p = 0, j = 1) is the constant-function vector; every p >= 1 vector has
/// zero component sum and corresponds to a balanced function. For p >= 1,
/// j runs from 1 to 2^{p-1}.
///
/// p runs from 0 to n: levels 2..n each contribute 2^{p-1} vectors, which
/// together with the two special vectors is exactly D = 2^n. (Stopping the
/// block construction at level n-1 would leave the basis incomplete.)
struct BasisIndex {
    int p = 0;
    int j = 1;

    bool operator==(const BasisIndex&) const = default;
};

/// Number of j values at level p: 1 for p <= 1, else 2^{p-1}.
std::size_t index_count(int p);

/// Position in canonical order (p ascending, then j ascending), 0-based.
std::size_t canonical_position(int n, BasisIndex idx);
BasisIndex canonical_index(int n, std::size_t position);

/// Exact sign pattern of sqrt(D) * v_{p,j}. Throws on an out-of-range index.
std::vector<std::int8_t> basis_signs(int n, BasisIndex idx);
StateVector basis_vector(int n, BasisIndex idx);

/// All D sign patterns in canonical order. Memoized; the returned reference
/// stays valid for the lifetime of the process.
const std::vector<std::vector<std::int8_t>>& full_basis_signs(int n);
std::vector<StateVector> full_basis(int n);

/// Sign pattern / vector of w_k: +1 on the first D - D/2^k entries, -1 on
/// the rest.
std::vector<std::int8_t> wk_signs(int n, int k);
StateVector wk_vector(int n, int k);

/// <v_{p,j} | w_k>, computed in integer sign arithmetic and scaled by 1/D,
/// so it is exactly zero whenever p > k.
double overlap_with_wk(int n, int k, BasisIndex idx);

}  // namespace qfilter
