// Copyright 2026 The bscert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "bscert/core/matrix.hpp"

namespace bscert {

inline constexpr std::size_t kMaxPermanentDim = 30;
inline constexpr std::size_t kMaxOracleDim = 9;

/// Permanent via Ryser's formula with Gray-code subset order, O(2^n n).
/// The 0x0 permanent is 1.
inline Complex permanent(const ComplexMatrix &m) {
    if (!m.is_square()) throw DimensionError("permanent: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1.0;
    if (n > kMaxPermanentDim) throw CapExceededError("permanent: dimension above supported maximum");

    // row_sums[i] = sum over columns in the current subset of m(i, j)
    std::vector<Complex> row_sums(n, 0.0);
    Complex total = 0.0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const int col = std::countr_zero(k);
        const std::uint64_t bit = std::uint64_t{1} << col;
        gray ^= bit;
        if (gray & bit) {
            for (std::size_t i = 0; i < n; ++i) row_sums[i] += m(i, col);
        } else {
            for (std::size_t i = 0; i < n; ++i) row_sums[i] -= m(i, col);
        }
        Complex prod = 1.0;
        for (const auto &s : row_sums) prod *= s;
        if (std::popcount(gray) % 2 == 1) {
            total -= prod;
        } else {
            total += prod;
        }
    }
    return (n % 2 == 1) ? -total : total;
}

/// Permanent by explicit summation over all n! permutations. Test oracle only.
inline Complex permanent_oracle(const ComplexMatrix &m) {
    if (!m.is_square()) throw DimensionError("permanent_oracle: matrix is not square");
    const std::size_t n = m.rows();
    if (n > kMaxOracleDim) throw CapExceededError("permanent_oracle: dimension above factorial-time guard");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Complex total = 0.0;
    do {
        Complex prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) prod *= m(i, perm[i]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace bscert
