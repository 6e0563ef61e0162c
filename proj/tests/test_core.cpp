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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "bscert/core/haar.hpp"
#include "bscert/core/matrix.hpp"
#include "bscert/core/permanent.hpp"
#include "bscert/core/rng.hpp"
#include "test_util.h"

using namespace bscert;

TEST(Permanent, identity_and_small_cases) {
    EXPECT_EQ(permanent(ComplexMatrix::identity(2)), Complex(1.0));
    const Complex a(1.0, 2.0), b(-0.5, 0.25), c(3.0, -1.0), d(0.0, 1.5);
    const ComplexMatrix m{{a, b}, {c, d}};
    EXPECT_LT(std::abs(permanent(m) - (a * d + b * c)), 1e-15);

    ComplexMatrix ones(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) ones(i, j) = 1.0;
    EXPECT_LT(std::abs(permanent(ones) - Complex(24.0)), 1e-12);
}

TEST(Permanent, empty_matrix_is_one) { EXPECT_EQ(permanent(ComplexMatrix(0, 0)), Complex(1.0)); }

TEST(Permanent, non_square_rejected) {
    EXPECT_THROW(permanent(ComplexMatrix(2, 3)), DimensionError);
    EXPECT_THROW(permanent_oracle(ComplexMatrix(3, 2)), DimensionError);
}

TEST(PermanentOracle, small_cases_and_guard) {
    EXPECT_EQ(permanent_oracle(ComplexMatrix::identity(3)), Complex(1.0));
    ComplexMatrix ones(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) ones(i, j) = 1.0;
    EXPECT_EQ(permanent_oracle(ones), Complex(6.0));
    EXPECT_THROW(permanent_oracle(ComplexMatrix(10, 10)), CapExceededError);
}

TEST(Permanent, agrees_with_oracle_on_random_matrices) {
    Rng rng(2024);
    for (std::size_t n : {5, 6, 7}) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto m = testing_util::random_matrix(n, rng);
            const Complex fast = permanent(m);
            const Complex slow = permanent_oracle(m);
            EXPECT_LE(std::abs(fast - slow), 1e-9 * std::abs(slow)) << "n=" << n << " trial=" << trial;
        }
    }
}

TEST(Permanent, zero_row_or_column_gives_zero) {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = testing_util::random_matrix(5, rng);
        const std::size_t line = trial % 5;
        if (trial % 2) {
            // every Ryser term carries the vanishing row sum: exactly zero
            for (std::size_t c = 0; c < 5; ++c) m(line, c) = 0.0;
            EXPECT_EQ(permanent(m), Complex(0.0));
        } else {
            // terms cancel pairwise; roundoff is bounded by the product of row 1-norms
            for (std::size_t r = 0; r < 5; ++r) m(r, line) = 0.0;
            double scale = 1.0;
            for (std::size_t r = 0; r < 5; ++r) {
                double norm1 = 0.0;
                for (const auto &z : m.row(r)) norm1 += std::abs(z);
                scale *= norm1;
            }
            EXPECT_LT(std::abs(permanent(m)), 1e-14 * scale);
        }
    }
}

TEST(Permanent, invariant_under_row_and_column_permutations) {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 6;
        const auto m = testing_util::random_matrix(n, rng);
        std::vector<std::size_t> rows(n), cols(n);
        std::iota(rows.begin(), rows.end(), 0);
        std::iota(cols.begin(), cols.end(), 0);
        std::shuffle(rows.begin(), rows.end(), rng.engine());
        std::shuffle(cols.begin(), cols.end(), rng.engine());
        ComplexMatrix shuffled(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) shuffled(r, c) = m(rows[r], cols[c]);
        const Complex p = permanent(m);
        EXPECT_LE(std::abs(permanent(shuffled) - p), 1e-11 * std::max(1.0, std::abs(p)));
    }
}

TEST(IsUnitary, identity_and_perturbed) {
    EXPECT_TRUE(is_unitary(ComplexMatrix::identity(4), 1e-12));
    auto m = ComplexMatrix::identity(4);
    m(1, 2) = 1e-3;
    EXPECT_FALSE(is_unitary(m, 1e-10));
    EXPECT_FALSE(is_unitary(ComplexMatrix(2, 3), 1.0));
    EXPECT_THROW(UnitaryMatrix{m}, InputError);
}

TEST(ComplexMatrix, rejects_non_finite_entries) {
    EXPECT_THROW((ComplexMatrix{{Complex(std::nan(""), 0.0)}}), InputError);
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionError);
}

TEST(HaarUnitary, dimension_one_is_a_phase) {
    const auto u = haar_unitary(1, 99);
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-12);
}

TEST(HaarUnitary, zero_dimension_rejected) { EXPECT_THROW(haar_unitary(0, 1), DimensionError); }

TEST(HaarUnitary, every_draw_is_unitary) {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const std::size_t dim = 1 + i % 8;
        EXPECT_TRUE(is_unitary(haar_unitary(dim, rng).matrix(), 1e-10));
    }
}

TEST(HaarUnitary, same_seed_is_bit_identical) {
    for (RngSeed seed : {0ULL, 1ULL, 123456789ULL}) EXPECT_EQ(haar_unitary(6, seed), haar_unitary(6, seed));
    EXPECT_FALSE(haar_unitary(3, 1) == haar_unitary(3, 2));
}

TEST(HaarUnitary, mean_squared_modulus_is_one_over_dim) {
    Rng rng(314);
    double sum = 0.0;
    const int draws = 10'000;
    for (int i = 0; i < draws; ++i) {
        const auto u = haar_unitary(4, rng);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) sum += std::norm(u(r, c));
    }
    // identical by unitarity; check a single entry instead
    EXPECT_NEAR(sum / (16.0 * draws), 0.25, 1e-12);

    Rng rng2(315);
    double entry = 0.0;
    for (int i = 0; i < draws; ++i) entry += std::norm(haar_unitary(4, rng2)(0, 0));
    EXPECT_NEAR(entry / draws, 0.25, 0.01);
}

TEST(HaarUnitary, diagonal_phases_are_uniform) {
    // a plain QR without gauge fixing concentrates arg(U_00) near zero
    Rng rng(8);
    const int draws = 20'000;
    double c = 0.0, s = 0.0;
    for (int i = 0; i < draws; ++i) {
        const Complex z = haar_unitary(3, rng)(0, 0);
        c += z.real() / std::abs(z);
        s += z.imag() / std::abs(z);
    }
    EXPECT_LT(std::abs(c / draws), 0.03);
    EXPECT_LT(std::abs(s / draws), 0.03);
}

TEST(Rng, streams_are_reproducible_and_distinct) {
    Rng a(derive_seed(1, 2, 3)), b(derive_seed(1, 2, 3)), c(derive_seed(1, 3, 2));
    for (int i = 0; i < 10; ++i) {
        const auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        EXPECT_NE(x, c.next_u64());
    }
}

TEST(Rng, poisson_mean) {
    Rng rng(3);
    double sum = 0.0;
    for (int i = 0; i < 100'000; ++i) sum += static_cast<double>(rng.poisson(2.5));
    EXPECT_NEAR(sum / 100'000, 2.5, 0.02);
    EXPECT_EQ(rng.poisson(0.0), 0U);
}
