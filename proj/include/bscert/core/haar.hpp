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

#include <Eigen/Dense>

#include "bscert/core/matrix.hpp"
#include "bscert/core/rng.hpp"

namespace bscert {

/// Haar-random unitary: Ginibre matrix, Householder QR, then the columns of Q
/// are rephased so that R has a positive real diagonal.
inline UnitaryMatrix haar_unitary(std::size_t dim, Rng &rng) {
    if (dim == 0) throw DimensionError("haar_unitary: dimension must be >= 1");
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd ginibre(n, n);
    // fill row-major so the stream layout does not depend on Eigen's storage order
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) {
            const double re = rng.normal();
            const double im = rng.normal();
            ginibre(r, c) = Complex(re, im) * std::sqrt(0.5);
        }

    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd &packed = qr.matrixQR();
    for (Eigen::Index c = 0; c < n; ++c) {
        const Complex d = packed(c, c);
        const double mag = std::abs(d);
        const Complex phase = mag > 0.0 ? d / mag : Complex(1.0);
        q.col(c) *= phase;
    }

    std::vector<Complex> data;
    data.reserve(dim * dim);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) data.push_back(q(r, c));
    return UnitaryMatrix(ComplexMatrix(dim, dim, std::move(data)));
}

inline UnitaryMatrix haar_unitary(std::size_t dim, RngSeed seed) {
    Rng rng(seed);
    return haar_unitary(dim, rng);
}

}  // namespace bscert
