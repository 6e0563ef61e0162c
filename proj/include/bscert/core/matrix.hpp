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
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "bscert/core/error.hpp"

namespace bscert {

using Complex = std::complex<double>;

/// Dense row-major complex matrix with finite entries.
class ComplexMatrix {
   public:
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw DimensionError("ComplexMatrix: entry count does not match rows * cols");
        }
        check_finite();
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : rows_(rows.size()) {
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw DimensionError("ComplexMatrix: ragged initializer");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
        check_finite();
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<const Complex> data() const { return data_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
        if (a.cols_ != b.rows_) throw DimensionError("ComplexMatrix: product shape mismatch");
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    bool operator==(const ComplexMatrix &) const = default;

    void check_finite() const {
        for (const auto &z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw InputError("ComplexMatrix: non-finite entry");
            }
        }
    }

   private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

inline constexpr double kUnitarityTolerance = 1e-10;

/// True iff `m` is square and max |m^dagger m - I| <= tol.
inline bool is_unitary(const ComplexMatrix &m, double tol = kUnitarityTolerance) {
    if (!m.is_square() || m.rows() == 0) return false;
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += std::conj(m(k, i)) * m(k, j);
            if (i == j) acc -= 1.0;
            if (std::abs(acc) > tol) return false;
        }
    }
    return true;
}

/// A square ComplexMatrix checked for unitarity at construction.
class UnitaryMatrix {
   public:
    explicit UnitaryMatrix(ComplexMatrix m, double tol = kUnitarityTolerance) : m_(std::move(m)) {
        if (!m_.is_square()) throw DimensionError("UnitaryMatrix: matrix is not square");
        if (m_.rows() == 0) throw DimensionError("UnitaryMatrix: empty matrix");
        if (!is_unitary(m_, tol)) throw InputError("UnitaryMatrix: matrix is not unitary within tolerance");
    }

    static UnitaryMatrix identity(std::size_t dim) { return UnitaryMatrix(ComplexMatrix::identity(dim)); }

    std::size_t dim() const { return m_.rows(); }
    const Complex &operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
    const ComplexMatrix &matrix() const { return m_; }

    bool operator==(const UnitaryMatrix &) const = default;

   private:
    ComplexMatrix m_;
};

}  // namespace bscert
