/*
   Copyright 2026 The isacbounds Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "isac/errors.hpp"

namespace isac {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

namespace detail {
inline double conj_scalar(double x) { return x; }
inline Complex conj_scalar(const Complex& x) { return std::conj(x); }
inline double real_part(double x) { return x; }
inline double real_part(const Complex& x) { return x.real(); }
}  // namespace detail

/// Small dense row-major matrix. Sizes in this library rarely exceed 16.
template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    static DenseMatrix diagonal(std::span<const T> d) {
        DenseMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] DenseMatrix adjoint() const {
        DenseMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = detail::conj_scalar((*this)(i, j));
        return out;
    }

    [[nodiscard]] DenseMatrix transpose() const {
        DenseMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    [[nodiscard]] T trace() const {
        T t{};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    DenseMatrix& operator+=(const DenseMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    DenseMatrix& operator-=(const DenseMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    DenseMatrix& operator*=(T s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(DenseMatrix a, T s) { return a *= s; }
    friend DenseMatrix operator*(T s, DenseMatrix a) { return a *= s; }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.cols_ != b.rows_) throw DomainError("matrix product: inner dimensions differ");
        DenseMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    [[nodiscard]] std::span<const T> data() const { return data_; }

private:
    void check_same_shape(const DenseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ComplexMatrix = DenseMatrix<Complex>;
using RealMatrix = DenseMatrix<double>;

/// Matrix-vector product.
ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v);

/// x^H y
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double squared_norm(std::span<const Complex> x);

/// Outer product x y^H.
ComplexMatrix outer(std::span<const Complex> x, std::span<const Complex> y);

/// Largest absolute entry of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const RealMatrix& a, const RealMatrix& b);

/// Induced 1-norm (max absolute column sum).
double one_norm(const RealMatrix& m);

/// Square complex matrix with Hermitian symmetry. Construction replaces the
/// input by (M + M^H)/2, so any asymmetric rounding in the source is removed.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const ComplexMatrix& m);

    static HermitianMatrix identity(std::size_t n);
    static HermitianMatrix diagonal(std::span<const double> d);

    [[nodiscard]] std::size_t dim() const { return m_.rows(); }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }

    friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
        return HermitianMatrix(a.m_ + b.m_);
    }
    friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
        return HermitianMatrix(a.m_ - b.m_);
    }
    friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
        return HermitianMatrix(a.m_ * Complex(s, 0.0));
    }

private:
    ComplexMatrix m_;
};

/// M = L D L^H with unit lower-triangular L and positive real D.
template <class T>
struct LdlFactor {
    DenseMatrix<T> lower;
    std::vector<double> pivots;
};

/// Pivots at or below this fraction of the largest diagonal entry are rejected.
inline constexpr double kPivotTolerance = 1e-14;

LdlFactor<Complex> ldl_factor(const HermitianMatrix& m);
LdlFactor<double> ldl_factor(const RealMatrix& symmetric);

HermitianMatrix hermitian_inverse(const HermitianMatrix& m);
/// Inverse of a real symmetric positive definite matrix; result symmetrized.
RealMatrix symmetric_inverse(const RealMatrix& m);

/// ln det(m) as the sum of log pivots.
double log_det(const HermitianMatrix& m);

}  // namespace isac
