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

#include "isac/numerics.hpp"

#include <cmath>
#include <string>

namespace isac {

ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v) {
    if (m.cols() != v.size()) throw DomainError("matrix-vector product: dimensions differ");
    ComplexVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) throw DomainError("inner product: lengths differ");
    Complex acc{};
    for (std::size_t k = 0; k < x.size(); ++k) acc += std::conj(x[k]) * y[k];
    return acc;
}

double squared_norm(std::span<const Complex> x) {
    double acc = 0.0;
    for (const auto& v : x) acc += std::norm(v);
    return acc;
}

ComplexMatrix outer(std::span<const Complex> x, std::span<const Complex> y) {
    ComplexMatrix out(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out(i, j) = x[i] * std::conj(y[j]);
    return out;
}

namespace {

template <class T>
double max_abs_diff_impl(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix shapes differ");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

template <class T>
LdlFactor<T> ldl_impl(const DenseMatrix<T>& a) {
    const std::size_t n = a.rows();
    if (n == 0 || !a.square()) throw DomainError("LDL factorization needs a nonempty square matrix");

    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(detail::real_part(a(i, i))));
    const double floor = kPivotTolerance * max_diag;

    LdlFactor<T> f{DenseMatrix<T>::identity(n), std::vector<double>(n)};
    auto& l = f.lower;
    auto& d = f.pivots;
    for (std::size_t j = 0; j < n; ++j) {
        double dj = detail::real_part(a(j, j));
        for (std::size_t k = 0; k < j; ++k) dj -= std::norm(l(j, k)) * d[k];
        if (!(dj > floor)) {
            throw NotPositiveDefinite("pivot " + std::to_string(j) + " = " + std::to_string(dj) +
                                      " is not above " + std::to_string(floor));
        }
        d[j] = dj;
        for (std::size_t i = j + 1; i < n; ++i) {
            T acc = a(i, j);
            for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * detail::conj_scalar(l(j, k)) * d[k];
            l(i, j) = acc / dj;
        }
    }
    return f;
}

template <class T>
DenseMatrix<T> inverse_from_ldl(const LdlFactor<T>& f) {
    const auto& l = f.lower;
    const std::size_t n = l.rows();
    DenseMatrix<T> inv(n, n);
    std::vector<T> y(n);
    for (std::size_t col = 0; col < n; ++col) {
        // L y = e_col
        for (std::size_t i = 0; i < n; ++i) {
            T acc = (i == col) ? T{1} : T{};
            for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * y[k];
            y[i] = acc;
        }
        for (std::size_t i = 0; i < n; ++i) y[i] /= f.pivots[i];
        // L^H x = y
        for (std::size_t ii = n; ii-- > 0;) {
            T acc = y[ii];
            for (std::size_t k = ii + 1; k < n; ++k) acc -= detail::conj_scalar(l(k, ii)) * inv(k, col);
            inv(ii, col) = acc;
        }
    }
    return inv;
}

}  // namespace

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs_diff_impl(a, b); }
double max_abs_diff(const RealMatrix& a, const RealMatrix& b) { return max_abs_diff_impl(a, b); }

double one_norm(const RealMatrix& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) : m_(m.rows(), m.cols()) {
    if (!m.square() || m.rows() == 0) throw DomainError("Hermitian matrix must be square and nonempty");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        m_(i, i) = Complex(m(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m_(i, j) = v;
            m_(j, i) = std::conj(v);
        }
    }
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) { return HermitianMatrix(ComplexMatrix::identity(n)); }

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return HermitianMatrix(m);
}

LdlFactor<Complex> ldl_factor(const HermitianMatrix& m) { return ldl_impl(m.matrix()); }

LdlFactor<double> ldl_factor(const RealMatrix& symmetric) { return ldl_impl(symmetric); }

HermitianMatrix hermitian_inverse(const HermitianMatrix& m) {
    return HermitianMatrix(inverse_from_ldl(ldl_factor(m)));
}

RealMatrix symmetric_inverse(const RealMatrix& m) {
    RealMatrix inv = inverse_from_ldl(ldl_factor(m));
    for (std::size_t i = 0; i < inv.rows(); ++i)
        for (std::size_t j = i + 1; j < inv.cols(); ++j) {
            const double v = 0.5 * (inv(i, j) + inv(j, i));
            inv(i, j) = v;
            inv(j, i) = v;
        }
    return inv;
}

double log_det(const HermitianMatrix& m) {
    const auto f = ldl_factor(m);
    double acc = 0.0;
    for (double d : f.pivots) acc += std::log(d);
    return acc;
}

}  // namespace isac
