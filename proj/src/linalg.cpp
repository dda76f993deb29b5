// SPDX-License-Identifier: Apache-2.0
#include "hystk/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "hystk/errors.hpp"
#include "hystk/simd.hpp"

namespace hystk {

double dot(std::span<double const> a, std::span<double const> b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("dot: operand sizes differ");
    return simd::dot(a.data(), b.data(), a.size());
}

double norm2(std::span<double const> a) { return std::sqrt(dot(a, a)); }

Vec operator+(Vec const& a, Vec const& b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("vector sum: sizes differ");
    Vec r(a);
    simd::axpy(1.0, b.data(), r.data(), r.size());
    return r;
}

Vec operator-(Vec const& a, Vec const& b)
{
    if (a.size() != b.size())
        throw DimensionMismatch("vector difference: sizes differ");
    Vec r(a);
    simd::axpy(-1.0, b.data(), r.data(), r.size());
    return r;
}

Vec operator*(double s, Vec const& a)
{
    Vec r(a);
    for (double& v : r)
        v *= s;
    return r;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (auto const& r : rows)
    {
        if (r.size() != cols_)
            throw DimensionMismatch("Matrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(std::vector<std::vector<double>> const& rows)
{
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        if (rows[i].size() != m.cols())
            throw DimensionMismatch("Matrix: ragged rows");
        std::copy(rows[i].begin(), rows[i].end(),
                  m.data_.begin() + i * m.cols_);
    }
    return m;
}

Matrix Matrix::transposed() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::max_abs() const noexcept
{
    double m = 0.0;
    for (double v : data_)
        m = std::max(m, std::abs(v));
    return m;
}

double Matrix::row_sum(std::size_t i) const noexcept
{
    double s = 0.0;
    for (double v : row(i))
        s += v;
    return s;
}

Matrix& Matrix::add_scaled(double alpha, Matrix const& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("Matrix: shape mismatch in sum");
    simd::axpy(alpha, other.data_.data(), data_.data(), data_.size());
    return *this;
}

Matrix& Matrix::operator*=(double s)
{
    for (double& v : data_)
        v *= s;
    return *this;
}

Matrix operator*(Matrix const& a, Matrix const& b)
{
    if (a.cols() != b.rows())
        throw DimensionMismatch("Matrix: inner dimensions differ in product");
    Matrix c(a.rows(), b.cols());
    simd::gemm(a.data().data(), b.data().data(), c.data().data(), a.rows(),
               a.cols(), b.cols());
    return c;
}

Matrix operator+(Matrix a, Matrix const& b) { return a += b; }
Matrix operator-(Matrix a, Matrix const& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Vec operator*(Matrix const& a, Vec const& x)
{
    if (a.cols() != x.size())
        throw DimensionMismatch("Matrix-vector: size mismatch");
    Vec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        y[i] = simd::dot(a.row(i).data(), x.data(), x.size());
    return y;
}

double max_abs_diff(Matrix const& a, Matrix const& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("max_abs_diff: shape mismatch");
    double m = 0.0;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i)
        m = std::max(m, std::abs(da[i] - db[i]));
    return m;
}

}  // namespace hystk
