// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hystk {

//! Point or direction in R^n.
using Vec = std::vector<double>;

double dot(std::span<double const> a, std::span<double const> b);
double norm2(std::span<double const> a);
Vec operator+(Vec const& a, Vec const& b);
Vec operator-(Vec const& a, Vec const& b);
Vec operator*(double s, Vec const& a);

//! Dense row-major matrix. Sized for the handful of states a relay or a
//! Markov field carries; products go through the simd kernels.
class Matrix
{
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::vector<std::vector<double>> const& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept
    {
        return data_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const noexcept
    {
        return data_[i * cols_ + j];
    }

    std::span<double> data() noexcept { return data_; }
    std::span<double const> data() const noexcept { return data_; }
    std::span<double const> row(std::size_t i) const noexcept
    {
        return {data_.data() + i * cols_, cols_};
    }

    Matrix transposed() const;
    double max_abs() const noexcept;
    double row_sum(std::size_t i) const noexcept;

    //! this += alpha * other
    Matrix& add_scaled(double alpha, Matrix const& other);

    Matrix& operator+=(Matrix const& o) { return add_scaled(1.0, o); }
    Matrix& operator-=(Matrix const& o) { return add_scaled(-1.0, o); }
    Matrix& operator*=(double s);

    friend bool operator==(Matrix const&, Matrix const&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(Matrix const& a, Matrix const& b);
Matrix operator+(Matrix a, Matrix const& b);
Matrix operator-(Matrix a, Matrix const& b);
Matrix operator*(double s, Matrix a);
Vec operator*(Matrix const& a, Vec const& x);

//! max_ij |a_ij - b_ij|
double max_abs_diff(Matrix const& a, Matrix const& b);

}  // namespace hystk
