#pragma once

#include "localgw/scalar.hpp"

#include <functional>
#include <vector>

namespace localgw {

// Square matrix of Scalars over the canonical partition basis of a degree.
// Entry (row, col) is the coefficient of basis vector `row` in the image of
// basis vector `col`.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    OperatorMatrix(int degree, int size);
    static OperatorMatrix identity(int degree);
    static OperatorMatrix zero(int degree);

    int degree() const { return degree_; }
    int size() const { return n_; }
    Scalar& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }
    const Scalar& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }

    friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
    friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b);
    OperatorMatrix scaled(const Scalar& c) const;
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

    // Gauss-Jordan elimination over the Scalar field; throws
    // std::domain_error("operator not invertible") when singular.
    OperatorMatrix inverse() const;
    // Negative exponents use the inverse.
    OperatorMatrix pow(long e) const;
    Scalar trace() const;
    bool is_zero() const;
    bool is_diagonal() const;

    OperatorMatrix map(const std::function<Scalar(const Scalar&)>& f) const;

private:
    int degree_ = 0;
    int n_ = 0;
    std::vector<Scalar> a_;
};

// Sum of products sum_k a_k b_k with one accumulation.
Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

}  // namespace localgw
