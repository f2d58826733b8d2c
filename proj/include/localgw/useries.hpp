#pragma once

#include "localgw/scalar.hpp"

#include <vector>

namespace localgw {

// Truncated Laurent series in u with sigma-free Scalar coefficients:
//   sum_{n=0}^{N} c_n u^{offset+n} + O(u^{offset+N+1}).
// A series with no coefficients is O(u^{offset}).
class USeries {
public:
    USeries() = default;
    USeries(int offset, std::vector<Scalar> coeffs);
    // Exact value c, known through u^order.
    static USeries constant(const Scalar& c, int order);

    int offset() const { return offset_; }
    // First exponent that is not known.
    int precision() const { return offset_ + static_cast<int>(coeffs_.size()); }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    // Coefficient of u^k for offset <= k < precision (zero below offset).
    Scalar coeff(int k) const;

    // Drops leading zero coefficients; the precision is unchanged.
    USeries normalized() const;
    // Result known below min(precision, new_precision).
    USeries truncated(int new_precision) const;

    USeries operator-() const;
    friend USeries operator+(const USeries& a, const USeries& b);
    friend USeries operator-(const USeries& a, const USeries& b);
    friend USeries operator*(const USeries& a, const USeries& b);
    // Throws std::domain_error if no nonzero coefficient is known.
    USeries inverse() const;
    friend USeries operator/(const USeries& a, const USeries& b) { return a * b.inverse(); }
    USeries scaled(const Scalar& c) const;

    // Coefficientwise equality on the common known range.
    bool agrees_with(const USeries& o) const;

private:
    int offset_ = 0;
    std::vector<Scalar> coeffs_;
};

// u-expansion of a(sigma = e^{iu/2}) through u^order. Throws
// std::invalid_argument if order < 0.
USeries expand_u_series(const Scalar& a, int order);

}  // namespace localgw
