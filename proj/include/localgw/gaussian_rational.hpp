#pragma once

#include <gmpxx.h>

#include <string>

namespace localgw {

// Exact element a + b i of Q(i).
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT(implicit)
    GaussianRational(const mpz_class& v) : re_(v), im_(0) {}  // NOLINT(implicit)
    GaussianRational(const mpq_class& v) : re_(v), im_(0) {}  // NOLINT(implicit)
    GaussianRational(mpq_class re, mpq_class im);

    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }
    mpq_class& re() { return re_; }
    mpq_class& im() { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_integral() const;

    GaussianRational conj() const { return {re_, -im_}; }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }
    GaussianRational inverse() const;  // throws std::domain_error on zero

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // Integer power; negative exponents invert.
    GaussianRational pow(long e) const;

    std::string to_string() const;

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

}  // namespace localgw
