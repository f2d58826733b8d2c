#pragma once

#include "localgw/multipoly.hpp"

#include <complex>
#include <optional>
#include <string>

namespace localgw {

// Exact element of Q(i)(t1, t2, sigma) stored as num/den.
//
// Canonical form: gcd(num, den) removed as far as the heuristic gcd finds it,
// both polynomials have Gaussian-integer coefficients with trivial common
// integer content, and the leading coefficient of den has positive real part
// (or zero real part and positive imaginary part). Zero is 0/1.
class Scalar {
public:
    Scalar() : den_(1) {}
    Scalar(long v) : Scalar(GaussianRational(v)) {}  // NOLINT(implicit)
    Scalar(const mpz_class& v) : Scalar(GaussianRational(v)) {}  // NOLINT(implicit)
    Scalar(const mpq_class& v) : Scalar(GaussianRational(v)) {}  // NOLINT(implicit)
    Scalar(const GaussianRational& v);  // NOLINT(implicit)
    Scalar(const MultiPoly& p);  // NOLINT(implicit)
    // Reduces the fraction; throws std::domain_error("zero divisor") if den == 0.
    Scalar(const MultiPoly& num, const MultiPoly& den);

    static Scalar t1() { return Scalar(MultiPoly::variable(Var::t1)); }
    static Scalar t2() { return Scalar(MultiPoly::variable(Var::t2)); }
    static Scalar sigma() { return Scalar(MultiPoly::variable(Var::sigma)); }
    static Scalar i() { return Scalar(GaussianRational::i()); }
    // sigma^k for any integer k.
    static Scalar sigma_pow(long k);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_constant() && den_.is_constant() && num_ == den_; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool depends_on(Var v) const { return num_.degree(v) > 0 || den_.degree(v) > 0; }
    // Value of a constant Scalar.
    std::optional<GaussianRational> constant_value() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    // Exact equality of rational functions (cross-multiplication).
    friend bool operator==(const Scalar& a, const Scalar& b);

    Scalar inverse() const;  // throws std::domain_error("zero divisor")
    Scalar pow(long e) const;

    // Substitution of any subset of the variables (nullopt keeps a variable).
    // Throws std::domain_error("denominator vanishes under specialization").
    Scalar specialize(const std::optional<Scalar>& t1, const std::optional<Scalar>& t2,
                      const std::optional<Scalar>& sigma) const;

    // Floating-point value at a point; for tests and diagnostics.
    std::complex<double> numeric(std::complex<double> t1, std::complex<double> t2,
                                 std::complex<double> sigma) const;

    std::string to_string(const std::array<const char*, kNumVars>& names = {"t1", "t2", "s"}) const;

private:
    struct Reduced {};
    // num/den already coprime; only the integral and unit normalization runs.
    Scalar(MultiPoly num, MultiPoly den, Reduced);
    void normalize_units();

    MultiPoly num_;
    MultiPoly den_;
};

// Numeric evaluation of a polynomial; shared with the series code.
std::complex<double> numeric_value(const MultiPoly& p, std::complex<double> t1, std::complex<double> t2,
                                   std::complex<double> sigma);

}  // namespace localgw
