#pragma once

#include "localgw/gaussian_rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace localgw {

// Variables of the coefficient ring. sigma is e^{iu/2}; q = -sigma^2.
enum class Var : int { t1 = 0, t2 = 1, sigma = 2 };

inline constexpr int kNumVars = 3;

// Exponent vector on (t1, t2, sigma), ordered lexicographically.
struct Monomial {
    static constexpr int kBits = 21;
    static constexpr std::uint64_t kMask = (std::uint64_t{1} << kBits) - 1;
    static constexpr std::uint32_t kMaxExponent = static_cast<std::uint32_t>(kMask);

    std::array<std::uint32_t, kNumVars> e{0, 0, 0};

    Monomial() = default;
    Monomial(std::uint32_t t1, std::uint32_t t2, std::uint32_t s) : e{t1, t2, s} {}

    std::uint32_t operator[](Var v) const { return e[static_cast<int>(v)]; }
    std::uint32_t& operator[](Var v) { return e[static_cast<int>(v)]; }

    // Packed key; numeric order of keys equals lex order of exponent vectors.
    std::uint64_t key() const {
        return (std::uint64_t{e[0]} << (2 * kBits)) | (std::uint64_t{e[1]} << kBits) | e[2];
    }
    static Monomial from_key(std::uint64_t k) {
        return {static_cast<std::uint32_t>(k >> (2 * kBits)),
                static_cast<std::uint32_t>((k >> kBits) & kMask), static_cast<std::uint32_t>(k & kMask)};
    }
    unsigned total_degree() const { return e[0] + e[1] + e[2]; }
    bool divides(const Monomial& o) const { return e[0] <= o.e[0] && e[1] <= o.e[1] && e[2] <= o.e[2]; }

    friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.e <=> b.e; }
    friend bool operator==(const Monomial& a, const Monomial& b) = default;
};

// Sparse polynomial in Q(i)[t1, t2, sigma]. Terms are kept sorted by
// descending monomial with no zero coefficients, so equality is structural.
class MultiPoly {
public:
    struct Term {
        std::uint64_t key;
        GaussianRational coeff;
        Monomial monomial() const { return Monomial::from_key(key); }
    };

    MultiPoly() = default;
    MultiPoly(const GaussianRational& c);  // NOLINT(implicit)
    MultiPoly(long c) : MultiPoly(GaussianRational(c)) {}  // NOLINT(implicit)

    static MultiPoly variable(Var v, std::uint32_t exponent = 1);
    static MultiPoly monomial(const Monomial& m, const GaussianRational& c = GaussianRational(1));
    // Accepts terms in any order; combines duplicates and drops zeros.
    static MultiPoly from_terms(std::vector<Term> terms);
    // Caller guarantees strictly descending keys and nonzero coefficients.
    static MultiPoly from_sorted_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].key == 0); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_one() const { return is_constant() && !is_zero() && terms_[0].coeff.is_one(); }
    bool is_real() const;
    bool is_integral() const;

    const Term& leading() const { return terms_.front(); }
    GaussianRational constant_term() const;
    // The coefficient of an exact monomial (zero when absent).
    GaussianRational coeff(const Monomial& m) const;

    std::uint32_t degree(Var v) const;
    std::uint32_t min_degree(Var v) const;
    // Componentwise minimum exponent over all terms (zero poly gives zeros).
    Monomial monomial_content() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);

    MultiPoly scaled(const GaussianRational& c) const;
    MultiPoly times_monomial(const Monomial& m) const;
    // Requires m to divide every term.
    MultiPoly divided_by_monomial(const Monomial& m) const;
    MultiPoly pow(unsigned e) const;

    MultiPoly real_part() const;
    MultiPoly imag_part() const;
    MultiPoly conj() const;  // conjugates coefficients only

    // lcm of all coefficient denominators (real and imaginary).
    mpz_class denominator_lcm() const;
    // gcd of all integer coefficient components; requires is_integral().
    mpz_class integer_content() const;

    // Exponent map e_v -> e_v * k (k > 0) or exact e_v / k.
    MultiPoly inflate(Var v, std::uint32_t k) const;
    MultiPoly deflate(Var v, std::uint32_t k) const;
    // gcd of all exponents of v (0 if v is absent).
    std::uint32_t exponent_gcd(Var v) const;

    // Substitutes a number for v; the result does not depend on v.
    MultiPoly evaluate(Var v, const GaussianRational& x) const;
    // Substitutes a polynomial for v.
    MultiPoly substitute(Var v, const MultiPoly& p) const;
    // Terms grouped by the exponent of v: pairs (exponent, coefficient poly).
    std::vector<std::pair<std::uint32_t, MultiPoly>> collect(Var v) const;

    std::string to_string(const std::array<const char*, kNumVars>& names = {"t1", "t2", "s"}) const;

private:
    std::vector<Term> terms_;
};

// Exact quotient a / b, or nullopt when b does not divide a. Throws on b == 0.
std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b);

// A common divisor of a and b with integer coefficients, primitive, with
// positive leading coefficient. It is the true gcd for real inputs whenever
// the heuristic succeeds; otherwise it may be a proper divisor of it.
// For non-real inputs only real factors are detected.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

}  // namespace localgw
