#pragma once

// Integer-coefficient kernels shared by MultiPoly and the gcd.

#include "localgw/multipoly.hpp"

#include <optional>

namespace localgw::detail {

// Both operands must have integral coefficients.
MultiPoly mul_integral(const MultiPoly& a, const MultiPoly& b);

// a Gaussian-integral, b real, integral and primitive. Returns a / b when exact.
std::optional<MultiPoly> div_integral(const MultiPoly& a, const MultiPoly& b);

// a integral; every coefficient reduced into the symmetric range of m.
MultiPoly symmetric_mod(const MultiPoly& a, const mpz_class& m);

// a integral; exact division of every coefficient by n.
MultiPoly divexact_coeffs(const MultiPoly& a, const mpz_class& n);

// Max absolute value over the integer coefficient components of a.
mpz_class max_norm(const MultiPoly& a);

// Substitution of v = x for an integer x, keeping integral coefficients.
MultiPoly evaluate_integer(const MultiPoly& a, Var v, const mpz_class& x);

// Scales a by the lcm of denominators so that it becomes integral.
MultiPoly clear_denominators(const MultiPoly& a);

}  // namespace localgw::detail
