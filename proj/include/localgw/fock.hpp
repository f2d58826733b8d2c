#pragma once

#include "localgw/operator_matrix.hpp"
#include "localgw/partition.hpp"
#include "localgw/scalar.hpp"

#include <vector>

namespace localgw {

// Element of the degree-d Fock space in the basis |mu> = p_mu / z(mu),
// where alpha_{-k} multiplies by p_k and alpha_k acts as k d/dp_k.
class FockVector {
public:
    explicit FockVector(int degree);
    static FockVector basis_vector(const Partition& mu);

    int degree() const { return degree_; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    std::vector<Scalar>& coeffs() { return coeffs_; }
    const Scalar& operator[](const Partition& mu) const;
    Scalar& operator[](const Partition& mu);

    friend bool operator==(const FockVector& a, const FockVector& b) {
        return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

private:
    int degree_;
    std::vector<Scalar> coeffs_;
};

// <mu|nu> = (-1)^{|mu| - l(mu)} delta / ((t1 t2)^{l(mu)} z(mu)).
Scalar inner_product(const Partition& mu, const Partition& nu);

// F_k = k (x^k + 1)/(x^k - 1) - (x + 1)/(x - 1) with x = -q = sigma^2.
Scalar diagonal_f(int k);

// Matrix of M2 on the degree-d Fock space; memoized per degree.
const OperatorMatrix& m2_matrix(int d);

FockVector apply_m2(const FockVector& v);

// <mu|M2|nu> in the nonstandard pairing.
Scalar m2_pairing(const Partition& mu, const Partition& nu);

}  // namespace localgw
