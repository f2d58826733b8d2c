#pragma once

#include "localgw/operator_matrix.hpp"
#include "localgw/partition.hpp"
#include "localgw/scalar.hpp"

#include <vector>

namespace localgw {

// Restriction t1 = t, t2 = -t. Scalars here carry t in the t1 slot and no t2.
struct AntiDiagQuery {
    int degree = 1;
    int genus = 0;
    int k1 = 0;
    int k2 = 0;
};

// Closed anti-diagonal partition function of the degree-d local curve.
// Throws std::invalid_argument if the degree is not positive.
Scalar closed_formula(const AntiDiagQuery& q);

// The specialization t1 -> t, t2 -> -t of an engine Scalar.
Scalar restrict_antidiagonal(const Scalar& s);

struct IdempotentBasis {
    // Column rho holds v_rho in the e_alpha basis.
    OperatorMatrix to_idempotent;
    // Row rho holds the v_rho coefficients of e_alpha: from_idempotent * to_idempotent = 1.
    OperatorMatrix from_idempotent;
};

IdempotentBasis idempotent_basis_change(int d);

// Eigenvalues at the restriction, indexed by the Basis order of rho.
Scalar handle_eigenvalue(const Partition& rho);
Scalar left_cap_eigenvalue(const Partition& rho);
Scalar right_cap_eigenvalue(const Partition& rho);

}  // namespace localgw
