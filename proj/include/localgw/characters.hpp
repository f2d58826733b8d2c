#pragma once

#include "localgw/partition.hpp"
#include "localgw/scalar.hpp"

#include <vector>

namespace localgw {

// chi^rho_lambda for all rho, lambda of a degree, indexed by the Basis order.
class CharacterTable {
public:
    static const CharacterTable& of(int d);

    int degree() const { return degree_; }
    long at(int rho, int lambda) const { return table_[rho * dim_ + lambda]; }
    long at(const Partition& rho, const Partition& lambda) const;

private:
    explicit CharacterTable(int d);
    int degree_;
    int dim_;
    std::vector<long> table_;
};

// Irreducible character value by the Murnaghan-Nakayama rule.
// Throws std::invalid_argument on a size mismatch.
long character(const Partition& rho, const Partition& lambda);

// d! / prod of hook lengths.
mpz_class dim(const Partition& rho);

// sum_rho (d!/dim rho) prod_i chi^rho_{alpha_i} / z(alpha_i) over three profiles.
mpq_class hurwitz3(const Partition& a, const Partition& b, const Partition& c);

// d!/dim_Q rho = prod over cells of (-i)(sigma^h - sigma^-h).
Scalar qdim_ratio(const Partition& rho);

// s_rho(1, Q, Q^2, ...) = Q^{n(rho)} prod 1/(1 - Q^h) with Q = sigma^2.
Scalar schur_specialized(const Partition& rho);

}  // namespace localgw
