#include "localgw/antidiag.hpp"

#include "localgw/characters.hpp"

#include <stdexcept>

namespace localgw {

namespace {

Scalar t() { return Scalar::t1(); }

// (i t)^e.
Scalar it_pow(long e) { return (Scalar::i() * t()).pow(e); }

// dim rho / dim_Q rho.
Scalar dim_over_qdim(const Partition& rho) {
    return Scalar(mpq_class(dim(rho), factorial(rho.size()))) * qdim_ratio(rho);
}

}  // namespace

Scalar closed_formula(const AntiDiagQuery& q) {
    if (q.degree < 1) throw std::invalid_argument("degree must be positive");
    const int d = q.degree;
    const long sign_exp = static_cast<long>(d) * (q.genus - 1 - q.k2);
    Scalar pre = t().pow(static_cast<long>(d) * (2 * q.genus - 2 - q.k1 - q.k2));
    if (sign_exp % 2 != 0) pre = -pre;
    Scalar sum;
    for (const auto& rho : all_partitions(d)) {
        const Scalar ratio(mpq_class(factorial(d), dim(rho)));
        sum += ratio.pow(2 * q.genus - 2) * dim_over_qdim(rho).pow(q.k1 + q.k2) *
               Scalar::sigma_pow(static_cast<long>(rho.total_content()) * (q.k1 - q.k2));
    }
    return pre * sum;
}

Scalar restrict_antidiagonal(const Scalar& s) { return s.specialize(t(), -t(), std::nullopt); }

IdempotentBasis idempotent_basis_change(int d) {
    const Basis& basis = Basis::of(d);
    const CharacterTable& chi = CharacterTable::of(d);
    const int n = basis.dim();
    IdempotentBasis b{OperatorMatrix::zero(d), OperatorMatrix::zero(d)};
    const mpz_class df = factorial(d);
    for (int rho = 0; rho < n; ++rho) {
        const mpz_class dr = dim(basis[rho]);
        for (int a = 0; a < n; ++a) {
            const long c = chi.at(rho, a);
            if (c == 0) continue;
            const long l = basis[a].length();
            b.to_idempotent(a, rho) = Scalar(mpq_class(dr * c, df)) * it_pow(l - d);
            b.from_idempotent(rho, a) = Scalar(mpq_class(df * c, dr * basis[a].zed())) * it_pow(d - l);
        }
    }
    return b;
}

Scalar handle_eigenvalue(const Partition& rho) {
    const Scalar ratio(mpq_class(factorial(rho.size()), dim(rho)));
    return it_pow(2L * rho.size()) * ratio * ratio;
}

Scalar left_cap_eigenvalue(const Partition& rho) {
    return t().pow(rho.size()) * Scalar::sigma_pow(-rho.total_content()) * dim_over_qdim(rho).inverse();
}

Scalar right_cap_eigenvalue(const Partition& rho) {
    return (-t()).pow(rho.size()) * Scalar::sigma_pow(rho.total_content()) * dim_over_qdim(rho).inverse();
}

}  // namespace localgw
