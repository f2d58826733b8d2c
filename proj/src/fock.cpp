#include "localgw/fock.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace localgw {

FockVector::FockVector(int degree) : degree_(degree), coeffs_(Basis::of(degree).dim()) {}

FockVector FockVector::basis_vector(const Partition& mu) {
    FockVector v(mu.size());
    v[mu] = Scalar(1);
    return v;
}

const Scalar& FockVector::operator[](const Partition& mu) const { return coeffs_[Basis::of(degree_).index(mu)]; }

Scalar& FockVector::operator[](const Partition& mu) { return coeffs_[Basis::of(degree_).index(mu)]; }

Scalar inner_product(const Partition& mu, const Partition& nu) {
    if (mu.size() != nu.size()) throw std::invalid_argument("inner_product: size mismatch");
    if (!(mu == nu)) return {};
    const int l = mu.length();
    MultiPoly den = (MultiPoly::variable(Var::t1) * MultiPoly::variable(Var::t2)).pow(l).scaled(GaussianRational(mu.zed()));
    const long sign = ((mu.size() - l) % 2 == 0) ? 1 : -1;
    return Scalar(MultiPoly(sign), den);
}

Scalar diagonal_f(int k) {
    const MultiPoly x = MultiPoly::variable(Var::sigma, 2);
    const MultiPoly xk = MultiPoly::variable(Var::sigma, 2 * k);
    const MultiPoly one(1);
    return Scalar((xk + one).scaled(GaussianRational(k)), xk - one) - Scalar(x + one, x - one);
}

namespace {

using Parts = std::vector<int>;

// Multiset of parts as value -> multiplicity.
std::map<int, int> multiplicities(const Partition& p) {
    std::map<int, int> m;
    for (int x : p.parts()) ++m[x];
    return m;
}

Partition remove_add(const Partition& p, const Parts& remove, const Parts& add) {
    Parts parts = p.parts();
    for (int r : remove) {
        auto it = std::find(parts.begin(), parts.end(), r);
        parts.erase(it);
    }
    parts.insert(parts.end(), add.begin(), add.end());
    return Partition(std::move(parts));
}

OperatorMatrix build_m2(int d) {
    const Basis& basis = Basis::of(d);
    OperatorMatrix m = OperatorMatrix::zero(d);
    const Scalar t1 = Scalar::t1(), t2 = Scalar::t2();
    const Scalar half(mpq_class(1, 2));
    const Scalar split_coeff = -(half * t1 * t2);
    std::vector<Scalar> f(d + 1);
    for (int k = 1; k <= d; ++k) f[k] = diagonal_f(k);

    for (int col = 0; col < basis.dim(); ++col) {
        const Partition& mu = basis[col];
        const auto mult = multiplicities(mu);
        // Image of p_mu as p_nu coefficients.
        std::map<int, Scalar> image;
        Scalar diag;
        for (auto [k, mk] : mult) diag += f[k] * Scalar(static_cast<long>(k) * mk);
        image[col] += -(half * (t1 + t2)) * diag;
        // Splitting: -1/2 t1 t2 sum_{k,l} p_k p_l (k+l) d/dp_{k+l}.
        for (auto [m_part, mm] : mult) {
            for (int k = 1; k < m_part; ++k) {
                const int l = m_part - k;
                const int row = basis.index(remove_add(mu, {m_part}, {k, l}));
                image[row] += split_coeff * Scalar(static_cast<long>(m_part) * mm);
            }
        }
        // Joining: 1/2 sum_{k,l} p_{k+l} k l d/dp_k d/dp_l.
        for (auto [k, mk] : mult) {
            for (auto [l, ml] : mult) {
                const long count = (k == l) ? static_cast<long>(mk) * (mk - 1) : static_cast<long>(mk) * ml;
                if (count == 0) continue;
                const int row = basis.index(remove_add(mu, {k, l}, {k + l}));
                image[row] += half * Scalar(count * k * l);
            }
        }
        // p_nu = z(nu)|nu>, |mu> = p_mu / z(mu).
        const mpq_class zmu(mu.zed());
        for (auto& [row, c] : image) {
            if (c.is_zero()) continue;
            m(row, col) = c * Scalar(mpq_class(basis[row].zed()) / zmu);
        }
    }
    return m;
}

}  // namespace

const OperatorMatrix& m2_matrix(int d) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<OperatorMatrix>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(d); it != cache.end()) return *it->second;
    }
    auto built = std::make_unique<OperatorMatrix>(build_m2(d));
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[d];
    if (!slot) slot = std::move(built);
    return *slot;
}

FockVector apply_m2(const FockVector& v) {
    FockVector out(v.degree());
    out.coeffs() = m2_matrix(v.degree()).apply(v.coeffs());
    return out;
}

Scalar m2_pairing(const Partition& mu, const Partition& nu) {
    const int d = mu.size();
    const Basis& basis = Basis::of(d);
    return inner_product(mu, mu) * m2_matrix(d)(basis.index(mu), basis.index(nu));
}

}  // namespace localgw
