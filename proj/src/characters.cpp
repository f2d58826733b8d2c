#include "localgw/characters.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace localgw {

namespace {

// Memo keyed on (shape, remaining cycle lengths).
using MnKey = std::pair<std::vector<int>, std::vector<int>>;

class MnSolver {
public:
    long value(const std::vector<int>& shape, const std::vector<int>& cycles) {
        if (cycles.empty()) return shape.empty() ? 1 : 0;
        MnKey key{shape, cycles};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        const int k = cycles.front();
        const std::vector<int> rest(cycles.begin() + 1, cycles.end());
        const int len = static_cast<int>(shape.size());
        // Beta set: distinct bead positions lambda_i + (len - 1 - i).
        std::vector<int> beads(len);
        for (int i = 0; i < len; ++i) beads[i] = shape[i] + (len - 1 - i);
        long total = 0;
        for (int i = 0; i < len; ++i) {
            const int target = beads[i] - k;
            if (target < 0 || std::find(beads.begin(), beads.end(), target) != beads.end()) continue;
            int between = 0;
            for (int b : beads)
                if (b > target && b < beads[i]) ++between;
            std::vector<int> moved = beads;
            moved[i] = target;
            std::sort(moved.begin(), moved.end(), std::greater<>());
            std::vector<int> next;
            for (int j = 0; j < len; ++j) {
                const int part = moved[j] - (len - 1 - j);
                if (part > 0) next.push_back(part);
            }
            const long sub = value(next, rest);
            total += (between % 2 == 0) ? sub : -sub;
        }
        memo_.emplace(std::move(key), total);
        return total;
    }

private:
    std::map<MnKey, long> memo_;
};

}  // namespace

CharacterTable::CharacterTable(int d) : degree_(d) {
    const Basis& basis = Basis::of(d);
    dim_ = basis.dim();
    table_.resize(static_cast<std::size_t>(dim_) * dim_);
    MnSolver solver;
    for (int r = 0; r < dim_; ++r)
        for (int l = 0; l < dim_; ++l) table_[r * dim_ + l] = solver.value(basis[r].parts(), basis[l].parts());
}

const CharacterTable& CharacterTable::of(int d) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CharacterTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[d];
    if (!slot) slot.reset(new CharacterTable(d));
    return *slot;
}

long CharacterTable::at(const Partition& rho, const Partition& lambda) const {
    const Basis& basis = Basis::of(degree_);
    return at(basis.index(rho), basis.index(lambda));
}

long character(const Partition& rho, const Partition& lambda) {
    if (rho.size() != lambda.size()) throw std::invalid_argument("character: size mismatch");
    if (rho.size() == 0) return 1;
    return CharacterTable::of(rho.size()).at(rho, lambda);
}

mpz_class dim(const Partition& rho) {
    mpz_class prod = 1;
    for (int h : rho.hooks()) prod *= h;
    return factorial(rho.size()) / prod;
}

mpq_class hurwitz3(const Partition& a, const Partition& b, const Partition& c) {
    if (a.size() != b.size() || a.size() != c.size()) throw std::invalid_argument("hurwitz3: size mismatch");
    const int d = a.size();
    const Basis& basis = Basis::of(d);
    const CharacterTable& chi = CharacterTable::of(d);
    const int ia = basis.index(a), ib = basis.index(b), ic = basis.index(c);
    const mpq_class zz = mpq_class(a.zed() * b.zed() * c.zed());
    const mpz_class df = factorial(d);
    mpq_class h = 0;
    for (int r = 0; r < basis.dim(); ++r) {
        mpq_class term(df * chi.at(r, ia) * chi.at(r, ib) * chi.at(r, ic), dim(basis[r]));
        term.canonicalize();
        h += term;
    }
    return h / zz;
}

Scalar qdim_ratio(const Partition& rho) {
    // (-i)(sigma^h - sigma^-h) = -i (sigma^{2h} - 1) / sigma^h
    MultiPoly num(1);
    std::uint32_t shift = 0;
    const GaussianRational minus_i(mpq_class(0), mpq_class(-1));
    for (int h : rho.hooks()) {
        num *= (MultiPoly::variable(Var::sigma, 2 * h) - MultiPoly(1)).scaled(minus_i);
        shift += h;
    }
    return Scalar(num, MultiPoly::variable(Var::sigma, shift));
}

Scalar schur_specialized(const Partition& rho) {
    MultiPoly den(1);
    for (int h : rho.hooks()) den *= MultiPoly(1) - MultiPoly::variable(Var::sigma, 2 * h);
    return Scalar(MultiPoly::variable(Var::sigma, static_cast<std::uint32_t>(2 * rho.n())), den);
}

}  // namespace localgw
