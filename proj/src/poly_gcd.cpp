// Heuristic polynomial gcd over Z[t1, t2, sigma]: integer evaluation at a
// large point, integer gcd, xi-adic reconstruction and trial division.

#include "localgw/multipoly.hpp"

#include "poly_kernels.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace localgw {

namespace {

constexpr int kAttempts = 6;
constexpr std::size_t kMaxEvalBits = std::size_t{1} << 22;
constexpr std::array<Var, kNumVars> kEvalOrder{Var::sigma, Var::t2, Var::t1};

mpz_class lc_real(const MultiPoly& p) { return p.leading().coeff.re().get_num(); }

MultiPoly primitive_positive(const MultiPoly& p) {
    if (p.is_zero()) return p;
    mpz_class c = p.integer_content();
    if (sgn(lc_real(p)) < 0) c = -c;
    if (c == 1) return p;
    return detail::divexact_coeffs(p, c);
}

Monomial monomial_min(const Monomial& a, const Monomial& b) {
    return {std::min(a.e[0], b.e[0]), std::min(a.e[1], b.e[1]), std::min(a.e[2], b.e[2])};
}

MultiPoly interpolate(MultiPoly h, Var v, const mpz_class& xi) {
    MultiPoly g;
    std::uint32_t i = 0;
    while (!h.is_zero()) {
        MultiPoly digit = detail::symmetric_mod(h, xi);
        g += digit.times_monomial([&] {
            Monomial m;
            m[v] = i;
            return m;
        }());
        h = detail::divexact_coeffs(h - digit, xi);
        ++i;
    }
    return g;
}

// a, b nonzero, real, integral. Variables before `level` in kEvalOrder are absent.
std::optional<MultiPoly> heugcd(MultiPoly a, MultiPoly b, int level) {
    const mpz_class ca = a.integer_content();
    const mpz_class cb = b.integer_content();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    if (a.is_constant() || b.is_constant()) return MultiPoly(GaussianRational(g));
    a = detail::divexact_coeffs(a, ca);
    b = detail::divexact_coeffs(b, cb);

    int lv = level;
    while (lv < kNumVars && a.degree(kEvalOrder[lv]) == 0 && b.degree(kEvalOrder[lv]) == 0) ++lv;
    if (lv == kNumVars) return MultiPoly(GaussianRational(g));
    const Var v = kEvalOrder[lv];
    const std::uint32_t dv = std::max(a.degree(v), b.degree(v));

    mpz_class xi = 2 * std::min(detail::max_norm(a), detail::max_norm(b)) + 2;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) * (dv + 1) > kMaxEvalBits) return std::nullopt;
        MultiPoly ea = detail::evaluate_integer(a, v, xi);
        MultiPoly eb = detail::evaluate_integer(b, v, xi);
        if (!ea.is_zero() && !eb.is_zero()) {
            if (auto h = heugcd(std::move(ea), std::move(eb), lv + 1)) {
                MultiPoly cand = primitive_positive(interpolate(std::move(*h), v, xi));
                if (!cand.is_zero() && detail::div_integral(a, cand) && detail::div_integral(b, cand)) {
                    return cand.scaled(GaussianRational(g));
                }
            }
        }
        mpz_class r4;
        mpz_root(r4.get_mpz_t(), xi.get_mpz_t(), 4);
        xi = (73794 * xi * r4) / 27011;
    }
    return std::nullopt;
}

// a, b nonzero, real, integral.
MultiPoly gcd_real(const MultiPoly& a, const MultiPoly& b) {
    const Monomial ma = a.monomial_content();
    const Monomial mb = b.monomial_content();
    const Monomial mg = monomial_min(ma, mb);
    MultiPoly ar = a.divided_by_monomial(ma);
    MultiPoly br = b.divided_by_monomial(mb);
    MultiPoly core(1);
    if (!ar.is_constant() && !br.is_constant()) {
        std::array<std::uint32_t, kNumVars> k{};
        for (int v = 0; v < kNumVars; ++v) {
            const Var var = static_cast<Var>(v);
            k[v] = std::gcd(ar.exponent_gcd(var), br.exponent_gcd(var));
            if (k[v] == 0) k[v] = 1;
            ar = ar.deflate(var, k[v]);
            br = br.deflate(var, k[v]);
        }
        if (auto h = heugcd(ar, br, 0)) {
            core = primitive_positive(*h);
            for (int v = 0; v < kNumVars; ++v) core = core.inflate(static_cast<Var>(v), k[v]);
        }
    }
    return core.times_monomial(mg);
}

MultiPoly real_factor(const MultiPoly& p) {
    if (p.is_real()) return p;
    MultiPoly re = p.real_part();
    MultiPoly im = p.imag_part();
    if (re.is_zero()) return im;
    return gcd_real(re, im);
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() && b.is_zero()) return {};
    if (a.is_zero()) return primitive_positive(real_factor(detail::clear_denominators(b)));
    if (b.is_zero()) return primitive_positive(real_factor(detail::clear_denominators(a)));
    if (a.is_monomial() || b.is_monomial())
        return MultiPoly::monomial(monomial_min(a.monomial_content(), b.monomial_content()));
    MultiPoly ra = real_factor(detail::clear_denominators(a));
    MultiPoly rb = real_factor(detail::clear_denominators(b));
    return primitive_positive(gcd_real(ra, rb));
}

}  // namespace localgw
