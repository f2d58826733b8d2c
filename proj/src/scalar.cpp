#include "localgw/scalar.hpp"

#include "poly_kernels.hpp"

#include <stdexcept>
#include <vector>

namespace localgw {

namespace {

// Divides p by a divisor known to be exact.
MultiPoly divide_known(const MultiPoly& p, const MultiPoly& g) {
    if (g.is_one()) return p;
    auto q = exact_divide(p, g);
    if (!q) throw std::logic_error("gcd does not divide operand");
    return std::move(*q);
}

bool is_unit_gcd(const MultiPoly& g) { return g.is_constant(); }

}  // namespace

Scalar::Scalar(const GaussianRational& v) : num_(v), den_(1) { normalize_units(); }

Scalar::Scalar(const MultiPoly& p) : num_(p), den_(1) { normalize_units(); }

Scalar::Scalar(const MultiPoly& num, const MultiPoly& den) {
    if (den.is_zero()) throw std::domain_error("zero divisor");
    if (num.is_zero()) {
        den_ = MultiPoly(1);
        return;
    }
    if (den.is_constant()) {
        num_ = num;
        den_ = den;
    } else {
        MultiPoly g = gcd(num, den);
        num_ = divide_known(num, g);
        den_ = divide_known(den, g);
    }
    normalize_units();
}

Scalar::Scalar(MultiPoly num, MultiPoly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("zero divisor");
    if (num_.is_zero()) {
        den_ = MultiPoly(1);
        return;
    }
    normalize_units();
}

void Scalar::normalize_units() {
    if (num_.is_zero()) {
        den_ = MultiPoly(1);
        return;
    }
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), num_.denominator_lcm().get_mpz_t(), den_.denominator_lcm().get_mpz_t());
    if (l != 1) {
        GaussianRational f{mpq_class(l)};
        num_ = num_.scaled(f);
        den_ = den_.scaled(f);
    }
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), num_.integer_content().get_mpz_t(), den_.integer_content().get_mpz_t());
    const GaussianRational& lc = den_.leading().coeff;
    // Unit u with Re(u * lc) > 0, or Re == 0 < Im.
    GaussianRational u(1);
    if (sgn(lc.re()) < 0) {
        u = GaussianRational(-1);
    } else if (sgn(lc.re()) == 0) {
        u = sgn(lc.im()) > 0 ? GaussianRational(mpq_class(0), mpq_class(-1)) : GaussianRational::i();
    }
    if (c != 1 || !u.is_one()) {
        GaussianRational f = u * GaussianRational(mpq_class(1, 1) / mpq_class(c));
        if (f.is_real() && c != 1) {
            num_ = detail::divexact_coeffs(num_, c);
            den_ = detail::divexact_coeffs(den_, c);
            if (!u.is_one()) {
                num_ = -num_;
                den_ = -den_;
            }
        } else {
            num_ = num_.scaled(f);
            den_ = den_.scaled(f);
        }
    }
}

Scalar Scalar::sigma_pow(long k) {
    if (k >= 0) return Scalar(MultiPoly::variable(Var::sigma, static_cast<std::uint32_t>(k)));
    return Scalar(MultiPoly(1), MultiPoly::variable(Var::sigma, static_cast<std::uint32_t>(-k)), Reduced{});
}

std::optional<GaussianRational> Scalar::constant_value() const {
    if (!is_constant()) return std::nullopt;
    if (num_.is_zero()) return GaussianRational(0);
    return num_.constant_term() / den_.constant_term();
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        MultiPoly n = a.num_ + b.num_;
        if (n.is_zero()) return {};
        if (a.den_.is_constant()) return Scalar(std::move(n), a.den_, Scalar::Reduced{});
        MultiPoly g = gcd(n, a.den_);
        return Scalar(divide_known(n, g), divide_known(a.den_, g), Scalar::Reduced{});
    }
    if (a.den_.is_constant() || b.den_.is_constant()) {
        return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, Scalar::Reduced{});
    }
    MultiPoly g = gcd(a.den_, b.den_);
    if (is_unit_gcd(g)) {
        return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, Scalar::Reduced{});
    }
    MultiPoly ad = divide_known(a.den_, g);
    MultiPoly bd = divide_known(b.den_, g);
    MultiPoly n = a.num_ * bd + b.num_ * ad;
    if (n.is_zero()) return {};
    MultiPoly h = gcd(n, g);
    return Scalar(divide_known(n, h), ad * bd * divide_known(g, h), Scalar::Reduced{});
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    MultiPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    if (!bd.is_constant() && !an.is_constant()) {
        MultiPoly g = gcd(an, bd);
        if (!g.is_one()) {
            an = divide_known(an, g);
            bd = divide_known(bd, g);
        }
    }
    if (!ad.is_constant() && !bn.is_constant()) {
        MultiPoly g = gcd(bn, ad);
        if (!g.is_one()) {
            bn = divide_known(bn, g);
            ad = divide_known(ad, g);
        }
    }
    return Scalar(an * bn, ad * bd, Scalar::Reduced{});
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

Scalar& Scalar::operator+=(const Scalar& o) { return *this = *this + o; }
Scalar& Scalar::operator-=(const Scalar& o) { return *this = *this - o; }
Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }
Scalar& Scalar::operator/=(const Scalar& o) { return *this = *this / o; }

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.num_ == b.num_ && a.den_ == b.den_) return true;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.num_ * b.den_ == b.num_ * a.den_;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("zero divisor");
    return Scalar(den_, num_, Reduced{});
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    if (e == 0) return Scalar(1);
    return Scalar(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), Reduced{});
}

namespace {

// Simultaneous substitution of polynomial values into p.
MultiPoly substitute_polys(const MultiPoly& p, const std::array<std::optional<MultiPoly>, kNumVars>& vals) {
    std::array<std::vector<MultiPoly>, kNumVars> powers;
    for (int v = 0; v < kNumVars; ++v) {
        if (!vals[v]) continue;
        powers[v].push_back(MultiPoly(1));
    }
    auto power = [&](int v, std::uint32_t e) -> const MultiPoly& {
        auto& pw = powers[v];
        while (pw.size() <= e) pw.push_back(pw.back() * *vals[v]);
        return pw[e];
    };
    std::vector<MultiPoly::Term> direct;
    MultiPoly acc;
    for (const auto& t : p.terms()) {
        Monomial m = t.monomial();
        MultiPoly term = MultiPoly(t.coeff);
        Monomial kept = m;
        for (int v = 0; v < kNumVars; ++v) {
            if (!vals[v]) continue;
            kept.e[v] = 0;
        }
        term = term.times_monomial(kept);
        for (int v = 0; v < kNumVars; ++v) {
            if (!vals[v] || m.e[v] == 0) continue;
            term = term * power(v, m.e[v]);
        }
        acc += term;
    }
    return acc;
}

Scalar substitute_scalars(const MultiPoly& p, const std::array<std::optional<Scalar>, kNumVars>& vals) {
    std::array<std::vector<Scalar>, kNumVars> powers;
    for (int v = 0; v < kNumVars; ++v)
        if (vals[v]) powers[v].push_back(Scalar(1));
    auto power = [&](int v, std::uint32_t e) -> const Scalar& {
        auto& pw = powers[v];
        while (pw.size() <= e) pw.push_back(pw.back() * *vals[v]);
        return pw[e];
    };
    Scalar acc;
    for (const auto& t : p.terms()) {
        Monomial m = t.monomial();
        Monomial kept = m;
        for (int v = 0; v < kNumVars; ++v)
            if (vals[v]) kept.e[v] = 0;
        Scalar term(MultiPoly::monomial(kept, t.coeff));
        for (int v = 0; v < kNumVars; ++v) {
            if (!vals[v] || m.e[v] == 0) continue;
            term *= power(v, m.e[v]);
        }
        acc += term;
    }
    return acc;
}

}  // namespace

Scalar Scalar::specialize(const std::optional<Scalar>& t1, const std::optional<Scalar>& t2,
                          const std::optional<Scalar>& sigma) const {
    std::array<std::optional<Scalar>, kNumVars> vals{t1, t2, sigma};
    MultiPoly n = num_, d = den_;
    // Numbers first: they introduce no variables, so order is irrelevant.
    for (int v = 0; v < kNumVars; ++v) {
        if (!vals[v]) continue;
        if (auto c = vals[v]->constant_value()) {
            n = n.evaluate(static_cast<Var>(v), *c);
            d = d.evaluate(static_cast<Var>(v), *c);
            vals[v].reset();
        }
    }
    bool any = false, all_poly = true;
    for (const auto& v : vals) {
        if (!v) continue;
        any = true;
        all_poly = all_poly && v->is_polynomial();
    }
    Scalar nn, dd;
    if (!any) {
        nn = Scalar(n);
        dd = Scalar(d);
    } else if (all_poly) {
        std::array<std::optional<MultiPoly>, kNumVars> pv;
        for (int v = 0; v < kNumVars; ++v)
            if (vals[v]) pv[v] = vals[v]->num() * MultiPoly(vals[v]->den().constant_term().inverse());
        nn = Scalar(substitute_polys(n, pv));
        dd = Scalar(substitute_polys(d, pv));
    } else {
        nn = substitute_scalars(n, vals);
        dd = substitute_scalars(d, vals);
    }
    if (dd.is_zero()) throw std::domain_error("denominator vanishes under specialization");
    return nn / dd;
}

std::complex<double> numeric_value(const MultiPoly& p, std::complex<double> t1, std::complex<double> t2,
                                   std::complex<double> sigma) {
    std::complex<double> acc = 0;
    for (const auto& t : p.terms()) {
        Monomial m = t.monomial();
        std::complex<double> c(t.coeff.re().get_d(), t.coeff.im().get_d());
        acc += c * std::pow(t1, static_cast<int>(m.e[0])) * std::pow(t2, static_cast<int>(m.e[1])) *
               std::pow(sigma, static_cast<int>(m.e[2]));
    }
    return acc;
}

std::complex<double> Scalar::numeric(std::complex<double> t1, std::complex<double> t2,
                                     std::complex<double> sigma) const {
    return numeric_value(num_, t1, t2, sigma) / numeric_value(den_, t1, t2, sigma);
}

std::string Scalar::to_string(const std::array<const char*, kNumVars>& names) const {
    if (den_.is_one()) return num_.to_string(names);
    std::string n = num_.is_monomial() ? num_.to_string(names) : "(" + num_.to_string(names) + ")";
    std::string d = den_.is_monomial() ? den_.to_string(names) : "(" + den_.to_string(names) + ")";
    return n + "/" + d;
}

}  // namespace localgw
