#include "localgw/tqft.hpp"

#include "localgw/characters.hpp"

#include <array>
#include <cstdlib>
#include <stdexcept>

namespace localgw {

namespace {

Scalar t1t2() { return Scalar::t1() * Scalar::t2(); }

// i^n for any integer n.
GaussianRational i_pow(long n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return GaussianRational(1);
        case 1: return GaussianRational::i();
        case 2: return GaussianRational(-1);
        default: return GaussianRational(mpq_class(0), mpq_class(-1));
    }
}

long delta_of(const std::vector<Partition>& ps, int d) {
    long s = 0;
    for (const auto& p : ps) s += d - p.length();
    return s;
}


}  // namespace

// ---------------------------------------------------------------- PantsTensor

PantsTensor::PantsTensor(int degree)
    : degree_(degree), n_(Basis::of(degree).dim()), v_(static_cast<std::size_t>(n_) * n_ * n_) {}

std::size_t PantsTensor::slot(int a, int b, int c) const {
    if (a < 0 || b < 0 || c < 0 || a >= n_ || b >= n_ || c >= n_) throw std::out_of_range("pants index");
    return (static_cast<std::size_t>(a) * n_ + b) * n_ + c;
}

const Scalar& PantsTensor::at(int a, int b, int c) const { return v_[slot(a, b, c)]; }

const Scalar& PantsTensor::at(const Partition& a, const Partition& b, const Partition& c) const {
    const Basis& basis = Basis::of(degree_);
    return at(basis.index(a), basis.index(b), basis.index(c));
}

void PantsTensor::set(int a, int b, int c, const Scalar& v) {
    const std::array<std::array<int, 3>, 6> perms{{{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}}};
    for (const auto& p : perms) v_[slot(p[0], p[1], p[2])] = v;
}

std::size_t PantsTensor::entry_count() const {
    const std::size_t n = n_;
    return n * (n + 1) * (n + 2) / 6;
}

std::vector<std::array<int, 3>> PantsTensor::canonical_triples() const {
    std::vector<std::array<int, 3>> out;
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j)
            for (int k = j; k < n_; ++k) out.push_back({i, j, k});
    return out;
}

bool operator==(const PantsTensor& a, const PantsTensor& b) {
    if (a.degree_ != b.degree_) return false;
    for (const auto& t : a.canonical_triples())
        if (!(a.at(t[0], t[1], t[2]) == b.at(t[0], t[1], t[2]))) return false;
    return true;
}

// ----------------------------------------------------------------- basic series

Scalar cap_level00(const Partition& lambda, Convention c) {
    const int d = lambda.size();
    if (!(lambda == Partition::column(d))) return {};
    Scalar v = Scalar(1) / (Scalar(factorial(d)) * t1t2().pow(d));
    if (c == Convention::starred && d % 2 == 1) v = -v;
    return v;
}

namespace {

// prod_j 1/(2 sin(lambda_j u/2)) = prod_j i sigma^{l_j} / (sigma^{2 l_j} - 1).
Scalar inverse_sines(const Partition& lambda) {
    MultiPoly num(1), den(1);
    for (int p : lambda.parts()) {
        num *= MultiPoly::variable(Var::sigma, p).scaled(GaussianRational::i());
        den *= MultiPoly::variable(Var::sigma, 2 * p) - MultiPoly(1);
    }
    return Scalar(num, den);
}

}  // namespace

Scalar cap_cy(const Partition& lambda, Side side, Convention c) {
    const int d = lambda.size();
    const int l = lambda.length();
    const Scalar t = side == Side::left ? Scalar::t2() : Scalar::t1();
    Scalar v = Scalar((d % 2 == 0) ? 1 : -1) * (-t).pow(-l) / Scalar(lambda.zed()) * inverse_sines(lambda);
    if (c == Convention::starred) v *= Scalar(i_pow(-l));  // (-i)^{l}
    return v;
}

Scalar cap_cy_shifted(const Partition& lambda, Side side) {
    return Scalar::sigma_pow(lambda.size()) * cap_cy(lambda, side, Convention::starred);
}

Scalar pants_dd2(int d) {
    if (d < 2) throw std::invalid_argument("pants_dd2 needs d >= 2");
    return Scalar(mpq_class(1, 2)) * (Scalar::t1() + Scalar::t2()) / t1t2() * diagonal_f(d);
}

Scalar starred_metric_weight(const Partition& alpha) {
    return Scalar(alpha.zed()) * (-t1t2()).pow(alpha.length());
}

// -------------------------------------------------------------- reconstruction

PantsTensor reconstruct_pants(int d) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    PantsTensor t(d);
    if (d == 1) {
        t.set(0, 0, 0, Scalar(-1) / t1t2());
        return t;
    }
    const Basis& basis = Basis::of(d);
    const int n = basis.dim();
    const int unit = basis.index(Partition::column(d));
    const OperatorMatrix& m2 = m2_matrix(d);

    // Krylov matrix: column r is M2^r |1^d>.
    OperatorMatrix w(d, n);
    std::vector<Scalar> col(n);
    col[unit] = Scalar(1);
    for (int r = 0; r < n; ++r) {
        for (int i = 0; i < n; ++i) w(i, r) = col[i];
        if (r + 1 < n) col = m2.apply(col);
    }
    OperatorMatrix winv;
    try {
        winv = w.inverse();
    } catch (const std::domain_error&) {
        throw std::domain_error("singular system: Krylov matrix of M2 in degree " + std::to_string(d) +
                                " is not invertible");
    }

    std::vector<OperatorMatrix> powers;
    powers.push_back(OperatorMatrix::identity(d));
    for (int r = 1; r < n; ++r) powers.push_back(powers.back() * m2);

    // X_{mu gamma nu} = (-1)^d <mu|mu> (sum_r Winv(r, gamma) M2^r)_{mu nu}.
    std::vector<Scalar> x(static_cast<std::size_t>(n) * n * n);
    auto at = [&](int a, int b, int c) -> Scalar& { return x[(static_cast<std::size_t>(a) * n + b) * n + c]; };
    std::vector<Scalar> ip(n);
    for (int mu = 0; mu < n; ++mu) {
        ip[mu] = inner_product(basis[mu], basis[mu]);
        if (d % 2 == 1) ip[mu] = -ip[mu];
    }
    for (int g = 0; g < n; ++g) {
        for (int mu = 0; mu < n; ++mu) {
            for (int nu = 0; nu < n; ++nu) {
                Scalar s;
                for (int r = 0; r < n; ++r) {
                    if (winv(r, g).is_zero() || powers[r](mu, nu).is_zero()) continue;
                    s += winv(r, g) * powers[r](mu, nu);
                }
                at(mu, g, nu) = ip[mu] * s;
            }
        }
    }
    for (const auto& tr : t.canonical_triples()) {
        const int a = tr[0], b = tr[1], c = tr[2];
        const Scalar& v = at(a, b, c);
        const std::array<std::array<int, 3>, 5> others{{{a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}}};
        for (const auto& o : others) {
            if (!(at(o[0], o[1], o[2]) == v)) {
                throw std::logic_error("pants tensor not symmetric at (" + basis[a].to_string() + " | " +
                                       basis[b].to_string() + " | " + basis[c].to_string() + ")");
            }
        }
        t.set(a, b, c, v);
    }
    return t;
}

// ------------------------------------------------------------ Frobenius algebra

OperatorMatrix FrobeniusData::multiplication(const std::vector<Scalar>& xv) const {
    OperatorMatrix m = OperatorMatrix::zero(degree);
    for (std::size_t g = 0; g < xv.size(); ++g) {
        if (xv[g].is_zero()) continue;
        m = m + mult[g].scaled(xv[g]);
    }
    return m;
}

FrobeniusData build_frobenius(int d, const PantsTensor& pants) {
    if (pants.degree() != d) throw std::invalid_argument("pants tensor degree mismatch");
    const Basis& basis = Basis::of(d);
    const int n = basis.dim();
    FrobeniusData f;
    f.degree = d;
    f.pants = pants;
    std::vector<Scalar> w(n);
    for (int a = 0; a < n; ++a) {
        w[a] = starred_metric_weight(basis[a]);
        f.metric.push_back(w[a].inverse());
        f.counit.push_back(cap_level00(basis[a], Convention::starred));
        f.unit.push_back(f.counit.back() * w[a]);
    }
    for (int g = 0; g < n; ++g) {
        OperatorMatrix m = OperatorMatrix::zero(d);
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) m(mu, nu) = pants.at(g, nu, mu) * w[mu];
        f.mult.push_back(std::move(m));
    }
    if (!(f.multiplication(f.unit) == OperatorMatrix::identity(d))) throw std::domain_error("unit not identity");

    f.caps[{0, 0}] = f.unit;
    for (Side side : {Side::left, Side::right}) {
        std::vector<Scalar> c(n);
        for (int a = 0; a < n; ++a) c[a] = cap_cy_shifted(basis[a], side) * w[a];
        const Level neg = side == Side::left ? Level{-1, 0} : Level{0, -1};
        const Level pos = side == Side::left ? Level{1, 0} : Level{0, 1};
        f.caps[pos] = f.multiplication(c).inverse().apply(f.unit);
        f.caps[neg] = std::move(c);
    }
    return f;
}

Operators starred_operators(const FrobeniusData& f) {
    const Basis& basis = Basis::of(f.degree);
    const int n = basis.dim();
    std::vector<Scalar> h(n);
    for (int lam = 0; lam < n; ++lam) {
        const Scalar wl = starred_metric_weight(basis[lam]);
        for (int g = 0; g < n; ++g) {
            if (f.mult[lam](g, lam).is_zero()) continue;
            h[g] += wl * f.mult[lam](g, lam);
        }
    }
    return {f.multiplication(h), f.multiplication(f.caps.at({-1, 0})), f.multiplication(f.caps.at({0, -1}))};
}

OperatorMatrix unstar_operator(const OperatorMatrix& starred, int genus, int level_sum) {
    const int d = starred.degree();
    const Basis& basis = Basis::of(d);
    OperatorMatrix out = starred;
    for (int mu = 0; mu < starred.size(); ++mu) {
        for (int nu = 0; nu < starred.size(); ++nu) {
            const long lm = basis[mu].length(), ln = basis[nu].length();
            const long expo = static_cast<long>(d) * (2 - 2 * genus + level_sum) - (2L * d - lm - ln);
            GaussianRational f = i_pow(expo);
            if (lm % 2 == 1) f = -f;
            out(mu, nu) = starred(mu, nu) * Scalar(f);
        }
    }
    return out;
}

Operators operators(const FrobeniusData& f) {
    Operators s = starred_operators(f);
    const Scalar unshift = Scalar::sigma_pow(-f.degree);
    return {unstar_operator(s.G, 1, 0), unstar_operator(s.A.scaled(unshift), 0, -1),
            unstar_operator(s.Abar.scaled(unshift), 0, -1)};
}

// ------------------------------------------------------------------ evaluation

void validate(const LocalCurveQuery& q) {
    if (q.degree < 1) throw std::invalid_argument("degree must be positive");
    if (q.genus < 0) throw std::invalid_argument("genus must be nonnegative");
    if (q.series_order < 0) throw std::invalid_argument("series order must be nonnegative");
    for (const auto& p : q.boundary)
        if (p.size() != q.degree)
            throw std::invalid_argument("boundary partition " + p.to_string() + " does not have size " +
                                        std::to_string(q.degree));
}

long star_exponent(const LocalCurveQuery& q) {
    return static_cast<long>(q.degree) * (2 - 2 * q.genus + q.level.k1 + q.level.k2) - delta_of(q.boundary, q.degree);
}

long rational_shift(const LocalCurveQuery& q) {
    return static_cast<long>(q.degree) * (2 - 2 * q.genus + q.level.k1 + q.level.k2);
}

namespace {

bool sigma_even(const MultiPoly& p) {
    for (const auto& t : p.terms())
        if (t.monomial()[Var::sigma] % 2 != 0) return false;
    return true;
}

// sigma^{2k} -> (-1)^k q^k.
MultiPoly sigma_squared_to_q(const MultiPoly& p) {
    std::vector<MultiPoly::Term> out;
    for (const auto& t : p.terms()) {
        Monomial m = t.monomial();
        const std::uint32_t k = m[Var::sigma] / 2;
        m[Var::sigma] = k;
        out.push_back({m.key(), k % 2 ? -t.coeff : t.coeff});
    }
    return MultiPoly::from_sorted_terms(std::move(out));
}

}  // namespace

Scalar to_q_form(const Scalar& a, long shift) {
    const Scalar b = a * Scalar::sigma_pow(shift);
    MultiPoly num = b.num(), den = b.den();
    if (!sigma_even(num) || !sigma_even(den)) {
        // An even function keeps num * den(-sigma) even even when the gcd missed a factor.
        const MultiPoly conj = den.substitute(Var::sigma, -MultiPoly::variable(Var::sigma));
        num = num * conj;
        den = den * conj;
        if (!sigma_even(num) || !sigma_even(den)) throw std::domain_error("odd σ-powers remain");
    }
    return Scalar(sigma_squared_to_q(num), sigma_squared_to_q(den));
}

Scalar from_q_form(const Scalar& q_form) {
    return q_form.specialize(std::nullopt, std::nullopt, -Scalar::sigma().pow(2));
}

Engine::Entry& Engine::entry(int d) { return entries_[d]; }

void Engine::install_pants(const PantsTensor& pants) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    Entry& e = entry(pants.degree());
    e = Entry{};
    e.pants = pants;
}

const FrobeniusData& Engine::frobenius(int d) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    Entry& e = entry(d);
    if (!e.frob) {
        if (!e.pants) e.pants = reconstruct_pants(d);
        e.frob = std::make_unique<FrobeniusData>(build_frobenius(d, *e.pants));
    }
    return *e.frob;
}

const Operators& Engine::starred(int d) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    Entry& e = entry(d);
    if (!e.ops) e.ops = std::make_unique<Operators>(starred_operators(frobenius(d)));
    return *e.ops;
}

const OperatorMatrix& Engine::power(int d, int which, long ex) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    Entry& e = entry(d);
    const auto key = std::make_pair(which, ex);
    if (auto it = e.powers.find(key); it != e.powers.end()) return it->second;
    const Operators& ops = starred(d);
    const OperatorMatrix& base = which == 0 ? ops.G : which == 1 ? ops.A : ops.Abar;
    OperatorMatrix m;
    if (ex == 0) {
        m = OperatorMatrix::identity(d);
    } else if (ex == 1) {
        m = base;
    } else if (ex == -1 && which > 0) {
        m = frobenius(d).multiplication(frobenius(d).caps.at(which == 1 ? Level{1, 0} : Level{0, 1}));
    } else if (ex == -1) {
        try {
            m = base.inverse();
        } catch (const std::domain_error&) {
            static const char* names[] = {"G", "A", "Abar"};
            throw std::domain_error(std::string("operator not invertible: ") + names[which] + " in degree " +
                                    std::to_string(d));
        }
    } else {
        const long step = ex > 0 ? 1 : -1;
        m = power(d, which, ex - step) * power(d, which, step);
    }
    return e.powers.emplace(key, std::move(m)).first->second;
}

std::vector<Scalar> Engine::closing_vector(const LocalCurveQuery& q) {
    const int d = q.degree;
    std::vector<Scalar> v = frobenius(d).unit;
    auto step = [&](int which, long ex) {
        const OperatorMatrix& m = power(d, which, ex > 0 ? 1 : -1);
        for (long k = 0; k < std::abs(ex); ++k) v = m.apply(v);
    };
    step(2, -q.level.k2);
    step(1, -q.level.k1);
    step(0, q.genus);
    return v;
}

Scalar Engine::evaluate_starred(const LocalCurveQuery& q) {
    validate(q);
    if (q.boundary.empty()) {
        // tr(L_x) = eps(h x) with h the handle element, so the trace is a counit.
        const Scalar shift = Scalar::sigma_pow(static_cast<long>(q.degree) * (q.level.k1 + q.level.k2));
        return shift * dot(frobenius(q.degree).counit, closing_vector(q));
    }
    InsertionOrder order;
    for (int i = static_cast<int>(q.boundary.size()) - 1; i >= 1; --i) order.push_back(i);
    return evaluate_starred_ordered(q, 0, order);
}

Scalar Engine::evaluate_starred_trace(const LocalCurveQuery& q) {
    validate(q);
    if (!q.boundary.empty()) throw std::invalid_argument("trace form needs a closed surface");
    const int d = q.degree;
    const OperatorMatrix m =
        power(d, 0, q.genus - 1) * power(d, 1, -q.level.k1) * power(d, 2, -q.level.k2);
    return Scalar::sigma_pow(static_cast<long>(d) * (q.level.k1 + q.level.k2)) * m.trace();
}

Scalar Engine::evaluate_starred_ordered(const LocalCurveQuery& q, int first_closed, const InsertionOrder& order) {
    validate(q);
    if (q.boundary.empty()) return evaluate_starred(q);
    const int d = q.degree;
    const FrobeniusData& f = frobenius(d);
    const Basis& basis = Basis::of(d);
    std::vector<bool> used(q.boundary.size(), false);
    if (first_closed < 0 || first_closed >= static_cast<int>(q.boundary.size()))
        throw std::invalid_argument("bad closing position");
    used[first_closed] = true;
    std::vector<Scalar> v = closing_vector(q);
    for (int pos : order) {
        if (pos < 0 || pos >= static_cast<int>(q.boundary.size()) || used[pos])
            throw std::invalid_argument("insertion order is not a permutation of the remaining boundaries");
        used[pos] = true;
        v = f.mult[basis.index(q.boundary[pos])].apply(v);
    }
    for (bool u : used)
        if (!u) throw std::invalid_argument("insertion order misses a boundary");
    const int c = basis.index(q.boundary[first_closed]);
    const Scalar shift = Scalar::sigma_pow(static_cast<long>(d) * (q.level.k1 + q.level.k2));
    return shift * f.metric[c] * v[c];
}

EvaluationResult Engine::evaluate(const LocalCurveQuery& q) {
    EvaluationResult r;
    const Scalar star = evaluate_starred(q);
    const long n = star_exponent(q);
    r.sigma_shift = rational_shift(q);
    r.q_form = to_q_form(star, r.sigma_shift);
    if (q.convention == Convention::starred) {
        r.value = star;
        r.unit_power = 0;
    } else {
        r.value = star * Scalar(i_pow(n));
        r.unit_power = static_cast<int>(((n % 4) + 4) % 4);
    }
    if (q.mode == OutputMode::u_series) r.series = expand_u_series(r.value, q.series_order);
    return r;
}

namespace {

// Square matrix of u-series; entry (r, c) as in OperatorMatrix.
class SeriesMatrix {
public:
    SeriesMatrix(int n, int precision) : n_(n), a_(static_cast<std::size_t>(n) * n, USeries(precision, {})) {}
    static SeriesMatrix identity(int n, int precision) {
        SeriesMatrix m(n, precision);
        for (int i = 0; i < n; ++i) m(i, i) = USeries::constant(Scalar(1), precision - 1);
        return m;
    }
    int size() const { return n_; }
    USeries& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }
    const USeries& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }

    friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
        SeriesMatrix r(a.n_, 0);
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j) {
                USeries s = a(i, 0) * b(0, j);
                for (int k = 1; k < a.n_; ++k) s = s + a(i, k) * b(k, j);
                r(i, j) = s;
            }
        return r;
    }

    std::vector<USeries> apply(const std::vector<USeries>& v) const {
        std::vector<USeries> out;
        for (int i = 0; i < n_; ++i) {
            USeries s = (*this)(i, 0) * v[0];
            for (int k = 1; k < n_; ++k) s = s + (*this)(i, k) * v[k];
            out.push_back(s);
        }
        return out;
    }

    USeries trace() const {
        USeries s = (*this)(0, 0);
        for (int i = 1; i < n_; ++i) s = s + (*this)(i, i);
        return s;
    }

    // Gauss-Jordan with the pivot of least valuation in each column.
    SeriesMatrix inverse(int precision) const {
        SeriesMatrix a = *this;
        SeriesMatrix inv = identity(n_, precision);
        for (int col = 0; col < n_; ++col) {
            int piv = -1;
            for (int r = col; r < n_; ++r) {
                const USeries x = a(r, col).normalized();
                if (x.coeffs().empty()) continue;
                if (piv < 0 || x.offset() < a(piv, col).normalized().offset()) piv = r;
            }
            if (piv < 0) throw std::domain_error("series matrix not invertible at this precision");
            for (int c = 0; c < n_; ++c) {
                std::swap(a(piv, c), a(col, c));
                std::swap(inv(piv, c), inv(col, c));
            }
            const USeries p = a(col, col).inverse();
            for (int c = 0; c < n_; ++c) {
                a(col, c) = a(col, c) * p;
                inv(col, c) = inv(col, c) * p;
            }
            for (int r = 0; r < n_; ++r) {
                if (r == col) continue;
                const USeries f = a(r, col);
                if (f.normalized().coeffs().empty() && f.precision() >= precision) continue;
                for (int c = 0; c < n_; ++c) {
                    a(r, c) = a(r, c) - f * a(col, c);
                    inv(r, c) = inv(r, c) - f * inv(col, c);
                }
            }
        }
        return inv;
    }

    SeriesMatrix pow(long e, int precision) const {
        if (e < 0) return inverse(precision).pow(-e, precision);
        SeriesMatrix acc = identity(n_, precision);
        for (long k = 0; k < e; ++k) acc = acc * (*this);
        return acc;
    }

private:
    int n_;
    std::vector<USeries> a_;
};

}  // namespace

USeries Engine::evaluate_series_glued(const LocalCurveQuery& q, int order,
                                      const std::optional<std::array<GaussianRational, 2>>& t_point) {
    validate(q);
    if (order < 0) throw std::invalid_argument("series order must be nonnegative");
    const int d = q.degree;
    const Basis& basis = Basis::of(d);
    const int n = basis.dim();
    const PantsTensor& pants = frobenius(d).pants;

    auto point = [&](const Scalar& s) {
        if (!t_point) return s;
        return s.specialize(Scalar((*t_point)[0]), Scalar((*t_point)[1]), std::nullopt);
    };

    // Poles of the caps cost a few orders; retry with a doubled margin if short.
    for (int margin = d + 2;; margin *= 2) {
        const int work = order + margin;
        auto series = [&](const Scalar& s) { return expand_u_series(point(s), work); };

        // Unstarred metric weights and blocks.
        std::vector<Scalar> w(n);
        for (int a = 0; a < n; ++a) w[a] = Scalar(basis[a].zed()) * t1t2().pow(basis[a].length());
        std::vector<SeriesMatrix> mult(n, SeriesMatrix(n, work + 1));
        for (int g = 0; g < n; ++g)
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu) {
                    const long e = basis[g].length() + basis[mu].length() + basis[nu].length() - d;
                    mult[g](mu, nu) = series(pants.at(g, nu, mu) * Scalar(i_pow(e)) * w[mu]);
                }
        auto multiplication = [&](const std::vector<USeries>& x) {
            SeriesMatrix m(n, work + 1);
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu) {
                    USeries s = x[0] * mult[0](mu, nu);
                    for (int g = 1; g < n; ++g) s = s + x[g] * mult[g](mu, nu);
                    m(mu, nu) = s;
                }
            return m;
        };
        std::vector<USeries> h(n, USeries(work + 1, {})), cl, cr, unit;
        for (int g = 0; g < n; ++g) {
            h[g] = mult[0](g, 0).scaled(point(w[0]));
            for (int lam = 1; lam < n; ++lam) h[g] = h[g] + mult[lam](g, lam).scaled(point(w[lam]));
            cl.push_back(series(cap_cy(basis[g], Side::left) * w[g]));
            cr.push_back(series(cap_cy(basis[g], Side::right) * w[g]));
            unit.push_back(series(cap_level00(basis[g]) * w[g]));
        }
        const SeriesMatrix gop = multiplication(h);
        const SeriesMatrix aop = multiplication(cl);
        const SeriesMatrix bop = multiplication(cr);

        USeries result;
        try {
            if (q.boundary.empty()) {
                result = (gop.pow(q.genus - 1, work + 1) * aop.pow(-q.level.k1, work + 1) *
                          bop.pow(-q.level.k2, work + 1))
                             .trace();
            } else {
                std::vector<USeries> v = unit;
                v = bop.pow(-q.level.k2, work + 1).apply(v);
                v = aop.pow(-q.level.k1, work + 1).apply(v);
                for (int k = 0; k < q.genus; ++k) v = gop.apply(v);
                for (std::size_t i = q.boundary.size() - 1; i >= 1; --i)
                    v = mult[basis.index(q.boundary[i])].apply(v);
                const int c = basis.index(q.boundary[0]);
                result = v[c].scaled(point(w[c].inverse()));
            }
        } catch (const std::domain_error&) {
            if (margin > 64 * order + 256) throw;
            continue;
        }
        if (result.precision() > order) return result.truncated(order + 1);
        if (margin > 64 * order + 256) throw std::runtime_error("glued series lost precision");
    }
}

Engine& default_engine() {
    static Engine engine;
    return engine;
}

EvaluationResult evaluate(const LocalCurveQuery& q) { return default_engine().evaluate(q); }

}  // namespace localgw
