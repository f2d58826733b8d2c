#include "localgw/verify.hpp"

#include "localgw/antidiag.hpp"
#include "localgw/characters.hpp"
#include "localgw/fock.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace localgw {

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"all", "tqft", "degree2", "antidiag", "hurwitz", "rationality", "fock"};
    return names;
}

bool is_suite(const std::string& name) {
    const auto& n = suite_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

Scalar two_sin_half(int k) {
    // 2 sin(k u/2) = -i (sigma^k - sigma^-k).
    return Scalar(-Scalar::i()) * (Scalar::sigma_pow(k) - Scalar::sigma_pow(-k));
}

Scalar tan_half() {
    const Scalar s2 = Scalar::sigma_pow(2);
    return Scalar(-Scalar::i()) * (s2 - Scalar(1)) / (s2 + Scalar(1));
}

Scalar degree1_formula(int g, int k1, int k2) {
    const Scalar t1 = Scalar::t1(), t2 = Scalar::t2();
    return (t1 * t2).pow(g - 1) * t1.pow(-k1) * t2.pow(-k2) * two_sin_half(1).pow(k1 + k2);
}

Scalar degree2_diagonal_formula(int g, int k1, int k2) {
    const Scalar t = Scalar::t1();
    const Scalar s = two_sin_half(1) * Scalar(mpq_class(1, 2));
    const int e = k1 + k2 + 1 - g;
    return t.pow(2L * (2 * g - 2 - k1 - k2)) * Scalar(4).pow(g - 1) * two_sin_half(1).pow(2L * (k1 + k2)) *
           ((Scalar(1) + s).pow(e) + (Scalar(1) - s).pow(e));
}

Scalar degree2_cy_formula(int g) {
    const Scalar s = two_sin_half(1) * Scalar(mpq_class(1, 2));
    return two_sin_half(1).pow(4L * g - 4) *
           ((Scalar(4) - Scalar(4) * s).pow(g - 1) + (Scalar(4) + Scalar(4) * s).pow(g - 1));
}

std::optional<Scalar> u0_structure_constant(const Partition& a, const Partition& b, const Partition& c) {
    const int d = a.size();
    const long e2 = d - a.length() - b.length() + c.length();
    if (e2 % 2 != 0) return std::nullopt;
    const mpq_class h = hurwitz3(a, b, c) * mpq_class(c.zed());
    return Scalar(h) * (Scalar::t1() * Scalar::t2()).pow(e2 / 2);
}

namespace {

using Checks = std::vector<CheckResult>;

void add(Checks& out, std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::move(detail)});
}

std::string dstr(int d) { return "d=" + std::to_string(d); }

LocalCurveQuery closed(int d, int g, int k1, int k2) {
    LocalCurveQuery q;
    q.degree = d;
    q.genus = g;
    q.level = {k1, k2};
    return q;
}

Scalar point_tt(const Scalar& s) { return s.specialize(Scalar::t1(), Scalar::t1(), std::nullopt); }

// Raised-index pants in the unstarred convention: GW(0|0,0)^c_{ab}.
Scalar unstarred_raised_pants(const FrobeniusData& f, int a, int b, int c) {
    const Basis& basis = Basis::of(f.degree);
    const long e = basis[a].length() + basis[b].length() + basis[c].length() - f.degree;
    Scalar ie = Scalar::i().pow(e);
    return f.pants.at(a, b, c) * ie * Scalar(basis[c].zed()) *
           (Scalar::t1() * Scalar::t2()).pow(basis[c].length());
}

// ---------------------------------------------------------------------- tqft

void suite_tqft(Checks& out, int max_d, Engine& engine) {
    for (int d = 1; d <= std::min(max_d, 5); ++d) {
        const FrobeniusData& f = engine.frobenius(d);
        add(out, "tqft.unit " + dstr(d), f.multiplication(f.unit) == OperatorMatrix::identity(d));
    }
    for (int d = 1; d <= std::min(max_d, 4); ++d) {
        const FrobeniusData& f = engine.frobenius(d);
        const int n = f.pants.dim();
        bool assoc = true;
        for (int a = 0; a < n && assoc; ++a)
            for (int b = a; b < n && assoc; ++b) {
                std::vector<Scalar> eb(n);
                eb[b] = Scalar(1);
                assoc = f.mult[a] * f.mult[b] == f.multiplication(f.mult[a].apply(eb));
            }
        add(out, "tqft.associativity " + dstr(d), assoc);
        const Operators& o = engine.starred(d);
        const bool comm = o.G * o.A == o.A * o.G && o.G * o.Abar == o.Abar * o.G && o.A * o.Abar == o.Abar * o.A;
        add(out, "tqft.commuting_operators " + dstr(d), comm);
    }
    for (int d = 1; d <= std::min(max_d, 3); ++d) {
        const Basis& basis = Basis::of(d);
        LocalCurveQuery q = closed(d, 1, -1, 0);
        for (int i = 0; i < 4; ++i) q.boundary.push_back(basis[(i * 7 + 1) % basis.dim()]);
        const Scalar ref = engine.evaluate_starred(q);
        bool same = true;
        for (int first = 0; first < 4 && same; ++first) {
            InsertionOrder rest;
            for (int i = 0; i < 4; ++i)
                if (i != first) rest.push_back(i);
            do {
                same = engine.evaluate_starred_ordered(q, first, rest) == ref;
            } while (same && std::next_permutation(rest.begin(), rest.end()));
        }
        add(out, "tqft.insertion_order " + dstr(d), same);
        bool trace = true;
        for (int g = 0; g <= 2 && trace; ++g) {
            const LocalCurveQuery c = closed(d, g, g - 1, 1);
            trace = engine.evaluate_starred(c) == engine.evaluate_starred_trace(c);
        }
        add(out, "tqft.trace_form " + dstr(d), trace);
    }
}

// ------------------------------------------------------------------- degree2

void suite_degree2(Checks& out, Engine& engine) {
    bool d1 = true;
    for (int g = 0; g <= 3; ++g)
        for (int k1 = -2; k1 <= 2; ++k1)
            for (int k2 = -2; k2 <= 2; ++k2) d1 = d1 && engine.evaluate(closed(1, g, k1, k2)).value == degree1_formula(g, k1, k2);
    add(out, "degree2.degree1_formula", d1);

    const Scalar t1 = Scalar::t1(), t2 = Scalar::t2();
    const FrobeniusData& f = engine.frobenius(2);
    const Partition r2 = Partition::row(2), c2 = Partition::column(2);
    const Basis& basis = Basis::of(2);
    auto unstarred_pants = [&](const Partition& a, const Partition& b, const Partition& c) {
        const long e = a.length() + b.length() + c.length() - 2;
        return f.pants.at(a, b, c) * Scalar::i().pow(e);
    };
    const Scalar half(mpq_class(1, 2));
    const struct {
        const char* name;
        Scalar got, want;
    } table[] = {
        {"P(1,1,1)", engine.frobenius(1).pants.at(0, 0, 0) * Scalar(-1), Scalar(1) / (t1 * t2)},
        {"P(11,11,11)", unstarred_pants(c2, c2, c2), half / (t1 * t2).pow(2)},
        {"P(11,11,2)", unstarred_pants(c2, c2, r2), Scalar(0)},
        {"P(11,2,2)", unstarred_pants(c2, r2, r2), half / (t1 * t2)},
        {"P(2,2,2)", unstarred_pants(r2, r2, r2), -half * (t1 + t2) / (t1 * t2) * tan_half()},
        {"C(1)", cap_cy(Partition::row(1), Side::left), Scalar(1) / t2 / two_sin_half(1)},
        {"C(11)", cap_cy(c2, Side::left), Scalar(1) / (t2 * t2) / (Scalar(2) * two_sin_half(1).pow(2))},
        {"C(2)", cap_cy(r2, Side::left), Scalar(-1) / t2 / (Scalar(2) * two_sin_half(2))},
    };
    for (const auto& e : table) add(out, std::string("degree2.table ") + e.name, e.got == e.want);

    const Operators u = operators(f);
    const int i11 = basis.index(c2), i2 = basis.index(r2);
    const Scalar tt = t1 * t2, s = t1 + t2, th = tan_half();
    const Scalar four_s2 = two_sin_half(1).pow(2);
    const Scalar cos2 = (Scalar::sigma_pow(1) + Scalar::sigma_pow(-1)).pow(2);  // (2 cos(u/2))^2
    const bool g_ok = u.G(i11, i11) == Scalar(4) * tt * tt && u.G(i11, i2) == Scalar(-2) * tt * tt * s * th &&
                      u.G(i2, i11) == Scalar(-2) * tt * s * th &&
                      u.G(i2, i2) == Scalar(4) * tt * tt + Scalar(2) * tt * s * s * th * th;
    add(out, "degree2.G_matrix", g_ok);
    const bool a_ok = u.A(i11, i11) == t1 * t1 / four_s2 && u.A(i11, i2) == -(t1 * t1 * t2) / two_sin_half(2) &&
                      u.A(i2, i11) == -t1 / two_sin_half(2) && u.A(i2, i2) == t1 * s / cos2 + t1 * t1 / four_s2;
    add(out, "degree2.A_matrix", a_ok);

    bool diag = true;
    for (int g = 0; g <= 3; ++g)
        for (int k1 = -2; k1 <= 2; ++k1)
            for (int k2 = -2; k2 <= 2; ++k2)
                diag = diag && point_tt(engine.evaluate(closed(2, g, k1, k2)).value) == degree2_diagonal_formula(g, k1, k2);
    add(out, "degree2.diagonal_formula", diag);
    bool cy = true;
    for (int g = 0; g <= 3; ++g) cy = cy && point_tt(engine.evaluate(closed(2, g, g - 1, g - 1)).value) == degree2_cy_formula(g);
    add(out, "degree2.calabi_yau", cy);
}

// ------------------------------------------------------------------ antidiag

void suite_antidiag(Checks& out, int max_d, Engine& engine) {
    for (int d = 1; d <= max_d; ++d) {
        int bad = 0;
        for (int g = 0; g <= 3; ++g)
            for (int k1 = -2; k1 <= 2; ++k1)
                for (int k2 = -2; k2 <= 2; ++k2)
                    if (!(restrict_antidiagonal(engine.evaluate(closed(d, g, k1, k2)).value) ==
                          closed_formula({d, g, k1, k2})))
                        ++bad;
        add(out, "antidiag.closed_formula " + dstr(d), bad == 0, bad ? std::to_string(bad) + " mismatches" : "");
        const PantsTensor& p = engine.frobenius(d).pants;
        bool constant = true;
        for (const auto& t : p.canonical_triples())
            constant = constant && !restrict_antidiagonal(p.at(t[0], t[1], t[2])).depends_on(Var::sigma);
        add(out, "antidiag.constant_pants " + dstr(d), constant);
    }
    for (int d = 1; d <= std::min(max_d, 3); ++d) {
        const IdempotentBasis b = idempotent_basis_change(d);
        const Operators u = operators(engine.frobenius(d));
        const Basis& basis = Basis::of(d);
        auto conj = [&](const OperatorMatrix& m) {
            return b.from_idempotent * m.map(restrict_antidiagonal) * b.to_idempotent;
        };
        const OperatorMatrix g = conj(u.G), a = conj(u.A), ab = conj(u.Abar);
        bool ok = b.from_idempotent * b.to_idempotent == OperatorMatrix::identity(d) && g.is_diagonal() &&
                  a.is_diagonal() && ab.is_diagonal();
        for (int r = 0; r < basis.dim() && ok; ++r)
            ok = g(r, r) == handle_eigenvalue(basis[r]) && a(r, r) == left_cap_eigenvalue(basis[r]) &&
                 ab(r, r) == right_cap_eigenvalue(basis[r]);
        add(out, "antidiag.eigenvalues " + dstr(d), ok);
    }
}

// ------------------------------------------------------------------- hurwitz

void suite_hurwitz(Checks& out, int max_d, Engine& engine) {
    for (int d = 1; d <= max_d; ++d) {
        const FrobeniusData& f = engine.frobenius(d);
        const Basis& basis = Basis::of(d);
        const int n = basis.dim();
        int bad = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    const Scalar at1 = unstarred_raised_pants(f, a, b, c).specialize(std::nullopt, std::nullopt, Scalar(1));
                    const auto want = u0_structure_constant(basis[a], basis[b], basis[c]);
                    if (!(at1 == (want ? *want : Scalar(0)))) ++bad;
                }
        add(out, "hurwitz.u0_structure_constants " + dstr(d), bad == 0, bad ? std::to_string(bad) + " mismatches" : "");
    }
    add(out, "hurwitz.examples", hurwitz3(Partition::row(2), Partition::row(2), Partition::column(2)) == mpq_class(1, 2) &&
                                     hurwitz3(Partition::row(3), Partition::row(3), Partition::column(3)) == mpq_class(1, 3) &&
                                     hurwitz3(Partition::row(1), Partition::row(1), Partition::row(1)) == 1);
}

// --------------------------------------------------------------- rationality

bool series_real(const USeries& s) {
    for (const auto& c : s.coeffs())
        if (!c.num().is_real() || !c.den().is_real()) return false;
    return true;
}

void suite_rationality(Checks& out, int max_d, Engine& engine, int order) {
    const std::array<GaussianRational, 2> pt{GaussianRational(mpq_class(2, 3)), GaussianRational(mpq_class(5, 7))};
    const Level levels[] = {{0, 0}, {-1, 0}, {1, -1}, {-1, -1}};
    for (int d = 1; d <= max_d; ++d) {
        const Basis& basis = Basis::of(d);
        int bad_q = 0, bad_series = 0, bad_real = 0, total = 0;
        std::string first;
        for (int g = 0; g <= 1; ++g)
            for (const Level& lv : levels)
                for (int r = 0; r <= 3; ++r) {
                    LocalCurveQuery q = closed(d, g, lv.k1, lv.k2);
                    for (int i = 0; i < r; ++i) q.boundary.push_back(basis[(3 * i + g + r) % basis.dim()]);
                    ++total;
                    EvaluationResult res;
                    try {
                        res = engine.evaluate(q);
                    } catch (const std::domain_error&) {
                        ++bad_q;
                        continue;
                    }
                    if (!series_real(expand_u_series(res.value, 4))) ++bad_real;
                    const USeries exact = expand_u_series(res.value.specialize(Scalar(pt[0]), Scalar(pt[1]), std::nullopt), order);
                    const USeries glued = engine.evaluate_series_glued(q, order, pt);
                    if (!exact.agrees_with(glued) || glued.precision() <= order) {
                        if (first.empty()) {
                            std::ostringstream os;
                            os << "g=" << g << " level=" << lv.k1 << "," << lv.k2 << " r=" << r;
                            first = os.str();
                        }
                        ++bad_series;
                    }
                }
        add(out, "rationality.q_form " + dstr(d), bad_q == 0, std::to_string(total) + " cases");
        add(out, "rationality.glued_series " + dstr(d), bad_series == 0, first);
        add(out, "rationality.real_coefficients " + dstr(d), bad_real == 0);
    }
}

// ---------------------------------------------------------------------- fock

void suite_fock(Checks& out, int max_d) {
    for (int d = 1; d <= max_d; ++d) {
        const Basis& basis = Basis::of(d);
        const int n = basis.dim();
        bool adj = true;
        for (int a = 0; a < n && adj; ++a)
            for (int b = a + 1; b < n && adj; ++b) adj = m2_pairing(basis[a], basis[b]) == m2_pairing(basis[b], basis[a]);
        add(out, "fock.self_adjoint " + dstr(d), adj);
        const OperatorMatrix& m = m2_matrix(d);
        std::vector<Scalar> diag;
        for (int a = 0; a < n; ++a) diag.push_back(m(a, a).specialize(std::nullopt, Scalar(0), std::nullopt));
        bool distinct = true;
        for (int a = 0; a < n && distinct; ++a)
            for (int b = a + 1; b < n && distinct; ++b) distinct = !(diag[a] == diag[b]);
        add(out, "fock.distinct_diagonal " + dstr(d), distinct);
    }
    if (max_d >= 2) {
        const Partition r2 = Partition::row(2), c2 = Partition::column(2);
        FockVector want11(2), want2(2);
        want11[r2] = Scalar(1);
        want2[r2] = -(Scalar::t1() + Scalar::t2()) * diagonal_f(2);
        want2[c2] = -(Scalar::t1() * Scalar::t2());
        add(out, "fock.degree2_action", apply_m2(FockVector::basis_vector(c2)) == want11 &&
                                            apply_m2(FockVector::basis_vector(r2)) == want2);
    }
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, std::optional<int> max_degree, Engine& engine) {
    if (!is_suite(suite)) throw std::invalid_argument("unknown suite: " + suite);
    if (max_degree && *max_degree < 1) throw std::invalid_argument("max degree must be positive");
    auto bound = [&](int def) { return max_degree ? *max_degree : def; };
    Checks out;
    const bool all = suite == "all";
    if (all || suite == "fock") suite_fock(out, bound(8));
    if (all || suite == "tqft") suite_tqft(out, bound(4), engine);
    if (all || suite == "degree2") suite_degree2(out, engine);
    if (all || suite == "hurwitz") suite_hurwitz(out, bound(4), engine);
    if (all || suite == "antidiag") suite_antidiag(out, bound(4), engine);
    if (all || suite == "rationality") suite_rationality(out, bound(3), engine, 20);
    return out;
}

}  // namespace localgw
