// Acceptance suite: one PASS/FAIL line per criterion, with time limits pinned here.

#include "localgw/antidiag.hpp"
#include "localgw/characters.hpp"
#include "localgw/fock.hpp"
#include "localgw/tqft.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace localgw;

namespace {

// Wall-clock limits in seconds.
constexpr double kLimitDegree1 = 1;
constexpr double kLimitDegree2 = 10;
constexpr double kLimitAntidiag = 300;
constexpr double kLimitReconstruction = 120;
constexpr double kLimitPipeline = 600;
constexpr double kLimitDegree5 = 3600;
// u-order for the series comparison.
constexpr int kSeriesOrder = 20;

const Scalar T1 = Scalar::t1();
const Scalar T2 = Scalar::t2();
const Scalar HALF(mpq_class(1, 2));

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& what) {
        if (ok) detail = what;
        ok = false;
    }
};

// Unstarred values produced along the way, checked for reality at the end.
std::vector<Scalar> g_unstarred;
double g_degree5_seconds = 0;

LocalCurveQuery query(int d, int g, int k1, int k2, std::vector<Partition> boundary = {}) {
    LocalCurveQuery q;
    q.degree = d;
    q.genus = g;
    q.level = {k1, k2};
    q.boundary = std::move(boundary);
    return q;
}

Scalar unstarred(const LocalCurveQuery& q) {
    Scalar v = evaluate(q).value;
    g_unstarred.push_back(v);
    return v;
}

std::string where(int d, int g, int k1, int k2) {
    std::ostringstream os;
    os << "d=" << d << " g=" << g << " level=" << k1 << "," << k2;
    return os.str();
}

// ------------------------------------------------------------------ criteria

Outcome degree1() {
    Outcome out;
    const Scalar two_sin = Scalar(2) * oracle::sin_half(1);
    for (int g = 0; g <= 3; ++g)
        for (int k1 = -2; k1 <= 2; ++k1)
            for (int k2 = -2; k2 <= 2; ++k2) {
                const Scalar want = (T1 * T2).pow(g - 1) * T1.pow(-k1) * T2.pow(-k2) * two_sin.pow(k1 + k2);
                if (!(unstarred(query(1, g, k1, k2)) == want)) out.fail(where(1, g, k1, k2));
            }
    return out;
}

Outcome degree2() {
    Outcome out;
    const Scalar t = T1, s = oracle::sin_half(1), one(1);
    auto diagonal = [&](const Scalar& v) { return v.specialize(t, t, std::nullopt); };
    for (int g = 0; g <= 3; ++g)
        for (int k1 = -2; k1 <= 2; ++k1)
            for (int k2 = -2; k2 <= 2; ++k2) {
                const int e = k1 + k2 + 1 - g;
                const Scalar want = t.pow(2L * (2 * g - 2 - k1 - k2)) * Scalar(4).pow(g - 1) *
                                    (Scalar(2) * s).pow(2L * (k1 + k2)) * ((one + s).pow(e) + (one - s).pow(e));
                if (!(diagonal(unstarred(query(2, g, k1, k2))) == want)) out.fail(where(2, g, k1, k2));
            }
    for (int g = 0; g <= 4; ++g) {
        const Scalar want = (Scalar(2) * s).pow(4L * g - 4) *
                            ((Scalar(4) - Scalar(4) * s).pow(g - 1) + (Scalar(4) + Scalar(4) * s).pow(g - 1));
        if (!(diagonal(unstarred(query(2, g, g - 1, g - 1))) == want)) out.fail("Calabi-Yau " + where(2, g, g - 1, g - 1));
    }
    return out;
}

Outcome antidiagonal() {
    Outcome out;
    const Scalar one(1);
    for (int d = 1; d <= 4; ++d) {
        for (int g = 0; g <= 3; ++g)
            for (int k1 = -2; k1 <= 2; ++k1)
                for (int k2 = -2; k2 <= 2; ++k2) {
                    const Scalar v = unstarred(query(d, g, k1, k2)).specialize(one, -one, std::nullopt);
                    const Scalar c = closed_formula({d, g, k1, k2}).specialize(one, std::nullopt, std::nullopt);
                    if (!(v == c)) out.fail(where(d, g, k1, k2));
                }
        // Elliptic case: g = 1, level (k, -k) gives (-1)^{dk} sum_rho Q^{c_rho k}.
        for (int k = -2; k <= 2; ++k) {
            Scalar want;
            for (const auto& rho : all_partitions(d)) want += Scalar::sigma_pow(2 * oracle::content_sum(rho.parts()) * k);
            if ((d * k) % 2 != 0) want = -want;
            const Scalar v = unstarred(query(d, 1, k, -k)).specialize(one, -one, std::nullopt);
            if (!(v == want)) out.fail("elliptic " + where(d, 1, k, -k));
        }
        const Scalar balanced = unstarred(query(d, 1, 0, 0)).specialize(one, -one, std::nullopt);
        if (!(balanced == Scalar(static_cast<long>(all_partitions(d).size())))) out.fail("balanced d=" + std::to_string(d));
    }
    return out;
}

Outcome reconstruction() {
    Outcome out;
    for (int d = 2; d <= 5; ++d) {
        const auto t0 = Clock::now();
        const FrobeniusData& f = default_engine().frobenius(d);
        if (d == 5) g_degree5_seconds = seconds_since(t0);
        const Scalar want = -HALF * Scalar::i() * (T1 + T2) / (T1 * T2) *
                            (Scalar(d) * oracle::cot_half(d) - oracle::cot_half(1));
        if (!(f.pants.at(Partition::row(d), Partition::row(d), Partition::transposition(d)) == want))
            out.fail("special pants d=" + std::to_string(d));
    }
    // Table values of the unstarred degree-2 pants and caps, converted with
    // GW* = (-i)^N GW: N = l1 + l2 + l3 - d for pants and N = l for caps.
    const Partition r2 = Partition::row(2), c2 = Partition::column(2);
    const PantsTensor& p = default_engine().frobenius(2).pants;
    const Scalar mi = -Scalar::i();
    auto two_sin = [](int k) { return Scalar(2) * oracle::sin_half(k); };
    const struct {
        const char* name;
        Scalar got, unstarred;
        long n;
    } table[] = {
        {"C(1,1)", cap_cy(c2, Side::left, Convention::starred), Scalar(1) / (T2 * T2) / (Scalar(2) * two_sin(1).pow(2)), 2},
        {"C(2)", cap_cy(r2, Side::left, Convention::starred), Scalar(-1) / T2 / (Scalar(2) * two_sin(2)), 1},
        {"P(11,11,11)", p.at(c2, c2, c2), HALF / (T1 * T2).pow(2), 4},
        {"P(11,11,2)", p.at(c2, c2, r2), Scalar(0), 3},
        {"P(11,2,2)", p.at(c2, r2, r2), HALF / (T1 * T2), 2},
        {"P(2,2,2)", p.at(r2, r2, r2), -HALF * (T1 + T2) / (T1 * T2) * oracle::tan_half(1), 1},
    };
    for (const auto& e : table) {
        g_unstarred.push_back(e.unstarred);
        if (!(e.got == mi.pow(e.n) * e.unstarred)) out.fail(e.name);
    }
    return out;
}

Outcome axioms() {
    Outcome out;
    for (int d = 1; d <= 5; ++d) {
        const FrobeniusData& f = default_engine().frobenius(d);
        if (!(f.multiplication(f.unit) == OperatorMatrix::identity(d))) out.fail("unit d=" + std::to_string(d));
        const Basis& basis = Basis::of(d);
        const Partition one = Partition::column(d);
        for (int a = 0; a < basis.dim(); ++a) {
            // The (1^d) insertion acts as the identity on the pants.
            for (int b = 0; b < basis.dim(); ++b) {
                const Scalar tube = f.pants.at(basis.index(one), a, b);
                const Scalar want = a == b ? f.metric[a] : Scalar(0);
                if (!(tube == want)) out.fail("tube d=" + std::to_string(d));
            }
        }
    }
    for (int d = 1; d <= 4; ++d) {
        const FrobeniusData& f = default_engine().frobenius(d);
        const int n = f.pants.dim();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                std::vector<Scalar> eb(n);
                eb[b] = Scalar(1);
                if (!(f.mult[a] * f.mult[b] == f.multiplication(f.mult[a].apply(eb))))
                    out.fail("associativity d=" + std::to_string(d));
            }
        const Operators& o = default_engine().starred(d);
        if (!(o.G * o.A == o.A * o.G) || !(o.G * o.Abar == o.Abar * o.G) || !(o.A * o.Abar == o.Abar * o.A))
            out.fail("commutation d=" + std::to_string(d));
    }
    for (int d = 1; d <= 3; ++d) {
        const Basis& basis = Basis::of(d);
        const int n = basis.dim();
        for (int g = 0; g <= 1; ++g)
            for (const Level lv : {Level{0, 0}, Level{-1, 0}, Level{1, -1}}) {
                LocalCurveQuery q = query(d, g, lv.k1, lv.k2);
                for (int i = 0; i < 4; ++i) q.boundary.push_back(basis[(i + g) % n]);
                const Scalar ref = default_engine().evaluate_starred(q);
                for (int first = 0; first < 4; ++first) {
                    InsertionOrder rest;
                    for (int i = 0; i < 4; ++i)
                        if (i != first) rest.push_back(i);
                    do
                        if (!(default_engine().evaluate_starred_ordered(q, first, rest) == ref))
                            out.fail("order " + where(d, g, lv.k1, lv.k2));
                    while (std::next_permutation(rest.begin(), rest.end()));
                }
            }
    }
    return out;
}

Outcome hurwitz_limit() {
    Outcome out;
    for (int d = 1; d <= 4; ++d) {
        const Basis& basis = Basis::of(d);
        const PantsTensor& p = default_engine().frobenius(d).pants;
        const int n = basis.dim();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    const Partition &pa = basis[a], &pb = basis[b], &pc = basis[c];
                    const long e = pa.length() + pb.length() + pc.length() - d;
                    const Scalar raised = p.at(a, b, c) * Scalar::i().pow(e) * Scalar(pc.zed()) * (T1 * T2).pow(pc.length());
                    g_unstarred.push_back(raised);
                    const Scalar at_zero = raised.specialize(std::nullopt, std::nullopt, Scalar(1));
                    const long twice = d - pa.length() - pb.length() + pc.length();
                    Scalar want;
                    if (twice % 2 == 0) {
                        const mpq_class h = oracle::hurwitz_by_enumeration(pa.parts(), pb.parts(), pc.parts());
                        want = Scalar(h * mpq_class(pc.zed())) * (T1 * T2).pow(twice / 2);
                    }
                    if (!(at_zero == want))
                        out.fail("d=" + std::to_string(d) + " " + pa.to_string() + "|" + pb.to_string() + "|" + pc.to_string());
                }
    }
    return out;
}

Outcome rationality() {
    Outcome out;
    const std::array<GaussianRational, 2> pt{GaussianRational(mpq_class(2, 3)), GaussianRational(mpq_class(5, 7))};
    int cases = 0;
    for (int d = 1; d <= 4; ++d) {
        const Basis& basis = Basis::of(d);
        for (int g = 0; g <= 1; ++g)
            for (const Level lv : {Level{0, 0}, Level{-1, 0}, Level{1, -1}, Level{-1, -1}})
                for (int r = 0; r <= 3; ++r) {
                    LocalCurveQuery q = query(d, g, lv.k1, lv.k2);
                    for (int i = 0; i < r; ++i) q.boundary.push_back(basis[(3 * i + g + r) % basis.dim()]);
                    const std::string at = where(d, g, lv.k1, lv.k2) + " r=" + std::to_string(r);
                    ++cases;
                    EvaluationResult res;
                    try {
                        res = evaluate(q);
                    } catch (const std::domain_error& e) {
                        out.fail(at + ": " + e.what());
                        continue;
                    }
                    g_unstarred.push_back(res.value);
                    const Scalar back = Scalar::i().pow(res.unit_power) * Scalar::sigma_pow(-res.sigma_shift) * from_q_form(res.q_form);
                    if (!(back == res.value)) out.fail(at + ": q-form does not reproduce the value");
                    const Scalar exact = res.value.specialize(Scalar(pt[0]), Scalar(pt[1]), std::nullopt);
                    const USeries glued = default_engine().evaluate_series_glued(q, kSeriesOrder, pt);
                    if (glued.precision() <= kSeriesOrder || !glued.agrees_with(expand_u_series(exact, kSeriesOrder)))
                        out.fail(at + ": series mismatch");
                    for (const auto& c : glued.coeffs())
                        if (!c.num().is_real() || !c.den().is_real()) out.fail(at + ": glued coefficient not real");
                }
    }
    if (out.ok) out.detail = std::to_string(cases) + " cases through u^" + std::to_string(kSeriesOrder);
    return out;
}

Outcome fock() {
    Outcome out;
    for (int d = 1; d <= 6; ++d) {
        const Basis& b = Basis::of(d);
        for (int i = 0; i < b.dim(); ++i)
            for (int j = 0; j < b.dim(); ++j) {
                // <mu|M2|nu> with the pairing (-1)^{d-l} / ((t1 t2)^l z).
                auto ip = [&](const Partition& p) {
                    const Scalar v = Scalar(1) / ((T1 * T2).pow(p.length()) * Scalar(p.zed()));
                    return (d - p.length()) % 2 == 0 ? v : -v;
                };
                const OperatorMatrix& m = m2_matrix(d);
                if (!(ip(b[i]) * m(i, j) == ip(b[j]) * m(j, i))) out.fail("self-adjoint d=" + std::to_string(d));
            }
    }
    for (int d = 1; d <= 10; ++d) {
        const Basis& b = Basis::of(d);
        const OperatorMatrix& m = m2_matrix(d);
        std::vector<Scalar> diag;
        for (int i = 0; i < b.dim(); ++i) diag.push_back(m(i, i).specialize(T1, Scalar(0), std::nullopt));
        for (int i = 0; i < b.dim(); ++i)
            for (int j = i + 1; j < b.dim(); ++j)
                if (diag[i] == diag[j]) out.fail("equal diagonal entries d=" + std::to_string(d));
    }
    const Partition r2 = Partition::row(2), c2 = Partition::column(2);
    const FockVector a = apply_m2(FockVector::basis_vector(c2));
    const FockVector b = apply_m2(FockVector::basis_vector(r2));
    // F_2 = 2 (x^2 + 1)/(x^2 - 1) - (x + 1)/(x - 1) = (x - 1)/(x + 1), x = sigma^2.
    const Scalar x = Scalar::sigma_pow(2);
    const Scalar f2 = (x - Scalar(1)) / (x + Scalar(1));
    if (!(a[r2] == Scalar(1)) || !a[c2].is_zero()) out.fail("M2|1,1>");
    if (!(b[r2] == -(T1 + T2) * f2) || !(b[c2] == -(T1 * T2))) out.fail("M2|2>");
    return out;
}

Outcome reality() {
    Outcome out;
    for (const auto& v : g_unstarred) {
        const USeries s = expand_u_series(v, 6);
        for (const auto& c : s.coeffs())
            if (!c.num().is_real() || !c.den().is_real()) {
                out.fail("complex coefficient in " + v.to_string());
                return out;
            }
    }
    out.detail = std::to_string(g_unstarred.size()) + " values";
    return out;
}

struct Criterion {
    int id;
    const char* title;
    double limit;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "degree-1 closed formula", kLimitDegree1, degree1},
        {2, "degree-2 formula at t1 = t2", kLimitDegree2, degree2},
        {3, "anti-diagonal closed formula", kLimitAntidiag, antidiagonal},
        {4, "pants reconstruction", kLimitReconstruction, reconstruction},
        {5, "Frobenius and gluing axioms", 0, axioms},
        {6, "u = 0 limit and Hurwitz numbers", 0, hurwitz_limit},
        {7, "rationality and glued series", 0, rationality},
        {8, "Fock space operator", 0, fock},
        {9, "reality of unstarred series", 0, reality},
    };
    bool all = true;
    double pipeline = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double dt = seconds_since(t0);
        pipeline += dt;
        const bool in_time = c.limit <= 0 || dt < c.limit;
        const bool ok = o.ok && in_time;
        all = all && ok;
        std::printf("criterion %2d %s  %-34s %8.2f s", c.id, ok ? "PASS" : "FAIL", c.title, dt);
        if (c.limit > 0) std::printf(" (limit %g s)", c.limit);
        if (!in_time) std::printf("  too slow");
        if (!o.detail.empty()) std::printf("  %s", o.detail.c_str());
        std::printf("\n");
        std::fflush(stdout);
    }
    // The d = 5 reconstruction is timed on its own.
    pipeline -= g_degree5_seconds;
    const bool perf = pipeline < kLimitPipeline && g_degree5_seconds > 0 && g_degree5_seconds < kLimitDegree5;
    all = all && perf;
    std::printf("criterion 10 %s  %-34s %8.2f s (limit %g s); d=5 reconstruction %.2f s (limit %g s)\n",
                perf ? "PASS" : "FAIL", "performance envelope", pipeline, kLimitPipeline, g_degree5_seconds, kLimitDegree5);
    return all ? 0 : 1;
}
