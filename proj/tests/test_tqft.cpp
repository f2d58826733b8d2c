#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "localgw/tqft.hpp"
#include "oracles.hpp"

using namespace localgw;

namespace {

const Scalar T1 = Scalar::t1();
const Scalar T2 = Scalar::t2();
const Scalar HALF(mpq_class(1, 2));

LocalCurveQuery query(int d, int g, int k1, int k2, std::vector<Partition> boundary = {}) {
    LocalCurveQuery q;
    q.degree = d;
    q.genus = g;
    q.level = {k1, k2};
    q.boundary = std::move(boundary);
    return q;
}

}  // namespace

TEST_CASE("degree one building blocks") {
    const FrobeniusData& f = default_engine().frobenius(1);
    CHECK(f.pants.at(0, 0, 0) == Scalar(-1) / (T1 * T2));
    const Operators u = operators(f);
    CHECK(u.G(0, 0) == T1 * T2);
    CHECK(u.A(0, 0) == T1 / (Scalar(2) * oracle::sin_half(1)));
    CHECK(u.Abar(0, 0) == T2 / (Scalar(2) * oracle::sin_half(1)));
}

TEST_CASE("level (0,0) cap") {
    CHECK(cap_level00(Partition::column(3)) == Scalar(1) / (Scalar(6) * (T1 * T2).pow(3)));
    CHECK(cap_level00(Partition::column(3), Convention::starred) == Scalar(-1) / (Scalar(6) * (T1 * T2).pow(3)));
    CHECK(cap_level00(Partition::row(3)).is_zero());
}

TEST_CASE("Calabi-Yau cap") {
    const Scalar s1 = Scalar(2) * oracle::sin_half(1);
    CHECK(cap_cy(Partition::row(1), Side::left) == Scalar(1) / (T2 * s1));
    CHECK(cap_cy(Partition::row(1), Side::right) == Scalar(1) / (T1 * s1));
    CHECK(cap_cy(Partition::row(2), Side::left) == Scalar(-1) / (T2 * Scalar(4) * oracle::sin_half(2)));
    // The shifted starred cap is rational in q = -sigma^2.
    for (int d = 1; d <= 4; ++d)
        for (const auto& p : all_partitions(d))
            CHECK_NOTHROW(to_q_form(cap_cy_shifted(p, Side::left), 0));
}

TEST_CASE("degree two pants values") {
    const FrobeniusData& f = default_engine().frobenius(2);
    const Partition r2 = Partition::row(2), c2 = Partition::column(2);
    // Starred values: GW* = (-i)^{l1+l2+l3-d} GW.
    CHECK(f.pants.at(c2, c2, c2) == HALF / (T1 * T2).pow(2));
    CHECK(f.pants.at(c2, c2, r2).is_zero());
    CHECK(f.pants.at(c2, r2, r2) == -HALF / (T1 * T2));
    CHECK(f.pants.at(r2, r2, r2) == HALF * Scalar::i() * (T1 + T2) / (T1 * T2) * oracle::tan_half(1));
    CHECK(f.pants.entry_count() == 4);
}

TEST_CASE("the special pants series") {
    for (int d = 2; d <= 4; ++d) {
        const Scalar cot_form = -HALF * Scalar::i() * (T1 + T2) / (T1 * T2) *
                                (Scalar(d) * oracle::cot_half(d) - oracle::cot_half(1));
        CHECK(pants_dd2(d) == cot_form);
        const PantsTensor& p = default_engine().frobenius(d).pants;
        CHECK(p.at(Partition::row(d), Partition::row(d), Partition::transposition(d)) == pants_dd2(d));
    }
    CHECK_THROWS_AS(pants_dd2(1), std::invalid_argument);
}

TEST_CASE("reconstruction is symmetric and round trips through install") {
    const PantsTensor t = reconstruct_pants(3);
    for (const auto& tr : t.canonical_triples()) {
        CHECK(t.at(tr[0], tr[1], tr[2]) == t.at(tr[2], tr[0], tr[1]));
        CHECK(t.at(tr[0], tr[1], tr[2]) == t.at(tr[1], tr[0], tr[2]));
    }
    Engine e;
    e.install_pants(t);
    CHECK(e.frobenius(3).pants == t);
    CHECK_THROWS_AS(reconstruct_pants(0), std::invalid_argument);
}

TEST_CASE("Frobenius axioms") {
    for (int d = 1; d <= 4; ++d) {
        const FrobeniusData& f = default_engine().frobenius(d);
        CHECK(f.multiplication(f.unit) == OperatorMatrix::identity(d));
        const int n = f.pants.dim();
        for (int a = 0; a < n; ++a) {
            // Commutativity: L_a e_b = L_b e_a.
            for (int b = 0; b < n; ++b) {
                std::vector<Scalar> ea(n), eb(n);
                ea[a] = Scalar(1);
                eb[b] = Scalar(1);
                CHECK(f.mult[a].apply(eb) == f.mult[b].apply(ea));
            }
        }
        const Operators& o = default_engine().starred(d);
        CHECK(o.G * o.A == o.A * o.G);
        CHECK(o.A * o.Abar == o.Abar * o.A);
        for (const auto& [lv, cap] : f.caps) CHECK(cap.size() == static_cast<std::size_t>(n));
        // Opposite caps are mutually inverse elements.
        const OperatorMatrix prod = f.multiplication(f.caps.at({-1, 0})) * f.multiplication(f.caps.at({1, 0}));
        CHECK(prod == OperatorMatrix::identity(d));
    }
    PantsTensor bad(2);
    CHECK_THROWS_AS(build_frobenius(2, bad), std::domain_error);
}

TEST_CASE("degree two operators") {
    const Operators u = operators(default_engine().frobenius(2));
    const Basis& b = Basis::of(2);
    const int i11 = b.index(Partition::column(2)), i2 = b.index(Partition::row(2));
    const Scalar tt = T1 * T2, th = oracle::tan_half(1);
    CHECK(u.G(i11, i11) == Scalar(4) * tt * tt);
    CHECK(u.G(i2, i11) == Scalar(-2) * tt * (T1 + T2) * th);
    CHECK(u.A(i11, i11) == T1 * T1 / (Scalar(4) * oracle::sin_half(1).pow(2)));
    CHECK(u.A(i2, i11) == -T1 / (Scalar(2) * oracle::sin_half(2)));
    CHECK(u.A(i2, i2) == T1 * (T1 + T2) / (Scalar(4) * oracle::cos_half(1).pow(2)) +
                             T1 * T1 / (Scalar(4) * oracle::sin_half(1).pow(2)));
}

TEST_CASE("degree one partition function") {
    for (int g = 0; g <= 3; ++g)
        for (int k1 = -2; k1 <= 2; ++k1)
            for (int k2 = -2; k2 <= 2; ++k2) {
                const Scalar want =
                    (T1 * T2).pow(g - 1) * T1.pow(-k1) * T2.pow(-k2) * (Scalar(2) * oracle::sin_half(1)).pow(k1 + k2);
                CHECK(evaluate(query(1, g, k1, k2)).value == want);
            }
}

TEST_CASE("starred and unstarred conventions") {
    LocalCurveQuery q = query(2, 0, 0, 0, {Partition::row(2), Partition::row(2), Partition::row(2)});
    q.convention = Convention::starred;
    const EvaluationResult s = evaluate(q);
    CHECK(s.value == HALF * Scalar::i() * (T1 + T2) / (T1 * T2) * oracle::tan_half(1));
    CHECK(s.sigma_shift == 4);
    CHECK(from_q_form(s.q_form) * Scalar::sigma_pow(-s.sigma_shift) == s.value);
    q.convention = Convention::unstarred;
    const EvaluationResult u = evaluate(q);
    CHECK(u.value == -HALF * (T1 + T2) / (T1 * T2) * oracle::tan_half(1));
    CHECK(u.value == Scalar::i().pow(u.unit_power) * Scalar::sigma_pow(-u.sigma_shift) * from_q_form(u.q_form));
}

TEST_CASE("closed surfaces agree with the trace form") {
    for (int d = 1; d <= 3; ++d)
        for (int g = 0; g <= 2; ++g)
            for (int k = -1; k <= 1; ++k) {
                const LocalCurveQuery q = query(d, g, k, -1);
                CHECK(default_engine().evaluate_starred(q) == default_engine().evaluate_starred_trace(q));
            }
}

TEST_CASE("gluing a cap onto a boundary closes the surface") {
    // A level (0,0) cap glued to a boundary of (g | k) gives the closed invariant.
    for (int d = 1; d <= 3; ++d) {
        const Basis& b = Basis::of(d);
        for (int g = 0; g <= 1; ++g) {
            Scalar glued;
            for (int a = 0; a < b.dim(); ++a) {
                LocalCurveQuery q = query(d, g, -1, 0, {b[a]});
                q.convention = Convention::unstarred;
                const Scalar raise = Scalar(b[a].zed()) * (T1 * T2).pow(b[a].length());
                glued += evaluate(q).value * raise * cap_level00(b[a]);
            }
            CHECK(glued == evaluate(query(d, g, -1, 0)).value);
        }
    }
}

TEST_CASE("insertion order does not matter") {
    for (int d = 2; d <= 3; ++d) {
        const Basis& b = Basis::of(d);
        LocalCurveQuery q = query(d, 0, 0, -1, {b[0], b[b.dim() - 1], b[0], b[1]});
        const Scalar ref = default_engine().evaluate_starred(q);
        InsertionOrder rest{1, 2, 3};
        do CHECK(default_engine().evaluate_starred_ordered(q, 0, rest) == ref);
        while (std::next_permutation(rest.begin(), rest.end()));
        CHECK(default_engine().evaluate_starred_ordered(q, 2, {3, 0, 1}) == ref);
        CHECK_THROWS_AS(default_engine().evaluate_starred_ordered(q, 0, {1, 1, 2}), std::invalid_argument);
    }
}

TEST_CASE("q-form conversion") {
    CHECK(to_q_form(Scalar::sigma_pow(2), 0) == -Scalar::sigma());
    CHECK(to_q_form(Scalar::sigma(), 1) == -Scalar::sigma());
    CHECK_THROWS_AS(to_q_form(Scalar::sigma(), 0), std::domain_error);
    const Scalar even = (Scalar::sigma_pow(4) + T1) / (Scalar::sigma_pow(2) - T2);
    CHECK(to_q_form(even, 0) == (Scalar::sigma().pow(2) + T1) / (-Scalar::sigma() - T2));
}

TEST_CASE("series mode and query validation") {
    LocalCurveQuery q = query(1, 0, -1, 0);
    q.mode = OutputMode::u_series;
    q.series_order = 3;
    const EvaluationResult r = evaluate(q);
    REQUIRE(r.series);
    CHECK(r.series->offset() == -1);
    CHECK(r.series->coeff(-1) == Scalar(1) / T2);
    CHECK_THROWS_AS(evaluate(query(0, 0, 0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(query(2, -1, 0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(query(2, 0, 0, 0, {Partition::row(3)})), std::invalid_argument);
    CHECK(star_exponent(query(2, 0, 0, 0, {Partition::row(2)})) == 3);
    CHECK(rational_shift(query(2, 1, -1, 0)) == -2);
}

TEST_CASE("glued series agree with the exact pipeline") {
    const std::array<GaussianRational, 2> pt{GaussianRational(mpq_class(3, 5)), GaussianRational(mpq_class(-2, 7))};
    for (int d = 1; d <= 2; ++d) {
        const Basis& b = Basis::of(d);
        for (int g = 0; g <= 1; ++g) {
            const std::vector<LocalCurveQuery> qs{query(d, g, -1, 0), query(d, g, 1, -1, {b[0]}),
                                                  query(d, g, 0, 0, {b[0], b[b.dim() - 1]})};
            for (const auto& q : qs) {
                const Scalar exact = evaluate(q).value.specialize(Scalar(pt[0]), Scalar(pt[1]), std::nullopt);
                const USeries glued = default_engine().evaluate_series_glued(q, 10, pt);
                CHECK(glued.precision() == 11);
                CHECK(glued.agrees_with(expand_u_series(exact, 10)));
            }
        }
    }
}
