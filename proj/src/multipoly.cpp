#include "localgw/multipoly.hpp"

#include "poly_kernels.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace localgw {

namespace {

using Term = MultiPoly::Term;

struct Box {
    std::array<std::uint32_t, kNumVars> lo{};
    std::array<std::uint32_t, kNumVars> hi{};
};

Box box_of(const std::vector<Term>& ts) {
    Box b;
    b.lo.fill(Monomial::kMaxExponent);
    b.hi.fill(0);
    for (const auto& t : ts) {
        Monomial m = t.monomial();
        for (int v = 0; v < kNumVars; ++v) {
            b.lo[v] = std::min(b.lo[v], m.e[v]);
            b.hi[v] = std::max(b.hi[v], m.e[v]);
        }
    }
    return b;
}

mpz_srcptr num_re(const GaussianRational& c) { return mpq_numref(c.re().get_mpq_t()); }
mpz_srcptr num_im(const GaussianRational& c) { return mpq_numref(c.im().get_mpq_t()); }

GaussianRational make_coeff(const mpz_class& re, const mpz_class& im) {
    return {mpq_class(re), mpq_class(im)};
}

// Linear offset of a monomial inside a box with the given origin.
struct Strides {
    std::uint64_t s0, s1;
    std::uint64_t offset(const Monomial& m, const std::array<std::uint32_t, kNumVars>& origin) const {
        return (m.e[0] - origin[0]) * s0 + (m.e[1] - origin[1]) * s1 + (m.e[2] - origin[2]);
    }
    Monomial at(std::uint64_t idx, const std::array<std::uint32_t, kNumVars>& origin) const {
        return {static_cast<std::uint32_t>(idx / s0 + origin[0]),
                static_cast<std::uint32_t>((idx % s0) / s1 + origin[1]),
                static_cast<std::uint32_t>(idx % s1 + origin[2])};
    }
};

constexpr std::uint64_t kDenseMulLimit = std::uint64_t{1} << 22;
constexpr std::uint64_t kDenseDivLimit = std::uint64_t{1} << 21;

}  // namespace

namespace detail {

MultiPoly mul_integral(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_monomial()) return b.times_monomial(a.leading().monomial()).scaled(a.leading().coeff);
    if (b.is_monomial()) return a.times_monomial(b.leading().monomial()).scaled(b.leading().coeff);

    const Box ba = box_of(a.terms());
    const Box bb = box_of(b.terms());
    std::array<std::uint64_t, kNumVars> dim{};
    std::array<std::uint32_t, kNumVars> lo{};
    for (int v = 0; v < kNumVars; ++v) {
        if (std::uint64_t{ba.hi[v]} + bb.hi[v] > Monomial::kMaxExponent) throw std::overflow_error("exponent overflow");
        dim[v] = std::uint64_t{ba.hi[v] - ba.lo[v]} + (bb.hi[v] - bb.lo[v]) + 1;
        lo[v] = ba.lo[v] + bb.lo[v];
    }
    const bool cplx = !(a.is_real() && b.is_real());
    const std::uint64_t total = dim[0] * dim[1] * dim[2];
    const std::uint64_t work = std::uint64_t{a.size()} * b.size();

    if (total <= kDenseMulLimit && total <= 16 * work + 256) {
        const Strides st{dim[1] * dim[2], dim[2]};
        std::vector<std::uint64_t> ia(a.size()), ib(b.size());
        for (std::size_t i = 0; i < a.size(); ++i) ia[i] = st.offset(a.terms()[i].monomial(), ba.lo);
        for (std::size_t j = 0; j < b.size(); ++j) ib[j] = st.offset(b.terms()[j].monomial(), bb.lo);
        std::vector<mpz_class> re(total);
        std::vector<mpz_class> im(cplx ? total : 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto& ca = a.terms()[i].coeff;
            mpz_srcptr ar = num_re(ca);
            mpz_srcptr ai = num_im(ca);
            const bool a_im = !ca.is_real();
            for (std::size_t j = 0; j < b.size(); ++j) {
                const auto& cb = b.terms()[j].coeff;
                const std::uint64_t idx = ia[i] + ib[j];
                mpz_srcptr br = num_re(cb);
                mpz_addmul(re[idx].get_mpz_t(), ar, br);
                if (!cplx) continue;
                mpz_srcptr bi = num_im(cb);
                const bool b_im = !cb.is_real();
                if (a_im && b_im) mpz_submul(re[idx].get_mpz_t(), ai, bi);
                if (b_im) mpz_addmul(im[idx].get_mpz_t(), ar, bi);
                if (a_im) mpz_addmul(im[idx].get_mpz_t(), ai, br);
            }
        }
        std::vector<Term> out;
        for (std::uint64_t idx = total; idx-- > 0;) {
            const bool nz_re = sgn(re[idx]) != 0;
            const bool nz_im = cplx && sgn(im[idx]) != 0;
            if (!nz_re && !nz_im) continue;
            out.push_back({st.at(idx, lo).key(), make_coeff(re[idx], cplx ? im[idx] : mpz_class(0))});
        }
        return MultiPoly::from_sorted_terms(std::move(out));
    }

    std::unordered_map<std::uint64_t, std::uint32_t> slot;
    slot.reserve(std::min<std::uint64_t>(work, std::uint64_t{1} << 24));
    std::vector<std::uint64_t> keys;
    std::vector<mpz_class> re, im;
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            const std::uint64_t key = ta.key + tb.key;
            auto [it, inserted] = slot.try_emplace(key, static_cast<std::uint32_t>(keys.size()));
            if (inserted) {
                keys.push_back(key);
                re.emplace_back(0);
                if (cplx) im.emplace_back(0);
            }
            const std::uint32_t s = it->second;
            mpz_addmul(re[s].get_mpz_t(), num_re(ta.coeff), num_re(tb.coeff));
            if (!cplx) continue;
            mpz_submul(re[s].get_mpz_t(), num_im(ta.coeff), num_im(tb.coeff));
            mpz_addmul(im[s].get_mpz_t(), num_re(ta.coeff), num_im(tb.coeff));
            mpz_addmul(im[s].get_mpz_t(), num_im(ta.coeff), num_re(tb.coeff));
        }
    }
    std::vector<std::uint32_t> order(keys.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) { return keys[x] > keys[y]; });
    std::vector<Term> out;
    out.reserve(order.size());
    for (std::uint32_t s : order) {
        if (sgn(re[s]) == 0 && (!cplx || sgn(im[s]) == 0)) continue;
        out.push_back({keys[s], make_coeff(re[s], cplx ? im[s] : mpz_class(0))});
    }
    return MultiPoly::from_sorted_terms(std::move(out));
}

namespace {

// Quotient exponent range for a = q * b, or nullopt if impossible.
std::optional<Box> quotient_box(const Box& ba, const Box& bb) {
    Box q;
    for (int v = 0; v < kNumVars; ++v) {
        if (ba.lo[v] < bb.lo[v] || ba.hi[v] < bb.hi[v]) return std::nullopt;
        q.lo[v] = ba.lo[v] - bb.lo[v];
        q.hi[v] = ba.hi[v] - bb.hi[v];
        if (q.lo[v] > q.hi[v]) return std::nullopt;
    }
    return q;
}

bool in_box(const Monomial& m, const Box& b) {
    for (int v = 0; v < kNumVars; ++v)
        if (m.e[v] < b.lo[v] || m.e[v] > b.hi[v]) return false;
    return true;
}

std::optional<MultiPoly> div_dense(const MultiPoly& a, const MultiPoly& b, const Box& ba, const Box& bb,
                                   const Box& bq) {
    std::array<std::uint64_t, kNumVars> dim{};
    for (int v = 0; v < kNumVars; ++v) dim[v] = std::uint64_t{ba.hi[v] - ba.lo[v]} + 1;
    const std::uint64_t total = dim[0] * dim[1] * dim[2];
    const Strides st{dim[1] * dim[2], dim[2]};
    const bool cplx = !a.is_real();
    std::vector<mpz_class> re(total);
    std::vector<mpz_class> im(cplx ? total : 0);
    for (const auto& t : a.terms()) {
        const std::uint64_t idx = st.offset(t.monomial(), ba.lo);
        re[idx] = mpz_class(num_re(t.coeff));
        if (cplx) im[idx] = mpz_class(num_im(t.coeff));
    }
    std::vector<std::uint64_t> ib(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) ib[j] = st.offset(b.terms()[j].monomial(), bb.lo);
    const Monomial lmb = b.leading().monomial();
    const mpz_class lcb(num_re(b.leading().coeff));

    std::vector<Term> quot;
    mpz_class qre, qim;
    for (std::uint64_t idx = total; idx-- > 0;) {
        const bool nz_re = sgn(re[idx]) != 0;
        const bool nz_im = cplx && sgn(im[idx]) != 0;
        if (!nz_re && !nz_im) continue;
        Monomial m = st.at(idx, ba.lo);
        if (!lmb.divides(m)) return std::nullopt;
        Monomial mq(m.e[0] - lmb.e[0], m.e[1] - lmb.e[1], m.e[2] - lmb.e[2]);
        if (!in_box(mq, bq)) return std::nullopt;
        if (!mpz_divisible_p(re[idx].get_mpz_t(), lcb.get_mpz_t())) return std::nullopt;
        mpz_divexact(qre.get_mpz_t(), re[idx].get_mpz_t(), lcb.get_mpz_t());
        if (cplx) {
            if (!mpz_divisible_p(im[idx].get_mpz_t(), lcb.get_mpz_t())) return std::nullopt;
            mpz_divexact(qim.get_mpz_t(), im[idx].get_mpz_t(), lcb.get_mpz_t());
        }
        const std::uint64_t iq = (mq.e[0] - bq.lo[0]) * st.s0 + (mq.e[1] - bq.lo[1]) * st.s1 + (mq.e[2] - bq.lo[2]);
        for (std::size_t j = 0; j < b.size(); ++j) {
            const std::uint64_t t = iq + ib[j];
            mpz_srcptr bc = num_re(b.terms()[j].coeff);
            if (sgn(qre) != 0) mpz_submul(re[t].get_mpz_t(), qre.get_mpz_t(), bc);
            if (cplx && sgn(qim) != 0) mpz_submul(im[t].get_mpz_t(), qim.get_mpz_t(), bc);
        }
        quot.push_back({mq.key(), make_coeff(qre, cplx ? qim : mpz_class(0))});
    }
    return MultiPoly::from_sorted_terms(std::move(quot));
}

std::optional<MultiPoly> div_sparse(const MultiPoly& a, const MultiPoly& b, const Box& bq) {
    const bool cplx = !a.is_real();
    std::map<std::uint64_t, std::pair<mpz_class, mpz_class>, std::greater<>> rem;
    for (const auto& t : a.terms()) rem.emplace(t.key, std::make_pair(mpz_class(num_re(t.coeff)), mpz_class(num_im(t.coeff))));
    const Monomial lmb = b.leading().monomial();
    const std::uint64_t lkb = b.leading().key;
    const mpz_class lcb(num_re(b.leading().coeff));
    std::vector<Term> quot;
    while (!rem.empty()) {
        auto it = rem.begin();
        if (sgn(it->second.first) == 0 && sgn(it->second.second) == 0) {
            rem.erase(it);
            continue;
        }
        Monomial m = Monomial::from_key(it->first);
        if (!lmb.divides(m)) return std::nullopt;
        Monomial mq(m.e[0] - lmb.e[0], m.e[1] - lmb.e[1], m.e[2] - lmb.e[2]);
        if (!in_box(mq, bq)) return std::nullopt;
        mpz_class qre, qim;
        if (!mpz_divisible_p(it->second.first.get_mpz_t(), lcb.get_mpz_t())) return std::nullopt;
        mpz_divexact(qre.get_mpz_t(), it->second.first.get_mpz_t(), lcb.get_mpz_t());
        if (cplx) {
            if (!mpz_divisible_p(it->second.second.get_mpz_t(), lcb.get_mpz_t())) return std::nullopt;
            mpz_divexact(qim.get_mpz_t(), it->second.second.get_mpz_t(), lcb.get_mpz_t());
        }
        rem.erase(it);
        const std::uint64_t kq = mq.key();
        for (const auto& tb : b.terms()) {
            if (tb.key == lkb) continue;
            auto& slot = rem[kq + tb.key];
            mpz_srcptr bc = num_re(tb.coeff);
            mpz_submul(slot.first.get_mpz_t(), qre.get_mpz_t(), bc);
            if (cplx) mpz_submul(slot.second.get_mpz_t(), qim.get_mpz_t(), bc);
        }
        quot.push_back({kq, make_coeff(qre, qim)});
    }
    return MultiPoly::from_sorted_terms(std::move(quot));
}

}  // namespace

std::optional<MultiPoly> div_integral(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw std::domain_error("zero divisor");
    if (a.is_zero()) return MultiPoly{};
    const Box ba = box_of(a.terms());
    const Box bb = box_of(b.terms());
    auto bq = quotient_box(ba, bb);
    if (!bq) return std::nullopt;
    if (!b.leading().monomial().divides(a.leading().monomial())) return std::nullopt;
    std::uint64_t total = 1;
    for (int v = 0; v < kNumVars; ++v) total *= std::uint64_t{ba.hi[v] - ba.lo[v]} + 1;
    if (total <= kDenseDivLimit) return div_dense(a, b, ba, bb, *bq);
    return div_sparse(a, b, *bq);
}

MultiPoly symmetric_mod(const MultiPoly& a, const mpz_class& m) {
    std::vector<Term> out;
    const mpz_class half = m / 2;
    auto reduce = [&](mpz_srcptr c) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), c, m.get_mpz_t());
        if (r > half) r -= m;
        return r;
    };
    for (const auto& t : a.terms()) {
        mpz_class re = reduce(num_re(t.coeff));
        mpz_class im = t.coeff.is_real() ? mpz_class(0) : reduce(num_im(t.coeff));
        if (sgn(re) == 0 && sgn(im) == 0) continue;
        out.push_back({t.key, make_coeff(re, im)});
    }
    return MultiPoly::from_sorted_terms(std::move(out));
}

MultiPoly divexact_coeffs(const MultiPoly& a, const mpz_class& n) {
    std::vector<Term> out;
    out.reserve(a.size());
    mpz_class re, im;
    for (const auto& t : a.terms()) {
        mpz_divexact(re.get_mpz_t(), num_re(t.coeff), n.get_mpz_t());
        if (t.coeff.is_real()) {
            im = 0;
        } else {
            mpz_divexact(im.get_mpz_t(), num_im(t.coeff), n.get_mpz_t());
        }
        out.push_back({t.key, make_coeff(re, im)});
    }
    return MultiPoly::from_sorted_terms(std::move(out));
}

mpz_class max_norm(const MultiPoly& a) {
    mpz_class best = 0;
    for (const auto& t : a.terms()) {
        if (mpz_cmpabs(num_re(t.coeff), best.get_mpz_t()) > 0) mpz_abs(best.get_mpz_t(), num_re(t.coeff));
        if (mpz_cmpabs(num_im(t.coeff), best.get_mpz_t()) > 0) mpz_abs(best.get_mpz_t(), num_im(t.coeff));
    }
    return best;
}

MultiPoly evaluate_integer(const MultiPoly& a, Var v, const mpz_class& x) {
    const int vi = static_cast<int>(v);
    std::vector<mpz_class> powers(a.degree(v) + 1);
    powers[0] = 1;
    for (std::size_t e = 1; e < powers.size(); ++e) powers[e] = powers[e - 1] * x;
    // Terms group into runs that share everything except e_v only for v = sigma;
    // use an ordered map in general.
    std::map<std::uint64_t, std::pair<mpz_class, mpz_class>, std::greater<>> acc;
    for (const auto& t : a.terms()) {
        Monomial m = t.monomial();
        const mpz_class& p = powers[m.e[vi]];
        m.e[vi] = 0;
        auto& slot = acc[m.key()];
        mpz_addmul(slot.first.get_mpz_t(), num_re(t.coeff), p.get_mpz_t());
        if (!t.coeff.is_real()) mpz_addmul(slot.second.get_mpz_t(), num_im(t.coeff), p.get_mpz_t());
    }
    std::vector<Term> out;
    for (auto& [k, c] : acc) {
        if (sgn(c.first) == 0 && sgn(c.second) == 0) continue;
        out.push_back({k, make_coeff(c.first, c.second)});
    }
    return MultiPoly::from_sorted_terms(std::move(out));
}

MultiPoly clear_denominators(const MultiPoly& a) {
    mpz_class l = a.denominator_lcm();
    if (l == 1) return a;
    return a.scaled(GaussianRational(mpq_class(l)));
}

}  // namespace detail

// ---------------------------------------------------------------------------

MultiPoly::MultiPoly(const GaussianRational& c) {
    if (!c.is_zero()) terms_.push_back({0, c});
}

MultiPoly MultiPoly::variable(Var v, std::uint32_t exponent) {
    Monomial m;
    m[v] = exponent;
    return monomial(m);
}

MultiPoly MultiPoly::monomial(const Monomial& m, const GaussianRational& c) {
    for (auto e : m.e)
        if (e > Monomial::kMaxExponent) throw std::overflow_error("exponent overflow");
    MultiPoly p;
    if (!c.is_zero()) p.terms_.push_back({m.key(), c});
    return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.key > y.key; });
    MultiPoly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().key == t.key) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    return p;
}

MultiPoly MultiPoly::from_sorted_terms(std::vector<Term> terms) {
    MultiPoly p;
    p.terms_ = std::move(terms);
    return p;
}

bool MultiPoly::is_real() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coeff.is_real(); });
}

bool MultiPoly::is_integral() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coeff.is_integral(); });
}

GaussianRational MultiPoly::constant_term() const {
    if (!terms_.empty() && terms_.back().key == 0) return terms_.back().coeff;
    return GaussianRational(0);
}

GaussianRational MultiPoly::coeff(const Monomial& m) const {
    const std::uint64_t k = m.key();
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, std::uint64_t key) { return t.key > key; });
    if (it != terms_.end() && it->key == k) return it->coeff;
    return GaussianRational(0);
}

std::uint32_t MultiPoly::degree(Var v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial()[v]);
    return d;
}

std::uint32_t MultiPoly::min_degree(Var v) const {
    if (terms_.empty()) return 0;
    std::uint32_t d = Monomial::kMaxExponent;
    for (const auto& t : terms_) d = std::min(d, t.monomial()[v]);
    return d;
}

Monomial MultiPoly::monomial_content() const {
    if (terms_.empty()) return {};
    Box b = box_of(terms_);
    return {b.lo[0], b.lo[1], b.lo[2]};
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].key > b[j].key)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].key > a[i].key) {
            out.push_back({b[j].key, subtract ? -b[j].coeff : b[j].coeff});
            ++j;
        } else {
            GaussianRational c = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
            if (!c.is_zero()) out.push_back({a[i].key, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    terms_ = merge_terms(terms_, o.terms_, false);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (o.is_zero()) return *this;
    terms_ = merge_terms(terms_, o.terms_, true);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    r += b;
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    r -= b;
    return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_monomial()) return b.times_monomial(a.leading().monomial()).scaled(a.leading().coeff);
    if (b.is_monomial()) return a.times_monomial(b.leading().monomial()).scaled(b.leading().coeff);
    const mpz_class la = a.denominator_lcm();
    const mpz_class lb = b.denominator_lcm();
    if (la == 1 && lb == 1) return detail::mul_integral(a, b);
    MultiPoly r = detail::mul_integral(detail::clear_denominators(a), detail::clear_denominators(b));
    return r.scaled(GaussianRational(mpq_class(1, 1) / mpq_class(la * lb)));
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].key != b.terms_[i].key || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    }
    return true;
}

MultiPoly MultiPoly::scaled(const GaussianRational& c) const {
    if (c.is_zero()) return {};
    if (c.is_one()) return *this;
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

MultiPoly MultiPoly::times_monomial(const Monomial& m) const {
    if (m.key() == 0) return *this;
    Box b = box_of(terms_);
    for (int v = 0; v < kNumVars; ++v)
        if (std::uint64_t{b.hi[v]} + m.e[v] > Monomial::kMaxExponent) throw std::overflow_error("exponent overflow");
    MultiPoly r = *this;
    const std::uint64_t k = m.key();
    for (auto& t : r.terms_) t.key += k;
    return r;
}

MultiPoly MultiPoly::divided_by_monomial(const Monomial& m) const {
    if (m.key() == 0) return *this;
    MultiPoly r = *this;
    const std::uint64_t k = m.key();
    for (auto& t : r.terms_) {
        if (!m.divides(t.monomial())) throw std::logic_error("monomial does not divide polynomial");
        t.key -= k;
    }
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly acc(1);
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1u) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return acc;
}

MultiPoly MultiPoly::real_part() const {
    std::vector<Term> out;
    for (const auto& t : terms_)
        if (sgn(t.coeff.re()) != 0) out.push_back({t.key, GaussianRational(t.coeff.re())});
    return from_sorted_terms(std::move(out));
}

MultiPoly MultiPoly::imag_part() const {
    std::vector<Term> out;
    for (const auto& t : terms_)
        if (sgn(t.coeff.im()) != 0) out.push_back({t.key, GaussianRational(t.coeff.im())});
    return from_sorted_terms(std::move(out));
}

MultiPoly MultiPoly::conj() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff = t.coeff.conj();
    return r;
}

mpz_class MultiPoly::denominator_lcm() const {
    mpz_class l = 1;
    for (const auto& t : terms_) {
        if (t.coeff.re().get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.re().get_den_mpz_t());
        if (t.coeff.im().get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.im().get_den_mpz_t());
    }
    return l;
}

mpz_class MultiPoly::integer_content() const {
    mpz_class g = 0;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num_re(t.coeff));
        if (!t.coeff.is_real()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num_im(t.coeff));
        if (g == 1) break;
    }
    return g;
}

MultiPoly MultiPoly::inflate(Var v, std::uint32_t k) const {
    if (k == 1) return *this;
    MultiPoly r = *this;
    for (auto& t : r.terms_) {
        Monomial m = t.monomial();
        if (std::uint64_t{m[v]} * k > Monomial::kMaxExponent) throw std::overflow_error("exponent overflow");
        m[v] *= k;
        t.key = m.key();
    }
    return r;
}

MultiPoly MultiPoly::deflate(Var v, std::uint32_t k) const {
    if (k == 1) return *this;
    MultiPoly r = *this;
    for (auto& t : r.terms_) {
        Monomial m = t.monomial();
        if (m[v] % k != 0) throw std::logic_error("exponent not divisible in deflate");
        m[v] /= k;
        t.key = m.key();
    }
    return r;
}

std::uint32_t MultiPoly::exponent_gcd(Var v) const {
    std::uint32_t g = 0;
    for (const auto& t : terms_) g = std::gcd(g, t.monomial()[v]);
    return g;
}

MultiPoly MultiPoly::evaluate(Var v, const GaussianRational& x) const {
    std::vector<GaussianRational> powers(degree(v) + 1);
    powers[0] = GaussianRational(1);
    for (std::size_t e = 1; e < powers.size(); ++e) powers[e] = powers[e - 1] * x;
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m = t.monomial();
        GaussianRational c = t.coeff * powers[m[v]];
        m[v] = 0;
        out.push_back({m.key(), std::move(c)});
    }
    return from_terms(std::move(out));
}

std::vector<std::pair<std::uint32_t, MultiPoly>> MultiPoly::collect(Var v) const {
    std::map<std::uint32_t, std::vector<Term>, std::greater<>> buckets;
    for (const auto& t : terms_) {
        Monomial m = t.monomial();
        const std::uint32_t e = m[v];
        m[v] = 0;
        buckets[e].push_back({m.key(), t.coeff});
    }
    std::vector<std::pair<std::uint32_t, MultiPoly>> out;
    out.reserve(buckets.size());
    // Clearing one exponent keeps the relative order inside a bucket.
    for (auto& [e, ts] : buckets) out.emplace_back(e, from_sorted_terms(std::move(ts)));
    return out;
}

MultiPoly MultiPoly::substitute(Var v, const MultiPoly& p) const {
    auto parts = collect(v);
    if (parts.empty()) return {};
    MultiPoly r = parts[0].second;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        r = r * p.pow(parts[i - 1].first - parts[i].first) + parts[i].second;
    }
    return r * p.pow(parts.back().first);
}

std::string MultiPoly::to_string(const std::array<const char*, kNumVars>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Monomial m = t.monomial();
        GaussianRational c = t.coeff;
        bool negative = c.is_real() && sgn(c.re()) < 0;
        if (negative) c = -c;
        if (!first) os << (negative ? " - " : " + ");
        else if (negative) os << "-";
        first = false;
        std::string mono;
        for (int v = 0; v < kNumVars; ++v) {
            if (m.e[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[v];
            if (m.e[v] > 1) mono += "^" + std::to_string(m.e[v]);
        }
        if (mono.empty()) {
            os << c.to_string();
        } else if (c.is_one()) {
            os << mono;
        } else {
            os << c.to_string() << "*" << mono;
        }
    }
    return os.str();
}

std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw std::domain_error("zero divisor");
    if (a.is_zero()) return MultiPoly{};
    if (b.is_monomial()) {
        const Monomial mb = b.leading().monomial();
        const GaussianRational inv = b.leading().coeff.inverse();
        std::vector<MultiPoly::Term> out;
        out.reserve(a.size());
        for (const auto& t : a.terms()) {
            Monomial m = t.monomial();
            if (!mb.divides(m)) return std::nullopt;
            out.push_back({t.key - mb.key(), t.coeff * inv});
        }
        return MultiPoly::from_sorted_terms(std::move(out));
    }
    if (!b.is_real()) {
        const MultiPoly bc = b.conj();
        return exact_divide(a * bc, b * bc);
    }
    const mpz_class la = a.denominator_lcm();
    const mpz_class lb = b.denominator_lcm();
    MultiPoly ai = la == 1 ? a : a.scaled(GaussianRational(mpq_class(la)));
    MultiPoly bi = lb == 1 ? b : b.scaled(GaussianRational(mpq_class(lb)));
    mpz_class cb = bi.integer_content();
    if (mpz_sgn(num_re(bi.leading().coeff)) < 0) cb = -cb;
    if (cb != 1) bi = detail::divexact_coeffs(bi, cb);
    auto q = detail::div_integral(ai, bi);
    if (!q) return std::nullopt;
    // a/b = (ai/bi) * lb / (la * cb)
    mpq_class f(lb, la * cb);
    f.canonicalize();
    if (f == 1) return q;
    return q->scaled(GaussianRational(f));
}

}  // namespace localgw
