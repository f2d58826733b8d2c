#include "localgw/useries.hpp"

#include <algorithm>
#include <stdexcept>

namespace localgw {

USeries::USeries(int offset, std::vector<Scalar> coeffs) : offset_(offset), coeffs_(std::move(coeffs)) {}

USeries USeries::constant(const Scalar& c, int order) {
    std::vector<Scalar> cs(std::max(order + 1, 0));
    if (!cs.empty()) cs[0] = c;
    return USeries(0, std::move(cs));
}

Scalar USeries::coeff(int k) const {
    if (k < offset_) return {};
    if (k >= precision()) throw std::out_of_range("series coefficient beyond precision");
    return coeffs_[k - offset_];
}

USeries USeries::normalized() const {
    std::size_t z = 0;
    while (z < coeffs_.size() && coeffs_[z].is_zero()) ++z;
    if (z == 0) return *this;
    return USeries(offset_ + static_cast<int>(z), std::vector<Scalar>(coeffs_.begin() + z, coeffs_.end()));
}

USeries USeries::truncated(int new_precision) const {
    if (new_precision >= precision()) return *this;
    if (new_precision <= offset_) return USeries(new_precision, {});
    return USeries(offset_, std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + (new_precision - offset_)));
}

USeries USeries::operator-() const {
    USeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

USeries operator+(const USeries& a, const USeries& b) {
    const int lo = std::min(a.offset_, b.offset_);
    const int hi = std::min(a.precision(), b.precision());
    if (hi <= lo) return USeries(hi, {});
    std::vector<Scalar> cs(hi - lo);
    for (int k = lo; k < hi; ++k) {
        if (k >= a.offset_) cs[k - lo] += a.coeffs_[k - a.offset_];
        if (k >= b.offset_) cs[k - lo] += b.coeffs_[k - b.offset_];
    }
    return USeries(lo, std::move(cs));
}

USeries operator-(const USeries& a, const USeries& b) { return a + (-b); }

USeries operator*(const USeries& x, const USeries& y) {
    const USeries a = x.normalized();
    const USeries b = y.normalized();
    // Known below min(val(a) + prec(b), val(b) + prec(a)).
    const int p = std::min(a.offset_ + b.precision(), b.offset_ + a.precision());
    const int lo = a.offset_ + b.offset_;
    if (p <= lo) return USeries(p, {});
    std::vector<Scalar> cs(p - lo);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size() && static_cast<int>(i + j) < p - lo; ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return USeries(lo, std::move(cs));
}

USeries USeries::inverse() const {
    const USeries a = normalized();
    if (a.coeffs_.empty()) throw std::domain_error("zero divisor");
    const Scalar inv0 = a.coeffs_[0].inverse();
    const std::size_t n = a.coeffs_.size();
    std::vector<Scalar> d(n);
    d[0] = inv0;
    for (std::size_t j = 1; j < n; ++j) {
        Scalar s;
        for (std::size_t l = 1; l <= j; ++l) {
            if (a.coeffs_[l].is_zero()) continue;
            s += a.coeffs_[l] * d[j - l];
        }
        d[j] = -(s * inv0);
    }
    return USeries(-a.offset_, std::move(d));
}

USeries USeries::scaled(const Scalar& c) const {
    USeries r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

bool USeries::agrees_with(const USeries& o) const {
    const int lo = std::min(offset_, o.offset_);
    const int hi = std::min(precision(), o.precision());
    for (int k = lo; k < hi; ++k)
        if (!(coeff(k) == o.coeff(k))) return false;
    return true;
}

namespace {

// Coefficients of p(sigma = e^{iu/2}) as polynomials in t1, t2.
class SigmaExpansion {
public:
    explicit SigmaExpansion(const MultiPoly& p) : parts_(p.collect(Var::sigma)) {}

    // Coefficient of u^m: sum_k p_k (ik/2)^m / m!.
    MultiPoly coeff(int m) const {
        mpz_class fact = 1;
        for (int j = 2; j <= m; ++j) fact *= j;
        const GaussianRational half_i(mpq_class(0), mpq_class(1, 2));
        const GaussianRational base = half_i.pow(m) / GaussianRational(fact);
        MultiPoly acc;
        for (const auto& [k, pk] : parts_) {
            if (m > 0 && k == 0) continue;
            mpz_class km;
            mpz_ui_pow_ui(km.get_mpz_t(), k, static_cast<unsigned long>(m));
            acc += pk.scaled(base * GaussianRational(km));
        }
        return acc;
    }

    // First m with a nonzero coefficient; bounded by the number of sigma powers.
    int valuation() const {
        for (int m = 0;; ++m)
            if (!coeff(m).is_zero()) return m;
    }

private:
    std::vector<std::pair<std::uint32_t, MultiPoly>> parts_;
};

}  // namespace

USeries expand_u_series(const Scalar& a, int order) {
    if (order < 0) throw std::invalid_argument("series order must be nonnegative");
    if (a.is_zero()) return USeries(0, std::vector<Scalar>(order + 1));
    const SigmaExpansion num(a.num());
    const SigmaExpansion den(a.den());
    const int vn = num.valuation();
    const int vd = den.valuation();
    const int offset = vn - vd;
    const int count = order - offset + 1;
    if (count <= 0) return USeries(order + 1, {});
    std::vector<Scalar> nc(count), dc(count);
    for (int j = 0; j < count; ++j) {
        nc[j] = Scalar(num.coeff(vn + j));
        dc[j] = Scalar(den.coeff(vd + j));
    }
    const Scalar inv0 = dc[0].inverse();
    std::vector<Scalar> c(count);
    for (int j = 0; j < count; ++j) {
        Scalar s = nc[j];
        for (int l = 0; l < j; ++l) {
            if (dc[j - l].is_zero()) continue;
            s -= c[l] * dc[j - l];
        }
        c[j] = s * inv0;
    }
    return USeries(offset, std::move(c));
}

}  // namespace localgw
