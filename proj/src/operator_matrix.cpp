#include "localgw/operator_matrix.hpp"

#include "localgw/partition.hpp"

#include <stdexcept>

namespace localgw {

OperatorMatrix::OperatorMatrix(int degree, int size)
    : degree_(degree), n_(size), a_(static_cast<std::size_t>(size) * size) {}

OperatorMatrix OperatorMatrix::zero(int degree) { return OperatorMatrix(degree, Basis::of(degree).dim()); }

OperatorMatrix OperatorMatrix::identity(int degree) {
    OperatorMatrix m = zero(degree);
    for (int i = 0; i < m.n_; ++i) m(i, i) = Scalar(1);
    return m;
}

namespace {

void check_shape(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("operator size mismatch");
}

}  // namespace

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    check_shape(a, b);
    OperatorMatrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
    return r;
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    check_shape(a, b);
    OperatorMatrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
    return r;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    check_shape(a, b);
    const int n = a.n_;
    OperatorMatrix r(a.degree_, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Scalar s;
            for (int k = 0; k < n; ++k) {
                if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
                s += a(i, k) * b(k, j);
            }
            r(i, j) = std::move(s);
        }
    }
    return r;
}

bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.a_.size(); ++i)
        if (!(a.a_[i] == b.a_[i])) return false;
    return true;
}

OperatorMatrix OperatorMatrix::scaled(const Scalar& c) const {
    OperatorMatrix r = *this;
    for (auto& x : r.a_)
        if (!x.is_zero()) x *= c;
    return r;
}

std::vector<Scalar> OperatorMatrix::apply(const std::vector<Scalar>& v) const {
    if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("vector size mismatch");
    std::vector<Scalar> out(n_);
    for (int i = 0; i < n_; ++i) {
        Scalar s;
        for (int k = 0; k < n_; ++k) {
            if ((*this)(i, k).is_zero() || v[k].is_zero()) continue;
            s += (*this)(i, k) * v[k];
        }
        out[i] = std::move(s);
    }
    return out;
}

namespace {

std::size_t weight(const Scalar& s) { return s.num().size() + s.den().size(); }

}  // namespace

OperatorMatrix OperatorMatrix::inverse() const {
    const int n = n_;
    OperatorMatrix a = *this;
    OperatorMatrix inv(degree_, n);
    for (int i = 0; i < n; ++i) inv(i, i) = Scalar(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r) {
            if (a(r, col).is_zero()) continue;
            if (piv < 0 || weight(a(r, col)) < weight(a(piv, col))) piv = r;
        }
        if (piv < 0) throw std::domain_error("operator not invertible");
        if (piv != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(a(piv, c), a(col, c));
                std::swap(inv(piv, c), inv(col, c));
            }
        }
        const Scalar p = a(col, col).inverse();
        for (int c = 0; c < n; ++c) {
            if (!a(col, c).is_zero()) a(col, c) *= p;
            if (!inv(col, c).is_zero()) inv(col, c) *= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a(r, col).is_zero()) continue;
            const Scalar f = a(r, col);
            for (int c = 0; c < n; ++c) {
                if (!a(col, c).is_zero()) a(r, c) -= f * a(col, c);
                if (!inv(col, c).is_zero()) inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

OperatorMatrix OperatorMatrix::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    OperatorMatrix acc(degree_, n_);
    for (int i = 0; i < n_; ++i) acc(i, i) = Scalar(1);
    if (e == 0) return acc;
    OperatorMatrix base = *this;
    bool first = true;
    while (e > 0) {
        if (e & 1) {
            acc = first ? base : acc * base;
            first = false;
        }
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

Scalar OperatorMatrix::trace() const {
    Scalar s;
    for (int i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
}

bool OperatorMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool OperatorMatrix::is_diagonal() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
}

OperatorMatrix OperatorMatrix::map(const std::function<Scalar(const Scalar&)>& f) const {
    OperatorMatrix r = *this;
    for (auto& x : r.a_) x = f(x);
    return r;
}

Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Scalar s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() || b[i].is_zero()) continue;
        s += a[i] * b[i];
    }
    return s;
}

}  // namespace localgw
