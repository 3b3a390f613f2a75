#include "subtess/semiring.hpp"

namespace subtess {

std::string Semiring::str() const {
    switch (kind) {
        case NInf:
            return "Ninf";
        case SkInf:
            return "Sk(" + std::to_string(param) + ")";
        case ZqInf:
            return "Zq(" + std::to_string(param) + ")";
    }
    return "?";
}

SemiringValue SemiringValue::finite(Semiring r, BigNat v) {
    if (v < 0) throw Error("semiring value must be a natural number");
    if (r.finite() && v > r.param)
        throw Error("value " + v.str() + " outside carrier of " + r.str());
    return SemiringValue(r, false, std::move(v));
}

const BigNat& SemiringValue::finite_value() const {
    if (inf_) throw Error("finite_value of infinity");
    return fin_;
}

namespace {

void check_rings(const SemiringValue& a, const SemiringValue& b) {
    if (a.ring() != b.ring()) throw Error("semiring mismatch in arithmetic");
}

}  // namespace

SemiringValue operator+(const SemiringValue& a, const SemiringValue& b) {
    check_rings(a, b);
    Semiring r = a.ring();
    if (a.is_inf() || b.is_inf()) return SemiringValue::infinity(r);
    BigNat s = a.finite_value() + b.finite_value();
    switch (r.kind) {
        case Semiring::NInf:
            return SemiringValue::finite(r, std::move(s));
        case Semiring::SkInf:
            return SemiringValue::finite(r, s > r.param ? BigNat(r.param)
                                                        : std::move(s));
        case Semiring::ZqInf: {
            // overflow normalizes through η so that positive multiples of q
            // stay at the element q, never at 0
            if (s <= r.param) return SemiringValue::finite(r, std::move(s));
            BigNat m = s % r.param;
            return SemiringValue::finite(r, m == 0 ? BigNat(r.param) : m);
        }
    }
    throw Error("unreachable");
}

SemiringValue operator*(const SemiringValue& a, const SemiringValue& b) {
    check_rings(a, b);
    Semiring r = a.ring();
    if (a.is_zero() || b.is_zero()) return SemiringValue::zero(r);
    if (a.is_inf() || b.is_inf()) return SemiringValue::infinity(r);
    BigNat p = a.finite_value() * b.finite_value();
    switch (r.kind) {
        case Semiring::NInf:
            return SemiringValue::finite(r, std::move(p));
        case Semiring::SkInf:
            return SemiringValue::finite(r, p > r.param ? BigNat(r.param)
                                                        : std::move(p));
        case Semiring::ZqInf: {
            if (p <= r.param) return SemiringValue::finite(r, std::move(p));
            BigNat m = p % r.param;
            return SemiringValue::finite(r, m == 0 ? BigNat(r.param) : m);
        }
    }
    throw Error("unreachable");
}

bool SemiringValue::operator==(const SemiringValue& o) const {
    return ring_ == o.ring_ && inf_ == o.inf_ && (inf_ || fin_ == o.fin_);
}

bool SemiringValue::operator<(const SemiringValue& o) const {
    if (inf_ != o.inf_) return !inf_;  // finite < infinity
    if (inf_) return false;
    return fin_ < o.fin_;
}

std::string SemiringValue::str() const { return inf_ ? "inf" : fin_.str(); }

SemiringValue hom_threshold(const SemiringValue& v, unsigned k) {
    Semiring t = Semiring::sk(k);
    if (v.is_inf()) return SemiringValue::infinity(t);
    const BigNat& n = v.finite_value();
    return SemiringValue::finite(t, n > k ? BigNat(k) : n);
}

SemiringValue hom_modulo(const SemiringValue& v, unsigned q) {
    Semiring t = Semiring::zq(q);
    if (v.is_inf()) return SemiringValue::infinity(t);
    const BigNat& n = v.finite_value();
    if (n != 0 && n % q == 0) return SemiringValue::finite(t, q);
    return SemiringValue::finite(t, n % q);
}

Mat::Mat(std::size_t rows, std::size_t cols, const SemiringValue& fill)
    : rows_(rows), cols_(cols), ring_(fill.ring()), a_(rows * cols, fill) {}

Mat Mat::zeros(std::size_t rows, std::size_t cols, Semiring r) {
    return Mat(rows, cols, SemiringValue::zero(r));
}

Mat Mat::identity(std::size_t n, Semiring r) {
    Mat m = zeros(n, n, r);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = SemiringValue::one(r);
    return m;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && ring_ == o.ring_ && a_ == o.a_;
}

bool Mat::operator<(const Mat& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (a_[i] < o.a_[i]) return true;
        if (o.a_[i] < a_[i]) return false;
    }
    return false;
}

Mat mat_add(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error("mat_add: shape mismatch");
    Mat out = Mat::zeros(a.rows(), a.cols(), a.ring());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out.at(i, j) = a.at(i, j) + b.at(i, j);
    return out;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw Error("mat_mul: shape mismatch");
    Mat out = Mat::zeros(a.rows(), b.cols(), a.ring());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const SemiringValue& x = a.at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const SemiringValue& y = b.at(k, j);
                if (y.is_zero()) continue;
                out.at(i, j) = out.at(i, j) + x * y;
            }
        }
    return out;
}

Mat star_matrix(const Mat& a) {
    if (a.rows() != a.cols()) throw Error("star_matrix: square matrix required");
    if (a.ring().kind != Semiring::NInf)
        throw Error("star_matrix: defined over Ninf only");
    std::size_t n = a.rows();
    Semiring r = a.ring();
    if (n == 0) return a;

    // Positivity shadow: entry (i,j) of the window sum Σ_{t=n+1}^{2n} A^t is
    // positive iff the boolean power walk hits (i,j) at some such t.
    std::size_t blocks = (n + 63) / 64;
    std::vector<std::uint64_t> b(n * blocks, 0), pow(n * blocks, 0),
        window(n * blocks, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!a.at(i, j).is_zero()) b[i * blocks + j / 64] |= 1ull << (j % 64);
    // pow := identity
    for (std::size_t i = 0; i < n; ++i) pow[i * blocks + i / 64] |= 1ull << (i % 64);
    auto bool_mul = [&](const std::vector<std::uint64_t>& x,
                        const std::vector<std::uint64_t>& y) {
        std::vector<std::uint64_t> out(n * blocks, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (x[i * blocks + k / 64] >> (k % 64) & 1)
                    for (std::size_t w = 0; w < blocks; ++w)
                        out[i * blocks + w] |= y[k * blocks + w];
        return out;
    };
    for (std::size_t t = 1; t <= 2 * n; ++t) {
        pow = bool_mul(pow, b);
        if (t > n)
            for (std::size_t i = 0; i < n * blocks; ++i) window[i] |= pow[i];
    }

    // Exact finite part: Σ_{t=0}^{n} A^t.
    Mat sum = Mat::identity(n, r);
    Mat p = Mat::identity(n, r);
    for (std::size_t t = 1; t <= n; ++t) {
        p = mat_mul(p, a);
        sum = mat_add(sum, p);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (window[i * blocks + j / 64] >> (j % 64) & 1)
                sum.at(i, j) = SemiringValue::infinity(r);
    return sum;
}

}  // namespace subtess
