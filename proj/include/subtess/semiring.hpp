#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "subtess/errors.hpp"

namespace subtess {

using BigNat = boost::multiprecision::cpp_int;

/// The three semirings the counting engine runs over: the naturals with
/// infinity, the threshold quotient S_k^∞ = {0..k, ∞} saturating at k, and
/// the modulo quotient Z_q^∞ = {0..q, ∞} where 0 and q are distinct
/// elements.
struct Semiring {
    enum Kind { NInf, SkInf, ZqInf };
    Kind kind = NInf;
    unsigned param = 0;  // k or q

    static Semiring ninf() { return {NInf, 0}; }
    static Semiring sk(unsigned k) { return {SkInf, k}; }
    static Semiring zq(unsigned q) {
        if (q < 1) throw Error("Z_q^inf needs q >= 1");
        return {ZqInf, q};
    }
    bool finite() const { return kind != NInf; }
    bool operator==(const Semiring& o) const {
        return kind == o.kind && param == o.param;
    }
    bool operator!=(const Semiring& o) const { return !(*this == o); }
    std::string str() const;
};

class SemiringValue {
public:
    static SemiringValue zero(Semiring r) { return SemiringValue(r, false, 0); }
    static SemiringValue one(Semiring r) { return SemiringValue(r, false, 1); }
    static SemiringValue infinity(Semiring r) { return SemiringValue(r, true, 0); }
    /// Finite element; must already lie in the carrier set.
    static SemiringValue finite(Semiring r, BigNat v);

    const Semiring& ring() const { return ring_; }
    bool is_inf() const { return inf_; }
    bool is_zero() const { return !inf_ && fin_ == 0; }
    const BigNat& finite_value() const;

    friend SemiringValue operator+(const SemiringValue& a, const SemiringValue& b);
    friend SemiringValue operator*(const SemiringValue& a, const SemiringValue& b);

    bool operator==(const SemiringValue& o) const;
    bool operator!=(const SemiringValue& o) const { return !(*this == o); }
    bool operator<(const SemiringValue& o) const;  // for ordered containers

    std::string str() const;

private:
    SemiringValue(Semiring r, bool inf, BigNat v)
        : ring_(r), inf_(inf), fin_(std::move(v)) {}
    Semiring ring_;
    bool inf_;
    BigNat fin_;
};

/// Semiring homomorphism h into S_k^∞: min with k, ∞ fixed.
SemiringValue hom_threshold(const SemiringValue& v, unsigned k);
/// Semiring homomorphism η into Z_q^∞: ∞ fixed, positive multiples of q go
/// to the element q, everything else to its residue.
SemiringValue hom_modulo(const SemiringValue& v, unsigned q);

class Mat {
public:
    Mat(std::size_t rows, std::size_t cols, const SemiringValue& fill);
    static Mat zeros(std::size_t rows, std::size_t cols, Semiring r);
    static Mat identity(std::size_t n, Semiring r);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Semiring ring() const { return ring_; }
    SemiringValue& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const SemiringValue& at(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }
    bool operator==(const Mat& o) const;
    bool operator<(const Mat& o) const;

private:
    std::size_t rows_, cols_;
    Semiring ring_;
    std::vector<SemiringValue> a_;
};

Mat mat_add(const Mat& a, const Mat& b);
Mat mat_mul(const Mat& a, const Mat& b);

/// M = Σ_{t>=0} A^t over ℕ∞. An entry is ∞ exactly if some power in the
/// window (n, 2n] is positive there (n = dimension); otherwise it equals
/// the finite sum of the powers up to n.
Mat star_matrix(const Mat& a);

}  // namespace subtess
