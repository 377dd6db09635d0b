#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "cb/errors.hpp"

namespace cb {

using Rat = mpq_class;

std::string rat_to_string(const Rat& q);

// Square-free decomposition n = square * part, part square-free (sign kept in part).
struct SquareFree {
    mpz_class square_root;  // s with n = s^2 * part
    long long part;
};
SquareFree squarefree_decompose(const mpz_class& n);

// An element of Q or of a real/imaginary quadratic tower Q(sqrt(r1), sqrt(r2)):
//
//     value = a + b*sqrt(r1) + c*sqrt(r2) + d*sqrt(r3),   r3 = squarefree(r1*r2)
//
// with r1, r2 distinct square-free integers not in {0, 1}. Radicands may be
// negative (sqrt(-1) = i); such scalars are imaginary-aware but every public
// polynomial coefficient in this codebase stays real. At most two independent
// radicands exist per value; combining values whose radicands generate a larger
// group raises NeedsExtension.
class Scalar {
  public:
    Scalar() : a_(0) {}
    Scalar(long n) : a_(n) {}
    Scalar(int n) : a_(n) {}
    Scalar(const Rat& q) : a_(q) { a_.canonicalize(); }
    Scalar(long num, long den);

    // q * sqrt(radicand); radicand is reduced to its square-free part.
    static Scalar radical(const Rat& q, long long radicand);
    static Scalar i();  // sqrt(-1)

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_rational() const { return r1_ == 0; }
    bool is_real() const;
    bool is_integer() const;

    const Rat& rational_value() const;  // requires is_rational()
    long long to_long() const;          // requires integer

    // Accessors for the canonical representation.
    long long radicand1() const { return r1_; }
    long long radicand2() const { return r2_; }
    const Rat& coeff_one() const { return a_; }
    const Rat& coeff_r1() const { return b_; }
    const Rat& coeff_r2() const { return c_; }
    const Rat& coeff_r3() const { return d_; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar inverse() const;
    Scalar pow(long e) const;

    // Complex conjugation (identity on real scalars).
    Scalar conj() const;
    Scalar real_part() const;
    Scalar imag_part() const;

    // Exact sign of a real scalar: -1, 0, +1.
    int sign() const;
    Scalar abs() const;
    int compare(const Scalar& o) const { return (*this - o).sign(); }
    bool operator<(const Scalar& o) const { return compare(o) < 0; }
    bool operator<=(const Scalar& o) const { return compare(o) <= 0; }
    bool operator>(const Scalar& o) const { return compare(o) > 0; }
    bool operator>=(const Scalar& o) const { return compare(o) >= 0; }

    // Exact square root within the tower, if one exists there. Real input >= 0
    // for sqrt(); sqrt_any() also handles negative reals (imaginary result).
    std::optional<Scalar> sqrt() const;
    std::optional<Scalar> sqrt_any() const;

    std::complex<double> to_complex() const;
    double to_double() const;

    std::string to_string() const;

  private:
    void normalize();
    static void unify(Scalar& x, Scalar& y);
    Scalar galois(bool flip1, bool flip2) const;

    Rat a_, b_, c_, d_;
    long long r1_ = 0, r2_ = 0;
};

inline Scalar operator+(long n, const Scalar& s) { return Scalar(n) + s; }
inline Scalar operator-(long n, const Scalar& s) { return Scalar(n) - s; }
inline Scalar operator*(long n, const Scalar& s) { return Scalar(n) * s; }

}  // namespace cb
