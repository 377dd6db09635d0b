#pragma once

#include <map>

#include "cb/mpoly.hpp"

namespace cb {

// Reduced fraction of multivariate polynomials: gcd(num, den) = 1 and the
// denominator is monic under graded-lex.
class RatFunc {
  public:
    RatFunc() = default;
    RatFunc(MPoly num);  // NOLINT: deliberate implicit lift
    RatFunc(MPoly num, MPoly den);

    static RatFunc from_scalar(std::vector<std::string> vars, const Scalar& value);
    static RatFunc var(std::vector<std::string> vars, const std::string& name);

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    const std::vector<std::string>& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Scalar constant_value() const { return num_.constant_value() / den_.constant_value(); }

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    RatFunc pow(int e) const;

    bool operator==(const RatFunc& o) const;
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc in_context(const std::vector<std::string>& vars) const;

    std::string to_string() const;

  private:
    MPoly num_, den_;
    void reduce();
};

void align(RatFunc& a, RatFunc& b);

// Exact simultaneous substitution var -> value. Bound variables must occur in
// the target's context; unbound target variables pass through into the result.
// Raises DivisionByZero when the target's denominator vanishes identically.
RatFunc substitute(const MPoly& target, const std::map<std::string, RatFunc>& bindings);
RatFunc substitute(const RatFunc& target, const std::map<std::string, RatFunc>& bindings);

// Context in which substitution results are expressed.
std::vector<std::string> substitution_context(const std::vector<std::string>& target_vars,
                                              const std::map<std::string, RatFunc>& bindings);

}  // namespace cb
