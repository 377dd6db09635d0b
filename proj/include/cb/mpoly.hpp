#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cb/scalar.hpp"

namespace cb {

using Expvec = std::vector<int>;

// Graded-lexicographic order on exponent vectors of equal length.
struct GrlexLess {
    bool operator()(const Expvec& a, const Expvec& b) const;
};

// Sparse multivariate polynomial over Scalar, with an ordered variable context.
// Canonical form: no zero terms; exponent vectors sized to the context.
// Binary operations require both operands to share the exact same context.
class MPoly {
  public:
    using TermMap = std::map<Expvec, Scalar, GrlexLess>;

    MPoly() = default;
    explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MPoly constant(std::vector<std::string> vars, const Scalar& value);
    static MPoly variable(std::vector<std::string> vars, const std::string& name);
    static MPoly monomial(std::vector<std::string> vars, Expvec exps, const Scalar& coeff);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    int var_index(const std::string& name) const;  // -1 when absent
    bool has_var(const std::string& name) const { return var_index(name) >= 0; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Scalar constant_value() const;  // requires is_constant()
    bool is_univariate_in(const std::string& var) const;

    int total_degree() const;  // -1 for the zero polynomial
    int degree_in(const std::string& var) const;
    bool is_homogeneous() const;

    const Expvec& leading_exponents() const;
    const Scalar& leading_coeff() const;
    Scalar coeff(const Expvec& exps) const;

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    MPoly operator*(const Scalar& s) const;
    MPoly operator/(const Scalar& s) const { return *this * s.inverse(); }
    MPoly pow(int e) const;

    bool operator==(const MPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly derivative(const std::string& var) const;

    // Re-express in a context containing every used variable (reorder/extend).
    MPoly in_context(const std::vector<std::string>& vars) const;
    // Fix some variables to scalar values; context unchanged.
    MPoly set_vars(const std::map<std::string, Scalar>& values) const;
    Scalar eval(const std::map<std::string, Scalar>& values) const;

    // Coefficients with respect to one variable: result[k] multiplies var^k and
    // lives in the same context with that variable absent.
    std::vector<MPoly> coeffs_in(const std::string& var) const;
    static MPoly from_coeffs(const std::vector<std::string>& vars, const std::string& var,
                             const std::vector<MPoly>& coeffs);

    std::string to_string() const;

    void insert_term(Expvec exps, const Scalar& coeff);  // accumulates; drops zeros

  private:
    std::vector<std::string> vars_;
    TermMap terms_;

    void check_context(const MPoly& o) const;
};

// Shared context: a's variables followed by b's new ones.
std::vector<std::string> merged_vars(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b);
void align(MPoly& a, MPoly& b);

struct PseudoDivision {
    MPoly quotient;
    MPoly remainder;
    int power;  // lc(divisor)^power * dividend = quotient*divisor + remainder
};
PseudoDivision pseudo_divmod(const MPoly& dividend, const MPoly& divisor, const std::string& var);

std::optional<MPoly> divide_exact(const MPoly& dividend, const MPoly& divisor);

// Primitive gcd, monic in the leading graded-lex coefficient.
MPoly poly_gcd(const MPoly& a, const MPoly& b);

// Resultant eliminating `var`, by fraction-free elimination on the Sylvester matrix.
MPoly resultant(const MPoly& a, const MPoly& b, const std::string& var);

MPoly make_squarefree(const MPoly& p, const std::string& var);

// Yun decomposition p = content * prod factor^multiplicity, factors monic,
// squarefree and pairwise coprime.
struct SquarefreePart {
    MPoly factor;
    int multiplicity;
};
std::vector<SquarefreePart> squarefree_decomposition(const MPoly& p, const std::string& var);

}  // namespace cb
