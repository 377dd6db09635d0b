#include "cb/scalar.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

namespace cb {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::VariableMismatch: return "VariableMismatch";
        case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
        case ErrorCode::UnsupportedField: return "UnsupportedField";
        case ErrorCode::NotNonnegative: return "NotNonnegative";
        case ErrorCode::NeedsExtension: return "NeedsExtension";
        case ErrorCode::NotReduced: return "NotReduced";
        case ErrorCode::UnsupportedNodeField: return "UnsupportedNodeField";
        case ErrorCode::NotSingular: return "NotSingular";
        case ErrorCode::CollinearNodes: return "CollinearNodes";
        case ErrorCode::TemplateMismatch: return "TemplateMismatch";
        case ErrorCode::NotOnQuadric: return "NotOnQuadric";
        case ErrorCode::NotSmoothPoint: return "NotSmoothPoint";
        case ErrorCode::NoSmoothPointFound: return "NoSmoothPointFound";
        case ErrorCode::PrecondViolated: return "PrecondViolated";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::HypothesisUnverified: return "HypothesisUnverified";
        case ErrorCode::ChartMismatch: return "ChartMismatch";
        case ErrorCode::InvalidMultiplicity: return "InvalidMultiplicity";
        case ErrorCode::UndecidedEffectivity: return "UndecidedEffectivity";
        case ErrorCode::IndeterminateValuation: return "IndeterminateValuation";
        case ErrorCode::UnsupportedSymbolShape: return "UnsupportedSymbolShape";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownCharacter: return "UnknownCharacter";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

std::string rat_to_string(const Rat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

namespace {

constexpr long kTrialDivisionBound = 1000000;

long long checked_ll(const mpz_class& n, const char* what) {
    if (!n.fits_slong_p())
        fail(ErrorCode::NeedsExtension, std::string("radicand overflow in ") + what);
    return n.get_si();
}

bool rat_is_square(const Rat& q, Rat& root) {
    if (sgn(q) < 0) return false;
    if (q == 0) {
        root = 0;
        return true;
    }
    const mpz_class num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = Rat(rn, rd);
    root.canonicalize();
    return true;
}

// Interval enclosure of sqrt(r) for r > 0, to precision 2^-iters relative-ish.
struct Interval {
    Rat lo, hi;
};

Interval sqrt_interval(long long r, int iters) {
    mpz_class rz(static_cast<long>(r));
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), rz.get_mpz_t());
    Interval iv{Rat(s), Rat(s + 1)};
    if (iv.lo * iv.lo == rz) {
        iv.hi = iv.lo;
        return iv;
    }
    for (int k = 0; k < iters; ++k) {
        Rat mid = (iv.lo + iv.hi) / 2;
        if (mid * mid <= Rat(rz))
            iv.lo = mid;
        else
            iv.hi = mid;
    }
    return iv;
}

void accumulate(Interval& total, const Rat& coeff, const Interval& radical) {
    if (sgn(coeff) >= 0) {
        total.lo += coeff * radical.lo;
        total.hi += coeff * radical.hi;
    } else {
        total.lo += coeff * radical.hi;
        total.hi += coeff * radical.lo;
    }
}

}  // namespace

SquareFree squarefree_decompose(const mpz_class& n) {
    if (n == 0) return {0, 0};
    mpz_class m = ::abs(n);
    mpz_class square_root = 1;
    mpz_class rem = m;
    for (long p = 2; p <= kTrialDivisionBound && rem > 1; p == 2 ? p = 3 : p += 2) {
        mpz_class p2 = mpz_class(p) * p;
        if (p2 > rem) break;
        while (mpz_divisible_ui_p(rem.get_mpz_t(), p * p)) {
            rem /= p2;
            square_root *= p;
        }
    }
    // Any square factor left untouched by trial division is itself a perfect
    // square of something prime-free below the bound.
    if (rem > 1 && mpz_perfect_square_p(rem.get_mpz_t())) {
        mpz_class s;
        mpz_sqrt(s.get_mpz_t(), rem.get_mpz_t());
        square_root *= s;
        rem = 1;
    }
    mpz_class part = rem;
    if (sgn(n) < 0) part = -part;
    return {square_root, checked_ll(part, "squarefree_decompose")};
}


static long long sf_product(long long a, long long b) {
    mpz_class prod = mpz_class(static_cast<long>(a)) * mpz_class(static_cast<long>(b));
    return squarefree_decompose(prod).part;
}

Scalar::Scalar(long num, long den) {
    if (den == 0) fail(ErrorCode::DivisionByZero, "scalar with zero denominator");
    a_ = Rat(num, den);
    a_.canonicalize();
}

Scalar Scalar::radical(const Rat& q, long long radicand) {
    if (radicand == 0 || q == 0) return Scalar(Rat(0));
    SquareFree sf = squarefree_decompose(mpz_class(static_cast<long>(radicand)));
    Rat coeff = q * Rat(sf.square_root);
    coeff.canonicalize();
    Scalar s;
    if (sf.part == 1) {
        s.a_ = coeff;
        return s;
    }
    s.b_ = coeff;
    s.r1_ = sf.part;
    return s;
}

Scalar Scalar::i() { return radical(Rat(1), -1); }

bool Scalar::is_real() const {
    return (b_ == 0 || r1_ > 0) && (c_ == 0 || r2_ > 0) &&
           (d_ == 0 || sf_product(r1_, r2_) > 0);
}

bool Scalar::is_integer() const {
    return is_rational() && a_.get_den() == 1;
}

const Rat& Scalar::rational_value() const {
    if (!is_rational()) fail(ErrorCode::Internal, "rational_value on irrational scalar");
    return a_;
}

long long Scalar::to_long() const {
    if (!is_integer()) fail(ErrorCode::Internal, "to_long on non-integer scalar");
    return checked_ll(a_.get_num(), "to_long");
}

void Scalar::normalize() {
    if (r1_ == 0) {
        if (b_ != 0 || c_ != 0 || d_ != 0 || r2_ != 0)
            fail(ErrorCode::Internal, "scalar slot corruption");
        return;
    }
    if (r2_ == 0) {
        if (c_ != 0 || d_ != 0) fail(ErrorCode::Internal, "scalar slot corruption");
        if (b_ == 0) r1_ = 0;
        return;
    }
    long long r3 = sf_product(r1_, r2_);
    // Drop unused radicands, renormalizing to the fewest slots.
    if (d_ == 0) {
        if (b_ == 0 && c_ == 0) {
            r1_ = r2_ = 0;
            return;
        }
        if (c_ == 0) {
            r2_ = 0;
            return;
        }
        if (b_ == 0) {
            b_ = c_;
            c_ = 0;
            r1_ = r2_;
            r2_ = 0;
            return;
        }
    } else if (b_ == 0 && c_ == 0) {
        b_ = d_;
        d_ = 0;
        r1_ = r3;
        r2_ = 0;
        return;
    }
    // Canonical generator pair: the two smallest of {r1, r2, r3} by (|r|, sign).
    std::array<long long, 3> rs{r1_, r2_, r3};
    std::array<Rat, 3> cs{b_, c_, d_};
    std::array<int, 3> idx{0, 1, 2};
    auto key = [&](int k) {
        return std::pair<long long, long long>(std::llabs(rs[k]), -rs[k]);
    };
    std::sort(idx.begin(), idx.end(), [&](int x, int y) { return key(x) < key(y); });
    r1_ = rs[idx[0]];
    r2_ = rs[idx[1]];
    b_ = cs[idx[0]];
    c_ = cs[idx[1]];
    d_ = cs[idx[2]];
}

// Lifts both scalars to a common radicand pair, or refuses.
void Scalar::unify(Scalar& x, Scalar& y) {
    if (x.r1_ == y.r1_ && x.r2_ == y.r2_) return;
    std::vector<long long> classes;
    auto add_class = [&](long long r) {
        if (r == 0 || r == 1) return;
        if (std::find(classes.begin(), classes.end(), r) == classes.end()) classes.push_back(r);
    };
    auto add_scalar = [&](const Scalar& s) {
        add_class(s.r1_);
        add_class(s.r2_);
        if (s.r1_ != 0 && s.r2_ != 0)
            add_class(sf_product(s.r1_, s.r2_));
    };
    add_scalar(x);
    add_scalar(y);
    // Close under square-class products.
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = i + 1; j < classes.size(); ++j) {
            add_class(
                sf_product(classes[i], classes[j]));
            if (classes.size() > 3)
                fail(ErrorCode::NeedsExtension, "more than two independent square roots required");
        }
    if (classes.empty()) return;
    std::sort(classes.begin(), classes.end(), [](long long p, long long q) {
        return std::pair<long long, long long>(std::llabs(p), -p) <
               std::pair<long long, long long>(std::llabs(q), -q);
    });
    long long m1 = classes[0];
    long long m2 = classes.size() > 1 ? classes[1] : 0;
    long long m3 = m2 == 0 ? 0 : sf_product(m1, m2);
    auto lift = [&](Scalar& s) {
        Scalar out;
        out.a_ = s.a_;
        out.r1_ = m1;
        out.r2_ = m2;
        auto put = [&](const Rat& coeff, long long r) {
            if (coeff == 0 || r == 0) return;
            if (r == m1)
                out.b_ += coeff;
            else if (r == m2)
                out.c_ += coeff;
            else if (r == m3)
                out.d_ += coeff;
            else
                fail(ErrorCode::Internal, "square class escaped closure");
        };
        put(s.b_, s.r1_);
        put(s.c_, s.r2_);
        if (s.d_ != 0)
            put(s.d_, sf_product(s.r1_, s.r2_));
        s = out;  // intentionally unnormalized: slots align between x and y
    };
    lift(x);
    lift(y);
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    s.a_ = -s.a_;
    s.b_ = -s.b_;
    s.c_ = -s.c_;
    s.d_ = -s.d_;
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar x = *this, y = o;
    unify(x, y);
    x.a_ += y.a_;
    x.b_ += y.b_;
    x.c_ += y.c_;
    x.d_ += y.d_;
    x.normalize();
    return x;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar x = *this, y = o;
    unify(x, y);
    if (x.r1_ == 0) {
        Scalar s;
        s.a_ = x.a_ * y.a_;
        return s;
    }
    const long long r1 = x.r1_, r2 = x.r2_;
    const long long r3 =
        r2 == 0 ? 0 : sf_product(r1, r2);
    const std::array<long long, 4> rad{1, r1, r2, r3};
    // product of basis radicals: sqrt(ri)*sqrt(rj) = mult * sqrt(r_idx)
    auto basis_mul = [&](int i, int j, Rat& mult) -> int {
        if (i == 0) return j;
        if (j == 0) return i;
        if (i == j) {
            mult *= Rat(static_cast<long>(rad[i]));
            return 0;
        }
        int k = 6 - i - j;  // the remaining index among {1,2,3}
        mpz_class prod = mpz_class(static_cast<long>(rad[i])) * mpz_class(static_cast<long>(rad[j]));
        mpz_class ratio = prod / mpz_class(static_cast<long>(rad[k]));
        mpz_class root;
        mpz_sqrt(root.get_mpz_t(), mpz_class(::abs(ratio)).get_mpz_t());
        Rat m(root);
        if (rad[i] < 0 && rad[j] < 0) m = -m;
        mult *= m;
        return k;
    };
    const std::array<Rat, 4> xc{x.a_, x.b_, x.c_, x.d_};
    const std::array<Rat, 4> yc{y.a_, y.b_, y.c_, y.d_};
    std::array<Rat, 4> out{Rat(0), Rat(0), Rat(0), Rat(0)};
    for (int i = 0; i < 4; ++i) {
        if (xc[i] == 0) continue;
        for (int j = 0; j < 4; ++j) {
            if (yc[j] == 0) continue;
            Rat mult = xc[i] * yc[j];
            int k = basis_mul(i, j, mult);
            out[k] += mult;
        }
    }
    Scalar s;
    s.a_ = out[0];
    s.b_ = out[1];
    s.c_ = out[2];
    s.d_ = out[3];
    s.r1_ = r1;
    s.r2_ = r2;
    s.normalize();
    return s;
}

Scalar Scalar::galois(bool flip1, bool flip2) const {
    Scalar s = *this;
    if (flip1) {
        s.b_ = -s.b_;
        s.d_ = -s.d_;
    }
    if (flip2) {
        s.c_ = -s.c_;
        s.d_ = -s.d_;
    }
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "scalar inverse of zero");
    if (r1_ == 0) {
        Scalar s;
        s.a_ = 1 / a_;
        return s;
    }
    if (r2_ == 0) {
        Rat norm = a_ * a_ - b_ * b_ * Rat(static_cast<long>(r1_));
        Scalar s;
        s.a_ = a_ / norm;
        s.b_ = -b_ / norm;
        s.r1_ = r1_;
        s.normalize();
        return s;
    }
    Scalar cofactor = galois(true, false) * galois(false, true) * galois(true, true);
    Scalar norm = *this * cofactor;
    if (!norm.is_rational()) fail(ErrorCode::Internal, "field norm not rational");
    Rat n = norm.a_;
    cofactor.a_ /= n;
    cofactor.b_ /= n;
    cofactor.c_ /= n;
    cofactor.d_ /= n;
    cofactor.normalize();
    return cofactor;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
    return r1_ == o.r1_ && r2_ == o.r2_ && a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar result(1);
    Scalar base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

Scalar Scalar::conj() const {
    if (is_real()) return *this;
    Scalar s = *this;
    bool flip1 = s.r1_ != 0 && s.r1_ < 0;
    long long r3 = (s.r1_ != 0 && s.r2_ != 0)
                       ? sf_product(s.r1_, s.r2_)
                       : 0;
    if (flip1) s.b_ = -s.b_;
    if (s.r2_ < 0) s.c_ = -s.c_;
    if (r3 < 0) s.d_ = -s.d_;
    return s;
}

Scalar Scalar::real_part() const {
    Scalar re;
    re.a_ = a_;
    Scalar parts = re;
    auto add = [&](const Rat& coeff, long long r) {
        if (coeff == 0 || r == 0) return;
        if (r > 0) parts = parts + radical(coeff, r);
    };
    add(b_, r1_);
    add(c_, r2_);
    if (d_ != 0 && r1_ != 0 && r2_ != 0)
        add(d_, sf_product(r1_, r2_));
    return parts;
}

Scalar Scalar::imag_part() const {
    Scalar parts;
    auto add = [&](const Rat& coeff, long long r) {
        if (coeff == 0 || r == 0 || r > 0) return;
        // sqrt(r) = i*sqrt(-r)
        parts = parts + radical(coeff, -r);
    };
    add(b_, r1_);
    add(c_, r2_);
    if (d_ != 0 && r1_ != 0 && r2_ != 0)
        add(d_, sf_product(r1_, r2_));
    return parts;
}

int Scalar::sign() const {
    if (!is_real()) fail(ErrorCode::Internal, "sign of imaginary scalar");
    if (is_zero()) return 0;
    if (is_rational()) return sgn(a_);
    long long r3 = (r1_ != 0 && r2_ != 0)
                       ? sf_product(r1_, r2_)
                       : 0;
    for (int iters = 16; iters <= 4096; iters *= 2) {
        Interval total{a_, a_};
        if (b_ != 0) accumulate(total, b_, sqrt_interval(r1_, iters));
        if (c_ != 0) accumulate(total, c_, sqrt_interval(r2_, iters));
        if (d_ != 0) accumulate(total, d_, sqrt_interval(r3, iters));
        if (sgn(total.lo) > 0) return 1;
        if (sgn(total.hi) < 0) return -1;
    }
    // Unreachable: 1, sqrt(r1), sqrt(r2), sqrt(r3) are linearly independent over Q.
    fail(ErrorCode::Internal, "sign refinement did not separate from zero");
}

Scalar Scalar::abs() const { return sign() >= 0 ? *this : -*this; }

std::optional<Scalar> Scalar::sqrt() const {
    if (is_zero()) return Scalar(0);
    if (!is_real() || sign() < 0) return std::nullopt;
    if (is_rational()) {
        mpz_class pq = a_.get_num() * a_.get_den();
        SquareFree sf = squarefree_decompose(pq);
        Rat coeff = Rat(sf.square_root) / a_.get_den();
        coeff.canonicalize();
        if (sf.part == 1) return Scalar(coeff);
        return radical(coeff, sf.part);
    }
    if (r2_ == 0) {
        // a + b*sqrt(r) = m * (u + v*sqrt(r))^2 ?
        Rat norm = a_ * a_ - b_ * b_ * Rat(static_cast<long>(r1_));
        Rat t;
        if (!rat_is_square(norm, t)) return std::nullopt;
        for (int branch = 0; branch < 2; ++branch) {
            Rat h = branch == 0 ? Rat(a_ + t) : Rat(a_ - t);
            h /= 2;
            if (h == 0 || sgn(h) < 0) continue;
            SquareFree sf = squarefree_decompose(h.get_num() * h.get_den());
            long long m = sf.part;  // h/m is a rational square by construction
            Rat u = Rat(sf.square_root) / h.get_den();
            u.canonicalize();
            if (u == 0) continue;
            Rat v = b_ / (2 * u * Rat(static_cast<long>(m)));
            v.canonicalize();
            // candidate root: (u + v*sqrt(r1)) * sqrt(m)
            Scalar inner = Scalar(u) + radical(v, r1_);
            Scalar candidate = m == 1 ? inner : inner * radical(Rat(1), m);
            if (candidate * candidate == *this) return candidate.sign() >= 0 ? candidate : -candidate;
        }
        return std::nullopt;
    }
    // Depth two: treat the tower as F(sqrt(outer)) with F = Q(sqrt(inner)).
    long long r3 = sf_product(r1_, r2_);
    mpz_class ratio_sq = mpz_class(static_cast<long>(r1_)) * mpz_class(static_cast<long>(r2_)) / mpz_class(static_cast<long>(r3));
    mpz_class k;
    mpz_sqrt(k.get_mpz_t(), mpz_class(::abs(ratio_sq)).get_mpz_t());
    // sqrt(r3) = sigma/k * sqrt(r1)*sqrt(r2); sigma = -1 only for two imaginary radicands
    Rat d_over_k = d_ / Rat(k);
    if (r1_ < 0 && r2_ < 0) d_over_k = -d_over_k;
    struct Split {
        long long outer;
        Scalar A, B;  // value = A + B*sqrt(outer), A/B over Q(sqrt(inner))
    };
    std::array<Split, 2> splits{
        Split{r1_, Scalar(a_) + radical(c_, r2_), Scalar(b_) + radical(d_over_k, r2_)},
        Split{r2_, Scalar(a_) + radical(b_, r1_), Scalar(c_) + radical(d_over_k, r1_)}};
    for (const auto& sp : splits) {
        Scalar disc = sp.A * sp.A - Scalar(static_cast<long>(sp.outer)) * sp.B * sp.B;
        if (!disc.is_real() || disc.sign() < 0) continue;
        auto t = disc.sqrt();
        if (!t) continue;
        for (int branch = 0; branch < 2; ++branch) {
            Scalar h = (branch == 0 ? sp.A + *t : sp.A - *t) / Scalar(2);
            if (h.is_zero() || !h.is_real() || h.sign() < 0) continue;
            auto u = h.sqrt();
            if (!u || u->is_zero()) continue;
            try {
                Scalar v = sp.B / (Scalar(2) * *u);
                Scalar candidate = *u + v * radical(Rat(1), sp.outer);
                if (candidate * candidate == *this)
                    return candidate.sign() >= 0 ? candidate : -candidate;
            } catch (const Error&) {
                // candidate escaped the two-radicand tower; try the other split
                continue;
            }
        }
    }
    return std::nullopt;
}

std::optional<Scalar> Scalar::sqrt_any() const {
    if (!is_real()) return std::nullopt;
    if (sign() >= 0) return sqrt();
    auto root = (-*this).sqrt();
    if (!root) return std::nullopt;
    return *root * i();
}

std::complex<double> Scalar::to_complex() const {
    auto term = [](const Rat& coeff, long long r) -> std::complex<double> {
        if (coeff == 0 || r == 0) return {0.0, 0.0};
        double c = coeff.get_d();
        if (r > 0) return {c * std::sqrt(static_cast<double>(r)), 0.0};
        return {0.0, c * std::sqrt(static_cast<double>(-r))};
    };
    std::complex<double> z(a_.get_d(), 0.0);
    z += term(b_, r1_);
    z += term(c_, r2_);
    if (d_ != 0 && r1_ != 0 && r2_ != 0)
        z += term(d_, sf_product(r1_, r2_));
    return z;
}

double Scalar::to_double() const { return to_complex().real(); }

std::string Scalar::to_string() const {
    if (is_rational()) return rat_to_string(a_);
    long long r3 = (r1_ != 0 && r2_ != 0)
                       ? sf_product(r1_, r2_)
                       : 0;
    auto radical_str = [](long long r) -> std::string {
        if (r == -1) return "i";
        if (r < 0) return "i*sqrt(" + std::to_string(-r) + ")";
        return "sqrt(" + std::to_string(r) + ")";
    };
    std::string out;
    auto append = [&](const Rat& coeff, const std::string& unit) {
        if (coeff == 0) return;
        Rat mag = ::abs(coeff);
        std::string piece;
        if (unit.empty())
            piece = rat_to_string(mag);
        else if (mag == 1)
            piece = unit;
        else
            piece = rat_to_string(mag) + "*" + unit;
        if (out.empty())
            out = (sgn(coeff) < 0 ? "-" : "") + piece;
        else
            out += (sgn(coeff) < 0 ? " - " : " + ") + piece;
    };
    append(a_, "");
    append(b_, radical_str(r1_));
    append(c_, radical_str(r2_));
    if (r3 != 0) append(d_, radical_str(r3));
    return out.empty() ? "0" : out;
}

}  // namespace cb
