#pragma once

#include "hicyclo/mzv.hpp"
#include "hicyclo/rational.hpp"

#include <mpfr.h>

#include <string>
#include <utility>

namespace hicyclo::numerics {

// Minimal RAII wrapper over an mpfr value with explicit precision.
class BigFloat {
public:
    explicit BigFloat(long prec = 128);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(BigFloat o) noexcept;
    ~BigFloat();

    long precision() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    static BigFloat from_long(long x, long prec);
    static BigFloat from_rational(const Rational& q, long prec);
    static BigFloat pi(long prec);

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);
    friend BigFloat operator+(BigFloat a, const BigFloat& b) { a += b; return a; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { a -= b; return a; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { a *= b; return a; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { a /= b; return a; }

    BigFloat abs() const;
    int cmp(const BigFloat& o) const;
    bool less_than_pow10(long e) const; // |x| < 10^e
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string str(size_t digits = 30) const;

private:
    mpfr_t v_;
};

struct Complex {
    BigFloat re, im;
    explicit Complex(long prec = 128) : re(prec), im(prec) {}
    BigFloat abs() const;
};

struct EvalResult {
    Complex value;
    BigFloat tail_bound;
    long terms_used = 0;
    EvalResult(long prec) : value(prec), tail_bound(prec) {}
};

struct eval_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Value of the convergent multiple polylogarithm to the requested number of
// decimal digits, with a rigorous truncation bound. Evaluates the iterated
// integral split at 1/2, each piece a geometrically convergent series; the
// arguments must be roots of unity of level <= 6 (beyond that the far-side
// series leaves its disc of convergence).
EvalResult eval_polylog(const mzv::ZSymbol& z, long digits);

// Direct truncated summation with the comparison-integral tail bound; the
// independent low-precision oracle. K is the cap on the outer index.
EvalResult eval_polylog_direct(const mzv::ZSymbol& z, long max_terms, long prec);

Rational bernoulli(int k);

// zeta(2n) = (-1)^{n-1} (2 pi)^{2n} B_{2n} / (2 (2n)!)
BigFloat euler_even_zeta(int n, long digits);

struct VerifyResult {
    BigFloat residual;
    bool pass = false;
    long digits = 0;
    long terms_used = 0;
    VerifyResult(long prec) : residual(prec) {}
};

// Evaluates the certificate's signed sum; pass iff |residual| < 10^{5-digits}.
VerifyResult verify_certificate(const mzv::Certificate& cert, long digits);

std::string verify_report_json(const VerifyResult& r);

} // namespace hicyclo::numerics
