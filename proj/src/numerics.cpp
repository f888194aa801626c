#include "hicyclo/numerics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hicyclo::numerics {

BigFloat::BigFloat(long prec) { mpfr_init2(v_, std::max(prec, 64l)); mpfr_set_zero(v_, 1); }
BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}
BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, o.v_);
}
BigFloat& BigFloat::operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}
BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_long(long x, long prec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
}
BigFloat BigFloat::from_rational(const Rational& q, long prec) {
    BigFloat r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
}
BigFloat BigFloat::pi(long prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

BigFloat BigFloat::abs() const {
    BigFloat r(precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}
int BigFloat::cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
bool BigFloat::less_than_pow10(long e) const {
    BigFloat bound(precision());
    mpfr_set_ui(bound.v_, 10, MPFR_RNDN);
    mpfr_pow_si(bound.v_, bound.v_, e, MPFR_RNDU);
    BigFloat a = abs();
    return mpfr_cmp(a.v_, bound.v_) < 0;
}
std::string BigFloat::str(size_t digits) const {
    char* s = nullptr;
    mpfr_exp_t e;
    s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    std::string sign;
    if (!mant.empty() && mant[0] == '-') {
        sign = "-";
        mant = mant.substr(1);
    }
    if (mant.empty()) mant = "0";
    return sign + "0." + mant + "e" + std::to_string(static_cast<long>(e));
}

BigFloat Complex::abs() const {
    BigFloat r(re.precision());
    mpfr_hypot(r.raw(), re.raw(), im.raw(), MPFR_RNDN);
    return r;
}

namespace {

Complex c_make(long prec) { return Complex(prec); }

Complex c_one(long prec) {
    Complex c(prec);
    mpfr_set_ui(c.re.raw(), 1, MPFR_RNDN);
    return c;
}

Complex c_add(const Complex& a, const Complex& b) {
    Complex r(a.re.precision());
    mpfr_add(r.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_add(r.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    return r;
}

Complex c_mul(const Complex& a, const Complex& b) {
    const long prec = a.re.precision();
    Complex r(prec);
    BigFloat t1(prec), t2(prec);
    mpfr_mul(t1.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_sub(r.re.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_mul(t2.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_add(r.im.raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    return r;
}

Complex c_div(const Complex& a, const Complex& b) {
    const long prec = a.re.precision();
    BigFloat n(prec);
    mpfr_fmma(n.raw(), b.re.raw(), b.re.raw(), b.im.raw(), b.im.raw(), MPFR_RNDN);
    Complex conj(prec);
    mpfr_set(conj.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_neg(conj.im.raw(), b.im.raw(), MPFR_RNDN);
    Complex r = c_mul(a, conj);
    mpfr_div(r.re.raw(), r.re.raw(), n.raw(), MPFR_RNDN);
    mpfr_div(r.im.raw(), r.im.raw(), n.raw(), MPFR_RNDN);
    return r;
}

Complex root_of_unity(int g, int N, long prec) {
    Complex c(prec);
    BigFloat ang = BigFloat::pi(prec);
    mpfr_mul_si(ang.raw(), ang.raw(), 2l * g, MPFR_RNDN);
    mpfr_div_ui(ang.raw(), ang.raw(), N, MPFR_RNDN);
    mpfr_sin_cos(c.im.raw(), c.re.raw(), ang.raw(), MPFR_RNDN);
    return c;
}

struct EvalLetter {
    bool is_b;
    Complex arg; // a-letter argument, unused for b
    EvalLetter(bool b, Complex a) : is_b(b), arg(std::move(a)) {}
};

// I_{0 -> 1/2} of a word starting with an a-letter: nested series in the
// ratio coordinates, truncated at K with the geometric tail bound.
Complex eval_half_series(const std::vector<EvalLetter>& word, long K, long prec) {
    // parse groups a(c_i) b^{n_i - 1}
    std::vector<std::pair<Complex, int>> groups;
    for (const auto& l : word) {
        if (l.is_b) {
            if (groups.empty()) throw eval_error("series: word starts with dt/t");
            ++groups.back().second;
        } else {
            groups.push_back({l.arg, 1});
        }
    }
    const int j = static_cast<int>(groups.size());
    if (j == 0) return c_one(prec);
    std::vector<Complex> x;
    for (int i = 0; i + 1 < j; ++i) x.push_back(c_div(groups[i + 1].first, groups[i].first));
    {
        Complex half(prec);
        mpfr_set_d(half.re.raw(), 0.5, MPFR_RNDN);
        x.push_back(c_div(half, groups[j - 1].first));
    }
    // S_i(l) = S_i(l-1) + x_i^l / l^{n_i} * S_{i-1}(l-1)
    std::vector<Complex> prev(K + 1, c_one(prec)); // S_0 == 1
    for (int i = 0; i < j; ++i) {
        std::vector<Complex> cur(K + 1, c_make(prec));
        Complex pw = c_one(prec);
        BigFloat lp(prec);
        for (long l = 1; l <= K; ++l) {
            pw = c_mul(pw, x[i]);
            mpfr_set_ui(lp.raw(), static_cast<unsigned long>(l), MPFR_RNDN);
            mpfr_pow_ui(lp.raw(), lp.raw(), static_cast<unsigned long>(groups[i].second), MPFR_RNDN);
            Complex term = c_mul(pw, prev[l - 1]);
            mpfr_div(term.re.raw(), term.re.raw(), lp.raw(), MPFR_RNDN);
            mpfr_div(term.im.raw(), term.im.raw(), lp.raw(), MPFR_RNDN);
            cur[l] = c_add(cur[l - 1], term);
        }
        prev = std::move(cur);
    }
    return prev[K];
}

// tail of the 1/2-series: sum_{k > K} C(k-1, j-1) 2^{-k} <= 2 (K+1)^{j-1} 2^{-K}
BigFloat half_series_tail(int depth, long K, long prec) {
    BigFloat b(prec);
    mpfr_set_ui(b.raw(), static_cast<unsigned long>(K + 1), MPFR_RNDU);
    mpfr_pow_ui(b.raw(), b.raw(), static_cast<unsigned long>(std::max(depth - 1, 0)), MPFR_RNDU);
    mpfr_mul_2si(b.raw(), b.raw(), -K + 1, MPFR_RNDU);
    return b;
}

} // namespace

EvalResult eval_polylog(const mzv::ZSymbol& z, long digits) {
    if (!z.convergent() || z.comp.empty() || z.comp.back() < 2)
        throw eval_error("eval_polylog: divergent symbol (need last part >= 2)");
    if (z.depth() > 3 || z.weight() > 12)
        throw eval_error("eval_polylog: depth <= 3 and weight <= 12 supported");
    // the far-side series needs |1 - zeta| >= 1, i.e. 2 sin(pi/N) >= 1
    if (z.level > 6)
        throw eval_error("eval_polylog: level above 6 leaves the splitting evaluator's disc");

    const int depth = z.depth();
    // K with 2 (K+1)^{depth-1} 2^{-K} < 10^{-(digits+8)}
    long K = std::max<long>(32, 4 * depth + 8);
    const double target = (static_cast<double>(digits) + 8.0) * std::log2(10.0);
    while (static_cast<double>(K) - (depth - 1) * std::log2(static_cast<double>(K + 1)) - 1 < target)
        ++K;
    const long prec = static_cast<long>((digits + 15) * 3.322) + K + 96;

    const auto word = mzv::comp_to_word(z);
    const int n = static_cast<int>(word.letters.size());

    // prefix letters in original coordinates
    std::vector<EvalLetter> prefix_letters;
    for (int i = 0; i < n; ++i) {
        if (word.letters[i] < 0) prefix_letters.push_back({true, c_make(prec)});
        else prefix_letters.push_back({false, root_of_unity(word.letters[i], z.level, prec)});
    }
    // far-side letters: t = 1 - u transform, reversed below per split
    std::vector<EvalLetter> far_letters;
    std::vector<int> far_signs(n, 1);
    const Complex one = c_one(prec);
    for (int i = 0; i < n; ++i) {
        if (word.letters[i] < 0) {
            far_letters.push_back({false, one}); // dt/t -> -du/(1-u)
            far_signs[i] = -1;
        } else if (word.letters[i] == 0) {
            far_letters.push_back({true, c_make(prec)}); // dt/(1-t) -> -du/u
            far_signs[i] = -1;
        } else {
            Complex a(prec);
            Complex zr = root_of_unity(word.letters[i], z.level, prec);
            mpfr_ui_sub(a.re.raw(), 1, zr.re.raw(), MPFR_RNDN);
            mpfr_neg(a.im.raw(), zr.im.raw(), MPFR_RNDN);
            far_letters.push_back({false, std::move(a)});
        }
    }

    EvalResult res(prec);
    BigFloat tail = half_series_tail(depth, K, prec);
    // the splits are independent; combine in split order for bit-stable output
    std::vector<Complex> split_val(n + 1, c_make(prec));
    std::vector<BigFloat> split_err(n + 1, BigFloat(prec));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int k = 0; k <= n; ++k) {
        // prefix word[0..k), suffix word[k..n)
        Complex p = c_one(prec);
        if (k > 0) {
            std::vector<EvalLetter> pw(prefix_letters.begin(), prefix_letters.begin() + k);
            p = eval_half_series(pw, K, prec);
        }
        Complex s = c_one(prec);
        int sgn = ((n - k) % 2 == 0) ? 1 : -1; // path reversal
        if (k < n) {
            std::vector<EvalLetter> sw;
            for (int i = n - 1; i >= k; --i) {
                sw.push_back(far_letters[i]);
                sgn *= far_signs[i];
            }
            s = eval_half_series(sw, K, prec);
        }
        Complex term = c_mul(p, s);
        if (sgn < 0) {
            mpfr_neg(term.re.raw(), term.re.raw(), MPFR_RNDN);
            mpfr_neg(term.im.raw(), term.im.raw(), MPFR_RNDN);
        }
        split_val[k] = std::move(term);
        // error composition: |p| tail + |s| tail + tail^2
        BigFloat pa = p.abs(), sa = s.abs();
        BigFloat err = pa * tail;
        err += sa * tail;
        err += tail * tail;
        split_err[k] = std::move(err);
    }
    for (int k = 0; k <= n; ++k) {
        res.value = c_add(res.value, split_val[k]);
        res.tail_bound += split_err[k];
        res.terms_used += K;
    }
    // rounding slop: intermediate magnitudes stay below 2^{K + 40}
    BigFloat slop(prec);
    mpfr_set_ui(slop.raw(), 1, MPFR_RNDN);
    mpfr_mul_2si(slop.raw(), slop.raw(), K + 64 - prec, MPFR_RNDU);
    res.tail_bound += slop;
    return res;
}

EvalResult eval_polylog_direct(const mzv::ZSymbol& z, long max_terms, long prec) {
    if (!z.convergent() || z.comp.empty() || z.comp.back() < 2)
        throw eval_error("eval_polylog_direct: divergent symbol");
    const int m = z.depth();
    const long K = std::max<long>(max_terms, 16);
    std::vector<Complex> prev(K + 1, c_one(prec));
    std::vector<Complex> args;
    for (int i = 0; i < m; ++i) args.push_back(root_of_unity(z.args[i], z.level, prec));
    for (int i = 0; i < m; ++i) {
        std::vector<Complex> cur(K + 1, c_make(prec));
        Complex pw = c_one(prec);
        BigFloat lp(prec);
        for (long l = 1; l <= K; ++l) {
            pw = c_mul(pw, args[i]);
            mpfr_set_ui(lp.raw(), static_cast<unsigned long>(l), MPFR_RNDN);
            mpfr_pow_ui(lp.raw(), lp.raw(), static_cast<unsigned long>(z.comp[i]), MPFR_RNDN);
            Complex term = c_mul(pw, prev[l - 1]);
            mpfr_div(term.re.raw(), term.re.raw(), lp.raw(), MPFR_RNDN);
            mpfr_div(term.im.raw(), term.im.raw(), lp.raw(), MPFR_RNDN);
            cur[l] = c_add(cur[l - 1], term);
        }
        prev = std::move(cur);
    }
    EvalResult res(prec);
    res.value = prev[K];
    res.terms_used = K * m;
    // comparison-integral bound: sum_{k>K} (1+log k)^{m-1} k^{-n_m}
    //   <= K^{1-n} sum_i (m-1)!/(m-1-i)! (1+log K)^{m-1-i} / (n-1)^{i+1}
    const int n = z.comp.back();
    BigFloat logK(prec), acc(prec);
    mpfr_set_ui(logK.raw(), static_cast<unsigned long>(K), MPFR_RNDU);
    mpfr_log(logK.raw(), logK.raw(), MPFR_RNDU);
    mpfr_add_ui(logK.raw(), logK.raw(), 1, MPFR_RNDU);
    long fact = 1;
    for (int i = 0; i <= m - 1; ++i) {
        if (i > 0) fact *= (m - 1) - (i - 1);
        BigFloat t(prec);
        mpfr_pow_ui(t.raw(), logK.raw(), static_cast<unsigned long>(m - 1 - i), MPFR_RNDU);
        mpfr_mul_si(t.raw(), t.raw(), fact, MPFR_RNDU);
        BigFloat den(prec);
        mpfr_set_si(den.raw(), n - 1, MPFR_RNDD);
        mpfr_pow_ui(den.raw(), den.raw(), static_cast<unsigned long>(i + 1), MPFR_RNDD);
        mpfr_div(t.raw(), t.raw(), den.raw(), MPFR_RNDU);
        acc += t;
    }
    BigFloat kpow(prec);
    mpfr_set_ui(kpow.raw(), static_cast<unsigned long>(K), MPFR_RNDD);
    mpfr_pow_si(kpow.raw(), kpow.raw(), 1 - n, MPFR_RNDU);
    res.tail_bound = acc * kpow;
    return res;
}

Rational bernoulli(int k) {
    static std::vector<Rational> cache{Rational(1)};
    while (static_cast<int>(cache.size()) <= k) {
        const int m = static_cast<int>(cache.size());
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rational acc = 0;
        Integer binom = 1; // C(m+1, 0)
        for (int j = 0; j < m; ++j) {
            acc += Rational(binom) * cache[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        // binom is now C(m+1, m) = m+1
        cache.push_back(-acc / Rational(binom));
    }
    return cache[k];
}

BigFloat euler_even_zeta(int n, long digits) {
    if (n < 1) throw std::invalid_argument("euler_even_zeta: n >= 1");
    const long prec = static_cast<long>((digits + 15) * 3.322) + 64;
    BigFloat r = BigFloat::pi(prec);
    mpfr_mul_2ui(r.raw(), r.raw(), 1, MPFR_RNDN); // 2 pi
    mpfr_pow_ui(r.raw(), r.raw(), static_cast<unsigned long>(2 * n), MPFR_RNDN);
    Rational b = bernoulli(2 * n);
    Integer fact = 1;
    for (int i = 2; i <= 2 * n; ++i) fact *= i;
    Rational scale = b / (Rational(2) * Rational(fact));
    if (n % 2 == 0) scale = -scale;
    BigFloat s = BigFloat::from_rational(scale, prec);
    r *= s;
    return r;
}

VerifyResult verify_certificate(const mzv::Certificate& cert, long digits) {
    const long prec = static_cast<long>((digits + 20) * 3.322) + 256;
    VerifyResult out(prec);
    out.digits = digits;
    Complex acc(prec);
    BigFloat err(prec);
    auto eval = [&](const mzv::ZSymbol& z) {
        auto r = eval_polylog(z, digits + 10);
        out.terms_used += r.terms_used;
        err += r.tail_bound;
        return r.value;
    };
    for (const auto& t : cert.terms) {
        Complex v = eval(t.z);
        BigFloat c = BigFloat::from_rational(t.coef, prec);
        Complex scaled(prec);
        mpfr_mul(scaled.re.raw(), v.re.raw(), c.raw(), MPFR_RNDN);
        mpfr_mul(scaled.im.raw(), v.im.raw(), c.raw(), MPFR_RNDN);
        acc = c_add(acc, scaled);
    }
    for (const auto& p : cert.products) {
        Complex v = c_mul(eval(p.a), eval(p.b));
        BigFloat c = BigFloat::from_rational(p.coef, prec);
        Complex scaled(prec);
        mpfr_mul(scaled.re.raw(), v.re.raw(), c.raw(), MPFR_RNDN);
        mpfr_mul(scaled.im.raw(), v.im.raw(), c.raw(), MPFR_RNDN);
        acc = c_add(acc, scaled);
    }
    out.residual = acc.abs();
    out.pass = out.residual.less_than_pow10(-digits + 5);
    return out;
}

std::string verify_report_json(const VerifyResult& r) {
    nlohmann::json j;
    j["residual"] = r.residual.str(20);
    j["pass"] = r.pass;
    j["digits"] = r.digits;
    j["terms_used"] = r.terms_used;
    return j.dump();
}

} // namespace hicyclo::numerics
