#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hicyclo/numerics.hpp"

#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hicyclo;
using namespace hicyclo::mzv;
using namespace hicyclo::numerics;

namespace {

bool close_to(const BigFloat& a, const BigFloat& b, long digits) {
    BigFloat d = a - b;
    return d.less_than_pow10(-digits);
}

} // namespace

TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(3) == Rational(0));
    CHECK(bernoulli(12) == Rational(-691, 2730));
}

TEST_CASE("Euler even zeta values") {
    // pi^2/6 and pi^4/90 computed independently
    const long prec = 200;
    BigFloat pi = BigFloat::pi(prec);
    BigFloat pi2 = pi * pi;
    BigFloat six = BigFloat::from_long(6, prec);
    CHECK(close_to(euler_even_zeta(1, 40), pi2 / six, 38));
    BigFloat pi4 = pi2 * pi2;
    BigFloat ninety = BigFloat::from_long(90, prec);
    CHECK(close_to(euler_even_zeta(2, 40), pi4 / ninety, 38));
}

TEST_CASE("series evaluation matches the closed forms") {
    auto r = eval_polylog(zeta({2}), 30);
    CHECK(r.tail_bound.less_than_pow10(-30));
    CHECK(close_to(r.value.re, euler_even_zeta(1, 35), 30));
    CHECK(r.value.im.less_than_pow10(-30));

    for (int n = 1; n <= 5; ++n)
        CHECK(close_to(eval_polylog(zeta({2 * n}), 25).value.re, euler_even_zeta(n, 30), 25));
}

TEST_CASE("zeta(1,2) equals zeta(3)") {
    auto a = eval_polylog(zeta({1, 2}), 30);
    auto b = eval_polylog(zeta({3}), 30);
    CHECK(close_to(a.value.re, b.value.re, 29));
}

TEST_CASE("Li_2(-1) = -pi^2/12") {
    ZSymbol z;
    z.level = 2;
    z.comp = {2};
    z.args = {1};
    auto r = eval_polylog(z, 25);
    const long prec = 200;
    BigFloat pi = BigFloat::pi(prec);
    BigFloat expect = pi * pi / BigFloat::from_long(-12, prec);
    CHECK(close_to(r.value.re, expect, 25));
}

TEST_CASE("rejections") {
    CHECK_THROWS_AS(eval_polylog(zeta({2, 1}), 20), eval_error); // divergent tail
    ZSymbol deep;
    deep.level = 1;
    deep.comp = {1, 1, 1, 2};
    deep.args = {0, 0, 0, 0};
    CHECK_THROWS_AS(eval_polylog(deep, 20), eval_error); // depth 4
    ZSymbol lvl;
    lvl.level = 7;
    lvl.comp = {2};
    lvl.args = {1};
    CHECK_THROWS_AS(eval_polylog(lvl, 20), eval_error); // level off the splitting disc
}

TEST_CASE("direct summation oracle agrees within its certified bound") {
    for (const auto& z : {zeta({2}), zeta({3}), zeta({2, 3}), zeta({1, 1, 3})}) {
        auto split = eval_polylog(z, 25);
        auto direct = eval_polylog_direct(z, 20000, 256);
        BigFloat diff = split.value.re - direct.value.re;
        CHECK(diff.abs().cmp(direct.tail_bound) < 0);
    }
    // a level-3 symbol, complex value
    ZSymbol z3;
    z3.level = 3;
    z3.comp = {2};
    z3.args = {1};
    auto split = eval_polylog(z3, 25);
    auto direct = eval_polylog_direct(z3, 20000, 256);
    BigFloat dre = split.value.re - direct.value.re;
    BigFloat dim = split.value.im - direct.value.im;
    CHECK(dre.abs().cmp(direct.tail_bound) < 0);
    CHECK(dim.abs().cmp(direct.tail_bound) < 0);
}

TEST_CASE("tail bound shrinks as the requested precision grows") {
    auto r20 = eval_polylog(zeta({2, 3}), 20);
    auto r40 = eval_polylog(zeta({2, 3}), 40);
    CHECK(r40.tail_bound.cmp(r20.tail_bound) < 0);
    CHECK(close_to(r20.value.re, r40.value.re, 19));
}

TEST_CASE("evaluation is deterministic and thread-count independent") {
#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    auto a = eval_polylog(zeta({2, 3}), 30);
#ifdef _OPENMP
    omp_set_num_threads(4);
#endif
    auto b = eval_polylog(zeta({2, 3}), 30);
    BigFloat d = a.value.re - b.value.re;
    CHECK(mpfr_zero_p(d.raw()));
}

TEST_CASE("certificate verification") {
    // (4-15.3): zeta(2) zeta(3) = zeta(2,3) + zeta(3,2) + zeta(5)
    auto cert = stuffle_certificate(zeta({2}), zeta({3}));
    auto r = verify_certificate(cert, 30);
    CHECK(r.pass);
    CHECK(r.residual.less_than_pow10(-20));

    auto ds = double_shuffle_certificate(zeta({2}), zeta({2}));
    CHECK(verify_certificate(ds, 25).pass);

    // distribution: Li_2(x^2)/2 = Li_2(x) + Li_2(-x) at x = zeta_3, inside mu_6
    auto dist = distribution_certificate(6, 2, 1, 2);
    CHECK(verify_certificate(dist, 25).pass);

    auto report = verify_report_json(r);
    CHECK(report.find("\"pass\":true") != std::string::npos);
}

TEST_CASE("a broken certificate fails") {
    auto cert = stuffle_certificate(zeta({2}), zeta({3}));
    cert.terms[0].coef += Rational(1, 1000);
    CHECK_FALSE(verify_certificate(cert, 25).pass);
}

TEST_CASE("random stuffle certificates pass at 25 digits") {
    std::mt19937 rng(2024);
    auto random_symbol = [&](int max_depth) {
        for (;;) {
            ZSymbol z;
            z.level = 1;
            const int d = 1 + static_cast<int>(rng() % max_depth);
            for (int i = 0; i < d; ++i) {
                z.comp.push_back(1 + static_cast<int>(rng() % 3));
                z.args.push_back(0);
            }
            if (z.comp.back() == 1) z.comp.back() = 2;
            if (z.weight() <= 4 && z.convergent()) return z;
        }
    };
    int done = 0;
    while (done < 20) {
        auto u = random_symbol(2);
        auto v = random_symbol(1);
        if (u.weight() + v.weight() > 6) continue;
        auto cert = stuffle_certificate(u, v);
        auto r = verify_certificate(cert, 25);
        CHECK(r.pass);
        ++done;
    }
}
