#include <gtest/gtest.h>

#include <random>

#include "bslimits/rational.hpp"
#include "bslimits/series.hpp"

using namespace bslimits;

namespace {

Rational factorial(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return Rational(f);
}

ExactSeries random_series(std::mt19937_64 &rng, std::size_t order, bool zero_constant) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    ExactSeries s(order);
    for (std::size_t i = zero_constant ? 1 : 0; i <= order; ++i) {
        s[i] = Rational(num(rng), den(rng));
        s[i].canonicalize();
    }
    return s;
}

} // namespace

TEST(Rational, ParsesFractionsAndIntegers) {
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-7"), Rational(-7));
    EXPECT_EQ(to_string(parse_rational("4/6")), "2/3");
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Series, ExpOfZIsExponential) {
    const auto e = exp_series(ExactSeries::monomial(1, 12));
    for (int k = 0; k <= 12; ++k) {
        EXPECT_EQ(e[k], 1 / factorial(k)) << k;
    }
}

TEST(Series, ReciprocalOfOneMinusZ) {
    ExactSeries f(10);
    f[0] = 1;
    f[1] = -1;
    const auto g = reciprocal(f);
    for (int k = 0; k <= 10; ++k) {
        EXPECT_EQ(g[k], 1);
    }
}

TEST(Series, ProductTruncatesToSmallerOrder) {
    ExactSeries a = ExactSeries::constant(1, 5);
    a[1] = 1;
    ExactSeries b = ExactSeries::constant(1, 3);
    b[1] = 1;
    const auto c = a * b;
    ASSERT_EQ(c.order(), 3u);
    EXPECT_EQ(c[0], 1);
    EXPECT_EQ(c[1], 2);
    EXPECT_EQ(c[2], 1);
    EXPECT_EQ(c[3], 0);
}

TEST(Series, SubstitutePowersAndDerivative) {
    ExactSeries f(9);
    for (int k = 0; k <= 9; ++k) {
        f[k] = k + 1;
    }
    const auto g = substitute_powers(f, 3);
    for (int k = 0; k <= 9; ++k) {
        EXPECT_EQ(g[k], k % 3 == 0 ? Rational(k / 3 + 1) : Rational(0)) << k;
    }
    const auto d = derivative(f);
    for (std::size_t k = 0; k < d.order(); ++k) {
        EXPECT_EQ(d[k], Rational((k + 1) * (k + 2)));
    }
}

TEST(SeriesProperty, ExpIsAHomomorphism) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_series(rng, 10, true);
        const auto g = random_series(rng, 10, true);
        ExactSeries sum = f;
        sum += g;
        const auto lhs = exp_series(sum);
        const auto rhs = exp_series(f) * exp_series(g);
        for (int k = 0; k <= 10; ++k) {
            ASSERT_EQ(lhs[k], rhs[k]) << "trial " << trial << " k " << k;
        }
    }
}

TEST(SeriesProperty, ReciprocalInverts) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_series(rng, 12, false);
        if (f[0] == 0) {
            f[0] = 1;
        }
        const auto p = f * reciprocal(f);
        EXPECT_EQ(p[0], 1);
        for (int k = 1; k <= 12; ++k) {
            ASSERT_EQ(p[k], 0) << "trial " << trial << " k " << k;
        }
    }
}

TEST(SeriesProperty, FloatMatchesExact) {
    std::mt19937_64 rng(13);
    const auto f = random_series(rng, 15, true);
    std::vector<double> c;
    for (const auto &q : f.coeffs()) {
        c.push_back(q.get_d());
    }
    const auto ef = exp_series(FloatSeries(c));
    const auto ee = exp_series(f);
    for (int k = 0; k <= 15; ++k) {
        EXPECT_NEAR(ef[k], ee[k].get_d(), 1e-9 * (1 + std::abs(ee[k].get_d())));
    }
}

TEST(Series, EvaluateHorner) {
    ExactSeries f(3);
    f[0] = 1;
    f[1] = 2;
    f[3] = 1;
    EXPECT_DOUBLE_EQ(evaluate(f, 2.0), 1 + 4 + 8);
}
