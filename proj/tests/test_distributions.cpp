#include <doctest.h>

#include <jpstrat/distributions.hpp>
#include <jpstrat/rng.hpp>

#include <cmath>

using jps::Distribution;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("cdf anchors") {
    CHECK(Distribution::uniform(0, 1).cdf(0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(Distribution::exponential(1).cdf(0.0) == 0.0);
    CHECK(Distribution::normal(0, 1).cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(Distribution::student_t(3).cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    // t3 cdf at 1: 1/2 + (1/pi)(atan(1/sqrt 3) + sqrt(3)/4) = 0.80449889...
    CHECK(Distribution::student_t(3).cdf(1.0) == doctest::Approx(0.8044988905221148).epsilon(1e-12));
    CHECK(Distribution::beta(0.5, 0.5).cdf(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(Distribution::pareto(2.5).cdf(1.0) == 0.0);
    CHECK(Distribution::pareto(2.5).cdf(2.0) == doctest::Approx(1.0 - std::pow(0.5, 2.5)).epsilon(1e-15));
}

TEST_CASE("quantile anchors") {
    CHECK(Distribution::uniform(0, 1).quantile(0.25) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(Distribution::exponential(1).quantile(1.0 - std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(Distribution::beta(0.5, 0.5).quantile(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(Distribution::normal(0, 1).quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK_THROWS_AS(Distribution::normal(0, 1).quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(Distribution::normal(0, 1).quantile(1.0), std::domain_error);
}

TEST_CASE("quantile/cdf round trips on a grid, all catalog members") {
    for (const auto& dist : jps::catalog()) {
        for (int i = 1; i <= 100; ++i) {
            double u = i / 101.0;
            double x = dist.quantile(u);
            CHECK(dist.cdf(x) == doctest::Approx(u).epsilon(1e-8));
        }
        // interior x round trip where quantile is strictly increasing
        for (int i = 1; i <= 50; ++i) {
            double u = i / 51.0;
            double x = dist.quantile(u);
            double x2 = dist.quantile(dist.cdf(x));
            CHECK(x2 == doctest::Approx(x).epsilon(1e-8));
        }
        // cdf nondecreasing on the same grid
        double prev = -kInf, prev_f = -1.0;
        for (int i = 1; i <= 100; ++i) {
            double x = dist.quantile(i / 101.0);
            double f = dist.cdf(x);
            CHECK(x >= prev);
            CHECK(f >= prev_f);
            prev = x;
            prev_f = f;
        }
    }
}

TEST_CASE("tail quantiles stay accurate where 1-u rounds away") {
    auto t3 = Distribution::student_t(3);
    // sf(x) ~ (2 sqrt 3 / pi) x^-3: q = 1e-30 puts x near 1.03e10
    double q = 1e-30;
    double x = t3.quantile_tail(q);
    double expect = std::cbrt(2.0 * std::sqrt(3.0) / (3.14159265358979 * q));
    CHECK(x == doctest::Approx(expect).epsilon(1e-6));
    auto par = Distribution::pareto(2.5);
    CHECK(par.quantile_tail(1e-200) == doctest::Approx(std::pow(1e-200, -0.4)).epsilon(1e-12));
    auto nrm = Distribution::normal(0, 1);
    double xn = nrm.quantile_tail(1e-12);
    CHECK(jps::normal_cdf(-xn) == doctest::Approx(1e-12).epsilon(1e-6));  // survival side
    CHECK(xn == doctest::Approx(-nrm.quantile(1e-12)).epsilon(1e-9));
}

TEST_CASE("analytic means and variances") {
    CHECK(Distribution::weibull(0.5).mean() == doctest::Approx(2.0).epsilon(1e-12));          // scale*Gamma(3)
    CHECK(Distribution::weibull(0.5).variance() == doctest::Approx(20.0).epsilon(1e-12));     // Gamma(5)-Gamma(3)^2
    CHECK(Distribution::pareto(2.5).mean() == doctest::Approx(2.5 / 1.5).epsilon(1e-12));
    CHECK(Distribution::pareto(2.5).variance() == doctest::Approx(2.5 / (1.5 * 1.5 * 0.5)).epsilon(1e-12));
    CHECK(Distribution::student_t(3).variance() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(Distribution::chi_square(5).mean() == 5.0);
    CHECK(Distribution::chi_square(5).variance() == 10.0);
    CHECK_THROWS_AS(Distribution::pareto(1.5).variance(), std::domain_error);
    CHECK_THROWS_AS(Distribution::student_t(2).variance(), std::domain_error);
}

TEST_CASE("parameter validation at construction") {
    CHECK_THROWS_AS(Distribution::normal(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::normal(0, -1), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::student_t(0), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::uniform(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(Distribution::exponential(-2), std::invalid_argument);
}

TEST_CASE("sampling: determinism and law of large numbers") {
    auto uni = Distribution::uniform(0, 1);
    jps::CounterRng r1(42, 0), r2(42, 0);
    for (int i = 0; i < 100; ++i) CHECK(uni.sample(r1) == uni.sample(r2));

    const int n = 100000;
    jps::CounterRng rng(7, 0);
    double s = 0;
    for (int i = 0; i < n; ++i) s += uni.sample(rng);
    CHECK(s / n == doctest::Approx(0.5).epsilon(0.02));

    auto ex = Distribution::exponential(1);
    jps::CounterRng rng2(7, 1);
    s = 0;
    for (int i = 0; i < n; ++i) s += ex.sample(rng2);
    CHECK(std::abs(s / n - 1.0) < 0.02);
}

TEST_CASE("monte carlo mean/variance agree with analytic for the catalog") {
    // 4-standard-error band on the mean for every member; variance checked
    // only where the fourth moment exists (otherwise Var(S^2) is infinite and
    // the band is meaningless).
    const std::uint64_t reps = 1'000'000;
    std::uint64_t stream = 0;
    for (const auto& dist : jps::catalog()) {
        jps::CounterRng rng(20240801, stream++);
        double sum = 0, sum2 = 0, sum4 = 0;
        double mu = dist.mean();
        for (std::uint64_t i = 0; i < reps; ++i) {
            double x = dist.sample(rng);
            double d = x - mu;
            sum += x;
            sum2 += d * d;
            sum4 += d * d * d * d;
        }
        double n = static_cast<double>(reps);
        double mean = sum / n;
        double var = sum2 / n;
        double se_mean = std::sqrt(dist.variance() / n);
        CHECK(std::abs(mean - mu) < 4.0 * se_mean);
        bool fourth = dist.power_moment_exists(4);
        if (fourth) {
            double mu4 = sum4 / n;
            double se_var = std::sqrt(std::max(0.0, mu4 - var * var) / n);
            CHECK(std::abs(var - dist.variance()) < 4.0 * se_var);
        }
    }
}

TEST_CASE("parse round trip for the CLI names") {
    const char* names[] = {"normal",        "t3",          "uniform",     "beta(0.5,0.5)",
                           "exp",           "chisq(5)",    "weibull(0.5)", "weibull(1.5)",
                           "pareto(2.5)",   "pareto(4)"};
    for (const char* nm : names) {
        auto d = jps::parse_distribution(nm);
        CHECK(d.name() == nm);
    }
    CHECK(jps::parse_distribution("normal(7,3)").mean() == 7.0);
    CHECK(jps::parse_distribution("t(5)").variance() == doctest::Approx(5.0 / 3.0));
    CHECK_THROWS_AS(jps::parse_distribution("cauchy"), std::invalid_argument);
    CHECK_THROWS_AS(jps::parse_distribution("normal(1"), std::invalid_argument);
}
