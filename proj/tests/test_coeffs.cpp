#include <doctest.h>

#include <jpstrat/coeffs.hpp>

using jps::BigInt;
using jps::CoeffFunctional;
using jps::Rational;
using jps::WeightScheme;

TEST_CASE("occupancy pmf: frozen small cases and exact normalization") {
    auto pmf22 = jps::std_inv_hn_pmf(2, 2);
    // atoms: value 0, 1/1, 1/2
    CHECK(pmf22[0].second == Rational(1, 4));
    CHECK(pmf22[1].second == Rational(1, 4));
    CHECK(pmf22[2].second == Rational(1, 2));

    auto pmf13 = jps::std_inv_hn_pmf(1, 3);
    CHECK(pmf13[0].second == Rational(2, 3));
    CHECK(pmf13[1].second == Rational(1, 3));
    CHECK(pmf13[2].second == Rational(0));
    CHECK(pmf13[3].second == Rational(0));

    auto pmfH1 = jps::std_inv_hn_pmf(5, 1);
    CHECK(pmfH1[0].second == Rational(0));
    CHECK(pmfH1[1].second == Rational(1));

    for (int n = 1; n <= 7; ++n) {
        for (int H = 1; H <= 5; ++H) {
            auto pmf = jps::std_inv_hn_pmf(n, H);
            Rational total(0), mean(0);
            for (const auto& [v, p] : pmf) {
                total += p;
                mean += v * p;
            }
            CHECK(total == Rational(1));
            CHECK(mean == Rational(1, H));  // E(I1/hn) = 1/H
        }
    }
}

TEST_CASE("occupancy pmf equals the enumeration oracle") {
    for (int n = 1; n <= 6; ++n) {
        for (int H = 1; H <= 4; ++H) {
            auto closed = jps::std_inv_hn_pmf(n, H);
            auto oracle = jps::enumerate_inv_hn_pmf(n, H);
            REQUIRE(closed.size() == oracle.size());
            for (std::size_t i = 0; i < closed.size(); ++i) {
                CHECK(closed[i].first == oracle[i].first);
                CHECK(closed[i].second == oracle[i].second);
            }
        }
    }
}

TEST_CASE("variance coefficient: frozen values and oracle equality") {
    CHECK(jps::std_v_coeff(2, 2) == Rational(1, 8));
    CHECK(jps::std_v_coeff(3, 2) == Rational(1, 16));
    CHECK(jps::std_v_coeff(7, 1) == Rational(0));
    for (int n = 1; n <= 6; ++n) {
        for (int H = 1; H <= 4; ++H) {
            CHECK(jps::std_v_coeff(n, H) ==
                  jps::enumerate_oracle(WeightScheme::StandardJps, n, H, CoeffFunctional::VC1));
        }
    }
}

TEST_CASE("J coefficient: frozen values and oracle equality") {
    CHECK(jps::std_j_coeff(2, 2) == Rational(1, 4));
    CHECK(jps::std_j_coeff(3, 2) == Rational(35, 192));
    CHECK(jps::std_j_coeff(5, 1) == Rational(1, 5));
    CHECK(jps::std_j_coeff(1, 2) == Rational(1, 2));
    for (int n = 1; n <= 6; ++n) {
        for (int H = 1; H <= 4; ++H) {
            CHECK(jps::std_j_coeff(n, H) ==
                  jps::enumerate_oracle(WeightScheme::StandardJps, n, H, CoeffFunctional::EJ1C1Sq));
        }
    }
}

TEST_CASE("srs closed forms equal the oracle") {
    CHECK(jps::enumerate_oracle(WeightScheme::Srs, 4, 2, CoeffFunctional::VC1) == Rational(1, 16));
    for (int n = 1; n <= 6; ++n) {
        for (int H = 1; H <= 4; ++H) {
            Rational v_closed = H == 1 ? Rational(0) : Rational(H - 1, static_cast<std::int64_t>(n) * H * H);
            Rational j_closed(1, static_cast<std::int64_t>(n) * H);
            CHECK(jps::enumerate_oracle(WeightScheme::Srs, n, H, CoeffFunctional::VC1) == v_closed);
            CHECK(jps::enumerate_oracle(WeightScheme::Srs, n, H, CoeffFunctional::EJ1C1Sq) == j_closed);
        }
    }
}

TEST_CASE("frey-feeman moments: frozen exact values") {
    auto [v22, ej22] = jps::ff_moments_exact_rational(2, 2);
    CHECK(v22 == Rational(1, 8));
    CHECK(ej22 == Rational(1, 4));
    // n=3, H=2: A1 takes values {1, 4/7, 3/7, 0} with probs {1/8, 3/8, 3/8, 1/8}
    auto [v32, ej32] = jps::ff_moments_exact_rational(3, 2);
    CHECK(v32 == Rational(13, 196));
    CHECK(ej32 == Rational(101, 588));
    // degenerate n=H=2 coincides with the standard weights
    CHECK(v22 == jps::std_v_coeff(2, 2));
}

TEST_CASE("frey-feeman exact path equals the oracle across the small grid") {
    for (int n = 1; n <= 6; ++n) {
        for (int H = 1; H <= 4; ++H) {
            auto [v, ej] = jps::ff_moments_exact_rational(n, H);
            CHECK(v == jps::enumerate_oracle(WeightScheme::FreyFeeman, n, H, CoeffFunctional::VC1));
            CHECK(ej ==
                  jps::enumerate_oracle(WeightScheme::FreyFeeman, n, H, CoeffFunctional::EJ1C1Sq));
        }
    }
}

TEST_CASE("coefficient_set invariants") {
    // SRS: m1 = m2 = 1 for every size
    for (int n : {1, 2, 5, 17}) {
        for (int H : {1, 2, 3, 7}) {
            auto cs = jps::coefficient_set(WeightScheme::Srs, n, H);
            CHECK(cs.m1 == doctest::Approx(1.0).epsilon(1e-12));
            if (H > 1) CHECK(cs.m2 == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(cs.e_c1 == doctest::Approx(1.0 / H));
        }
    }
    // degenerate n=H=2: standard weights coincide with SRS, so m1 = m2 = 1
    auto cs22 = jps::coefficient_set(WeightScheme::StandardJps, 2, 2);
    CHECK(cs22.m1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cs22.m2 == doctest::Approx(1.0).epsilon(1e-12));
    // n=3, H=2: m1 = 35/32, m2 = 3/4
    auto cs32 = jps::coefficient_set(WeightScheme::StandardJps, 3, 2);
    CHECK(cs32.m1 == doctest::Approx(35.0 / 32.0).epsilon(1e-12));
    CHECK(cs32.m2 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(cs32.cov_c1c2 == doctest::Approx(-cs32.v_c1).epsilon(1e-12));

    // m1 >= 1 with equality only for SRS; m2 < 1 for jps/ff when n >= 3
    for (int n : {3, 5, 10, 40}) {
        for (int H : {2, 3, 5}) {
            for (auto s : {WeightScheme::StandardJps, WeightScheme::FreyFeeman}) {
                auto cs = jps::coefficient_set(s, n, H);
                CHECK(cs.m1 > 1.0);
                CHECK(cs.m2 < 1.0);
            }
        }
    }
}

TEST_CASE("alternating-sum robustness: fp re-evaluation tracks exact rationals") {
    for (int H : {2, 5, 9, 14}) {
        for (int n : {5, 20, 40, 60}) {
            double exact = jps::std_j_coeff(n, H).to_double();
            double fp = jps::std_j_coeff_fp(n, H);
            CHECK(fp == doctest::Approx(exact).epsilon(1e-9));
        }
    }
}

TEST_CASE("occupancy-chain route matches exact values and stays stable at large n") {
    for (int H : {2, 5, 14}) {
        for (int n : {3, 10, 60, 150}) {
            auto [e, v] = jps::std_coeffs_occupancy(n, H);
            CHECK(e == doctest::Approx(jps::std_j_coeff(n, H).to_double()).epsilon(1e-12));
            CHECK(v == doctest::Approx(jps::std_v_coeff(n, H).to_double()).epsilon(1e-12));
        }
    }
    // asymptotics: m1 -> 1 and m2 -> 0 monotonically in n
    double prev_gap = 1e9, prev_m2 = 1e9;
    for (int n : {100, 1000, 10000}) {
        auto cs = jps::coefficient_set(WeightScheme::StandardJps, n, 5,
                                       {.std_exact_n_limit = 200});
        double gap = std::abs(cs.m1 - 1.0);
        CHECK(gap < prev_gap);
        CHECK(cs.m2 < prev_m2);
        prev_gap = gap;
        prev_m2 = cs.m2;
    }
}

TEST_CASE("monte carlo coefficients agree with exact values within 3 SUs") {
    jps::FfMcOptions opt;
    opt.reps = 400000;
    opt.seed = 99;
    opt.threads = 2;
    auto mc = jps::ff_weight_moments(10, 3, jps::FfMethod::MonteCarlo, opt);
    auto exact = jps::ff_weight_moments(10, 3, jps::FfMethod::Enumerate);
    CHECK(std::abs(mc.v_a1 - exact.v_a1) < 3.0 * mc.se_v_a1 + 1e-12);
    CHECK(std::abs(mc.e_j1a1sq - exact.e_j1a1sq) < 3.0 * mc.se_e_j1a1sq + 1e-12);

    // bit-identical for any thread count
    opt.threads = 1;
    auto mc1 = jps::ff_weight_moments(10, 3, jps::FfMethod::MonteCarlo, opt);
    CHECK(mc.v_a1 == mc1.v_a1);
    CHECK(mc.e_j1a1sq == mc1.e_j1a1sq);
}

TEST_CASE("enumeration budget guard") {
    CHECK_THROWS_AS(jps::ff_weight_moments(2000, 8, jps::FfMethod::Enumerate), std::domain_error);
    CHECK_THROWS_AS(jps::enumerate_oracle(WeightScheme::StandardJps, 2000, 8, CoeffFunctional::VC1),
                    std::domain_error);
    CHECK_NOTHROW(jps::ff_weight_moments(60, 5, jps::FfMethod::Enumerate));
}

TEST_CASE("float enumeration matches exact enumeration where both run") {
    for (int n : {10, 15}) {
        for (int H : {2, 3}) {
            auto exact = jps::ff_moments_exact_rational(n, H);
            auto cs = jps::ff_weight_moments(40, H, jps::FfMethod::Enumerate);
            (void)cs;  // smoke: large-side path runs
            double v = exact.first.to_double(), ej = exact.second.to_double();
            // force the fp path via the internal budget by calling it on a size
            // just above the exact limit is impractical here; instead compare
            // the two code paths at the same size
            auto fp = jps::detail::ff_enumerate_fp(n, H);
            CHECK(fp.v_a1 == doctest::Approx(v).epsilon(1e-12));
            CHECK(fp.e_j1a1sq == doctest::Approx(ej).epsilon(1e-12));
        }
    }
}
