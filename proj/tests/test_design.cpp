#include <doctest.h>

#include <jpstrat/design.hpp>

#include <cmath>

using jps::CounterRng;
using jps::Distribution;
using jps::Ranker;

TEST_CASE("jps sample: shape, counts, determinism") {
    auto uni = Distribution::uniform(0, 1);
    CounterRng r1(11, 0), r2(11, 0);
    auto s1 = jps::draw_jps(r1, uni, 50, 4);
    auto s2 = jps::draw_jps(r2, uni, 50, 4);
    REQUIRE(s1.pairs.size() == 50);
    for (std::size_t i = 0; i < 50; ++i) {
        CHECK(s1.pairs[i].x == s2.pairs[i].x);
        CHECK(s1.pairs[i].rank == s2.pairs[i].rank);
        CHECK(s1.pairs[i].rank >= 1);
        CHECK(s1.pairs[i].rank <= 4);
    }
    auto counts = s1.counts();
    int total = 0;
    for (int c : counts) total += c;
    CHECK(total == 50);
    CHECK(s1.occupied_strata() <= 4);

    CounterRng r3(11, 1);
    auto h1 = jps::draw_jps(r3, uni, 20, 1);
    for (const auto& p : h1.pairs) CHECK(p.rank == 1);
    CHECK(h1.full_rank());
}

TEST_CASE("perfect ranking: stratum-1 mean near the min order statistic") {
    auto uni = Distribution::uniform(0, 1);
    CounterRng rng(5, 0);
    auto s = jps::draw_jps(rng, uni, 100000, 3);
    double sum = 0;
    int cnt = 0;
    for (const auto& p : s.pairs) {
        if (p.rank == 1) {
            sum += p.x;
            ++cnt;
        }
    }
    double mean = sum / cnt;
    // E[min of 3 uniforms] = 1/4, sd of the stratum mean ~ sqrt(V/cnt)
    double se = std::sqrt(0.0375 / cnt);
    CHECK(std::abs(mean - 0.25) < 3.5 * se);
    // ranks marginally uniform
    auto counts = s.counts();
    for (int c : counts) CHECK(std::abs(c / 100000.0 - 1.0 / 3.0) < 0.006);
}

TEST_CASE("uninformative concomitant: stratum means collapse to the overall mean") {
    auto ex = Distribution::exponential(1);
    CounterRng rng(5, 1);
    auto s = jps::draw_jps(rng, ex, 100000, 3, Ranker::concomitant(0.0));
    double sums[3] = {0, 0, 0};
    int cnts[3] = {0, 0, 0};
    for (const auto& p : s.pairs) {
        sums[p.rank - 1] += p.x;
        ++cnts[p.rank - 1];
    }
    for (int r = 0; r < 3; ++r) {
        double se = 1.0 / std::sqrt(static_cast<double>(cnts[r]));
        CHECK(std::abs(sums[r] / cnts[r] - 1.0) < 3.5 * se);
    }
}

TEST_CASE("concomitant at rho=1 behaves like perfect ranking") {
    auto nrm = Distribution::normal(0, 1);
    CounterRng rng(6, 0);
    auto s = jps::draw_jps(rng, nrm, 60000, 2, Ranker::concomitant(1.0));
    double sum1 = 0;
    int c1 = 0;
    for (const auto& p : s.pairs) {
        if (p.rank == 1) {
            sum1 += p.x;
            ++c1;
        }
    }
    double target = -1.0 / std::sqrt(3.14159265358979323846);  // E[min of 2]
    CHECK(std::abs(sum1 / c1 - target) < 3.5 * std::sqrt((1 - target * target) / c1));
}

TEST_CASE("brss sample: balanced grid, exponential rank-2 mean, determinism") {
    auto ex = Distribution::exponential(1);
    CounterRng r1(9, 0), r2(9, 0);
    auto b1 = jps::draw_brss(r1, ex, 50000, 2);
    auto b2 = jps::draw_brss(r2, ex, 50000, 2);
    REQUIRE(b1.values.size() == 100000);
    CHECK(b1.values == b2.values);
    double sum = 0;
    for (int c = 0; c < b1.cycles; ++c) sum += b1.at(c, 2);
    double mean = sum / b1.cycles;
    // E[max of 2 exponentials] = 3/2, V = 5/4
    CHECK(std::abs(mean - 1.5) < 3.5 * std::sqrt(1.25 / b1.cycles));
    // H=1 degenerates to SRS
    CounterRng r3(9, 2);
    auto b3 = jps::draw_brss(r3, ex, 100, 1);
    CHECK(b3.values.size() == 100);
}

TEST_CASE("brss with uninformative ranking: every column estimates the mean") {
    auto uni = Distribution::uniform(0, 1);
    CounterRng rng(12, 0);
    auto b = jps::draw_brss(rng, uni, 30000, 3, Ranker::concomitant(0.0));
    for (int r = 1; r <= 3; ++r) {
        double s = 0;
        for (int c = 0; c < b.cycles; ++c) s += b.at(c, r);
        double se = std::sqrt((1.0 / 12.0) / b.cycles);
        CHECK(std::abs(s / b.cycles - 0.5) < 3.5 * se);
    }
}

TEST_CASE("srs guards and determinism") {
    auto uni = Distribution::uniform(0, 1);
    CounterRng rng(3, 0);
    CHECK_THROWS_AS(jps::draw_srs(rng, uni, 0), std::invalid_argument);
    CounterRng ra(3, 1), rb(3, 1);
    CHECK(jps::draw_srs(ra, uni, 64) == jps::draw_srs(rb, uni, 64));
}

TEST_CASE("occupancy law and full-rank frequency") {
    auto uni = Distribution::uniform(0, 1);
    const int reps = 20000, n = 10, H = 4;
    int empty1 = 0, full = 0;
    for (int rep = 0; rep < reps; ++rep) {
        CounterRng rng(77, static_cast<std::uint64_t>(rep));
        auto s = jps::draw_jps(rng, uni, n, H);
        auto c = s.counts();
        empty1 += (c[0] == 0);
        full += s.full_rank();
    }
    double p0 = std::pow(3.0 / 4.0, n);
    double se = std::sqrt(p0 * (1 - p0) / reps);
    CHECK(std::abs(empty1 / static_cast<double>(reps) - p0) < 3.5 * se);

    // full-rank frequency decreases in H at fixed n
    int full_h6 = 0;
    for (int rep = 0; rep < reps; ++rep) {
        CounterRng rng(78, static_cast<std::uint64_t>(rep));
        auto s = jps::draw_jps(rng, uni, n, 6);
        full_h6 += s.full_rank();
    }
    CHECK(full_h6 < full);
}

TEST_CASE("ranker parsing") {
    CHECK(jps::parse_ranker("perfect").kind == Ranker::Kind::Perfect);
    auto c = jps::parse_ranker("concomitant:0.8");
    CHECK(c.kind == Ranker::Kind::Concomitant);
    CHECK(c.rho == doctest::Approx(0.8));
    CHECK_THROWS_AS(jps::parse_ranker("psychic"), std::invalid_argument);
    CHECK_THROWS_AS(jps::parse_ranker("concomitant:1.5"), std::invalid_argument);
}
