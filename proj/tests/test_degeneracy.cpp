#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rabi/degeneracy.hpp"
#include "rabi/errors.hpp"

using namespace rabi;

TEST_CASE("integer_condition policy") {
    CHECK(integer_condition(1.0, 2.0, -0.5, 1e-5).satisfied);
    CHECK(integer_condition(1.0, -0.5, 3.0 + 1e-6, 1e-5).satisfied);
    CHECK_FALSE(integer_condition(0.5, 2.0, 2.0, 1e-5).satisfied);
    CHECK_FALSE(integer_condition(0.0, -1.0, -2.0, 1e-5).satisfied);
    CHECK_FALSE(integer_condition(0.0, 0.6, 1.4, 1e-5).satisfied);
    const auto d = integer_condition(2.2, -0.1, 3.0, 1e-5);
    CHECK(d.nearest_integers == std::vector<long long>{2, 0, 3});
    CHECK(d.deviations[0] == doctest::Approx(0.2));
    CHECK(d.satisfied == false);
}

TEST_CASE("two-photon condition") {
    const TwoQrmParams q{0, 0, 0};
    for (int m = 0; m < 5; ++m) {
        const auto d = check_2qrm_condition(q, 2.0 * m + 0.5, ParitySector::Even);
        CHECK(d.satisfied);
        CHECK(d.raw_values[1] == m);
    }
    const auto off = check_2qrm_condition(q, 1.7, ParitySector::Even);
    CHECK(off.raw_values[1] == doctest::Approx(0.6));
    CHECK_FALSE(off.satisfied);

    const auto first = check_2qrm_condition({0.3, 0, 0.8}, 2.1, ParitySector::Odd);
    CHECK(first.raw_values[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(first.deviations[0] <= 1e-15);

    CHECK_THROWS_AS(check_2qrm_condition({0.5, 0, 0}, 1.0, ParitySector::Even), RegimeError);
    CHECK_THROWS_AS(check_2qrm_condition({0.1, 0, 0}, 1.0, ParitySector::Full), ParityError);
}

TEST_CASE("NCHO condition") {
    SUBCASE("lambda chosen to make the branch vanish") {
        const double a = 2.0;
        // (lambda/4)(2a)/sqrt(a^2(a^2-1)) = nu/2 with nu = 1/2
        const double lambda = 0.25 * 4.0 * std::sqrt(a * a * (a * a - 1.0)) / (2.0 * a);
        const auto d = check_ncho_condition({a, a, 0}, lambda, ParitySector::Even);
        CHECK(d.raw_values[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
        CHECK(d.satisfied);
    }
    SUBCASE("half-integer shift") {
        const auto d = check_ncho_condition({3, 2, 0.5}, 1.234, ParitySector::Odd);
        CHECK(d.raw_values[0] == 1.0);
        CHECK(d.deviations[0] == 0.0);
    }
    CHECK_THROWS_AS(check_ncho_condition({1, 1, 0}, 1.0, ParitySector::Even), InvalidParams);
}

TEST_CASE("one-photon condition") {
    CHECK(check_1qrm_condition({0.4, 0.7, 0}, 1 - 0.16).satisfied);
    CHECK(check_1qrm_condition({0.4, 0.7, 0.5}, 0.3).raw_values[0] == 1.0);
    CHECK_FALSE(check_1qrm_condition({0.5, 0.7, 0}, 0.25).satisfied);
}

TEST_CASE("NCHO and two-photon verdicts agree under the parameter map") {
    auto gen = oracle::rng(17);
    int satisfied = 0;
    for (int i = 0; i < 100; ++i) {
        const double eta = (i % 3 == 0) ? 0.0 : (i % 3 == 1 ? 0.5 : oracle::uniform(gen, -1, 1));
        const NchoParams p{oracle::uniform(gen, 1.1, 4), oracle::uniform(gen, 1.1, 4), eta};
        const auto sector = i % 2 ? ParitySector::Odd : ParitySector::Even;
        const double ab = p.alpha * p.beta;
        const double scale = 4.0 * std::sqrt(ab * (ab - 1.0)) / (p.alpha + p.beta);
        // every other point sits exactly on a branch
        const double lambda = i % 4 < 2 ? scale * (static_cast<double>(i % 5) + sector_nu(sector) / 2.0 - eta)
                                        : oracle::uniform(gen, 0.5, 20);
        const auto nd = check_ncho_condition(p, lambda, sector);
        const auto image = ncho_to_2qrm(p, lambda);
        const auto qd = check_2qrm_condition(image.params, image.mu, sector);
        CHECK(nd.satisfied == qd.satisfied);
        CHECK(nd.raw_values[0] == doctest::Approx(-qd.raw_values[0]).scale(1.0).epsilon(1e-12));
        CHECK(nd.raw_values[1] == doctest::Approx(qd.raw_values[1]).scale(1.0).epsilon(1e-12));
        CHECK(nd.raw_values[2] == doctest::Approx(qd.raw_values[2]).scale(1.0).epsilon(1e-12));
        satisfied += nd.satisfied;
    }
    CHECK(satisfied > 10);
}

TEST_CASE("sweep grid is half-open") {
    const SweepSpec s{"gp", 0.0, 1.0, 4};
    CHECK(s.at(0) == 0.25);
    CHECK(s.at(3) == 1.0);
}

TEST_CASE("one-photon Juddian crossings satisfy the condition") {
    ScanOptions opts;
    opts.truncation = 80;
    opts.n_levels = 6;
    const auto r = scan_crossings(OneQrmParams{0.1, 0.5, 0}, {"gp", 0.05, 1.2, 200}, opts);
    CHECK(r.grid.size() == 200);
    CHECK(r.levels.rows() == 200);
    REQUIRE_FALSE(r.crossings.empty());
    CHECK(necessity_holds(r));
    for (const auto& c : r.crossings) {
        CHECK(c.min_gap <= opts.gap_threshold);
        CHECK(c.certified);
        const double v = c.eigen_value + c.swept_value * c.swept_value;
        CHECK(std::abs(v - std::nearbyint(v)) <= 1e-5);
        CHECK(std::nearbyint(v) >= 0);
    }
    // lowest Juddian point of this model: 4 g'^2 + 4 Delta'^2 = 1
    bool juddian_one = false;
    for (const auto& c : r.crossings)
        juddian_one = juddian_one || std::abs(c.swept_value - std::sqrt(0.75) / 2) <= 1e-7;
    CHECK(juddian_one);
    // golden-section refinement cut the gap well below the grid gap
    for (const auto& c : r.crossings) CHECK(c.min_gap * 10.0 <= c.grid_gap);
}

TEST_CASE("resonant two-photon model is degenerate everywhere") {
    ScanOptions opts;
    opts.sector = ParitySector::Even;
    opts.truncation = 60;
    opts.n_levels = 4;
    const auto r = scan_crossings(TwoQrmParams{0, 0, 0}, {"g", 0.0, 0.3, 10}, opts);
    CHECK(r.crossings.size() == 20);
    CHECK(necessity_holds(r));
    for (const auto& c : r.crossings) {
        CHECK(c.lower_level % 2 == 0);
        CHECK(c.diagnostics.satisfied);
        CHECK(c.diagnostics.deviations[1] <= 1e-9);
    }
}

TEST_CASE("two-photon crossings within a parity sector satisfy the condition") {
    for (auto sector : {ParitySector::Even, ParitySector::Odd}) {
        ScanOptions opts;
        opts.sector = sector;
        opts.truncation = 200;
        opts.n_levels = 6;
        const auto r = scan_crossings(TwoQrmParams{0.1, 0.4, 0}, {"g", 0.02, 0.4, 150}, opts);
        CHECK_FALSE(r.crossings.empty());
        CHECK(necessity_holds(r));
    }
}

TEST_CASE("NCHO crossings satisfy their condition") {
    ScanOptions opts;
    opts.sector = ParitySector::Even;
    opts.truncation = 200;
    opts.n_levels = 6;
    const auto r = scan_crossings(NchoParams{3, 2, 0}, {"alpha", 1.2, 4, 150}, opts);
    CHECK(necessity_holds(r));
}

TEST_CASE("sweep without crossings") {
    ScanOptions opts;
    opts.truncation = 60;
    opts.n_levels = 4;
    const auto r = scan_crossings(OneQrmParams{0.1, 3.0, 0}, {"gp", 0.05, 0.3, 100}, opts);
    CHECK(r.crossings.empty());
    for (Eigen::Index i = 0; i < r.levels.rows(); ++i)
        for (Eigen::Index k = 0; k + 1 < r.levels.cols(); ++k)
            CHECK(r.levels(i, k + 1) - r.levels(i, k) > opts.gap_threshold);
}

TEST_CASE("scan validation") {
    ScanOptions opts;
    opts.truncation = 40;
    CHECK_THROWS_AS(scan_crossings(TwoQrmParams{0.1, 0, 0}, {"g", 0.1, 0.3, 10}, opts), ParityError);
    opts.sector = ParitySector::Even;
    CHECK_THROWS_AS(scan_crossings(TwoQrmParams{0.1, 0, 0}, {"g", 0.1, 0.6, 10}, opts), RegimeError);
    CHECK_THROWS_AS(scan_crossings(TwoQrmParams{0.1, 0, 0}, {"g", 0.3, 0.1, 10}, opts), InvalidParams);
    CHECK_THROWS_AS(scan_crossings(TwoQrmParams{0.1, 0, 0}, {"g", 0.1, 0.3, 2}, opts), InvalidParams);
    CHECK_THROWS_AS(scan_crossings(TwoQrmParams{0.1, 0, 0}, {"nu", 0.1, 0.3, 10}, opts), InvalidParams);
}
