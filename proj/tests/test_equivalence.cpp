#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rabi/equivalence.hpp"
#include "rabi/errors.hpp"
#include "rabi/matrix_utils.hpp"

using namespace rabi;
using Eigen::Index;

namespace {

VerifyOptions options(ParitySector sector, Index n = 300, int levels = 8) {
    VerifyOptions o;
    o.sector = sector;
    o.truncation = n;
    o.n_levels = levels;
    return o;
}

void check_all_matched(const EquivalenceReport& r, int expected_records) {
    CHECK(r.all_matched);
    CHECK(static_cast<int>(r.records.size()) == expected_records);
    for (const auto& rec : r.records) {
        CHECK(rec.matched);
        CHECK(rec.residual <= r.tol);
    }
}

}  // namespace

TEST_CASE("forward correspondence, symmetric oscillator") {
    for (auto sector : {ParitySector::Even, ParitySector::Odd}) {
        const auto r = verify_ncho_to_2qrm({2, 2, 0}, options(sector));
        check_all_matched(r, 8);
        for (const auto& rec : r.records) {
            CHECK(rec.qrm.delta == 0.0);
            CHECK(rec.qrm.g == 0.25);
            CHECK(rec.mu == doctest::Approx(rec.lambda / 2).epsilon(1e-15));
            CHECK(rec.residual <= 1e-8);
        }
    }
}

TEST_CASE("forward correspondence, asymmetric oscillator") {
    for (auto sector : {ParitySector::Even, ParitySector::Odd}) {
        const auto r = verify_ncho_to_2qrm({3, 2, 0}, options(sector));
        check_all_matched(r, 8);
        for (const auto& rec : r.records) {
            CHECK(rec.qrm.g == doctest::Approx(1 / (2 * std::sqrt(6.0))).epsilon(1e-15));
            CHECK(rec.qrm.delta == doctest::Approx(rec.lambda / 12).epsilon(1e-14));
        }
        CHECK(r.direction == Direction::NchoTo2Qrm);
        CHECK(r.sector == sector);
    }
}

TEST_CASE("forward correspondence with a shift") {
    const auto r = verify_ncho_to_2qrm({3, 2, 0.5}, options(ParitySector::Odd));
    check_all_matched(r, 8);
    for (const auto& rec : r.records)
        CHECK(rec.qrm.epsilon == doctest::Approx(-std::sqrt(5.0) / std::sqrt(6.0)).epsilon(1e-14));
}

TEST_CASE("decoupled oscillator maps exactly") {
    // Remove the coupling: the spectrum is alpha(n+1/2), beta(n+1/2) and the image two-photon
    // model is g = 0 with the mapped Delta.
    const NchoParams p{3, 2, 0};
    for (int n = 0; n < 6; ++n) {
        const double lambda = p.alpha * (n + 0.5);
        const auto image = ncho_to_2qrm(p, lambda);
        TwoQrmParams decoupled = image.params;
        decoupled.g = 0.0;
        const auto s = eigenvalues(build_2qrm(decoupled, 10, ParitySector::Full));
        const auto m = match_eigenvalue(s, image.mu, 1e-13);
        REQUIRE(m);
        CHECK(m->residual <= 1e-14);
    }
}

TEST_CASE("reverse correspondence") {
    SUBCASE("no obstruction at zero detuning") {
        const auto r = verify_2qrm_to_ncho({0.25, 0, 0}, options(ParitySector::Even));
        CHECK(r.obstructed.empty());
        check_all_matched(r, 8);
        for (const auto& rec : r.records) {
            CHECK(rec.ncho.alpha == doctest::Approx(2).epsilon(1e-12));
            CHECK(rec.ncho.beta == doctest::Approx(2).epsilon(1e-12));
        }
    }
    SUBCASE("large detuning obstructs the low levels") {
        const auto r = verify_2qrm_to_ncho({0.2, 5, 0}, options(ParitySector::Even, 300, 24));
        CHECK_FALSE(r.obstructed.empty());
        for (const auto& ob : r.obstructed) CHECK(std::abs(ob.mu) <= 5.0);
        for (const auto& rec : r.records) CHECK(std::abs(rec.mu) > 5.0);
        CHECK(r.records.size() + r.obstructed.size() == 24);
        check_all_matched(r, static_cast<int>(r.records.size()));
    }
    SUBCASE("obstruction count shrinks as the detuning vanishes") {
        std::size_t previous = 1000;
        for (double delta : {5.0, 2.0, 0.5, 0.0}) {
            const auto r = verify_2qrm_to_ncho({0.2, delta, 0}, options(ParitySector::Odd, 200, 16));
            CHECK(r.obstructed.size() <= previous);
            previous = r.obstructed.size();
        }
        CHECK(previous == 0);
    }
}

TEST_CASE("both directions agree on the same pairs") {
    const auto forward = verify_ncho_to_2qrm({3, 2, 0}, options(ParitySector::Even, 300, 4));
    for (const auto& rec : forward.records) {
        const auto back = verify_2qrm_to_ncho(rec.qrm, options(ParitySector::Even, 300, 30));
        bool found = false;
        for (const auto& b : back.records)
            if (std::abs(b.mu - rec.mu) <= back.tol) {
                found = true;
                CHECK(b.matched);
                CHECK(std::abs(b.lambda - rec.lambda) <= back.tol);
            }
        CHECK(found);
    }
}

TEST_CASE("collapse regime never asserts matches") {
    const auto a = verify_ncho_to_2qrm({1, 1, 0}, options(ParitySector::Even));
    CHECK(a.unreliable);
    CHECK_FALSE(a.all_matched);
    CHECK(a.records.empty());
    const auto b = verify_2qrm_to_ncho({0.5, 0.1, 0}, options(ParitySector::Odd));
    CHECK(b.unreliable);
    CHECK_FALSE(b.all_matched);
}

TEST_CASE("threads do not change the report") {
    auto o = options(ParitySector::Even, 200, 6);
    const auto serial = verify_ncho_to_2qrm({3, 2, 0.5}, o);
    o.threads = 3;
    const auto parallel = verify_ncho_to_2qrm({3, 2, 0.5}, o);
    REQUIRE(serial.records.size() == parallel.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        CHECK(serial.records[i].level == parallel.records[i].level);
        CHECK(serial.records[i].residual == parallel.records[i].residual);
    }
}

TEST_CASE("parity blocks coincide with the disk model") {
    CHECK(verify_parity_disk_identity({0, 0.3, 0}, 50).even == 0.0);
    CHECK(verify_parity_disk_identity({0, 0.3, 0}, 50).odd == 0.0);
    auto gen = oracle::rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const TwoQrmParams q{oracle::uniform(gen, -0.45, 0.45), oracle::uniform(gen, -3, 3),
                             trial % 2 ? oracle::uniform(gen, -2, 2) : 0.0};
        const auto d = verify_parity_disk_identity(q, 50);
        CHECK(d.even <= 1e-13);
        CHECK(d.odd <= 1e-13);
    }
}

TEST_CASE("operator dictionary") {
    for (double nu : {0.5, 1.5}) {
        const auto d = basis_correspondence_check(200, nu);
        CHECK(d.number_operator == 0.0);
        CHECK(d.lowering <= 1e-14);
        CHECK(d.raising <= 1e-14);
    }
    SUBCASE("individual matrices") {
        CHECK(fock_sector_number(3, 0).diagonal() == Eigen::Vector3d(0.5, 2.5, 4.5));
        CHECK(bergman_euler(3, 1.5).diagonal() == Eigen::Vector3d(1.5, 3.5, 5.5));
        // (1/2) a^2 |2> = (1/2) sqrt(2) |0>
        CHECK(fock_sector_half_lowering(3, 0)(0, 1) == doctest::Approx(std::sqrt(0.5)));
        CHECK(bergman_derivative(3, 0.5)(0, 1) == doctest::Approx(std::sqrt(0.5)));
        CHECK(fock_sector_half_raising(4, 1).transpose() == fock_sector_half_lowering(4, 1));
    }
    CHECK_THROWS_AS(basis_correspondence_check(10, 2.5), InvalidParams);
    CHECK_THROWS_AS(basis_correspondence_check(1, 0.5), InvalidTruncation);
}
