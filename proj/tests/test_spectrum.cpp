#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "oracles.hpp"
#include "rabi/errors.hpp"
#include "rabi/spectrum.hpp"

using namespace rabi;
using Eigen::Index;

namespace {

Eigen::VectorXd sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
}

}  // namespace

TEST_CASE("closed-form spectra") {
    SUBCASE("decoupled two-photon model") {
        const auto s = eigenvalues(build_2qrm({0, 0.7, 0}, 3, ParitySector::Full));
        const Eigen::VectorXd expected = sorted({-0.2, 0.8, 1.2, 1.8, 2.2, 3.2});
        CHECK((s.eigenvalues - expected).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK(s.converged_count == 0);
        CHECK(s.truncation_N == 3);
    }
    SUBCASE("decoupled disk") {
        const auto s = eigenvalues(build_disk({1.5, 0, 0, 0}, 2));
        CHECK(s.eigenvalues == Eigen::Vector4d(1.5, 1.5, 3.5, 3.5));
    }
    SUBCASE("displaced oscillator") {
        // a^dag a + g'(a + a^dag) = b^dag b - g'^2 in each spin sector
        const auto s = eigenvalues(build_1qrm({0.4, 0, 0}, 400));
        for (Index k = 0; k < 10; ++k)
            CHECK(std::abs(s.eigenvalues(k) - (static_cast<double>(k / 2) - 0.16)) <= 1e-10);
    }
}

TEST_CASE("banded solver agrees with a dense reference") {
    auto gen = oracle::rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const NchoParams p{oracle::uniform(gen, 1.2, 4), oracle::uniform(gen, 1.2, 4), oracle::uniform(gen, -1, 1)};
        const TwoQrmParams q{oracle::uniform(gen, -0.45, 0.45), oracle::uniform(gen, -2, 2), oracle::uniform(gen, -1, 1)};
        for (const auto& h : {build_ncho(p, 60, ParitySector::Even), build_2qrm(q, 60, ParitySector::Full),
                              build_disk({oracle::uniform(gen, 0.5, 20), q.g, q.delta, q.epsilon}, 60)}) {
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> dense(h.matrix, Eigen::EigenvaluesOnly);
            const auto s = eigenvalues(h);
            const double scale = 1.0 + dense.eigenvalues().cwiseAbs().maxCoeff();
            CHECK((s.eigenvalues - dense.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-11 * scale);
            CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
            CHECK(s.size() == h.dim());
        }
    }
}

TEST_CASE("eigenpair residuals are small") {
    auto gen = oracle::rng(11);
    for (int trial = 0; trial < 4; ++trial) {
        const std::vector<TruncatedHamiltonian> hs{
            build_ncho({oracle::uniform(gen, 1.1, 3), oracle::uniform(gen, 1.1, 3), 0.5}, 40, ParitySector::Odd),
            build_2qrm({oracle::uniform(gen, -0.6, 0.6), 0.3, -0.2}, 40, ParitySector::Full),
            build_1qrm({oracle::uniform(gen, -1, 1), 0.5, 0.1}, 40),
            build_disk({oracle::uniform(gen, 0.5, 10), 0.3, 0.2, 0.1}, 40)};
        for (const auto& h : hs) {
            const auto ep = eigenpairs(h);
            const double hmax = h.matrix.cwiseAbs().maxCoeff();
            for (Index k = 0; k < ep.values.size(); ++k) {
                const double r = (h.matrix * ep.vectors.col(k) - ep.values(k) * ep.vectors.col(k)).norm();
                CHECK(r <= 1e-10 * (1.0 + std::abs(ep.values(k))) * hmax * static_cast<double>(h.dim()));
            }
        }
    }
}

TEST_CASE("truncated eigenvalues are variational upper bounds") {
    auto gen = oracle::rng(21);
    for (int trial = 0; trial < 8; ++trial) {
        const std::vector<ModelSpec> models{
            TwoQrmParams{oracle::uniform(gen, -0.45, 0.45), oracle::uniform(gen, -2, 2), oracle::uniform(gen, -1, 1)},
            NchoParams{oracle::uniform(gen, 1.1, 4), oracle::uniform(gen, 1.1, 4), oracle::uniform(gen, -1, 1)},
            OneQrmParams{oracle::uniform(gen, -1, 1), oracle::uniform(gen, -1, 1), oracle::uniform(gen, -1, 1)},
            DiskParams{oracle::uniform(gen, 0.5, 30), oracle::uniform(gen, -0.45, 0.45), 0.2, 0.1}};
        for (const auto& model : models) {
            const auto sector = conserves_photon_parity(model) ? ParitySector::Even : ParitySector::Full;
            const auto small = eigenvalues(build(model, 20, sector));
            const auto large = eigenvalues(build(model, 45, sector));
            for (Index k = 0; k < small.size(); ++k) CHECK(small.eigenvalues(k) >= large.eigenvalues(k) - 1e-12);
        }
    }
}

TEST_CASE("certification") {
    SUBCASE("decoupled model is exact at any truncation") {
        for (Index n : {4, 7, 30}) {
            const auto s = converged_spectrum(TwoQrmParams{0, 0.3, 0}, ParitySector::Full, n, 1e-9);
            CHECK(s.converged_count == 2 * n);
            CHECK(s.truncation_N == certificate_truncation(n));
            CHECK(s.certificate_tol == 1e-9);
        }
        CHECK(converged_spectrum(OneQrmParams{0, 0.2, 0}, ParitySector::Full, 10).converged_count == 20);
    }
    SUBCASE("count never exceeds length") {
        const auto s = converged_spectrum(TwoQrmParams{0.3, 0.5, 0}, ParitySector::Even, 50);
        CHECK(s.converged_count <= s.size());
        CHECK(s.converged_count > 0);
    }
    SUBCASE("count grows with N near the collapse point") {
        Index previous = 0;
        for (Index n : {200, 400, 800}) {
            const auto s = converged_spectrum(TwoQrmParams{0.45, 0.5, 0}, ParitySector::Even, n);
            CHECK(s.converged_count >= previous);
            previous = s.converged_count;
        }
    }
    SUBCASE("collapse regime forces zero") {
        const auto s = converged_spectrum(TwoQrmParams{0.6, 0.5, 0}, ParitySector::Even, 20);
        CHECK(s.unreliable);
        CHECK(s.converged_count == 0);
        CHECK(converged_spectrum(NchoParams{0.5, 1, 0}, ParitySector::Odd, 20).converged_count == 0);
    }
    CHECK(certificate_truncation(4) == 6);
    CHECK(certificate_truncation(5) == 8);
    CHECK(certificate_truncation(600) == 900);
    CHECK_THROWS_AS(converged_spectrum(TwoQrmParams{0.1, 0, 0}, ParitySector::Even, 3), InvalidTruncation);
}

TEST_CASE("determinism") {
    const ModelSpec m = NchoParams{3, 2, 0.5};
    const auto a = converged_spectrum(m, ParitySector::Even, 120);
    const auto b = converged_spectrum(m, ParitySector::Even, 120);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.converged_count == b.converged_count);
}

TEST_CASE("match_eigenvalue") {
    SpectrumResult s;
    s.eigenvalues = Eigen::Vector4d(-1.0, 0.5, 0.5, 2.0);
    SUBCASE("exact target") {
        const auto m = match_eigenvalue(s, 2.0, 1e-9);
        REQUIRE(m);
        CHECK(m->index == 3);
        CHECK(m->residual == 0.0);
    }
    SUBCASE("degenerate pair takes the lower index") {
        const auto m = match_eigenvalue(s, 0.5 + 1e-12, 1e-9);
        REQUIRE(m);
        CHECK(m->index == 1);
    }
    SUBCASE("outside the range") {
        CHECK_FALSE(match_eigenvalue(s, 2.0 + 2e-9, 1e-9));
        CHECK_FALSE(match_eigenvalue(s, -1.0 - 2e-9, 1e-9));
    }
    SUBCASE("certified prefix restricts the search") {
        s.converged_count = 2;
        CHECK_FALSE(match_eigenvalue(s, 2.0, 1e-9));
        CHECK(match_eigenvalue(s, 0.5, 1e-9)->index == 1);
    }
}

TEST_CASE("spectrum cache reuses solves") {
    SpectrumCache cache;
    const ModelSpec m = TwoQrmParams{0.25, 0.1, 0};
    const auto a = cache.get(m, ParitySector::Even, 40, 1e-9);
    const auto b = cache.get(m, ParitySector::Even, 40, 1e-9);
    cache.get(m, ParitySector::Odd, 40, 1e-9);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(cache.size() == 2);
    CHECK(cache.hits() == 1);
}
