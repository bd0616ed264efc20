#include "rabi/equivalence.hpp"

#include <cmath>
#include <limits>

#include "rabi/errors.hpp"
#include "rabi/hamiltonian.hpp"
#include "rabi/matrix_utils.hpp"
#include "rabi/parallel.hpp"

namespace rabi {

using Eigen::Index;

std::string to_string(Direction d) { return d == Direction::NchoTo2Qrm ? "ncho_to_2qrm" : "2qrm_to_ncho"; }

namespace {

void check_options(const VerifyOptions& opts) {
    if (opts.n_levels < 1) throw InvalidParams("n_levels must be positive");
    if (!(opts.match_tol > 0.0)) throw InvalidParams("match tolerance must be positive");
}

EquivalenceReport empty_report(Direction dir, const VerifyOptions& opts) {
    EquivalenceReport r;
    r.direction = dir;
    r.sector = opts.sector;
    r.truncation_N = opts.truncation;
    r.tol = opts.match_tol;
    r.certificate_tol = opts.certificate_tol;
    r.requested_levels = opts.n_levels;
    return r;
}

void finalize(EquivalenceReport& r) {
    bool ok = !r.records.empty() && !r.unreliable;
    for (const auto& rec : r.records) ok = ok && rec.matched && rec.residual <= r.tol;
    r.all_matched = ok;
}

void apply_match(MappingRecord& rec, const SpectrumResult& s, double target, double tol) {
    if (auto m = match_eigenvalue(s, target, tol)) {
        rec.residual = m->residual;
        rec.matched = true;
    } else {
        rec.residual = std::numeric_limits<double>::infinity();
        rec.matched = false;
    }
}

}  // namespace

EquivalenceReport verify_ncho_to_2qrm(const NchoParams& p, const VerifyOptions& opts) {
    check_options(opts);
    validate(p);
    auto report = empty_report(Direction::NchoTo2Qrm, opts);
    if (collapse_regime(p)) {
        report.unreliable = true;
        return report;
    }
    const SpectrumResult source = converged_spectrum(p, opts.sector, opts.truncation, opts.certificate_tol);
    const int usable = static_cast<int>(std::min<Index>(opts.n_levels, source.converged_count));
    report.uncertified_levels = opts.n_levels - usable;
    report.records.resize(static_cast<std::size_t>(usable));

    SpectrumCache cache;
    parallel_for(report.records.size(), opts.threads, [&](std::size_t k) {
        const double lambda = source.eigenvalues(static_cast<Index>(k));
        const auto image = ncho_to_2qrm(p, lambda);
        MappingRecord rec;
        rec.level = static_cast<int>(k);
        rec.lambda = lambda;
        rec.mu = image.mu;
        rec.ncho = p;
        rec.qrm = image.params;
        const auto target = cache.get(image.params, opts.sector, opts.truncation, opts.certificate_tol);
        apply_match(rec, target, image.mu, opts.match_tol);
        report.records[k] = rec;
    });
    finalize(report);
    return report;
}

EquivalenceReport verify_2qrm_to_ncho(const TwoQrmParams& q, const VerifyOptions& opts) {
    check_options(opts);
    validate(q);
    auto report = empty_report(Direction::TwoQrmToNcho, opts);
    if (collapse_regime(q)) {
        report.unreliable = true;
        return report;
    }
    const SpectrumResult source = converged_spectrum(q, opts.sector, opts.truncation, opts.certificate_tol);
    const int usable = static_cast<int>(std::min<Index>(opts.n_levels, source.converged_count));
    report.uncertified_levels = opts.n_levels - usable;

    std::vector<int> open_levels;
    for (int k = 0; k < usable; ++k) {
        const double mu = source.eigenvalues(k);
        if (std::abs(mu) > std::abs(q.delta))
            open_levels.push_back(k);
        else
            report.obstructed.push_back({k, mu});
    }

    report.records.resize(open_levels.size());
    SpectrumCache cache;
    parallel_for(open_levels.size(), opts.threads, [&](std::size_t i) {
        const int k = open_levels[i];
        const double mu = source.eigenvalues(k);
        const auto image = two_qrm_to_ncho(q, mu);
        MappingRecord rec;
        rec.level = k;
        rec.lambda = image.lambda;
        rec.mu = mu;
        rec.ncho = image.params;
        rec.qrm = q;
        const auto target = cache.get(image.params, opts.sector, opts.truncation, opts.certificate_tol);
        apply_match(rec, target, image.lambda, opts.match_tol);
        report.records[i] = rec;
    });
    finalize(report);
    return report;
}

SectorDeviation verify_parity_disk_identity(const TwoQrmParams& q, Index m) {
    const auto even_fock = build_2qrm(q, m, ParitySector::Even);
    const auto odd_fock = build_2qrm(q, m, ParitySector::Odd);
    const auto even_disk = build_disk({0.5, q.g, q.delta, q.epsilon}, m);
    const auto odd_disk = build_disk({1.5, q.g, q.delta, q.epsilon}, m);
    return {max_abs_deviation(even_fock.matrix, even_disk.matrix), max_abs_deviation(odd_fock.matrix, odd_disk.matrix)};
}

Eigen::MatrixXd fock_sector_number(Index m, int parity) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (Index k = 0; k < m; ++k) a(k, k) = static_cast<double>(2 * k + parity) + 0.5;
    return a;
}

Eigen::MatrixXd fock_sector_half_lowering(Index m, int parity) {
    // (1/2) a^2 |n> = (1/2) sqrt(n (n - 1)) |n - 2>
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (Index k = 1; k < m; ++k) {
        const Index n = 2 * k + parity;
        a(k - 1, k) = 0.5 * std::sqrt(static_cast<double>(n * (n - 1)));
    }
    return a;
}

Eigen::MatrixXd fock_sector_half_raising(Index m, int parity) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (Index k = 0; k + 1 < m; ++k) {
        const Index n = 2 * k + parity;
        a(k + 1, k) = 0.5 * std::sqrt(static_cast<double>((n + 1) * (n + 2)));
    }
    return a;
}

Eigen::MatrixXd bergman_euler(Index m, double nu) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (Index k = 0; k < m; ++k) a(k, k) = 2.0 * static_cast<double>(k) + nu;
    return a;
}

Eigen::MatrixXd bergman_derivative(Index m, double nu) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (Index k = 1; k < m; ++k) {
        const double kk = static_cast<double>(k);
        a(k - 1, k) = std::sqrt(kk * (kk + nu - 1.0));
    }
    return a;
}

Eigen::MatrixXd bergman_raising(Index m, double nu) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (Index k = 0; k + 1 < m; ++k) {
        const double kk = static_cast<double>(k);
        a(k + 1, k) = std::sqrt((kk + 1.0) * (kk + nu));
    }
    return a;
}

DictionaryDeviation basis_correspondence_check(Index m, double nu) {
    if (m < 2) throw InvalidTruncation("dictionary check needs M >= 2");
    int parity = 0;
    if (nu == 0.5)
        parity = 0;
    else if (nu == 1.5)
        parity = 1;
    else
        throw InvalidParams("dictionary check is defined for nu = 1/2 and nu = 3/2 only");
    return {max_abs_deviation(fock_sector_number(m, parity), bergman_euler(m, nu)),
            max_abs_deviation(fock_sector_half_lowering(m, parity), bergman_derivative(m, nu)),
            max_abs_deviation(fock_sector_half_raising(m, parity), bergman_raising(m, nu))};
}

}  // namespace rabi
