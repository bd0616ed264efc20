#include "rabi/confluence.hpp"

#include <cmath>
#include <limits>

#include "rabi/errors.hpp"
#include "rabi/hamiltonian.hpp"
#include "rabi/matrix_utils.hpp"
#include "rabi/parallel.hpp"

namespace rabi {

using Eigen::Index;

namespace {

void require_admissible(const OneQrmParams& o, double nu) {
    validate(o);
    if (!(nu >= 1.0) || !std::isfinite(nu)) throw RegimeError("confluence needs nu >= 1");
    if (!(std::abs(o.g_p) / std::sqrt(nu) < 0.5))
        throw RegimeError("g'/sqrt(nu) must stay below 1/2 (need nu > 4 g'^2)");
}

std::vector<double> certified_prefix(const SpectrumResult& s, int n_levels, const char* what) {
    if (s.converged_count < n_levels)
        throw NumericalFailure(std::string(what) + ": only " + std::to_string(s.converged_count) + " of " +
                               std::to_string(n_levels) + " levels certified; raise N");
    return {s.eigenvalues.data(), s.eigenvalues.data() + n_levels};
}

}  // namespace

std::vector<double> rescaled_disk_spectrum(const OneQrmParams& o, double nu, int n_levels, Index n, double tol) {
    require_admissible(o, nu);
    const auto s = converged_spectrum(inverse_scaling(o, nu), ParitySector::Full, n, tol);
    auto mu = certified_prefix(s, n_levels, "disk model");
    for (auto& v : mu) v = mu_prime(v, nu);
    return mu;
}

std::vector<double> one_qrm_reference(const OneQrmParams& o, int n_levels, Index n, double tol) {
    return certified_prefix(converged_spectrum(o, ParitySector::Full, n, tol), n_levels, "one-photon model");
}

double fit_order(const std::vector<double>& nu_values, const std::vector<double>& errors) {
    const auto count = static_cast<double>(nu_values.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t j = 0; j < nu_values.size(); ++j) {
        const double x = std::log(nu_values[j]);
        const double y = std::log(errors[j]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = count * sxx - sx * sx;
    if (nu_values.size() < 2 || denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return -(count * sxy - sx * sy) / denom;
}

ConfluenceTable confluence_study(const OneQrmParams& o, const std::vector<double>& nu_values,
                                 const ConfluenceOptions& opts) {
    if (nu_values.empty()) throw InvalidParams("confluence study needs at least one nu");
    if (opts.n_levels < 1) throw InvalidParams("n_levels must be positive");
    for (std::size_t j = 0; j < nu_values.size(); ++j) {
        require_admissible(o, nu_values[j]);
        if (j > 0 && !(nu_values[j] > nu_values[j - 1])) throw InvalidParams("nu values must be strictly ascending");
    }

    ConfluenceTable t;
    t.target = o;
    t.nu_values = nu_values;
    t.levels = opts.n_levels;
    const auto cols = static_cast<Index>(nu_values.size());
    t.mu_prime.resize(opts.n_levels, cols);

    const auto ref = one_qrm_reference(o, opts.n_levels, opts.truncation, opts.tol);
    t.reference = Eigen::Map<const Eigen::VectorXd>(ref.data(), opts.n_levels);

    parallel_for(nu_values.size(), opts.threads, [&](std::size_t j) {
        const auto mu = rescaled_disk_spectrum(o, nu_values[j], opts.n_levels, opts.truncation, opts.tol);
        for (int k = 0; k < opts.n_levels; ++k) t.mu_prime(k, static_cast<Index>(j)) = mu[static_cast<std::size_t>(k)];
    });

    t.errors = (t.mu_prime.colwise() - t.reference).cwiseAbs();
    t.fitted_order = Eigen::VectorXd::Constant(opts.n_levels, std::numeric_limits<double>::quiet_NaN());
    t.saturated.assign(static_cast<std::size_t>(opts.n_levels), false);
    for (int k = 0; k < opts.n_levels; ++k) {
        const bool any_zero = (t.errors.row(k).array() <= 0.0).any();
        if (t.errors(k, 0) < kSaturationFloor || any_zero) {
            t.saturated[static_cast<std::size_t>(k)] = true;
            continue;
        }
        std::vector<double> row(nu_values.size());
        for (Index j = 0; j < cols; ++j) row[static_cast<std::size_t>(j)] = t.errors(k, j);
        t.fitted_order(k) = fit_order(nu_values, row);
    }
    return t;
}

double confluent_equation_residual(const OneQrmParams& o, double nu, Index sample_count) {
    require_admissible(o, nu);
    const auto disk = build_disk(inverse_scaling(o, nu), sample_count);
    const auto one = build_1qrm(o, sample_count);
    const Eigen::MatrixXcd shifted = disk.matrix - nu * Eigen::MatrixXcd::Identity(disk.dim(), disk.dim());
    return max_abs_deviation(shifted / 2.0, one.matrix);
}

}  // namespace rabi
