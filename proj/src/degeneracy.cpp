#include "rabi/degeneracy.hpp"

#include <algorithm>
#include <cmath>

#include "rabi/errors.hpp"
#include "rabi/hamiltonian.hpp"
#include "rabi/parallel.hpp"

namespace rabi {

using Eigen::Index;

IntegerConditionDiagnostic integer_condition(double must_be_integer, double branch_a, double branch_b, double tol) {
    IntegerConditionDiagnostic d;
    d.raw_values = {must_be_integer, branch_a, branch_b};
    for (double v : d.raw_values) {
        const double r = std::nearbyint(v);
        d.nearest_integers.push_back(static_cast<long long>(r));
        d.deviations.push_back(std::abs(v - r));
    }
    auto branch_ok = [&](std::size_t i) { return d.deviations[i] <= tol && d.nearest_integers[i] >= 0; };
    d.satisfied = d.deviations[0] <= tol && (branch_ok(1) || branch_ok(2));
    return d;
}

IntegerConditionDiagnostic check_2qrm_condition(const TwoQrmParams& q, double mu, double nu, double tol_int) {
    if (!(std::abs(q.g) < 0.5)) throw RegimeError("two-photon degeneracy condition needs |g| < 1/2");
    const double s = std::sqrt(1.0 - 4.0 * q.g * q.g);
    return integer_condition(q.epsilon / s, (mu - q.epsilon) / (2.0 * s) - nu / 2.0,
                             (mu + q.epsilon) / (2.0 * s) - nu / 2.0, tol_int);
}

IntegerConditionDiagnostic check_2qrm_condition(const TwoQrmParams& q, double mu, ParitySector sector,
                                                double tol_int) {
    return check_2qrm_condition(q, mu, sector_nu(sector), tol_int);
}

IntegerConditionDiagnostic check_ncho_condition(const NchoParams& p, double lambda, ParitySector sector,
                                                double tol_int) {
    const double ab = p.alpha * p.beta;
    if (!(ab > 1.0)) throw InvalidParams("NCHO degeneracy condition needs alpha*beta > 1");
    const double nu = sector_nu(sector);
    const double x = 0.25 * lambda * (p.alpha + p.beta) / std::sqrt(ab * (ab - 1.0));
    return integer_condition(2.0 * p.eta, x + p.eta - nu / 2.0, x - p.eta - nu / 2.0, tol_int);
}

IntegerConditionDiagnostic check_1qrm_condition(const OneQrmParams& o, double mu_p, double tol_int) {
    const double base = mu_p + o.g_p * o.g_p;
    return integer_condition(2.0 * o.epsilon_p, base - o.epsilon_p, base + o.epsilon_p, tol_int);
}

IntegerConditionDiagnostic diagnose(const ModelSpec& spec, double eigenvalue, ParitySector sector, double tol_int) {
    if (const auto* o = std::get_if<OneQrmParams>(&spec)) return check_1qrm_condition(*o, eigenvalue, tol_int);
    if (const auto* q = std::get_if<TwoQrmParams>(&spec)) return check_2qrm_condition(*q, eigenvalue, sector, tol_int);
    if (const auto* p = std::get_if<NchoParams>(&spec)) return check_ncho_condition(*p, eigenvalue, sector, tol_int);
    const auto& d = std::get<DiskParams>(spec);
    return check_2qrm_condition({d.g, d.delta, d.epsilon}, eigenvalue, d.nu, tol_int);
}

namespace {

constexpr double kInvPhi = 0.6180339887498948482;

struct Candidate {
    int level = 0;
    int grid_index = 0;
    bool refine = true;
};

void validate_scan(const ModelSpec& model, const SweepSpec& sweep, const ScanOptions& opts) {
    if (sweep.points < 3) throw InvalidParams("sweep needs at least 3 grid points");
    if (!(sweep.hi > sweep.lo)) throw InvalidParams("sweep range must satisfy lo < hi");
    if (opts.n_levels < 2) throw InvalidParams("need at least two levels to form a gap");
    if (2 * opts.truncation < opts.n_levels) throw InvalidTruncation("truncation too small for n_levels");
    if (!std::holds_alternative<OneQrmParams>(model) && !std::holds_alternative<DiskParams>(model) &&
        opts.sector == ParitySector::Full)
        throw ParityError("degeneracy conditions for NCHO/2QRM are stated per parity sector; pick even or odd");
    for (double x : {sweep.at(0), sweep.hi}) {
        const auto spec = with_parameter(model, sweep.parameter, x);
        validate(spec);
        if (collapse_regime(spec)) throw RegimeError("sweep range leaves the discrete regime");
    }
}

}  // namespace

ScanResult scan_crossings(const ModelSpec& model, const SweepSpec& sweep, const ScanOptions& opts) {
    validate_scan(model, sweep, opts);
    const int levels = opts.n_levels;
    auto spec_at = [&](double x) { return with_parameter(model, sweep.parameter, x); };
    auto lowest = [&](double x) {
        return eigenvalues(build(spec_at(x), opts.truncation, opts.sector)).eigenvalues.head(levels).eval();
    };

    ScanResult result;
    result.grid.resize(static_cast<std::size_t>(sweep.points));
    result.levels.resize(sweep.points, levels);
    parallel_for(result.grid.size(), opts.threads, [&](std::size_t i) {
        const double x = sweep.at(static_cast<int>(i));
        result.grid[i] = x;
        result.levels.row(static_cast<Index>(i)) = lowest(x).transpose();
    });

    auto grid_gap = [&](int i, int k) { return result.levels(i, k + 1) - result.levels(i, k); };
    std::vector<Candidate> candidates;
    for (int k = 0; k + 1 < levels; ++k)
        for (int i = 0; i < sweep.points; ++i) {
            const double g = grid_gap(i, k);
            if (g <= opts.gap_threshold) {
                candidates.push_back({k, i, false});
            } else if (i > 0 && i + 1 < sweep.points && g <= grid_gap(i - 1, k) && g < grid_gap(i + 1, k)) {
                candidates.push_back({k, i, true});
            }
        }

    enum class Kind { Crossing, Unresolved, Avoided };
    std::vector<std::pair<Kind, CrossingRecord>> found(candidates.size());
    parallel_for(candidates.size(), opts.threads, [&](std::size_t c) {
        const auto& cand = candidates[c];
        const int k = cand.level;
        auto gap_at = [&](double x) {
            const auto e = lowest(x);
            return e(k + 1) - e(k);
        };
        double best_x = result.grid[static_cast<std::size_t>(cand.grid_index)];
        double best_gap = grid_gap(cand.grid_index, k);
        if (cand.refine) {
            double a = result.grid[static_cast<std::size_t>(cand.grid_index - 1)];
            double b = result.grid[static_cast<std::size_t>(cand.grid_index + 1)];
            double xc = b - kInvPhi * (b - a), xd = a + kInvPhi * (b - a);
            double fc = gap_at(xc), fd = gap_at(xd);
            auto consider = [&](double x, double f) {
                if (f < best_gap) {
                    best_gap = f;
                    best_x = x;
                }
            };
            consider(xc, fc);
            consider(xd, fd);
            while (b - a > opts.refine_width) {
                if (fc < fd) {
                    b = xd;
                    xd = xc;
                    fd = fc;
                    xc = b - kInvPhi * (b - a);
                    fc = gap_at(xc);
                    consider(xc, fc);
                } else {
                    a = xc;
                    xc = xd;
                    fc = fd;
                    xd = a + kInvPhi * (b - a);
                    fd = gap_at(xd);
                    consider(xd, fd);
                }
            }
        }

        const auto spec = spec_at(best_x);
        const auto certified = converged_spectrum(spec, opts.sector, opts.truncation, opts.certificate_tol);
        CrossingRecord rec;
        rec.swept_parameter_name = sweep.parameter;
        rec.swept_value = best_x;
        rec.lower_level = k;
        rec.min_gap = best_gap;
        rec.grid_gap = grid_gap(cand.grid_index, k);
        rec.certified = k + 1 < certified.converged_count;
        rec.eigen_value = rec.certified ? 0.5 * (certified.eigenvalues(k) + certified.eigenvalues(k + 1))
                                        : 0.5 * (result.levels(cand.grid_index, k) + result.levels(cand.grid_index, k + 1));
        rec.diagnostics = diagnose(spec, rec.eigen_value, opts.sector, opts.tol_int);

        Kind kind = Kind::Avoided;
        if (best_gap <= opts.gap_threshold && rec.certified)
            kind = Kind::Crossing;
        else if (best_gap <= opts.unresolved_ceiling)
            kind = Kind::Unresolved;
        found[c] = {kind, std::move(rec)};
    });

    for (auto& [kind, rec] : found) {
        switch (kind) {
            case Kind::Crossing: result.crossings.push_back(std::move(rec)); break;
            case Kind::Unresolved: result.unresolved.push_back(std::move(rec)); break;
            case Kind::Avoided: result.avoided.push_back(std::move(rec)); break;
        }
    }
    auto order = [](const CrossingRecord& a, const CrossingRecord& b) {
        return std::tie(a.swept_value, a.lower_level) < std::tie(b.swept_value, b.lower_level);
    };
    std::sort(result.crossings.begin(), result.crossings.end(), order);
    std::sort(result.unresolved.begin(), result.unresolved.end(), order);
    std::sort(result.avoided.begin(), result.avoided.end(), order);
    return result;
}

bool necessity_holds(const ScanResult& result) {
    return std::all_of(result.crossings.begin(), result.crossings.end(),
                       [](const CrossingRecord& r) { return r.diagnostics.satisfied; });
}

}  // namespace rabi
