#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "rabi/model.hpp"
#include "rabi/spectrum.hpp"

namespace rabi {

inline constexpr double kDefaultGapThreshold = 1e-8;
inline constexpr double kDefaultIntegerTol = 1e-5;
inline constexpr double kUnresolvedGapCeiling = 1e-6;

/// Necessary conditions for a 2-dimensional eigenspace, evaluated numerically.
///
/// raw_values holds three quantities: one that must be an integer, then the
/// two sign branches that must be nonnegative integers. satisfied is true iff the
/// first is within tol of an integer and at least one branch is within tol of an
/// integer >= 0.
struct IntegerConditionDiagnostic {
    std::vector<double> raw_values;
    std::vector<long long> nearest_integers;
    std::vector<double> deviations;
    bool satisfied = false;
};

IntegerConditionDiagnostic integer_condition(double must_be_integer, double branch_a, double branch_b, double tol);

/// eps/sqrt(1-4g^2) in Z and (mu -+ eps)/(2 sqrt(1-4g^2)) - nu/2 in Z_{>=0}, branches ordered (-, +).
IntegerConditionDiagnostic check_2qrm_condition(const TwoQrmParams& q, double mu, double nu,
                                                double tol_int = kDefaultIntegerTol);
IntegerConditionDiagnostic check_2qrm_condition(const TwoQrmParams& q, double mu, ParitySector sector,
                                                double tol_int = kDefaultIntegerTol);

/// 2 eta in Z and (lambda/4)(alpha+beta)/sqrt(ab(ab-1)) +- eta - nu/2 in Z_{>=0}, branches ordered (+, -).
/// Under the NCHO -> two-photon map the first value is minus the two-photon one and the
/// branches line up index by index.
IntegerConditionDiagnostic check_ncho_condition(const NchoParams& p, double lambda, ParitySector sector,
                                                double tol_int = kDefaultIntegerTol);

/// 2 eps' in Z and mu' + g'^2 -+ eps' in Z_{>=0}, branches ordered (-, +).
IntegerConditionDiagnostic check_1qrm_condition(const OneQrmParams& o, double mu_p,
                                                double tol_int = kDefaultIntegerTol);

/// The condition appropriate to the model: disk uses its own nu, NCHO/2QRM the sector's.
IntegerConditionDiagnostic diagnose(const ModelSpec& spec, double eigenvalue, ParitySector sector,
                                    double tol_int = kDefaultIntegerTol);

/// Grid over the half-open interval (lo, hi]: lo + (hi - lo)(i + 1)/points.
struct SweepSpec {
    std::string parameter;
    double lo = 0.0;
    double hi = 1.0;
    int points = 100;

    double at(int i) const { return lo + (hi - lo) * static_cast<double>(i + 1) / static_cast<double>(points); }
};

struct ScanOptions {
    ParitySector sector = ParitySector::Full;
    int n_levels = 6;
    Eigen::Index truncation = 600;
    double gap_threshold = kDefaultGapThreshold;
    double tol_int = kDefaultIntegerTol;
    double unresolved_ceiling = kUnresolvedGapCeiling;
    double refine_width = 1e-10;
    double certificate_tol = kDefaultCertificateTol;
    int threads = 1;
};

struct CrossingRecord {
    std::string swept_parameter_name;
    double swept_value = 0.0;
    double eigen_value = 0.0;  // mean of the two levels
    double min_gap = 0.0;
    double grid_gap = 0.0;     // gap at the grid point that seeded the refinement
    int lower_level = 0;
    bool certified = false;
    IntegerConditionDiagnostic diagnostics;
};

/// crossings: certified with min_gap <= gap_threshold. unresolved: refined gap in
/// (gap_threshold, unresolved_ceiling], or a tiny gap on uncertified levels. avoided:
/// every other refined local minimum.
struct ScanResult {
    std::vector<CrossingRecord> crossings;
    std::vector<CrossingRecord> unresolved;
    std::vector<CrossingRecord> avoided;
    std::vector<double> grid;
    Eigen::MatrixXd levels;  // grid points x n_levels, uncertified, at truncation N
};

/// Sweep one parameter of `model`, track adjacent gaps among the lowest n_levels levels,
/// refine every interior local gap minimum by golden section, and attach the integer
/// diagnostic at each detected degeneracy.
ScanResult scan_crossings(const ModelSpec& model, const SweepSpec& sweep, const ScanOptions& opts);

/// True iff every detected crossing satisfies its diagnostic (the necessity test).
bool necessity_holds(const ScanResult& result);

}  // namespace rabi
