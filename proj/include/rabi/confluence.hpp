#pragma once

#include <Eigen/Core>
#include <vector>

#include "rabi/model.hpp"
#include "rabi/spectrum.hpp"

namespace rabi {

inline constexpr double kSaturationFloor = 1e-11;

/// Spectrum of the disk model at weight nu, rescaled onto the one-photon axis.
///
/// Builds disk(nu, g'/sqrt(nu), 2 Delta', 2 eps') at truncation N, certifies the lowest
/// n_levels eigenvalues mu_k and returns mu'_k = (mu_k - nu)/2. Requires nu >= 1 and
/// g'/sqrt(nu) < 1/2 (RegimeError otherwise); NumericalFailure if fewer than n_levels
/// levels certify.
std::vector<double> rescaled_disk_spectrum(const OneQrmParams& o, double nu, int n_levels, Eigen::Index n,
                                           double tol = kDefaultCertificateTol);

/// Lowest one-photon levels, certified, used as the nu -> infinity reference.
std::vector<double> one_qrm_reference(const OneQrmParams& o, int n_levels, Eigen::Index n,
                                      double tol = kDefaultCertificateTol);

struct ConfluenceTable {
    OneQrmParams target;
    std::vector<double> nu_values;
    int levels = 0;
    Eigen::MatrixXd mu_prime;      // levels x nu_values
    Eigen::VectorXd reference;     // levels
    Eigen::MatrixXd errors;        // |mu_prime - reference|
    Eigen::VectorXd fitted_order;  // p in error ~ nu^{-p}; NaN where saturated
    std::vector<bool> saturated;
};

struct ConfluenceOptions {
    int n_levels = 5;
    Eigen::Index truncation = 200;
    double tol = kDefaultCertificateTol;
    int threads = 1;
};

/// Fill a ConfluenceTable over ascending nu values. Levels whose error at the smallest nu
/// is below 1e-11 are saturated and excluded from the log-log least-squares fit.
ConfluenceTable confluence_study(const OneQrmParams& o, const std::vector<double>& nu_values,
                                 const ConfluenceOptions& opts = {});

/// Least-squares slope of log(error) against log(nu), negated.
double fit_order(const std::vector<double>& nu_values, const std::vector<double>& errors);

/// Leading-block max deviation between the rescaled disk matrix (H_nu - nu)/2 at
/// g = g'/sqrt(nu), Delta = 2 Delta', eps = 2 eps' and the one-photon matrix, on a block of
/// `sample_count` basis functions. Off-diagonal entries differ by
/// g' sqrt(m+1) (sqrt(1 + m/nu) - 1).
double confluent_equation_residual(const OneQrmParams& o, double nu, Eigen::Index sample_count);

}  // namespace rabi
