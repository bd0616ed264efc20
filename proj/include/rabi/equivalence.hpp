#pragma once

#include <Eigen/Core>
#include <vector>

#include "rabi/model.hpp"
#include "rabi/spectrum.hpp"

namespace rabi {

inline constexpr double kDefaultMatchTol = 1e-7;

enum class Direction { NchoTo2Qrm, TwoQrmToNcho };

std::string to_string(Direction d);

struct VerifyOptions {
    int n_levels = 8;
    Eigen::Index truncation = 600;
    double match_tol = kDefaultMatchTol;
    double certificate_tol = kDefaultCertificateTol;
    ParitySector sector = ParitySector::Even;
    int threads = 1;
};

/// A two-photon level with |mu| <= |Delta|: no NCHO counterpart exists.
struct ObstructedLevel {
    int level = 0;
    double mu = 0.0;
};

/// Outcome of checking the NCHO <-> two-photon eigenvalue correspondence level by level.
///
/// Only certified levels produce records. all_matched requires at least one record,
/// every record within tol, and a source model outside the collapse regime.
struct EquivalenceReport {
    std::vector<MappingRecord> records;
    std::vector<ObstructedLevel> obstructed;
    Direction direction = Direction::NchoTo2Qrm;
    ParitySector sector = ParitySector::Even;
    Eigen::Index truncation_N = 0;
    double tol = 0.0;
    double certificate_tol = 0.0;
    int requested_levels = 0;
    int uncertified_levels = 0;
    bool unreliable = false;
    bool all_matched = false;
};

/// Diagonalize NCHO, push each certified eigenvalue through ncho_to_2qrm and look
/// for mu in the spectrum of that level's own two-photon model (same sector).
EquivalenceReport verify_ncho_to_2qrm(const NchoParams& p, const VerifyOptions& opts);

/// Diagonalize the two-photon model, classify levels with |mu| <= |Delta| as obstructed,
/// and look for the recovered lambda in the spectrum of the recovered NCHO.
EquivalenceReport verify_2qrm_to_ncho(const TwoQrmParams& q, const VerifyOptions& opts);

struct SectorDeviation {
    double even = 0.0;
    double odd = 0.0;
};

/// Max-entry distance between the even (odd) two-photon block and the disk model at nu = 1/2 (3/2).
SectorDeviation verify_parity_disk_identity(const TwoQrmParams& q, Eigen::Index m);

struct DictionaryDeviation {
    double number_operator = 0.0;  // a^dag a + 1/2   vs  2z d/dz + nu
    double lowering = 0.0;         // (1/2) a^2       vs  d/dz
    double raising = 0.0;          // (1/2) a^dag^2   vs  z^2 d/dz + nu z
};

/// Compare the three single-mode operators on even (nu = 1/2) or odd (nu = 3/2) Fock
/// indices with their Bergman-basis counterparts under |2m + parity> <-> e_m.
DictionaryDeviation basis_correspondence_check(Eigen::Index m, double nu);

// Single-mode matrices used by the dictionary check, M x M, real.
Eigen::MatrixXd fock_sector_number(Eigen::Index m, int parity);
Eigen::MatrixXd fock_sector_half_lowering(Eigen::Index m, int parity);
Eigen::MatrixXd fock_sector_half_raising(Eigen::Index m, int parity);
Eigen::MatrixXd bergman_euler(Eigen::Index m, double nu);
Eigen::MatrixXd bergman_derivative(Eigen::Index m, double nu);
Eigen::MatrixXd bergman_raising(Eigen::Index m, double nu);

}  // namespace rabi
