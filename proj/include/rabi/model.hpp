#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rabi {

/// Photon-parity sector. Even carries the Bergman label nu = 1/2, Odd nu = 3/2.
enum class ParitySector { Even, Odd, Full };

std::string to_string(ParitySector sector);
ParitySector parse_sector(const std::string& name);

/// Bergman weight attached to a parity sector (1/2 or 3/2). Full has none.
double sector_nu(ParitySector sector);

/// eta-shifted non-commutative harmonic oscillator.
struct NchoParams {
    double alpha = 1.0;
    double beta = 1.0;
    double eta = 0.0;

    friend bool operator==(const NchoParams&, const NchoParams&) = default;
};

/// Two-photon Rabi model with bias, I(a^dag a + 1/2) + g s1 (a^2 + a^dag^2) + Delta s3 + eps s1.
struct TwoQrmParams {
    double g = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;

    friend bool operator==(const TwoQrmParams&, const TwoQrmParams&) = default;
};

/// First-order operator on the weighted Bergman space H_nu(D) (x) C^2.
struct DiskParams {
    double nu = 0.5;
    double g = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;

    friend bool operator==(const DiskParams&, const DiskParams&) = default;
};

/// One-photon asymmetric Rabi model, I a^dag a + g' s1 (a + a^dag) + Delta' s3 + eps' s1.
struct OneQrmParams {
    double g_p = 0.0;
    double delta_p = 0.0;
    double epsilon_p = 0.0;

    friend bool operator==(const OneQrmParams&, const OneQrmParams&) = default;
};

using ModelSpec = std::variant<NchoParams, TwoQrmParams, DiskParams, OneQrmParams>;

// Throw InvalidParams on invariant violations.
void validate(const NchoParams& p);
void validate(const TwoQrmParams& q);
void validate(const DiskParams& d);
void validate(const OneQrmParams& o);
void validate(const ModelSpec& spec);

/// Short model tag used on the command line and in serialized output: ncho, 2qrm, disk, 1qrm.
std::string model_name(const ModelSpec& spec);

/// True where truncated spectra cannot be trusted: |g| >= 1/2 for the
/// two-photon and disk models, alpha*beta <= 1 for NCHO. Never for 1QRM.
bool collapse_regime(const ModelSpec& spec);

/// Whether the model commutes with photon parity (NCHO and 2QRM).
bool conserves_photon_parity(const ModelSpec& spec);

/// Read or replace one named real parameter. Names: alpha beta eta | g delta epsilon |
/// nu g delta epsilon | gp dp ep. Unknown names throw InvalidParams.
/// All (name, value) pairs of the model in a fixed order.
std::vector<std::pair<std::string, double>> model_parameters(const ModelSpec& spec);

double get_parameter(const ModelSpec& spec, const std::string& name);
ModelSpec with_parameter(ModelSpec spec, const std::string& name, double value);

struct TwoQrmImage {
    TwoQrmParams params;
    double mu = 0.0;
};

struct NchoImage {
    NchoParams params;
    double lambda = 0.0;
};

/// Map an NCHO eigenvalue problem at eigenvalue lambda onto the two-photon model:
///   g = 1/(2 sqrt(alpha beta)),  eps = -2 eta sqrt(alpha beta - 1)/sqrt(alpha beta),
///   mu = (lambda/2)(1/alpha + 1/beta),  Delta = -(lambda/2)(1/alpha - 1/beta).
/// Delta depends on lambda, so each level lands in its own two-photon model.
TwoQrmImage ncho_to_2qrm(const NchoParams& p, double lambda);

/// Inverse of ncho_to_2qrm. A positive (alpha, beta) exists only for |mu| > |Delta|;
/// otherwise ObstructionError. A nonzero eps with alpha*beta <= 1 has no real eta
/// and raises InvalidParams instead.
NchoImage two_qrm_to_ncho(const TwoQrmParams& q, double mu);

/// g' = sqrt(nu) g, Delta' = Delta/2, eps' = eps/2.
OneQrmParams confluence_scaling(const DiskParams& d);
DiskParams inverse_scaling(const OneQrmParams& o, double nu);

/// mu' = (mu - nu)/2 and its inverse.
double mu_prime(double mu, double nu);
double mu_from_prime(double mu_p, double nu);

/// One (lambda, alpha, beta, eta) <-> (mu, g, Delta, eps) instance with its match residual.
struct MappingRecord {
    int level = 0;
    double lambda = 0.0;
    double mu = 0.0;
    NchoParams ncho;
    TwoQrmParams qrm;
    double residual = 0.0;
    bool matched = false;
};

}  // namespace rabi
