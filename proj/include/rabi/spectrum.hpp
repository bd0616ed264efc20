#pragma once

#include <Eigen/Core>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "rabi/hamiltonian.hpp"

namespace rabi {

inline constexpr double kDefaultCertificateTol = 1e-9;

/// Ascending spectrum of one truncation plus its convergence certificate.
///
/// converged_count is the largest k such that the lowest k eigenvalues agree
/// with a larger truncation to within certificate_tol. It is 0 for an
/// uncertified solve and always 0 when the model sits in the collapse regime.
struct SpectrumResult {
    Eigen::VectorXd eigenvalues;
    Eigen::Index truncation_N = 0;
    Eigen::Index converged_count = 0;
    double certificate_tol = 0.0;
    bool unreliable = false;

    Eigen::Index size() const { return eigenvalues.size(); }
};

/// Full ascending spectrum of a truncated Hamiltonian (banded Hermitian solver).
SpectrumResult eigenvalues(const TruncatedHamiltonian& h);

struct Eigenpairs {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;  // column k belongs to values(k)
};

/// Eigenvalues and eigenvectors through the dense self-adjoint solver.
Eigenpairs eigenpairs(const TruncatedHamiltonian& h);

/// Ceil(3N/2), the comparison truncation used by the certificate.
inline Eigen::Index certificate_truncation(Eigen::Index n) { return (3 * n + 1) / 2; }

/// Spectrum at ceil(3N/2) certified against the spectrum at N.
SpectrumResult converged_spectrum(const ModelSpec& spec, ParitySector sector, Eigen::Index n,
                                  double tol = kDefaultCertificateTol);

struct EigenvalueMatch {
    Eigen::Index index = 0;
    double residual = 0.0;
};

/// Nearest eigenvalue within tol, searched in the certified prefix when one exists.
/// Ties go to the lower index.
std::optional<EigenvalueMatch> match_eigenvalue(const SpectrumResult& s, double target, double tol);

/// Thread-safe memo of converged spectra keyed on (model, N, sector, tol).
class SpectrumCache {
public:
    SpectrumResult get(const ModelSpec& spec, ParitySector sector, Eigen::Index n, double tol);
    std::size_t size() const;
    std::size_t hits() const;

private:
    using Key = std::tuple<std::size_t, std::vector<double>, Eigen::Index, int, double>;
    mutable std::mutex mutex_;
    std::map<Key, SpectrumResult> entries_;
    std::size_t hits_ = 0;
};

}  // namespace rabi
