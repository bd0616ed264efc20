#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rabi/model.hpp"

namespace rabi {

enum class BasisFamily { FockNumber, BergmanMonomial };

/// Which orthonormal basis a truncated matrix lives in.
///
/// FockNumber with parity Even keeps photon indices {0, 2, 4, ...}, Odd keeps
/// {1, 3, 5, ...} and Full keeps {0, 1, ..., N-1}; in every case photon_dim
/// functions are retained per spin component. BergmanMonomial is the basis
/// e_m = sqrt((nu)_m / m!) z^m, m = 0..N-1, and is always single-parity (Full).
struct BasisDescriptor {
    BasisFamily family = BasisFamily::FockNumber;
    ParitySector parity = ParitySector::Full;
    std::optional<double> nu_label;
    Eigen::Index photon_dim = 0;

    /// Photon (or Bergman) index held in retained slot `slot`.
    Eigen::Index photon_index(Eigen::Index slot) const;
    std::vector<Eigen::Index> photon_indices() const;
};

/// Galerkin truncation of one of the four Hamiltonians.
///
/// The matrix is 2N x 2N with photon-major, spin-inner ordering:
/// row = 2 * slot + spin. It is Hermitian by construction.
struct TruncatedHamiltonian {
    Eigen::MatrixXcd matrix;
    BasisDescriptor basis;
    ModelSpec model;
    bool is_real = true;
    // Collapse regime: the build is valid, its spectrum is not.
    bool unreliable = false;

    Eigen::Index dim() const { return matrix.rows(); }
};

TruncatedHamiltonian build_2qrm(const TwoQrmParams& q, Eigen::Index n, ParitySector sector = ParitySector::Full);
TruncatedHamiltonian build_ncho(const NchoParams& p, Eigen::Index n, ParitySector sector = ParitySector::Full);
TruncatedHamiltonian build_1qrm(const OneQrmParams& o, Eigen::Index n, ParitySector sector = ParitySector::Full);
TruncatedHamiltonian build_disk(const DiskParams& d, Eigen::Index m);

/// Dispatch on the model family. The disk model ignores `sector` unless it is not Full,
/// in which case ParityError is raised.
TruncatedHamiltonian build(const ModelSpec& spec, Eigen::Index n, ParitySector sector = ParitySector::Full);

/// Restrict a Full Fock-basis NCHO/2QRM build to its even or odd photon indices.
TruncatedHamiltonian parity_block(const TruncatedHamiltonian& h, ParitySector sector);

/// Text dump: one header line "dim basis family model-params", then `dim` rows of
/// `dim` whitespace-separated "re imag" pairs, row-major.
void write_matrix_dump(std::ostream& os, const TruncatedHamiltonian& h);
Eigen::MatrixXcd read_matrix_dump(std::istream& is);

}  // namespace rabi
