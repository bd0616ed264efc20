#include "rabi/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "rabi/errors.hpp"
#include "rabi/matrix_utils.hpp"

namespace rabi {

using Eigen::Index;

namespace {

// Upper-triangle LAPACK band storage: ab[(kd + i - j) + j * (kd + 1)] = a(i, j).
template <typename Scalar, typename Derived>
std::vector<Scalar> to_band_storage(const Eigen::MatrixBase<Derived>& a, Index kd) {
    const Index n = a.rows();
    std::vector<Scalar> ab(static_cast<std::size_t>((kd + 1) * n), Scalar(0));
    for (Index j = 0; j < n; ++j)
        for (Index i = std::max<Index>(0, j - kd); i <= j; ++i) {
            if constexpr (std::is_same_v<Scalar, double>)
                ab[static_cast<std::size_t>(kd + i - j + j * (kd + 1))] = a(i, j).real();
            else
                ab[static_cast<std::size_t>(kd + i - j + j * (kd + 1))] = a(i, j);
        }
    return ab;
}

Eigen::VectorXd banded_eigenvalues(const TruncatedHamiltonian& h) {
    const Index n = h.dim();
    Eigen::VectorXd w(n);
    if (n == 0) return w;
    const Index kd = bandwidth(h.matrix);
    const auto ldab = static_cast<lapack_int>(kd + 1);
    lapack_int info = 0;
    if (h.is_real) {
        auto ab = to_band_storage<double>(h.matrix, kd);
        info = LAPACKE_dsbev(LAPACK_COL_MAJOR, 'N', 'U', static_cast<lapack_int>(n), static_cast<lapack_int>(kd),
                             ab.data(), ldab, w.data(), nullptr, 1);
    } else {
        auto ab = to_band_storage<std::complex<double>>(h.matrix, kd);
        info = LAPACKE_zhbev(LAPACK_COL_MAJOR, 'N', 'U', static_cast<lapack_int>(n), static_cast<lapack_int>(kd),
                             ab.data(), ldab, w.data(), nullptr, 1);
    }
    if (info != 0) throw NumericalFailure("banded Hermitian eigensolver failed, info = " + std::to_string(info));
    return w;
}

void require_finite(const TruncatedHamiltonian& h) {
    if (!h.matrix.allFinite()) throw NumericalFailure("matrix has non-finite entries");
}

}  // namespace

SpectrumResult eigenvalues(const TruncatedHamiltonian& h) {
    require_finite(h);
    SpectrumResult s;
    s.eigenvalues = banded_eigenvalues(h);
    s.truncation_N = h.basis.photon_dim;
    s.unreliable = h.unreliable;
    return s;
}

Eigenpairs eigenpairs(const TruncatedHamiltonian& h) {
    require_finite(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw NumericalFailure("dense self-adjoint eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

SpectrumResult converged_spectrum(const ModelSpec& spec, ParitySector sector, Index n, double tol) {
    if (n < 4) throw InvalidTruncation("certified spectra need N >= 4");
    if (!(tol > 0.0)) throw InvalidParams("certificate tolerance must be positive");
    const SpectrumResult coarse = eigenvalues(build(spec, n, sector));
    SpectrumResult fine = eigenvalues(build(spec, certificate_truncation(n), sector));
    fine.certificate_tol = tol;
    if (fine.unreliable) {
        fine.converged_count = 0;
        return fine;
    }
    Index k = 0;
    while (k < coarse.size() && std::abs(coarse.eigenvalues(k) - fine.eigenvalues(k)) <= tol) ++k;
    fine.converged_count = k;
    return fine;
}

std::optional<EigenvalueMatch> match_eigenvalue(const SpectrumResult& s, double target, double tol) {
    const Index pool = s.converged_count > 0 ? s.converged_count : s.size();
    std::optional<EigenvalueMatch> best;
    for (Index k = 0; k < pool; ++k) {
        const double r = std::abs(s.eigenvalues(k) - target);
        if (r <= tol && (!best || r < best->residual)) best = EigenvalueMatch{k, r};
    }
    return best;
}

SpectrumResult SpectrumCache::get(const ModelSpec& spec, ParitySector sector, Index n, double tol) {
    std::vector<double> params;
    for (const auto& entry : model_parameters(spec)) params.push_back(entry.second);
    Key key{spec.index(), std::move(params), n, static_cast<int>(sector), tol};
    {
        std::lock_guard lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) {
            ++hits_;
            return it->second;
        }
    }
    SpectrumResult s = converged_spectrum(spec, sector, n, tol);
    std::lock_guard lock(mutex_);
    entries_.emplace(std::move(key), s);
    return s;
}

std::size_t SpectrumCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::size_t SpectrumCache::hits() const {
    std::lock_guard lock(mutex_);
    return hits_;
}

}  // namespace rabi
