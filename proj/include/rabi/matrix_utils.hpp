#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>

namespace rabi {

/// max_ij |A_ij - conj(A_ji)|. Zero for matrices assembled by mirrored assignment.
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& a) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            worst = std::max(worst, static_cast<double>(std::abs(a(i, j) - Eigen::numext::conj(a(j, i)))));
    return worst;
}

/// Entrywise max-norm of the difference; the two operands must share a shape.
template <typename A, typename B>
double max_abs_deviation(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    if (a.size() == 0) return 0.0;
    return static_cast<double>((a - b).cwiseAbs().maxCoeff());
}

/// Half-bandwidth: largest |i - j| with a nonzero entry.
template <typename Derived>
Eigen::Index bandwidth(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    Eigen::Index kd = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (a(i, j) != Scalar(0)) kd = std::max(kd, i > j ? i - j : j - i);
    return kd;
}

template <typename Derived>
bool all_entries_real(const Eigen::MatrixBase<Derived>& a) {
    if constexpr (Eigen::NumTraits<typename Derived::Scalar>::IsComplex) {
        return (a.imag().array() == 0).all();
    } else {
        return true;
    }
}

/// Assign a(i,j) = v and a(j,i) = conj(v) from a single computed value.
template <typename Derived, typename Scalar>
void set_hermitian_pair(Eigen::MatrixBase<Derived>& a, Eigen::Index i, Eigen::Index j, const Scalar& v) {
    a(i, j) = v;
    a(j, i) = Eigen::numext::conj(v);
}

}  // namespace rabi
