#include "rabi/hamiltonian.hpp"

#include <charconv>
#include <cmath>
#include <complex>
#include <istream>
#include <ostream>
#include <sstream>

#include "rabi/errors.hpp"
#include "rabi/matrix_utils.hpp"
#include "rabi/report.hpp"

namespace rabi {

using Eigen::Index;
using Block = Eigen::Matrix2cd;
using cd = std::complex<double>;

namespace {

const Block kIdentity = Block::Identity();
const Block kSigma1 = (Block() << 0, 1, 1, 0).finished();
const Block kSigma2 = (Block() << 0, cd(0, -1), cd(0, 1), 0).finished();
const Block kSigma3 = (Block() << 1, 0, 0, -1).finished();
const Block kJ = (Block() << 0, -1, 1, 0).finished();

// sqrt of an integer product, formed exactly before rounding.
double sqrt_product(Index a, Index b) { return std::sqrt(static_cast<double>(a * b)); }

void require_truncation(Index n) {
    if (n < 2) throw InvalidTruncation("truncation must retain at least 2 basis functions");
}

BasisDescriptor fock_basis(ParitySector sector, Index n) {
    return {BasisFamily::FockNumber, sector, std::nullopt, n};
}

// Local assembly over retained photon indices. `diag(n)` is the Hermitian spin block on
// photon n; `couple(n)` is the block at (row n + step, column n), mirrored to its adjoint.
template <typename DiagFn, typename CoupleFn>
Eigen::MatrixXcd assemble(const BasisDescriptor& basis, Index step, DiagFn diag, CoupleFn couple) {
    const Index slots = basis.photon_dim;
    const Index stride = basis.parity == ParitySector::Full ? 1 : 2;
    const Index slot_step = step / stride;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * slots, 2 * slots);
    for (Index i = 0; i < slots; ++i) {
        const Index n = basis.photon_index(i);
        const Block d = diag(n);
        h(2 * i, 2 * i) = d(0, 0).real();
        h(2 * i + 1, 2 * i + 1) = d(1, 1).real();
        set_hermitian_pair(h, 2 * i, 2 * i + 1, d(0, 1));

        const Index j = i + slot_step;
        if (j >= slots) continue;  // Galerkin compression: couplings leaving the set are dropped
        const Block c = couple(n);
        for (Index s = 0; s < 2; ++s)
            for (Index t = 0; t < 2; ++t)
                if (c(s, t) != cd(0)) set_hermitian_pair(h, 2 * j + s, 2 * i + t, c(s, t));
    }
    return h;
}

TruncatedHamiltonian finish(Eigen::MatrixXcd m, BasisDescriptor basis, ModelSpec model) {
    TruncatedHamiltonian h;
    h.is_real = all_entries_real(m);
    h.unreliable = collapse_regime(model);
    h.matrix = std::move(m);
    h.basis = std::move(basis);
    h.model = std::move(model);
    return h;
}

}  // namespace

Index BasisDescriptor::photon_index(Index slot) const {
    if (family == BasisFamily::BergmanMonomial) return slot;
    switch (parity) {
        case ParitySector::Even: return 2 * slot;
        case ParitySector::Odd: return 2 * slot + 1;
        case ParitySector::Full: break;
    }
    return slot;
}

std::vector<Index> BasisDescriptor::photon_indices() const {
    std::vector<Index> out(static_cast<std::size_t>(photon_dim));
    for (Index i = 0; i < photon_dim; ++i) out[static_cast<std::size_t>(i)] = photon_index(i);
    return out;
}

TruncatedHamiltonian build_2qrm(const TwoQrmParams& q, Index n, ParitySector sector) {
    require_truncation(n);
    validate(q);
    const auto basis = fock_basis(sector, n);
    const Block spin = q.delta * kSigma3 + q.epsilon * kSigma1;
    auto m = assemble(
        basis, 2, [&](Index k) -> Block { return (static_cast<double>(k) + 0.5) * kIdentity + spin; },
        // g (a^2 + a^dag^2): |k> -> sqrt((k+1)(k+2)) |k+2>
        [&](Index k) -> Block { return q.g * sqrt_product(k + 1, k + 2) * kSigma1; });
    return finish(std::move(m), basis, q);
}

TruncatedHamiltonian build_ncho(const NchoParams& p, Index n, ParitySector sector) {
    require_truncation(n);
    validate(p);
    const auto basis = fock_basis(sector, n);
    // 2 eta sqrt(ab - 1) i J == 2 eta sqrt(ab - 1) sigma_2
    const double shift = p.eta == 0.0 ? 0.0 : 2.0 * p.eta * std::sqrt(p.alpha * p.beta - 1.0);
    const Block weights = (Block() << p.alpha, 0, 0, p.beta).finished();
    auto m = assemble(
        basis, 2,
        [&](Index k) -> Block { return (static_cast<double>(k) + 0.5) * weights + shift * kSigma2; },
        // J (x) (1/2)(a^2 - a^dag^2): the raising part carries -(1/2) sqrt((k+1)(k+2))
        [&](Index k) -> Block { return -0.5 * sqrt_product(k + 1, k + 2) * kJ; });
    return finish(std::move(m), basis, p);
}

TruncatedHamiltonian build_1qrm(const OneQrmParams& o, Index n, ParitySector sector) {
    if (sector != ParitySector::Full) throw ParityError("the one-photon model does not conserve photon parity");
    require_truncation(n);
    validate(o);
    const auto basis = fock_basis(sector, n);
    const Block spin = o.delta_p * kSigma3 + o.epsilon_p * kSigma1;
    auto m = assemble(
        basis, 1, [&](Index k) -> Block { return static_cast<double>(k) * kIdentity + spin; },
        [&](Index k) -> Block { return o.g_p * std::sqrt(static_cast<double>(k + 1)) * kSigma1; });
    return finish(std::move(m), basis, o);
}

TruncatedHamiltonian build_disk(const DiskParams& d, Index m) {
    require_truncation(m);
    validate(d);
    const BasisDescriptor basis{BasisFamily::BergmanMonomial, ParitySector::Full, d.nu, m};
    const Block spin = d.delta * kSigma3 + d.epsilon * kSigma1;
    const double two_g = 2.0 * d.g;
    auto h = assemble(
        basis, 1, [&](Index k) -> Block { return (2.0 * static_cast<double>(k) + d.nu) * kIdentity + spin; },
        // d/dz lowers e_{k+1} by sqrt((k+1)(k+nu)); z^2 d/dz + nu z raises e_k by the same amount
        [&](Index k) -> Block {
            const double kk = static_cast<double>(k);
            return two_g * std::sqrt((kk + 1.0) * (kk + d.nu)) * kSigma1;
        });
    return finish(std::move(h), basis, d);
}

TruncatedHamiltonian build(const ModelSpec& spec, Index n, ParitySector sector) {
    if (const auto* p = std::get_if<NchoParams>(&spec)) return build_ncho(*p, n, sector);
    if (const auto* q = std::get_if<TwoQrmParams>(&spec)) return build_2qrm(*q, n, sector);
    if (const auto* o = std::get_if<OneQrmParams>(&spec)) return build_1qrm(*o, n, sector);
    if (sector != ParitySector::Full)
        throw ParityError("the disk model is already a single-parity picture; use sector full");
    return build_disk(std::get<DiskParams>(spec), n);
}

TruncatedHamiltonian parity_block(const TruncatedHamiltonian& h, ParitySector sector) {
    if (sector == ParitySector::Full) throw ParityError("parity_block needs the even or odd sector");
    if (!conserves_photon_parity(h.model)) throw ParityError("model does not conserve photon parity");
    if (h.basis.family != BasisFamily::FockNumber || h.basis.parity != ParitySector::Full)
        throw ParityError("parity_block expects a full Fock-basis build");

    const Index first = sector == ParitySector::Even ? 0 : 1;
    const Index kept = (h.basis.photon_dim - first + 1) / 2;
    Eigen::MatrixXcd m(2 * kept, 2 * kept);
    for (Index a = 0; a < kept; ++a)
        for (Index b = 0; b < kept; ++b)
            m.block<2, 2>(2 * a, 2 * b) = h.matrix.block<2, 2>(2 * (first + 2 * a), 2 * (first + 2 * b));

    TruncatedHamiltonian out;
    out.matrix = std::move(m);
    out.basis = fock_basis(sector, kept);
    out.model = h.model;
    out.is_real = all_entries_real(out.matrix);
    out.unreliable = h.unreliable;
    return out;
}

void write_matrix_dump(std::ostream& os, const TruncatedHamiltonian& h) {
    std::string basis = h.basis.family == BasisFamily::FockNumber ? "fock-" + to_string(h.basis.parity)
                                                                   : "bergman-nu=" + format_double(*h.basis.nu_label);
    os << h.dim() << ' ' << basis << ' ' << model_name(h.model);
    for (const auto& [name, value] : model_parameters(h.model)) os << ' ' << name << '=' << format_double(value);
    os << '\n';
    for (Index i = 0; i < h.dim(); ++i) {
        for (Index j = 0; j < h.dim(); ++j) {
            if (j > 0) os << ' ';
            os << format_double(h.matrix(i, j).real()) << ' ' << format_double(h.matrix(i, j).imag());
        }
        os << '\n';
    }
}

Eigen::MatrixXcd read_matrix_dump(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw InvalidParams("empty matrix dump");
    std::istringstream hs(header);
    Index dim = 0;
    if (!(hs >> dim) || dim < 0) throw InvalidParams("matrix dump header lacks a dimension");
    Eigen::MatrixXcd m(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) {
            double re = 0.0, im = 0.0;
            if (!(is >> re >> im)) throw InvalidParams("truncated matrix dump");
            m(i, j) = cd(re, im);
        }
    return m;
}

}  // namespace rabi
