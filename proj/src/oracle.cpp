#include "afl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "afl/errors.hpp"

namespace afl::oracle {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr cplx kI{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t partner_modes_of(const channels::ChannelModel& model) {
    return std::visit(overloaded{
                          [](const channels::SpontaneousEmission& m) -> std::size_t {
                              if (!m.mode_grid) throw ConfigError("oracle SE model needs an explicit mode grid");
                              return m.mode_grid->size();
                          },
                          [](const channels::JaynesCummings&) -> std::size_t { return 1; },
                          [](const channels::XYChain& m) -> std::size_t { return static_cast<std::size_t>(m.N); },
                      },
                      model);
}

}  // namespace

SingleExcitationBasis::SingleExcitationBasis(std::size_t n_partner_modes) : n_(n_partner_modes) {
    if (n_ == 0) throw InvalidInputError("partner needs at least one excitation mode");
}

std::vector<std::string> SingleExcitationBasis::labels() const {
    std::vector<std::string> out;
    out.reserve(n_ + 1);
    out.emplace_back("(e,vac)");
    for (std::size_t k = 1; k <= n_; ++k) out.push_back("(g,1_" + std::to_string(k) + ")");
    return out;
}

DenseHermitian::DenseHermitian(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw InvalidInputError("Hamiltonian must be a nonempty square matrix");
    }
    if (!entries_.allFinite()) throw InvalidInputError("Hamiltonian has non-finite entries");
    const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (asym >= 1e-12) throw InvalidInputError("Hamiltonian is not Hermitian");
}

DenseHermitian build_hamiltonian(const channels::ChannelModel& model) {
    channels::validate(model);
    return std::visit(
        overloaded{
            [](const channels::SpontaneousEmission& m) {
                if (!m.mode_grid) throw ConfigError("oracle SE model needs an explicit mode grid");
                const auto& grid = *m.mode_grid;
                const auto d = static_cast<Eigen::Index>(grid.size()) + 1;
                Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
                for (Eigen::Index k = 1; k < d; ++k) {
                    const auto mode = static_cast<std::size_t>(k - 1);
                    h(k, k) = grid.omegas[mode] - m.omega_A;
                    h(0, k) = grid.gs[mode];
                    h(k, 0) = grid.gs[mode];
                }
                return DenseHermitian(std::move(h));
            },
            [](const channels::JaynesCummings& m) {
                Eigen::MatrixXcd h(2, 2);
                h << 0.0, m.g, m.g, 0.0;
                return DenseHermitian(std::move(h));
            },
            [](const channels::XYChain& m) {
                const auto d = static_cast<Eigen::Index>(m.N) + 1;
                Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
                for (Eigen::Index j = 0; j + 1 < d; ++j) {
                    h(j, j + 1) = m.J;
                    h(j + 1, j) = m.J;
                }
                return DenseHermitian(std::move(h));
            },
        },
        model);
}

std::string frame_convention(const channels::ChannelModel& model) {
    switch (channels::kind_of(model)) {
        case channels::ModelKind::SpontaneousEmission:
            return "rotating frame at omega_A; mode energies omega_k - omega_A";
        case channels::ModelKind::JaynesCummings:
            return "rotating frame at omega_A = omega_a; purely off-diagonal 2x2 block";
        case channels::ModelKind::XYChain:
            return "lab frame; hopping matrix with zero diagonal";
    }
    return "";
}

Propagator::Propagator(const DenseHermitian& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries());
    if (solver.info() != Eigen::Success) throw InvalidInputError("Hamiltonian eigensolver did not converge");
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
}

Eigen::VectorXcd Propagator::evolve(const Eigen::VectorXcd& psi0, double t) const {
    if (psi0.size() != energies_.size()) throw InvalidInputError("state dimension does not match Hamiltonian");
    if (std::abs(psi0.norm() - 1.0) > 1e-12) throw NormalizationError("initial state is not normalized");
    if (!std::isfinite(t)) throw InvalidInputError("time must be finite");
    Eigen::VectorXcd coeffs = vectors_.adjoint() * psi0;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) *= std::exp(-kI * energies_(k) * t);
    return vectors_ * coeffs;
}

Eigen::VectorXcd evolve(const DenseHermitian& h, const Eigen::VectorXcd& psi0, double t) {
    return Propagator(h).evolve(psi0, t);
}

Eigen::VectorXcd assemble_tripartite(PreparationAngle theta, const Eigen::VectorXcd& psi_Aa) {
    if (psi_Aa.size() < 2) throw InvalidInputError("A-a sector vector needs at least 2 entries");
    if (std::abs(psi_Aa.norm() - 1.0) > 1e-10) throw NormalizationError("A-a sector vector is not normalized");
    const SingleExcitationBasis basis(static_cast<std::size_t>(psi_Aa.size()) - 1);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dim()));
    const double c = theta.cos_theta();
    // sector 0 is (e,vac); sector k is (g,1_k)
    psi(static_cast<Eigen::Index>(basis.index(0, 0, 0))) = c * psi_Aa(0);
    for (std::size_t k = 1; k < basis.sector_dim(); ++k) {
        psi(static_cast<Eigen::Index>(basis.index(0, 1, k))) = c * psi_Aa(static_cast<Eigen::Index>(k));
    }
    psi(static_cast<Eigen::Index>(basis.index(1, 1, 0))) += theta.sin_theta();
    return psi;
}

CutAnalysis analyze_cut(const Eigen::VectorXcd& psi, BipartitionCut cut, const SingleExcitationBasis& basis) {
    if (static_cast<std::size_t>(psi.size()) != basis.dim()) {
        throw InvalidInputError("state dimension does not match basis");
    }
    const std::size_t dp = basis.partner_dim();

    // Reshape: rows = chosen side, cols = remainder.
    std::size_t rows = 2;
    if (cut == BipartitionCut::PartnerVsRest) rows = dp;
    const std::size_t cols = basis.dim() / rows;
    Eigen::MatrixXcd c(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t m = 0; m < 2; ++m) {
        for (std::size_t q = 0; q < 2; ++q) {
            for (std::size_t n = 0; n < dp; ++n) {
                std::size_t r = 0, col = 0;
                switch (cut) {
                    case BipartitionCut::MoonVsRest: r = m; col = q * dp + n; break;
                    case BipartitionCut::QubitVsRest: r = q; col = m * dp + n; break;
                    case BipartitionCut::PartnerVsRest: r = n; col = m * 2 + q; break;
                }
                c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) =
                    psi(static_cast<Eigen::Index>(basis.index(m, q, n)));
            }
        }
    }

    const Eigen::MatrixXcd gram = rows <= cols ? Eigen::MatrixXcd(c * c.adjoint())
                                               : Eigen::MatrixXcd(c.adjoint() * c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw InvalidInputError("Gram eigensolver did not converge");

    CutAnalysis out;
    const auto& ev = solver.eigenvalues();
    out.gram_eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(out.gram_eigenvalues.begin(), out.gram_eigenvalues.end(), std::greater<>{});
    out.K = schmidt_weight(SchmidtSpectrum::from_eigenvalues(out.gram_eigenvalues));

    // tr(rho^2) == ||rho||_F^2 needs no eigensolver.
    const double direct = 1.0 / gram.squaredNorm();
    if (std::abs(direct - out.K) > 1e-9 * out.K) {
        throw InvalidInputError("oracle K disagrees with 1/tr(rho^2)");
    }
    return out;
}

double numerical_K(const Eigen::VectorXcd& psi, BipartitionCut cut, const SingleExcitationBasis& basis) {
    return analyze_cut(psi, cut, basis).K;
}

channels::ModeGrid flat_mode_grid(int n_modes, double bandwidth, double gamma_A, double omega_A) {
    if (!(gamma_A > 0.0)) throw ConfigError("gamma_A must be > 0");
    if (n_modes < 50) throw ConfigError("flat mode grid needs at least 50 modes");
    if (!(bandwidth >= 20.0 * gamma_A)) throw ConfigError("flat mode grid bandwidth must be >= 20 gamma_A");
    const double spacing = bandwidth / n_modes;
    const double coupling = std::sqrt(gamma_A * spacing / (2.0 * kPi));
    channels::ModeGrid grid;
    grid.omegas.resize(static_cast<std::size_t>(n_modes));
    grid.gs.assign(static_cast<std::size_t>(n_modes), coupling);
    for (int k = 0; k < n_modes; ++k) {
        grid.omegas[static_cast<std::size_t>(k)] = omega_A - 0.5 * bandwidth + spacing * (k + 0.5);
    }
    return grid;
}

double recurrence_time(const channels::ModeGrid& grid) {
    if (grid.size() < 2) throw InvalidInputError("recurrence time needs at least two modes");
    return 2.0 * kPi / (grid.omegas[1] - grid.omegas[0]);
}

double se_validity_limit(const channels::ModeGrid& grid, double gamma_A) {
    return std::min(5.0 / gamma_A, 0.5 * recurrence_time(grid));
}

OracleEngine::OracleEngine(const channels::ChannelModel& model)
    : basis_(partner_modes_of(model)), propagator_(build_hamiltonian(model)) {}

Eigen::VectorXcd OracleEngine::evolve_sector(double t) const {
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_.sector_dim()));
    psi0(0) = 1.0;
    return propagator_.evolve(psi0, t);
}

Eigen::VectorXcd OracleEngine::state(PreparationAngle theta, double t) const {
    return assemble_tripartite(theta, evolve_sector(t));
}

OraclePoint OracleEngine::evaluate(PreparationAngle theta, double t) const {
    const Eigen::VectorXcd sector = evolve_sector(t);
    const Eigen::VectorXcd psi = assemble_tripartite(theta, sector);

    OraclePoint out;
    out.time = t;
    out.p = std::norm(sector(0));
    out.norm_drift = std::abs(psi.norm() - 1.0);
    const auto moon = analyze_cut(psi, BipartitionCut::MoonVsRest, basis_);
    const auto qubit = analyze_cut(psi, BipartitionCut::QubitVsRest, basis_);
    const auto partner = analyze_cut(psi, BipartitionCut::PartnerVsRest, basis_);
    out.K_M = moon.K;
    out.K_A = qubit.K;
    out.K_a = partner.K;
    out.max_third_eigenvalue =
        std::max({moon.third_eigenvalue(), qubit.third_eigenvalue(), partner.third_eigenvalue()});
    return out;
}

}  // namespace afl::oracle
