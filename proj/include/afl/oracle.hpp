// oracle.hpp: brute-force verifier for the closed-form Schmidt weights.
//
// Builds the A-a Hamiltonian of each model as an explicit dense matrix,
// evolves the full Moon x qubit x partner vector by exact eigendecomposition,
// and reads K off the reshaped state. Nothing in here calls the amplitude
// formulas of afl::channels.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "afl/channels.hpp"
#include "afl/schmidt.hpp"

namespace afl::oracle {

// Canonical ordering of the tripartite vector. The A-a sector is
// {(e,vac), (g,1_1), ..., (g,1_N)}; the full vector lives on
// Moon{m1,m2} x qubit{e,g} x partner{vac,1_1..1_N} with
// index = (moon * 2 + qubit) * (N + 1) + partner.
class SingleExcitationBasis {
public:
    explicit SingleExcitationBasis(std::size_t n_partner_modes);

    std::size_t partner_modes() const { return n_; }
    std::size_t partner_dim() const { return n_ + 1; }
    std::size_t sector_dim() const { return n_ + 1; }
    std::size_t dim() const { return 4 * (n_ + 1); }

    // moon: 0 = m1, 1 = m2; qubit: 0 = e, 1 = g; partner: 0 = vacuum, k = 1_k
    std::size_t index(std::size_t moon, std::size_t qubit, std::size_t partner) const {
        return (moon * 2 + qubit) * (n_ + 1) + partner;
    }

    std::vector<std::string> labels() const;
    std::vector<std::string> moon_labels() const { return {"m1", "m2"}; }

private:
    std::size_t n_;
};

class DenseHermitian {
public:
    // Throws InvalidInputError unless square and Hermitian to 1e-12.
    explicit DenseHermitian(Eigen::MatrixXcd entries);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }

private:
    Eigen::MatrixXcd entries_;
};

// Single-excitation A-a block in the rotating frame at omega_A (diagonal
// shifted by omega_A). Moon Hamiltonian is zero. SE needs an explicit grid.
DenseHermitian build_hamiltonian(const channels::ChannelModel& model);

// Frame description written to run metadata.
std::string frame_convention(const channels::ChannelModel& model);

// Cached eigendecomposition of one Hamiltonian. Immutable; concurrent evolve
// calls are safe.
class Propagator {
public:
    explicit Propagator(const DenseHermitian& h);

    std::size_t dim() const { return static_cast<std::size_t>(energies_.size()); }
    const Eigen::VectorXd& energies() const { return energies_; }
    const Eigen::MatrixXcd& eigenvectors() const { return vectors_; }

    // exp(-i H t) psi0; NormalizationError unless ||psi0|| == 1 within 1e-12.
    Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi0, double t) const;

private:
    Eigen::VectorXd energies_;
    Eigen::MatrixXcd vectors_;
};

Eigen::VectorXcd evolve(const DenseHermitian& h, const Eigen::VectorXcd& psi0, double t);

// cos(theta) psi_Aa (x) |m1> + sin(theta) |g,vac> (x) |m2>, psi_Aa given on the A-a sector.
Eigen::VectorXcd assemble_tripartite(PreparationAngle theta, const Eigen::VectorXcd& psi_Aa);

struct CutAnalysis {
    double K = 1.0;
    std::vector<double> gram_eigenvalues;  // descending, on the smaller side
    double third_eigenvalue() const { return gram_eigenvalues.size() > 2 ? gram_eigenvalues[2] : 0.0; }
};

CutAnalysis analyze_cut(const Eigen::VectorXcd& psi, BipartitionCut cut, const SingleExcitationBasis& basis);

double numerical_K(const Eigen::VectorXcd& psi, BipartitionCut cut, const SingleExcitationBasis& basis);

// Uniform grid on [omega_A - bandwidth/2, omega_A + bandwidth/2] (cell
// midpoints, spacing bandwidth/n), coupling sqrt(gamma_A * spacing / 2 pi).
// ConfigError unless n_modes >= 50 and bandwidth >= 20 gamma_A.
channels::ModeGrid flat_mode_grid(int n_modes, double bandwidth, double gamma_A, double omega_A);

// 2 pi / spacing for a uniform grid.
double recurrence_time(const channels::ModeGrid& grid);

// [0, min(5/gamma_A, recurrence/2)]: where a flat grid tracks exponential decay.
double se_validity_limit(const channels::ModeGrid& grid, double gamma_A);

struct OraclePoint {
    double time = 0.0;
    double p = 1.0;  // |c_e|^2 read off the evolved vector
    double K_A = 1.0;
    double K_a = 1.0;
    double K_M = 1.0;
    double norm_drift = 0.0;
    double max_third_eigenvalue = 0.0;  // over the three cuts
};

// One model's Hamiltonian, diagonalized once, evaluated at any (theta, t).
class OracleEngine {
public:
    explicit OracleEngine(const channels::ChannelModel& model);

    const SingleExcitationBasis& basis() const { return basis_; }
    const Propagator& propagator() const { return propagator_; }

    Eigen::VectorXcd evolve_sector(double t) const;  // psi_Aa(t) from |e,vac>
    Eigen::VectorXcd state(PreparationAngle theta, double t) const;
    OraclePoint evaluate(PreparationAngle theta, double t) const;

private:
    SingleExcitationBasis basis_;
    Propagator propagator_;
};

}  // namespace afl::oracle
