// channels.hpp: closed-form amplitude generators for the three interaction
// models (spontaneous emission, Jaynes-Cummings, XY chain).
//
// Every model starts from c_e = 1 and moves amplitude into the partner's
// one-excitation states. Time is in model units: 1/gamma_A, 1/g, 1/J.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "afl/schmidt.hpp"

namespace afl::channels {

// Discretized reservoir: mode frequencies and real, nonnegative couplings.
struct ModeGrid {
    std::vector<double> omegas;
    std::vector<double> gs;

    std::size_t size() const { return omegas.size(); }
    void validate() const;
};

struct SpontaneousEmission {
    double gamma_A = 1.0;
    double omega_A = 0.0;
    // Explicit reservoir modes; without one the reservoir is carried as a
    // single collective mode holding all of the emitted population.
    std::optional<ModeGrid> mode_grid;
};

// Resonant only: omega_a == omega_A.
struct JaynesCummings {
    double g = 1.0;
    double omega_A = 0.0;
};

// Qubit coupled to the first of N chain sites, J_A == J.
struct XYChain {
    int N = 1;
    double J = 1.0;
};

using ChannelModel = std::variant<SpontaneousEmission, JaynesCummings, XYChain>;

enum class ModelKind { SpontaneousEmission, JaynesCummings, XYChain };

ModelKind kind_of(const ChannelModel& model);
const char* to_string(ModelKind kind);

// Throws InvalidInputError for non-positive rates/couplings or N < 1.
void validate(const ChannelModel& model);

// --- spontaneous emission ---------------------------------------------------

FlowCoordinate se_flow(double gamma_A, double t);

struct ModeAmplitudes {
    std::vector<cplx> c;
    double raw_weight = 0.0;     // sum |c_k|^2 before rescaling
    double target_weight = 0.0;  // 1 - exp(-gamma_A t)
};

// Weisskopf-Wigner one-photon amplitudes on a finite grid, rescaled so that
// sum |c_k|^2 == 1 - exp(-gamma_A t). raw_weight lets callers gate grid quality.
ModeAmplitudes se_mode_amplitudes(const ModeGrid& grid, double omega_A, double gamma_A, double t);

// --- Jaynes-Cummings --------------------------------------------------------

struct JcAmplitudes {
    cplx c_e;
    cplx c_1;
};

JcAmplitudes jc_amplitudes(double g, double omega_A, double t);

FlowCoordinate jc_flow(double g, double t);

// --- XY chain ---------------------------------------------------------------

// Analytic single-excitation eigensystem of the (N+1)-site hopping chain
// (qubit = site 0). Immutable after construction.
class XYEigensystem {
public:
    XYEigensystem(int n_chain, double J);

    int chain_length() const { return n_chain_; }
    double hopping() const { return J_; }
    std::size_t dim() const { return static_cast<std::size_t>(n_chain_) + 1; }

    // energies()(k-1) = 2 J cos(k pi / (N+2)), k = 1 .. N+1
    const Eigen::VectorXd& energies() const { return energies_; }
    // column k-1 holds sqrt(2/(N+2)) sin((j+1) k pi / (N+2)) over sites j = 0 .. N
    const Eigen::MatrixXd& vectors() const { return vectors_; }

private:
    int n_chain_;
    double J_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXd vectors_;
};

XYEigensystem xy_eigensystem(int n_chain, double J);

struct XYAmplitudes {
    cplx c_e;
    std::vector<cplx> c_vec;
};

XYAmplitudes xy_amplitudes(const XYEigensystem& sys, double t);

// Explicit N = 10 cosine sum for c_e(t).
double xy_ce_reference_N10(double J, double t);

// f(J, t) = |c_e(t)|^2
FlowCoordinate xy_flow(const XYEigensystem& sys, double t);

// Local minima of flow(t) on (0, t_max) with value below threshold: grid scan
// at the given step, then golden-section refinement to 1e-8 in t.
std::vector<double> flow_minima(const std::function<double(double)>& flow, double t_max,
                                double step, double threshold);

// flow_minima for f(J, t) with step 0.01 / J.
std::vector<double> flow_zero_crossings(const XYEigensystem& sys, double t_max, double threshold);

// --- dispatch ---------------------------------------------------------------

// Evaluates one model over time. Holds the XY eigensystem so trajectories do
// not rebuild it per point; safe to share between threads once constructed.
class ChannelEngine {
public:
    explicit ChannelEngine(ChannelModel model);

    const ChannelModel& model() const { return model_; }
    ModelKind kind() const { return kind_of(model_); }

    FlowCoordinate flow(double t) const;
    TripartiteSnapshot snapshot(PreparationAngle theta, double t) const;

private:
    ChannelModel model_;
    std::optional<XYEigensystem> xy_;
};

TripartiteSnapshot snapshot(const ChannelModel& model, PreparationAngle theta, double t);

}  // namespace afl::channels
