// schmidt.hpp: Schmidt analysis of the qubit / partner / Moon pure state.
//
// The state handled here always has the three-branch form
//
//   cos(theta) |m1> (c_e |e>|0> + sum_n c_n |g>|1_n>) + sin(theta) |m2> |g>|0>
//
// over the compact bases Moon {m1, m2}, qubit {e, g} and partner
// {0, 1_1 .. 1_N}. Entanglement across a cut is reported as the Schmidt
// weight K = 1 / sum_k lambda_k^2 of the reduced density matrix.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace afl {

using cplx = std::complex<double>;

inline constexpr double kNormTol = 1e-10;

enum class Branch { MoonDominant, QubitDominant };

const char* to_string(Branch b);

// Preparation angle of cos(theta)|e>|m1> + sin(theta)|g>|m2>, theta in [0, pi].
class PreparationAngle {
public:
    explicit PreparationAngle(double theta);

    double radians() const { return theta_; }
    double cos2() const { return cos_ * cos_; }
    double sin2() const { return sin_ * sin_; }
    double cos_theta() const { return cos_; }
    double sin_theta() const { return sin_; }

    // sin^2 >= cos^2, with 1e-12 slack so theta = pi/4 lands on the Moon side
    // despite cos(pi/4) rounding one ulp above sin(pi/4).
    bool moon_dominant() const { return sin2() - cos2() >= -1e-12; }
    Branch branch() const { return moon_dominant() ? Branch::MoonDominant : Branch::QubitDominant; }

private:
    double theta_;
    double cos_;
    double sin_;
};

// p = |c_e|^2, the excited-state population.
class FlowCoordinate {
public:
    // Values within 1e-12 outside [0, 1] are clipped; anything further is a RangeError.
    explicit FlowCoordinate(double p);

    double value() const { return p_; }
    double complement() const { return 1.0 - p_; }

private:
    double p_;
};

struct TripartiteSnapshot {
    PreparationAngle theta{0.0};
    cplx c_e{1.0, 0.0};
    std::vector<cplx> c_vec;  // c_1 .. c_N
    double time = 0.0;

    std::size_t partner_dim() const { return c_vec.size() + 1; }
    double excited_population() const { return std::norm(c_e); }
    double branch_norm() const;

    // Throws NormalizationError if |c_e|^2 + sum |c_n|^2 deviates from 1 by more than tol.
    void check_normalized(double tol = kNormTol) const;
};

enum class BipartitionCut { MoonVsRest, QubitVsRest, PartnerVsRest };

const char* to_string(BipartitionCut cut);

// Sorted (descending) eigenvalues of a reduced density matrix.
class SchmidtSpectrum {
public:
    // Validates sum == 1 (1e-10) and clips values in [-1e-12, 0) to zero.
    static SchmidtSpectrum from_eigenvalues(std::vector<double> values);

    std::span<const double> eigenvalues() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double largest() const { return values_.empty() ? 0.0 : values_.front(); }

    // Number of eigenvalues strictly above tol.
    std::size_t rank(double tol = 1e-10) const;
    double purity() const;

private:
    explicit SchmidtSpectrum(std::vector<double> v) : values_(std::move(v)) {}
    std::vector<double> values_;
};

// Rows: the chosen side's compact basis. Columns: product of the other two
// compact bases, enumerated in the order documented in schmidt.cpp.
Eigen::MatrixXcd coefficient_matrix(const TripartiteSnapshot& snapshot, BipartitionCut cut);

// Eigenvalues of C C^dagger (rows(C) of them).
SchmidtSpectrum schmidt_spectrum(const Eigen::MatrixXcd& c);

double schmidt_weight(const SchmidtSpectrum& s);

inline double schmidt_weight(const TripartiteSnapshot& snapshot, BipartitionCut cut) {
    return schmidt_weight(schmidt_spectrum(coefficient_matrix(snapshot, cut)));
}

// K_M = 1 / (cos^4 + sin^4), constant in time.
double moon_weight(PreparationAngle theta);

// K_A = 2 / ([2 p cos^2 - 1]^2 + 1).
double closed_form_KA(FlowCoordinate p, PreparationAngle theta);

// K_a = 2 / ([2 (1 - p) cos^2 - 1]^2 + 1).
double closed_form_Ka(FlowCoordinate p, PreparationAngle theta);

// sqrt(2/K - 1) for K in [1, 2]; RangeError outside that window (1e-9 slack).
double sqrt_coordinate(double k);

}  // namespace afl
