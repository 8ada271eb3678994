#include "afl/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "afl/errors.hpp"

namespace afl {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kClipWindow = 1e-12;

// Amplitude of the three-branch state at (moon m, qubit q, partner n);
// m: 0 = m1, 1 = m2; q: 0 = e, 1 = g; n: 0 = vacuum, k = 1_k.
cplx amplitude(const TripartiteSnapshot& s, std::size_t m, std::size_t q, std::size_t n) {
    const double c = s.theta.cos_theta();
    if (m == 0) {
        if (q == 0) return n == 0 ? c * s.c_e : cplx{};
        return n == 0 ? cplx{} : c * s.c_vec[n - 1];
    }
    return (q == 1 && n == 0) ? cplx{s.theta.sin_theta(), 0.0} : cplx{};
}

}  // namespace

const char* to_string(Branch b) {
    return b == Branch::MoonDominant ? "MoonDominant" : "QubitDominant";
}

const char* to_string(BipartitionCut cut) {
    switch (cut) {
        case BipartitionCut::MoonVsRest: return "MoonVsRest";
        case BipartitionCut::QubitVsRest: return "QubitVsRest";
        case BipartitionCut::PartnerVsRest: return "PartnerVsRest";
    }
    return "?";
}

PreparationAngle::PreparationAngle(double theta) : theta_(theta) {
    if (!std::isfinite(theta) || theta < 0.0 || theta > kPi + 1e-12) {
        throw RangeError("preparation angle must lie in [0, pi], got " + std::to_string(theta));
    }
    cos_ = std::cos(theta);
    sin_ = std::sin(theta);
}

FlowCoordinate::FlowCoordinate(double p) {
    if (!std::isfinite(p) || p < -kClipWindow || p > 1.0 + kClipWindow) {
        throw RangeError("flow coordinate outside [0, 1]: " + std::to_string(p));
    }
    p_ = std::clamp(p, 0.0, 1.0);
}

double TripartiteSnapshot::branch_norm() const {
    double sum = std::norm(c_e);
    for (const auto& c : c_vec) sum += std::norm(c);
    return sum;
}

void TripartiteSnapshot::check_normalized(double tol) const {
    const double n = branch_norm();
    if (!(std::abs(n - 1.0) <= tol)) {
        throw NormalizationError("snapshot branch norm " + std::to_string(n) + " differs from 1");
    }
}

std::size_t SchmidtSpectrum::rank(double tol) const {
    return static_cast<std::size_t>(
        std::count_if(values_.begin(), values_.end(), [tol](double v) { return v > tol; }));
}

double SchmidtSpectrum::purity() const {
    return std::transform_reduce(values_.begin(), values_.end(), 0.0, std::plus<>{},
                                 [](double v) { return v * v; });
}

SchmidtSpectrum SchmidtSpectrum::from_eigenvalues(std::vector<double> values) {
    double sum = 0.0;
    for (auto& v : values) {
        if (!std::isfinite(v)) throw InvalidInputError("non-finite eigenvalue");
        if (v < -kClipWindow) {
            throw InvalidInputError("eigenvalue " + std::to_string(v) + " is negative beyond clip window");
        }
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw NormalizationError("spectrum sums to " + std::to_string(sum));
    }
    std::sort(values.begin(), values.end(), std::greater<>{});
    return SchmidtSpectrum(std::move(values));
}

// Column ordering of the remainder:
//   MoonVsRest:    col = q * (N+1) + n
//   QubitVsRest:   col = n * 2 + m
//   PartnerVsRest: col = q * 2 + m
Eigen::MatrixXcd coefficient_matrix(const TripartiteSnapshot& snapshot, BipartitionCut cut) {
    snapshot.check_normalized();
    const std::size_t dp = snapshot.partner_dim();
    const auto n_rows = [&]() -> std::size_t {
        switch (cut) {
            case BipartitionCut::MoonVsRest:
            case BipartitionCut::QubitVsRest: return 2;
            case BipartitionCut::PartnerVsRest: return dp;
        }
        return 0;
    }();
    const std::size_t n_cols = 4 * dp / n_rows;

    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n_rows),
                                                static_cast<Eigen::Index>(n_cols));
    for (std::size_t m = 0; m < 2; ++m) {
        for (std::size_t q = 0; q < 2; ++q) {
            for (std::size_t n = 0; n < dp; ++n) {
                const cplx a = amplitude(snapshot, m, q, n);
                if (a == cplx{}) continue;
                std::size_t row = 0, col = 0;
                switch (cut) {
                    case BipartitionCut::MoonVsRest: row = m; col = q * dp + n; break;
                    case BipartitionCut::QubitVsRest: row = q; col = n * 2 + m; break;
                    case BipartitionCut::PartnerVsRest: row = n; col = q * 2 + m; break;
                }
                c(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = a;
            }
        }
    }
    return c;
}

SchmidtSpectrum schmidt_spectrum(const Eigen::MatrixXcd& c) {
    if (c.size() == 0) throw InvalidInputError("empty coefficient matrix");
    if (!c.allFinite()) throw InvalidInputError("coefficient matrix has non-finite entries");
    const double norm2 = c.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTol) {
        throw NormalizationError("coefficient matrix has squared norm " + std::to_string(norm2));
    }

    // C C^dagger and C^dagger C share their nonzero spectrum; diagonalize the
    // smaller one and pad with zeros up to rows(C).
    const bool row_side = c.rows() <= c.cols();
    const Eigen::MatrixXcd gram = row_side ? Eigen::MatrixXcd(c * c.adjoint())
                                           : Eigen::MatrixXcd(c.adjoint() * c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw InvalidInputError("eigensolver did not converge");

    std::vector<double> values(static_cast<std::size_t>(c.rows()), 0.0);
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) values[static_cast<std::size_t>(i)] = ev(i);
    return SchmidtSpectrum::from_eigenvalues(std::move(values));
}

double schmidt_weight(const SchmidtSpectrum& s) {
    const double purity = s.purity();
    if (!(purity > 0.0)) throw InvalidInputError("all-zero spectrum has no Schmidt weight");
    return 1.0 / purity;
}

double moon_weight(PreparationAngle theta) {
    const double c2 = theta.cos2();
    const double s2 = theta.sin2();
    return 1.0 / (c2 * c2 + s2 * s2);
}

namespace {

double rank_two_weight(double excited_share, PreparationAngle theta) {
    const double x = 2.0 * excited_share * theta.cos2() - 1.0;
    return 2.0 / (x * x + 1.0);
}

}  // namespace

double closed_form_KA(FlowCoordinate p, PreparationAngle theta) {
    return rank_two_weight(p.value(), theta);
}

double closed_form_Ka(FlowCoordinate p, PreparationAngle theta) {
    return rank_two_weight(p.complement(), theta);
}

double sqrt_coordinate(double k) {
    constexpr double slack = 1e-9;
    if (!std::isfinite(k) || k < 1.0 - slack || k > 2.0 + slack) {
        throw RangeError("Schmidt weight " + std::to_string(k) + " outside the rank-2 window [1, 2]");
    }
    return std::sqrt(std::clamp((2.0 - k) / k, 0.0, 1.0));
}

}  // namespace afl
