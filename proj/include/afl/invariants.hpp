// invariants.hpp: restriction and conservation relations between K_A, K_a
// and the Moon weight K_M, evaluated as residuals along trajectories.

#pragma once

#include <cstddef>
#include <span>

#include "afl/channels.hpp"
#include "afl/schmidt.hpp"

namespace afl::invariants {

struct RestrictionResiduals {
    double qubit = 0.0;    // |sqrt(2/K_A-1) - sqrt(2/K_M-1) - 2(1-p)cos^2|
    double partner = 0.0;  // |sqrt(2/K_a-1) - sqrt(2/K_M-1) - 2p cos^2|
};

// Stated only for the MoonDominant branch; BranchError otherwise. model_kind
// is informational: every model uses the same p-based right-hand sides.
RestrictionResiduals restriction_residuals(FlowCoordinate p, PreparationAngle theta, double K_A, double K_a,
                                           channels::ModelKind model_kind);

// |sqrt(2/K_A-1) + sqrt(2/K_a-1) - 1 - sqrt(2/K_M-1)|; BranchError unless MoonDominant.
double conservation_residual(double K_A, double K_a, double K_M, Branch branch);

// |(2p cos^2 - 1) + (2(1-p) cos^2 - 1) - (2 cos^2 - 2)|, valid on both branches.
double signed_conservation_residual(FlowCoordinate p, PreparationAngle theta);

struct RelationReport {
    double t = 0.0;
    double K_A = 1.0;
    double K_a = 1.0;
    double K_M = 1.0;
    double restrict_A_residual = 0.0;
    double restrict_a_residual = 0.0;
    double conservation_residual = 0.0;
    double signed_residual = 0.0;
    Branch branch = Branch::MoonDominant;
};

// Fills every residual that is defined on theta's branch; the unsigned ones
// stay 0 on the QubitDominant branch.
RelationReport relation_report(double t, FlowCoordinate p, PreparationAngle theta, double K_A, double K_a,
                               double K_M, channels::ModelKind model_kind);

struct ComplementarityVerdict {
    bool pass = true;
    std::size_t violations = 0;
    std::size_t compared = 0;  // grid intervals where both slopes exceed the dead zone
};

// sign(dK_A/dt) == -sign(dK_a/dt) on every interval where both forward
// differences exceed dead_zone in magnitude. InvalidInputError on length mismatch.
ComplementarityVerdict complementarity_check(std::span<const double> times, std::span<const double> series_A,
                                             std::span<const double> series_a, Branch branch,
                                             double dead_zone = 1e-8);

}  // namespace afl::invariants
