#include "afl/invariants.hpp"

#include <cmath>

#include "afl/errors.hpp"

namespace afl::invariants {

namespace {

void require_moon_dominant(Branch branch, const char* what) {
    if (branch != Branch::MoonDominant) {
        throw BranchError(std::string(what) + " is only asserted for sin^2(theta) >= cos^2(theta)");
    }
}

}  // namespace

RestrictionResiduals restriction_residuals(FlowCoordinate p, PreparationAngle theta, double K_A, double K_a,
                                           channels::ModelKind /*model_kind*/) {
    require_moon_dominant(theta.branch(), "restriction relation");
    const double moon = sqrt_coordinate(moon_weight(theta));
    const double c2 = theta.cos2();
    RestrictionResiduals r;
    r.qubit = std::abs(sqrt_coordinate(K_A) - moon - 2.0 * p.complement() * c2);
    r.partner = std::abs(sqrt_coordinate(K_a) - moon - 2.0 * p.value() * c2);
    return r;
}

double conservation_residual(double K_A, double K_a, double K_M, Branch branch) {
    require_moon_dominant(branch, "conservation relation");
    return std::abs(sqrt_coordinate(K_A) + sqrt_coordinate(K_a) - 1.0 - sqrt_coordinate(K_M));
}

double signed_conservation_residual(FlowCoordinate p, PreparationAngle theta) {
    const double c2 = theta.cos2();
    const double qubit = 2.0 * p.value() * c2 - 1.0;
    const double partner = 2.0 * p.complement() * c2 - 1.0;
    return std::abs(qubit + partner - (2.0 * c2 - 2.0));
}

RelationReport relation_report(double t, FlowCoordinate p, PreparationAngle theta, double K_A, double K_a,
                               double K_M, channels::ModelKind model_kind) {
    RelationReport r;
    r.t = t;
    r.K_A = K_A;
    r.K_a = K_a;
    r.K_M = K_M;
    r.branch = theta.branch();
    r.signed_residual = signed_conservation_residual(p, theta);
    if (r.branch == Branch::MoonDominant) {
        const auto res = restriction_residuals(p, theta, K_A, K_a, model_kind);
        r.restrict_A_residual = res.qubit;
        r.restrict_a_residual = res.partner;
        r.conservation_residual = conservation_residual(K_A, K_a, K_M, r.branch);
    }
    return r;
}

ComplementarityVerdict complementarity_check(std::span<const double> times, std::span<const double> series_A,
                                             std::span<const double> series_a, Branch branch,
                                             double dead_zone) {
    require_moon_dominant(branch, "complementarity");
    if (times.size() != series_A.size() || times.size() != series_a.size()) {
        throw InvalidInputError("complementarity check needs columns on a common time grid");
    }
    ComplementarityVerdict v;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double dt = times[i + 1] - times[i];
        if (!(dt > 0.0)) throw InvalidInputError("time grid must be strictly increasing");
        const double dA = (series_A[i + 1] - series_A[i]) / dt;
        const double da = (series_a[i + 1] - series_a[i]) / dt;
        if (std::abs(dA) <= dead_zone || std::abs(da) <= dead_zone) continue;
        ++v.compared;
        if ((dA > 0.0) == (da > 0.0)) ++v.violations;
    }
    v.pass = v.violations == 0;
    return v;
}

}  // namespace afl::invariants
