#include <doctest.h>

#include <cmath>
#include <random>

#include "afl/channels.hpp"
#include "afl/errors.hpp"
#include "afl/invariants.hpp"
#include "afl/oracle.hpp"

using namespace afl;
using namespace afl::invariants;
using channels::ModelKind;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("restriction_residuals") {
    SUBCASE("endpoints") {
        for (double th : {kPi / 4, kPi / 3, 2 * kPi / 5, kPi / 2}) {
            const PreparationAngle a(th);
            const double km = moon_weight(a);
            // p = 1: K_A = K_M, K_a = 1
            auto r = restriction_residuals(FlowCoordinate(1.0), a, km, 1.0, ModelKind::JaynesCummings);
            CHECK(r.qubit < 1e-12);
            CHECK(r.partner < 1e-12);
            // p = 0: K_A = 1, K_a = K_M
            r = restriction_residuals(FlowCoordinate(0.0), a, 1.0, km, ModelKind::SpontaneousEmission);
            CHECK(r.qubit < 1e-12);
            CHECK(r.partner < 1e-12);
        }
    }
    SUBCASE("p = 0.37, theta = 2 pi / 5 with closed-form K") {
        const PreparationAngle a(2 * kPi / 5);
        const FlowCoordinate p(0.37);
        const auto r = restriction_residuals(p, a, closed_form_KA(p, a), closed_form_Ka(p, a), ModelKind::XYChain);
        CHECK(r.qubit < 1e-12);
        CHECK(r.partner < 1e-12);
    }
    SUBCASE("wrong K is detected") {
        const PreparationAngle a(kPi / 3);
        const FlowCoordinate p(0.5);
        const auto r = restriction_residuals(p, a, 1.2, closed_form_Ka(p, a), ModelKind::XYChain);
        CHECK(r.qubit > 1e-3);
    }
    CHECK_THROWS_AS(restriction_residuals(FlowCoordinate(0.5), PreparationAngle(kPi / 6), 1.2, 1.2,
                                          ModelKind::JaynesCummings),
                    BranchError);
}

TEST_CASE("conservation_residual") {
    const PreparationAngle a(kPi / 3);
    const double km = moon_weight(a);
    CHECK(conservation_residual(km, 1.0, km, Branch::MoonDominant) < 1e-12);
    CHECK(conservation_residual(1.0, km, km, Branch::MoonDominant) < 1e-12);
    CHECK_THROWS_AS(conservation_residual(1.5, 1.2, 1.6, Branch::QubitDominant), BranchError);

    SUBCASE("JC sweep, theta = 0.9, 500 points") {
        const PreparationAngle b(0.9);
        REQUIRE(b.moon_dominant());
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            const auto p = channels::jc_flow(1.0, 2.0 * kPi * i / 499.0);
            worst = std::max(worst, conservation_residual(closed_form_KA(p, b), closed_form_Ka(p, b), moon_weight(b),
                                                          b.branch()));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("signed_conservation_residual") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        CHECK(signed_conservation_residual(FlowCoordinate(u(rng)), PreparationAngle(kPi * u(rng))) < 1e-14);
    }
    SUBCASE("oracle trajectories on both branches") {
        const oracle::OracleEngine jc(channels::JaynesCummings{1.0, 0.0});
        const oracle::OracleEngine xy(channels::XYChain{10, 1.0});
        for (int i = 0; i <= 100; ++i) {
            const double t = 0.3 * i;
            CHECK(signed_conservation_residual(FlowCoordinate(jc.evaluate(PreparationAngle(kPi / 6), t).p),
                                               PreparationAngle(kPi / 6)) < 1e-10);
            CHECK(signed_conservation_residual(FlowCoordinate(xy.evaluate(PreparationAngle(kPi / 3), t).p),
                                               PreparationAngle(kPi / 3)) < 1e-10);
        }
    }
}

TEST_CASE("relation_report") {
    const PreparationAngle moon(kPi / 3), qubit(kPi / 8);
    const FlowCoordinate p(0.42);
    auto r = relation_report(1.0, p, moon, closed_form_KA(p, moon), closed_form_Ka(p, moon), moon_weight(moon),
                             ModelKind::SpontaneousEmission);
    CHECK(r.branch == Branch::MoonDominant);
    CHECK(r.conservation_residual < 1e-12);
    CHECK(r.conservation_residual <= r.restrict_A_residual + r.restrict_a_residual + 1e-15);

    r = relation_report(1.0, p, qubit, closed_form_KA(p, qubit), closed_form_Ka(p, qubit), moon_weight(qubit),
                        ModelKind::SpontaneousEmission);
    CHECK(r.branch == Branch::QubitDominant);
    CHECK(r.conservation_residual == 0.0);
    CHECK(r.signed_residual < 1e-14);
}

TEST_CASE("property: conservation residual bounded by the restriction residuals") {
    // Perturbed K values so the residuals are not all zero.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const PreparationAngle a(kPi / 4 + (kPi / 2) * u(rng));
        const FlowCoordinate p(u(rng));
        const double ka = std::clamp(closed_form_KA(p, a) + 0.05 * (u(rng) - 0.5), 1.0, 2.0);
        const double kb = std::clamp(closed_form_Ka(p, a) + 0.05 * (u(rng) - 0.5), 1.0, 2.0);
        const auto r = relation_report(0.0, p, a, ka, kb, moon_weight(a), ModelKind::JaynesCummings);
        CHECK(r.conservation_residual <= r.restrict_A_residual + r.restrict_a_residual + 1e-12);
    }
}

TEST_CASE("complementarity_check") {
    const auto sweep = [](auto flow, double theta, double t_max) {
        std::vector<double> t(401), ka(401), kb(401);
        const PreparationAngle a(theta);
        for (std::size_t i = 0; i < t.size(); ++i) {
            t[i] = t_max * static_cast<double>(i) / 400.0;
            const FlowCoordinate p = flow(t[i]);
            ka[i] = closed_form_KA(p, a);
            kb[i] = closed_form_Ka(p, a);
        }
        return std::tuple{t, ka, kb, a.branch()};
    };

    SUBCASE("JC, theta = pi/4") {
        auto [t, ka, kb, br] = sweep([](double x) { return channels::jc_flow(1.0, x); }, kPi / 4, 2 * kPi);
        const auto v = complementarity_check(t, ka, kb, br);
        CHECK(v.pass);
        CHECK(v.compared > 300);
    }
    SUBCASE("SE, theta = pi/3") {
        auto [t, ka, kb, br] = sweep([](double x) { return channels::se_flow(1.0, x); }, kPi / 3, 6.0);
        CHECK(complementarity_check(t, ka, kb, br).pass);
    }
    SUBCASE("XY N = 10, theta = 2 pi / 5") {
        const auto sys = channels::xy_eigensystem(10, 1.0);
        auto [t, ka, kb, br] = sweep([&sys](double x) { return channels::xy_flow(sys, x); }, 2 * kPi / 5, 50.0);
        CHECK(complementarity_check(t, ka, kb, br).pass);
    }
    SUBCASE("same-direction motion is counted") {
        const std::vector<double> t{0, 1, 2}, a{1.0, 1.5, 1.2}, b{1.0, 1.4, 1.3};
        const auto v = complementarity_check(t, a, b, Branch::MoonDominant);
        CHECK_FALSE(v.pass);
        CHECK(v.violations == 2);
    }
    SUBCASE("SE, theta = pi/6 is gated") {
        auto [t, ka, kb, br] = sweep([](double x) { return channels::se_flow(1.0, x); }, kPi / 6, 6.0);
        CHECK_THROWS_AS(complementarity_check(t, ka, kb, br), BranchError);
    }
    SUBCASE("mismatched grids") {
        const std::vector<double> t{0, 1, 2}, a{1, 1}, b{1, 1, 1};
        CHECK_THROWS_AS(complementarity_check(t, a, b, Branch::MoonDominant), InvalidInputError);
    }
}
