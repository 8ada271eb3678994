#include "afl/channels.hpp"

#include <cmath>
#include <string>

#include "afl/errors.hpp"

namespace afl::channels {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr cplx kI{0.0, 1.0};

void require_nonnegative_time(double t) {
    if (!std::isfinite(t) || t < 0.0) {
        throw RangeError("time must be finite and >= 0, got " + std::to_string(t));
    }
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

ModelKind kind_of(const ChannelModel& model) {
    return std::visit(overloaded{
                          [](const SpontaneousEmission&) { return ModelKind::SpontaneousEmission; },
                          [](const JaynesCummings&) { return ModelKind::JaynesCummings; },
                          [](const XYChain&) { return ModelKind::XYChain; },
                      },
                      model);
}

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::SpontaneousEmission: return "se";
        case ModelKind::JaynesCummings: return "jc";
        case ModelKind::XYChain: return "xy";
    }
    return "?";
}

void ModeGrid::validate() const {
    if (omegas.empty()) throw InvalidInputError("mode grid is empty");
    if (omegas.size() != gs.size()) throw InvalidInputError("mode grid frequency/coupling length mismatch");
    for (std::size_t k = 0; k < gs.size(); ++k) {
        if (!std::isfinite(omegas[k]) || !std::isfinite(gs[k]) || gs[k] < 0.0) {
            throw InvalidInputError("mode grid entry " + std::to_string(k) + " invalid");
        }
    }
}

void validate(const ChannelModel& model) {
    std::visit(overloaded{
                   [](const SpontaneousEmission& m) {
                       if (!(m.gamma_A > 0.0) || !std::isfinite(m.gamma_A))
                           throw InvalidInputError("gamma_A must be > 0");
                       if (!std::isfinite(m.omega_A)) throw InvalidInputError("omega_A must be finite");
                       if (m.mode_grid) m.mode_grid->validate();
                   },
                   [](const JaynesCummings& m) {
                       if (!(m.g > 0.0) || !std::isfinite(m.g)) throw InvalidInputError("g must be > 0");
                       if (!(m.omega_A >= 0.0) || !std::isfinite(m.omega_A))
                           throw InvalidInputError("omega_A must be >= 0");
                   },
                   [](const XYChain& m) {
                       if (m.N < 1) throw InvalidInputError("XY chain needs N >= 1");
                       if (!(m.J > 0.0) || !std::isfinite(m.J)) throw InvalidInputError("J must be > 0");
                   },
               },
               model);
}

FlowCoordinate se_flow(double gamma_A, double t) {
    require_nonnegative_time(t);
    if (!(gamma_A > 0.0)) throw InvalidInputError("gamma_A must be > 0");
    return FlowCoordinate(std::exp(-gamma_A * t));
}

ModeAmplitudes se_mode_amplitudes(const ModeGrid& grid, double omega_A, double gamma_A, double t) {
    grid.validate();
    require_nonnegative_time(t);
    if (!(gamma_A > 0.0)) throw InvalidInputError("gamma_A must be > 0");

    ModeAmplitudes out;
    out.c.resize(grid.size());
    const double envelope = std::exp(-0.5 * gamma_A * t);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double detuning = grid.omegas[k] - omega_A;
        const cplx numerator = 1.0 - envelope * std::exp(-kI * detuning * t);
        const cplx denominator{detuning, 0.5 * gamma_A};
        out.c[k] = grid.gs[k] * numerator / denominator;
        out.raw_weight += std::norm(out.c[k]);
    }

    out.target_weight = -std::expm1(-gamma_A * t);
    if (out.raw_weight > 0.0) {
        const double scale = std::sqrt(out.target_weight / out.raw_weight);
        for (auto& c : out.c) c *= scale;
    } else {
        for (auto& c : out.c) c = cplx{};
    }
    return out;
}

JcAmplitudes jc_amplitudes(double g, double omega_A, double t) {
    require_nonnegative_time(t);
    if (!(g > 0.0)) throw InvalidInputError("g must be > 0");
    const double half_phase = 0.5 * omega_A * t;
    return {std::exp(kI * half_phase) * std::cos(g * t),
            -kI * std::exp(-kI * half_phase) * std::sin(g * t)};
}

FlowCoordinate jc_flow(double g, double t) {
    require_nonnegative_time(t);
    const double c = std::cos(g * t);
    return FlowCoordinate(c * c);
}

XYEigensystem::XYEigensystem(int n_chain, double J) : n_chain_(n_chain), J_(J) {
    if (n_chain < 1) throw InvalidInputError("XY chain needs N >= 1");
    if (!(J > 0.0) || !std::isfinite(J)) throw InvalidInputError("J must be > 0");
    const auto d = static_cast<Eigen::Index>(n_chain) + 1;
    const double denom = static_cast<double>(n_chain) + 2.0;
    const double amp = std::sqrt(2.0 / denom);
    energies_.resize(d);
    vectors_.resize(d, d);
    for (Eigen::Index k = 1; k <= d; ++k) {
        energies_(k - 1) = 2.0 * J * std::cos(static_cast<double>(k) * kPi / denom);
        for (Eigen::Index j = 0; j < d; ++j) {
            vectors_(j, k - 1) = amp * std::sin(static_cast<double>((j + 1) * k) * kPi / denom);
        }
    }
}

XYEigensystem xy_eigensystem(int n_chain, double J) {
    return XYEigensystem(n_chain, J);
}

XYAmplitudes xy_amplitudes(const XYEigensystem& sys, double t) {
    require_nonnegative_time(t);
    const auto& v = sys.vectors();
    const auto d = v.rows();
    // c_j(t) = sum_k exp(-i E_k t) <j|k><k|site 0>
    Eigen::VectorXcd weights(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        weights(k) = std::exp(-kI * sys.energies()(k) * t) * v(0, k);
    }
    const Eigen::VectorXcd c = v.cast<cplx>() * weights;

    XYAmplitudes out;
    out.c_e = c(0);
    out.c_vec.assign(c.data() + 1, c.data() + d);
    return out;
}

double xy_ce_reference_N10(double J, double t) {
    const double s2 = std::sqrt(2.0);
    const double s3 = std::sqrt(3.0);
    const double x = J * t;
    return (2.0 + 3.0 * std::cos(x) + 2.0 * std::cos(s2 * x) + std::cos(s3 * x) +
            (2.0 + s3) * std::cos((s3 - 1.0) * x / s2) + (2.0 - s3) * std::cos((s3 + 1.0) * x / s2)) /
           12.0;
}

FlowCoordinate xy_flow(const XYEigensystem& sys, double t) {
    return FlowCoordinate(std::norm(xy_amplitudes(sys, t).c_e));
}

namespace {

double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<double> flow_minima(const std::function<double(double)>& flow, double t_max, double step,
                                double threshold) {
    if (!(t_max > 0.0)) throw InvalidInputError("t_max must be > 0");
    if (!(step > 0.0)) throw InvalidInputError("scan step must be > 0");
    if (!(threshold > 0.0 && threshold < 1.0)) throw InvalidInputError("threshold must lie in (0, 1)");

    const auto n = static_cast<std::size_t>(std::ceil(t_max / step));
    const double h = t_max / static_cast<double>(n);
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values[i] = flow(h * static_cast<double>(i));

    std::vector<double> minima;
    for (std::size_t i = 1; i < n; ++i) {
        // Strict on the left so a flat-bottomed run is reported once.
        if (values[i] < values[i - 1] && values[i] <= values[i + 1]) {
            const double lo = h * static_cast<double>(i - 1);
            const double hi = h * static_cast<double>(i + 1);
            const double t_min = golden_section_min(flow, lo, hi, 1e-8);
            if (flow(t_min) < threshold) minima.push_back(t_min);
        }
    }
    return minima;
}

std::vector<double> flow_zero_crossings(const XYEigensystem& sys, double t_max, double threshold) {
    return flow_minima([&sys](double t) { return std::norm(xy_amplitudes(sys, t).c_e); }, t_max,
                       0.01 / sys.hopping(), threshold);
}

ChannelEngine::ChannelEngine(ChannelModel model) : model_(std::move(model)) {
    validate(model_);
    if (const auto* xy = std::get_if<XYChain>(&model_)) xy_.emplace(xy->N, xy->J);
}

FlowCoordinate ChannelEngine::flow(double t) const {
    return std::visit(overloaded{
                          [t](const SpontaneousEmission& m) { return se_flow(m.gamma_A, t); },
                          [t](const JaynesCummings& m) { return jc_flow(m.g, t); },
                          [this, t](const XYChain&) { return xy_flow(*xy_, t); },
                      },
                      model_);
}

TripartiteSnapshot ChannelEngine::snapshot(PreparationAngle theta, double t) const {
    TripartiteSnapshot s;
    s.theta = theta;
    s.time = t;
    std::visit(overloaded{
                   [&](const SpontaneousEmission& m) {
                       const FlowCoordinate p = se_flow(m.gamma_A, t);
                       s.c_e = std::exp(-0.5 * m.gamma_A * t);
                       if (m.mode_grid) {
                           s.c_vec = se_mode_amplitudes(*m.mode_grid, m.omega_A, m.gamma_A, t).c;
                       } else {
                           s.c_vec = {cplx{std::sqrt(p.complement()), 0.0}};
                       }
                   },
                   [&](const JaynesCummings& m) {
                       const auto a = jc_amplitudes(m.g, m.omega_A, t);
                       s.c_e = a.c_e;
                       s.c_vec = {a.c_1};
                   },
                   [&](const XYChain&) {
                       auto a = xy_amplitudes(*xy_, t);
                       s.c_e = a.c_e;
                       s.c_vec = std::move(a.c_vec);
                   },
               },
               model_);
    s.check_normalized();
    return s;
}

TripartiteSnapshot snapshot(const ChannelModel& model, PreparationAngle theta, double t) {
    return ChannelEngine(model).snapshot(theta, t);
}

}  // namespace afl::channels
