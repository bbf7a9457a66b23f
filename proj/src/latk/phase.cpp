#include "latk/phase.hpp"

#include <algorithm>
#include <cmath>

namespace latk {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrt2 = 1.4142135623730950488016887242096981;
} // namespace

const char* phase_name(Phase p) {
    switch (p) {
    case Phase::Hexagonal: return "hexagonal";
    case Phase::SkinnyRhombic: return "skinny_rhombic";
    case Phase::Nonexistent: return "nonexistent";
    }
    return "?";
}

PhaseResult classify_phase(EnergyParams params, const LineSearchConfig& cfg,
                           const TruncationPolicy& policy) {
    params.validate();
    const MinimizeResult m = minimize_on_gamma_c(params, cfg, policy);

    PhaseResult r;
    r.alpha = params.alpha;
    r.b = params.b;
    r.energy_at_min = m.value;

    const bool hex = m.kind == MinKind::LeftEndpointHexagonal ||
                     std::abs(m.argmin.y - cfg.y_min) <= kHexagonalTol;
    if (hex) {
        r.phase = Phase::Hexagonal;
        r.y_b = cfg.y_min;
    } else if (m.kind == MinKind::CeilingHit && nonexistence_regime(params)) {
        r.phase = Phase::Nonexistent;
        r.y_b = m.argmin.y; // ceiling, reported as a trend, never asserted infinite
    } else {
        r.phase = Phase::SkinnyRhombic;
        r.y_b = m.argmin.y;
    }
    return r;
}

ThresholdResult find_bc1(double alpha, double tol, const LineSearchConfig& cfg,
                         const TruncationPolicy& policy) {
    if (!(alpha > 0.0)) throw DomainError("find_bc1: alpha must be positive");
    if (!(tol > 0.0)) throw DomainError("find_bc1: tol must be positive");

    auto hexagonal = [&](double b) {
        return classify_phase({alpha, b}, cfg, policy).phase == Phase::Hexagonal;
    };

    double lo = 2.0, hi = kBc2;
    if (!hexagonal(lo))
        throw ThresholdAmbiguityError("find_bc1: minimizer already non-hexagonal at b = 2");
    if (hexagonal(hi))
        throw ThresholdAmbiguityError("find_bc1: minimizer still hexagonal at b = 2 sqrt(2)");

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (hexagonal(mid))
            lo = mid;
        else
            hi = mid;
    }
    // The predicate must still bracket across the final interval.
    if (!hexagonal(lo) || hexagonal(hi))
        throw ThresholdAmbiguityError("find_bc1: predicate not monotone across [" +
                                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return {alpha, 0.5 * (lo + hi), hi - lo};
}

std::vector<PhaseResult> trace_yb_curve(double alpha, std::span<const double> b_values,
                                        const LineSearchConfig& cfg,
                                        const TruncationPolicy& policy) {
    std::vector<PhaseResult> out;
    out.reserve(b_values.size());
    for (double b : b_values) out.push_back(classify_phase({alpha, b}, cfg, policy));
    return out;
}

AsymptoticsReport check_nonexistence_asymptotics(EnergyParams params, std::span<const double> ys,
                                                 const TruncationPolicy& policy) {
    params.validate();
    if (ys.empty()) throw DomainError("check_nonexistence_asymptotics: no samples");
    for (size_t i = 1; i < ys.size(); ++i)
        if (!(ys[i] > ys[i - 1]))
            throw DomainError("check_nonexistence_asymptotics: samples must increase");

    const double a = params.alpha, b = params.b;
    AsymptoticsReport rep;
    rep.strictly_decreasing = true;
    rep.all_positive = true;
    for (double y : ys) {
        const double e = difference_energy(params, {0.5, y}, policy).value;
        const double lead = (2.0 * kSqrt2 - b) * a +
                            2.0 * b * std::exp(-kPi * y / (2.0 * a)) * (kPi * y - a) +
                            4.0 * kSqrt2 * std::exp(-kPi * y / a) * (a - 2.0 * kPi * y);
        const double pred = (1.0 / kPi) * std::pow(2.0, -2.5) * std::pow(a, -2.5) * std::sqrt(y) * lead;
        rep.y.push_back(y);
        rep.energy.push_back(e);
        rep.predicted.push_back(pred);
        if (rep.energy.size() > 1 && !(e < rep.energy[rep.energy.size() - 2]))
            rep.strictly_decreasing = false;
        if (!(e > 0.0)) rep.all_positive = false;
    }
    rep.negative_at_end = rep.energy.back() < 0.0;
    const double denom = std::max(std::abs(rep.predicted.back()), 1e-300);
    rep.rel_dev_at_last = std::abs(rep.energy.back() - rep.predicted.back()) / denom;
    return rep;
}

} // namespace latk
