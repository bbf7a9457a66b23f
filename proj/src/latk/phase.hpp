#ifndef LATK_PHASE_HPP
#define LATK_PHASE_HPP

// Phase structure of the two-Gaussian lattice energy along the critical ray:
// classification of the minimizer (hexagonal / skinny-rhombic / nonexistent),
// bisection for the first threshold b_c1(alpha), the y_b(b) minimizer curve,
// and the large-y sign diagnostics for b at or above 2 sqrt(2).

#include <optional>
#include <span>
#include <vector>

#include "latk/minimize.hpp"

namespace latk {

enum class Phase : std::uint8_t { Hexagonal, SkinnyRhombic, Nonexistent };

const char* phase_name(Phase p);

struct PhaseResult {
    double alpha = 0.0;
    double b = 0.0;
    Phase phase = Phase::Hexagonal;
    double y_b = 0.0; // sqrt(3)/2 for hexagonal; search ceiling when nonexistent
    std::optional<double> energy_at_min;
};

// |y_b - sqrt(3)/2| below this counts as the hexagonal phase.
constexpr double kHexagonalTol = 1e-6;

PhaseResult classify_phase(EnergyParams params, const LineSearchConfig& cfg = {},
                           const TruncationPolicy& policy = {});

struct ThresholdResult {
    double alpha = 0.0;
    double b_c1 = 0.0;
    double bracket_width = 0.0;
};

// Bisection on b over [2, 2 sqrt(2)] against "the minimizer is hexagonal".
// Throws ThresholdAmbiguityError if the predicate fails to bracket.
ThresholdResult find_bc1(double alpha, double tol, const LineSearchConfig& cfg = {},
                         const TruncationPolicy& policy = {});

std::vector<PhaseResult> trace_yb_curve(double alpha, std::span<const double> b_values,
                                        const LineSearchConfig& cfg = {},
                                        const TruncationPolicy& policy = {});

struct AsymptoticsReport {
    std::vector<double> y;
    std::vector<double> energy;    // E(1/2 + iy)
    std::vector<double> predicted; // leading-order large-y form
    bool strictly_decreasing = false;
    bool all_positive = false;
    bool negative_at_end = false;
    double rel_dev_at_last = 0.0; // |energy - predicted| / |predicted| at the last sample
};

// Energy along the ray at increasing y samples versus the leading-order
// prediction  c(alpha) sqrt(y) [ (2sqrt2 - b) alpha + 2b e^{-pi y/(2a)} (pi y - a)
// + 4 sqrt2 e^{-pi y/a} (a - 2 pi y) ].
AsymptoticsReport check_nonexistence_asymptotics(EnergyParams params, std::span<const double> ys,
                                                 const TruncationPolicy& policy = {});

} // namespace latk

#endif
