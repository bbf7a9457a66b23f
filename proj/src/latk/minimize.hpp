#ifndef LATK_MINIMIZE_HPP
#define LATK_MINIMIZE_HPP

// Minimization of the difference energy: a bracketing scan plus
// golden-section refinement along the critical ray x = 1/2, a
// gradient-informed 2-D descent over the fundamental domain as a
// cross-check, and the grid certificate for the transversal monotonicity
// (d/dx of the energy negative inside the domain).

#include <functional>
#include <vector>

#include "latk/lattice.hpp"
#include "latk/modular.hpp"

namespace latk {

struct LineSearchConfig {
    double y_min = 0.8660254037844386467637231707529362; // sqrt(3)/2, left end of the ray
    double y_max = 50.0;   // search ceiling; hitting it signals suspected nonexistence
    double x_tol = 1e-8;   // argmin tolerance
    double f_tol = 1e-12;  // value tolerance (scan tie-breaking)
    int max_iter = 200;
    double scan_ratio = 1.05; // geometric bracketing grid along the ray
    int grid_n = 32;          // coarse grid per axis for the 2-D start

    void validate() const {
        if (!(y_max > y_min)) throw DomainError("LineSearchConfig: y_max must exceed y_min");
        if (!(x_tol > 0.0) || !(f_tol > 0.0)) throw DomainError("LineSearchConfig: tolerances must be positive");
        if (max_iter < 8) throw DomainError("LineSearchConfig: max_iter too small");
        if (!(scan_ratio > 1.0)) throw DomainError("LineSearchConfig: scan_ratio must exceed 1");
        if (grid_n < 4) throw DomainError("LineSearchConfig: grid_n too small");
    }
};

enum class MinKind : std::uint8_t {
    Interior,
    LeftEndpointHexagonal, // argmin.y within x_tol of sqrt(3)/2
    CeilingHit,            // argmin.y within x_tol of y_max: suspected nonexistence
};

struct MinimizeResult {
    UpperHalfPoint argmin;
    double value = 0.0;
    MinKind kind = MinKind::Interior;
    long iterations = 0; // objective evaluations
};

// Scan [lo, hi] on a geometric grid, then golden-section the winning
// bracket. Ties within f_tol prefer the smaller abscissa.
MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                               const LineSearchConfig& cfg);

MinimizeResult minimize_on_gamma_c(EnergyParams params, const LineSearchConfig& cfg = {},
                                   const TruncationPolicy& policy = {});

MinimizeResult minimize_2d(EnergyParams params, const LineSearchConfig& cfg = {},
                           const TruncationPolicy& policy = {});

struct MonotonicityReport {
    double min_margin = 0.0; // min over the grid of -dE/dx; >= 0 means certified
    long points = 0;
    std::vector<UpperHalfPoint> violations; // grid points with dE/dx >= 0
};

// Evaluates the analytic d/dx at every grid point strictly inside the
// fundamental domain: x in [margin, 1/2 - margin], y in [sqrt(1-x^2) + margin, y_max].
MonotonicityReport certify_transversal_monotonicity(double alpha, double b, int nx, int ny,
                                                    double y_max,
                                                    const TruncationPolicy& policy = {},
                                                    double margin = 1e-3);

} // namespace latk

#endif
