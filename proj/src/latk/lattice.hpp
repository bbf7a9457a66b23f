#ifndef LATK_LATTICE_HPP
#define LATK_LATTICE_HPP

// Gaussian lattice sums over the unit-density lattice attached to a point
// z = x + iy of the upper half-plane. With Q(m,n) = m^2 y + (n + m x)^2 / y:
//
//     theta2(alpha; z) = sum_{(m,n)} exp(-pi alpha Q(m,n))
//     kernel(alpha; z) = sum_{(m,n)} Q(m,n) exp(-pi alpha Q(m,n))
//
// kernel == -(1/pi) d/dalpha theta2. The pair energy of interest is
// kernel(alpha;z) - b * kernel(2 alpha;z).
//
// Two evaluation routes: the direct double sum (truncated with rigorous
// geometric tail majorants) and a fast expansion through the 1-D theta
// function,
//
//     theta2(alpha;z) = sqrt(y/alpha) sum_n e^{-pi alpha y n^2} theta(y/alpha; n x),
//
// differentiated term-wise in alpha for the kernel and in x, y for the
// gradient. Every EnergyValue carries a truncation bound, not an estimate.

#include "latk/theta.hpp"

namespace latk {

struct UpperHalfPoint {
    double x = 0.0;
    double y = 1.0; // must stay positive

    void validate() const {
        if (!(y > 0.0)) throw DomainError("UpperHalfPoint: y must be positive");
    }
};

inline UpperHalfPoint hexagonal_point() {
    return {0.5, 0.8660254037844386467637231707529362}; // e^{i pi/3}
}

struct EnergyParams {
    double alpha = 2.0; // Gaussian scale, alpha > 0 accepted, >= 2 theorem-backed
    double b = 0.0;     // mixing coefficient, b > 0 (b = 0 degenerates to one kernel)

    void validate() const {
        if (!(alpha > 0.0)) throw DomainError("EnergyParams: alpha must be positive");
        if (!(b >= 0.0)) throw DomainError("EnergyParams: b must be nonnegative");
    }
};

constexpr double kBc2 = 2.8284271247461900976033774484193997; // 2 sqrt(2)

// Theorem-backed parameter region (results outside it are still computed).
inline bool theorem_covered(const EnergyParams& p) { return p.alpha >= 2.0; }
inline bool nonexistence_regime(const EnergyParams& p) { return p.b >= kBc2 - 1e-9; }

struct EnergyValue {
    double value = 0.0;
    double est_error = 0.0; // rigorous bound on the truncation error
};

// 2-D theta function via the 1-D expansion.
EnergyValue theta_2d(double alpha, UpperHalfPoint z, const TruncationPolicy& policy = {});

// Direct truncated double sum of Q e^{-pi alpha Q}.
EnergyValue k_energy_direct(double alpha, UpperHalfPoint z, const TruncationPolicy& policy = {});

// Same quantity through the 1-D theta expansion.
EnergyValue k_energy_expansion(double alpha, UpperHalfPoint z, const TruncationPolicy& policy = {});

// kernel(alpha;z) - b * kernel(2 alpha;z), expansion route.
EnergyValue difference_energy(EnergyParams params, UpperHalfPoint z, const TruncationPolicy& policy = {});

struct Gradient {
    double dx = 0.0;
    double dy = 0.0;
};

// Analytic (d/dx, d/dy) of difference_energy.
Gradient difference_energy_grad(EnergyParams params, UpperHalfPoint z, const TruncationPolicy& policy = {});

// Pointwise majorants sup_Y |theta(X;.)| etc., used for outer-tail control.
ThetaDerivatives theta_majorants(double X, const TruncationPolicy& policy = {});

} // namespace latk

#endif
