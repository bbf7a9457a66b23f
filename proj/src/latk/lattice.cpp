#include "latk/lattice.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace latk {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// One direction of a unit-spaced grid sum of t^p e^{-c t^2} starting at
// offset u0 > 0: bounded by max + integral.
double grid_half_sum_bound(double c, int p) {
    // max_{t>=0} t^p e^{-c t^2}
    const double mx = (p == 0) ? 1.0 : std::pow(p / (2.0 * c * std::exp(1.0)), p / 2.0);
    // integral_0^inf t^p e^{-c t^2} dt = Gamma((p+1)/2) / (2 c^{(p+1)/2})
    static const double half_gamma[5] = {
        0.8862269254527580, // Gamma(1/2)/2
        0.5,                // Gamma(1)/2
        0.4431134627263790, // Gamma(3/2)/2
        0.5,                // Gamma(2)/2
        0.6646701940895685, // Gamma(5/2)/2
    };
    const double integral = half_gamma[p] * std::pow(c, -0.5 * (p + 1));
    return mx + integral;
}

} // namespace

ThetaDerivatives theta_majorants(double X, const TruncationPolicy& policy) {
    if (!(X > 0.0)) throw DomainError("theta_majorants: X must be positive");
    ThetaDerivatives b;
    if (X >= policy.switch_threshold) {
        // sup over Y bounded by putting every trig factor at 1; the dropped
        // tail is added back so these stay upper bounds.
        const double a = kPi * X;
        double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0;
        int n = 0;
        for (;;) {
            ++n;
            if (n > policy.max_terms)
                throw ConvergenceError("theta_majorants: exceeded max_terms");
            const double e = std::exp(-a * double(n) * n);
            const double n2 = double(n) * n;
            s0 += e;
            s1 += n * e;
            s2 += n2 * e;
            s3 += n2 * n * e;
            s4 += n2 * n2 * e;
            if (gaussian_poly_tail(a, 4, n) < 1e-6 * (s4 + 1e-30)) break;
        }
        s0 += gaussian_poly_tail(a, 0, n);
        s1 += gaussian_poly_tail(a, 1, n);
        s2 += gaussian_poly_tail(a, 2, n);
        s3 += gaussian_poly_tail(a, 3, n);
        s4 += gaussian_poly_tail(a, 4, n);
        b.v = 1.0 + 2.0 * s0;
        b.dY = 4.0 * kPi * s1;
        b.dX = 2.0 * kPi * s2;
        b.dXY = 4.0 * kPi * kPi * s3;
        b.dXX = 2.0 * kPi * kPi * s4;
        return b;
    }
    // Poisson-form bounds: sum_u |u|^p e^{-pi u^2 / X} over a unit grid is at
    // most 2 (max + integral), independent of the grid offset.
    const double c = kPi / X;
    const double b0 = 2.0 * grid_half_sum_bound(c, 0);
    const double b1 = 2.0 * grid_half_sum_bound(c, 1);
    const double b2 = 2.0 * grid_half_sum_bound(c, 2);
    const double b3 = 2.0 * grid_half_sum_bound(c, 3);
    const double b4 = 2.0 * grid_half_sum_bound(c, 4);
    const double xm12 = 1.0 / std::sqrt(X), xm32 = xm12 / X, xm52 = xm32 / X, xm72 = xm52 / X,
                 xm92 = xm72 / X;
    b.v = xm12 * b0;
    b.dY = 2.0 * kPi * xm32 * b1;
    b.dX = 0.5 * xm32 * b0 + kPi * xm52 * b2;
    b.dXY = 3.0 * kPi * xm52 * b1 + 2.0 * kPi * kPi * xm72 * b3;
    b.dXX = 0.75 * xm52 * b0 + 3.0 * kPi * xm72 * b2 + kPi * kPi * xm92 * b4;
    return b;
}

namespace {

// Outer-sum accumulator for the 1-D theta expansion of the lattice sums.
// All weighted sums share the outer kernel e^{-pi alpha y n^2}.
struct ExpansionSums {
    double s0 = 0, s2 = 0, s4 = 0;    // n^{0,2,4} e_n theta
    double sx = 0, s2x = 0, sxx = 0;  // e_n theta_X, n^2 e_n theta_X, e_n theta_XX
    double u1 = 0, u3 = 0, ux1 = 0;   // n e_n theta_Y, n^3 e_n theta_Y, n e_n theta_XY
    double ew0 = 0, ew2 = 0, ew4 = 0; // sum n^p e_n, for inner-tolerance propagation
    // Tail bounds for the dropped |n| > N part, per weighted sum.
    double t_s0 = 0, t_s2 = 0, t_s4 = 0, t_sx = 0, t_s2x = 0, t_sxx = 0;
    double t_u1 = 0, t_u3 = 0, t_ux1 = 0;
    double inner_tol = 0;
    int terms = 0;
};

ExpansionSums expansion_sums(double alpha, UpperHalfPoint z, const TruncationPolicy& policy,
                             double outer_tail_target) {
    const double X = z.y / alpha;
    const double a = kPi * alpha * z.y;

    TruncationPolicy inner = policy;
    inner.abs_tol = policy.abs_tol / 64.0;
    inner.max_terms = policy.max_terms;

    const ThetaDerivatives bound = theta_majorants(X, policy);
    ExpansionSums s;
    s.inner_tol = inner.abs_tol;

    for (int n = 0;; ++n) {
        if (n > policy.max_terms)
            throw ConvergenceError("lattice expansion: outer sum exceeded max_terms (alpha=" +
                                   std::to_string(alpha) + ", y=" + std::to_string(z.y) + ")");
        const double e = std::exp(-a * double(n) * n);
        const double w = (n == 0) ? 1.0 : 2.0;
        const ThetaDerivatives th = theta_1d_all({X, n * z.x}, inner);
        const double n2 = double(n) * n;
        s.s0 += w * e * th.v;
        s.s2 += w * n2 * e * th.v;
        s.s4 += w * n2 * n2 * e * th.v;
        s.sx += w * e * th.dX;
        s.s2x += w * n2 * e * th.dX;
        s.sxx += w * e * th.dXX;
        if (n > 0) {
            s.u1 += 2.0 * n * e * th.dY;
            s.u3 += 2.0 * n2 * n * e * th.dY;
            s.ux1 += 2.0 * n * e * th.dXY;
        }
        s.ew0 += w * e;
        s.ew2 += w * n2 * e;
        s.ew4 += w * n2 * n2 * e;
        s.terms = n + 1;

        // Heaviest index weight is n^4; a single criterion covers all sums.
        const double worst = gaussian_poly_tail(a, 4, n);
        const double bmax = bound.v + bound.dX + bound.dY + bound.dXY + bound.dXX;
        if (n >= 1 && 2.0 * bmax * worst < outer_tail_target) {
            const double t0 = 2.0 * gaussian_poly_tail(a, 0, n);
            const double t1 = 2.0 * gaussian_poly_tail(a, 1, n);
            const double t2 = 2.0 * gaussian_poly_tail(a, 2, n);
            const double t3 = 2.0 * gaussian_poly_tail(a, 3, n);
            const double t4 = 2.0 * gaussian_poly_tail(a, 4, n);
            s.t_s0 = bound.v * t0;
            s.t_s2 = bound.v * t2;
            s.t_s4 = bound.v * t4;
            s.t_sx = bound.dX * t0;
            s.t_s2x = bound.dX * t2;
            s.t_sxx = bound.dXX * t0;
            s.t_u1 = bound.dY * t1;
            s.t_u3 = bound.dY * t3;
            s.t_ux1 = bound.dXY * t1;
            break;
        }
    }
    return s;
}

struct KernelPrefactors {
    double p0, p2, px;
};

KernelPrefactors kernel_prefactors(double alpha, double y) {
    return {
        0.5 / kPi * std::pow(alpha, -1.5) * std::sqrt(y),
        std::pow(alpha, -0.5) * std::pow(y, 1.5),
        1.0 / kPi * std::pow(alpha, -2.5) * std::pow(y, 1.5),
    };
}

EnergyValue kernel_expansion_impl(double alpha, UpperHalfPoint z, const TruncationPolicy& policy) {
    const KernelPrefactors p = kernel_prefactors(alpha, z.y);
    const double pref_scale = p.p0 + p.p2 + p.px;
    const ExpansionSums s = expansion_sums(alpha, z, policy, 0.25 * policy.abs_tol / pref_scale);

    EnergyValue r;
    r.value = p.p0 * s.s0 + p.p2 * s.s2 + p.px * s.sx;
    const double tail = p.p0 * s.t_s0 + p.p2 * s.t_s2 + p.px * s.t_sx;
    const double inner = s.inner_tol * (p.p0 * s.ew0 + p.p2 * s.ew2 + p.px * s.ew0);
    const double round = 8.0 * kEps * (p.p0 * std::abs(s.s0) + p.p2 * std::abs(s.s2) + p.px * std::abs(s.sx));
    r.est_error = tail + inner + round;
    return r;
}

} // namespace

EnergyValue theta_2d(double alpha, UpperHalfPoint z, const TruncationPolicy& policy) {
    policy.validate();
    z.validate();
    if (!(alpha > 0.0)) throw DomainError("theta_2d: alpha must be positive");
    const double pref = std::sqrt(z.y / alpha);
    const ExpansionSums s = expansion_sums(alpha, z, policy, 0.25 * policy.abs_tol / pref);
    EnergyValue r;
    r.value = pref * s.s0;
    r.est_error = pref * (s.t_s0 + s.inner_tol * s.ew0) + 8.0 * kEps * pref * std::abs(s.s0);
    return r;
}

EnergyValue k_energy_expansion(double alpha, UpperHalfPoint z, const TruncationPolicy& policy) {
    policy.validate();
    z.validate();
    if (!(alpha > 0.0)) throw DomainError("k_energy_expansion: alpha must be positive");
    return kernel_expansion_impl(alpha, z, policy);
}

EnergyValue k_energy_direct(double alpha, UpperHalfPoint z, const TruncationPolicy& policy) {
    policy.validate();
    z.validate();
    if (!(alpha > 0.0)) throw DomainError("k_energy_direct: alpha must be positive");

    const double y = z.y, x = z.x;
    const double c = kPi * alpha / y; // inner exponent scale, exponent c u^2
    double value = 0.0, est = 0.0;

    const double dir_tol = policy.abs_tol / 256.0;

    // One row of fixed m: sum over n of Q e^{-pi alpha Q}, Q = A + u^2/y,
    // u = n + m x. Walk outward from the row center in both directions.
    auto row_sum = [&](long m) -> double {
        const double A = double(m) * m * y;
        const double eA = std::exp(-kPi * alpha * A);
        if (eA == 0.0) return 0.0;
        const long n_center = std::lround(-double(m) * x);
        double rs = 0.0;
        for (int dir = 0; dir < 2; ++dir) {
            long n = (dir == 0) ? n_center : n_center - 1;
            const long step = (dir == 0) ? 1 : -1;
            double prev_u2 = -1.0;
            for (int k = 0;; ++k) {
                if (k > 8 * policy.max_terms)
                    throw ConvergenceError("k_energy_direct: row sum exceeded term cap");
                const double u = double(n) + double(m) * x;
                const double Q = A + u * u / y;
                rs += Q * std::exp(-kPi * alpha * Q);
                const bool receding = u * u >= prev_u2; // past the row peak
                prev_u2 = u * u;
                if (receding && k >= 1) {
                    const double un = std::abs(u) + 1.0;
                    const double Qn = A + un * un / y;
                    const double t = Qn * std::exp(-kPi * alpha * Qn);
                    const double rho = ((A + (un + 1.0) * (un + 1.0) / y) / Qn) *
                                       std::exp(-c * (2.0 * un + 1.0));
                    if (rho < 0.5 && t / (1.0 - rho) < dir_tol) {
                        est += t / (1.0 - rho);
                        break;
                    }
                }
                n += step;
            }
        }
        return rs;
    };

    value += row_sum(0);
    // Remaining-row majorant pieces: sum_u e^{-c u^2} <= C0, sum_u (u^2/y) e^{-c u^2} <= C2.
    const double C0 = 2.0 * grid_half_sum_bound(c, 0);
    const double C2 = (2.0 / y) * grid_half_sum_bound(c, 2);
    for (long m = 1;; ++m) {
        if (m > 8 * policy.max_terms)
            throw ConvergenceError("k_energy_direct: row count exceeded cap");
        value += row_sum(m);
        value += row_sum(-m);
        // Rows |m'| > m contribute at most e^{-pi a y m'^2} (m'^2 y C0 + C2) each.
        const double a_rows = kPi * alpha * y;
        const double remaining = 2.0 * (y * C0 * gaussian_poly_tail(a_rows, 2, int(m)) +
                                        C2 * gaussian_poly_tail(a_rows, 0, int(m)));
        if (remaining < policy.abs_tol / 8.0) {
            est += remaining;
            break;
        }
    }
    est += 4.0 * kEps * value; // all terms are nonnegative
    return {value, est};
}

EnergyValue difference_energy(EnergyParams params, UpperHalfPoint z, const TruncationPolicy& policy) {
    policy.validate();
    params.validate();
    z.validate();
    TruncationPolicy split = policy;
    split.abs_tol = policy.abs_tol / (1.0 + params.b);
    const EnergyValue e1 = kernel_expansion_impl(params.alpha, z, split);
    if (params.b == 0.0) return e1;
    const EnergyValue e2 = kernel_expansion_impl(2.0 * params.alpha, z, split);
    return {e1.value - params.b * e2.value, e1.est_error + params.b * e2.est_error};
}

namespace {

Gradient kernel_grad_expansion(double alpha, UpperHalfPoint z, const TruncationPolicy& policy) {
    const KernelPrefactors p = kernel_prefactors(alpha, z.y);
    const double pref_scale = p.p0 + p.p2 + p.px;
    const ExpansionSums s = expansion_sums(alpha, z, policy, 0.25 * policy.abs_tol / (pref_scale + 1.0));

    Gradient g;
    g.dx = p.p0 * s.u1 + p.p2 * s.u3 + p.px * s.ux1;

    const double a = alpha;
    const double y = z.y;
    // d/dy of each weighted sum under the outer kernel:
    //   d/dy s0 = -pi a s2 + sx / a,   d/dy s2 = -pi a s4 + s2x / a,
    //   d/dy sx = -pi a s2x + sxx / a.
    const double ds0 = -kPi * a * s.s2 + s.sx / a;
    const double ds2 = -kPi * a * s.s4 + s.s2x / a;
    const double dsx = -kPi * a * s.s2x + s.sxx / a;
    g.dy = p.p0 * (s.s0 / (2.0 * y) + ds0) + p.p2 * (1.5 * s.s2 / y + ds2) +
           p.px * (1.5 * s.sx / y + dsx);
    return g;
}

// y-derivative of one kernel by term-wise differentiation of the double sum.
double kernel_dy_direct(double alpha, UpperHalfPoint z, const TruncationPolicy& policy) {
    const double y = z.y, x = z.x;
    const double c = kPi * alpha / y;
    double dy = 0.0;
    const double dir_tol = policy.abs_tol / 256.0;

    auto row = [&](long m) {
        const double A = double(m) * m * y;
        if (std::exp(-kPi * alpha * A) == 0.0) return;
        const long n_center = std::lround(-double(m) * x);
        for (int dir = 0; dir < 2; ++dir) {
            long n = (dir == 0) ? n_center : n_center - 1;
            const long step = (dir == 0) ? 1 : -1;
            double prev_u2 = -1.0;
            for (int k = 0;; ++k) {
                if (k > 8 * policy.max_terms)
                    throw ConvergenceError("difference_energy_grad: row sum exceeded term cap");
                const double u = double(n) + double(m) * x;
                const double Q = A + u * u / y;
                // d/dy [Q e^{-pi a Q}] = dQ/dy (1 - pi a Q) e^{-pi a Q}
                dy += (double(m) * m - u * u / (y * y)) * (1.0 - kPi * alpha * Q) *
                      std::exp(-kPi * alpha * Q);
                const bool receding = u * u >= prev_u2;
                prev_u2 = u * u;
                if (receding && k >= 1) {
                    const double un = std::abs(u) + 1.0;
                    const double Qn = A + un * un / y;
                    const double wb = (double(m) * m + un * un / (y * y)) * (1.0 + kPi * alpha * Qn);
                    const double t = wb * std::exp(-kPi * alpha * Qn);
                    // polynomial factors grow by at most ((un+1)/un)^4 <= 16
                    const double rho = 16.0 * std::exp(-c * (2.0 * un + 1.0));
                    if (rho < 0.5 && t / (1.0 - rho) < dir_tol) break;
                }
                n += step;
            }
        }
    };

    row(0);
    const double C0 = 2.0 * grid_half_sum_bound(c, 0);
    const double C2 = (2.0 / (y * y)) * grid_half_sum_bound(c, 2);
    for (long m = 1;; ++m) {
        if (m > 8 * policy.max_terms)
            throw ConvergenceError("difference_energy_grad: row count exceeded cap");
        row(m);
        row(-m);
        const double a_rows = kPi * alpha * y;
        // |dQ/dy| <= m'^2 + u^2/y^2 and |1 - pi a Q| <= 1 + pi a Q; fold the
        // polynomial growth into one extra kernel power via gaussian tails.
        const double remaining =
            2.0 * (1.0 + kPi * alpha * y) *
            ((C0 + C2) * gaussian_poly_tail(a_rows, 2, int(m)) +
             (C2 + kPi * alpha * C0) * gaussian_poly_tail(a_rows, 4, int(m)) +
             C2 * gaussian_poly_tail(a_rows, 0, int(m)));
        if (remaining < policy.abs_tol / 8.0) break;
    }
    return dy;
}

} // namespace

Gradient difference_energy_grad(EnergyParams params, UpperHalfPoint z, const TruncationPolicy& policy) {
    policy.validate();
    params.validate();
    z.validate();

    TruncationPolicy split = policy;
    split.abs_tol = policy.abs_tol / (1.0 + params.b);

    // x-derivative always comes from the expansion (its closed term-wise
    // form); the y-derivative uses the direct double sum when the lattice
    // aspect is balanced and the expansion otherwise.
    const Gradient g1 = kernel_grad_expansion(params.alpha, z, split);
    const Gradient g2 = params.b != 0.0 ? kernel_grad_expansion(2.0 * params.alpha, z, split)
                                        : Gradient{};
    Gradient g{g1.dx - params.b * g2.dx, g1.dy - params.b * g2.dy};

    const double aspect = z.y / params.alpha;
    const bool balanced = aspect >= 0.5 * policy.switch_threshold &&
                          aspect <= 2.0 * policy.switch_threshold;
    if (balanced) {
        const double d1 = kernel_dy_direct(params.alpha, z, split);
        const double d2 = params.b != 0.0 ? kernel_dy_direct(2.0 * params.alpha, z, split) : 0.0;
        g.dy = d1 - params.b * d2;
    }
    return g;
}

} // namespace latk
