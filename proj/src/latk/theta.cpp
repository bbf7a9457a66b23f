#include "latk/theta.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace latk {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Fold Y into [0, 1/2] using 1-periodicity and evenness. Returns the folded
// phase; `odd_sign` picks up -1 when the reflection Y -> -Y was used, which
// flips the sign of the Y-odd quantities (dY, dXY).
double fold_phase(double y, double& odd_sign) {
    double yf = y - std::nearbyint(y); // exact for |y| within integer range
    odd_sign = 1.0;
    if (yf < 0.0) {
        yf = -yf;
        odd_sign = -1.0;
    }
    return yf;
}

double pow_int(double base, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= base;
    return r;
}

} // namespace

void TruncationPolicy::validate() const {
    if (!(abs_tol > 0.0)) throw DomainError("TruncationPolicy: abs_tol must be positive");
    if (max_terms < 4) throw DomainError("TruncationPolicy: max_terms must be at least 4");
    if (!(switch_threshold > 0.0)) throw DomainError("TruncationPolicy: switch_threshold must be positive");
}

double gaussian_poly_tail(double a, int p, int n_last) {
    // sum_{n > n_last} n^p exp(-a n^2) <= t(n_last+1) / (1 - rho) with
    // rho the largest successive-term ratio past the cut, valid once rho < 1.
    const double n1 = n_last + 1;
    const double t = pow_int(n1, p) * std::exp(-a * n1 * n1);
    const double rho = pow_int((n1 + 1.0) / n1, p) * std::exp(-a * (2.0 * n1 + 1.0));
    if (!(rho < 1.0)) return std::numeric_limits<double>::infinity();
    return t / (1.0 - rho);
}

namespace {

// Direct cosine/sine series for theta and its derivatives, Y pre-folded.
ThetaDerivatives theta_direct(double X, double yf, double odd_sign, const TruncationPolicy& policy) {
    const double a = kPi * X;
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0; // sum n^p e^{-pi n^2 X} * trig
    // Largest series weight is 2 pi^2 n^4 (the dXX term); one tail criterion
    // covers all five components.
    const double weight = 4.0 * kPi * kPi;
    int n = 0;
    for (;;) {
        ++n;
        if (n > policy.max_terms)
            throw ConvergenceError("theta_1d: direct series exceeded max_terms at X=" + std::to_string(X));
        const double e = std::exp(-a * double(n) * n);
        const double c = std::cos(2.0 * kPi * n * yf);
        const double s = std::sin(2.0 * kPi * n * yf);
        const double n2 = double(n) * n;
        s0 += e * c;
        s1 += n * e * s;
        s2 += n2 * e * c;
        s3 += n2 * n * e * s;
        s4 += n2 * n2 * e * c;
        if (weight * gaussian_poly_tail(a, 4, n) < policy.abs_tol / 10.0) break;
    }
    ThetaDerivatives r;
    r.v = 1.0 + 2.0 * s0;
    r.dY = odd_sign * (-4.0 * kPi) * s1;
    r.dX = -2.0 * kPi * s2;
    r.dXY = odd_sign * (4.0 * kPi * kPi) * s3;
    r.dXX = 2.0 * kPi * kPi * s4;
    return r;
}

// Poisson form: theta = X^{-1/2} sum_n exp(-pi (n-Y)^2 / X); derivatives in
// terms of f_p = sum_n (n-Y)^p exp(-pi (n-Y)^2 / X), p = 0..4 (signed u).
ThetaDerivatives theta_dual(double X, double yf, double odd_sign, const TruncationPolicy& policy) {
    const double a = kPi / X;
    double f0 = 0, f1 = 0, f2 = 0, f3 = 0, f4 = 0;

    auto add = [&](double u) {
        const double e = std::exp(-a * u * u);
        const double u2 = u * u;
        f0 += e;
        f1 += u * e;
        f2 += u2 * e;
        f3 += u2 * u * e;
        f4 += u2 * u2 * e;
    };

    // n = 0 and n = 1 straddle Y in [0, 1/2]; remaining indices go outward
    // in pairs with |u| >= k.
    add(0.0 - yf);
    add(1.0 - yf);
    // Coefficient budget: summed prefactors over all five outputs are below
    // (3 pi^2 + 9 pi + 9/4) X^{-9/2} once X <= 1 (and X below the switch is).
    const double coef =
        (3.0 * kPi * kPi + 9.0 * kPi + 2.25) * std::pow(X, -4.5) + std::pow(X, -0.5);
    int k = 1;
    for (;; ++k) {
        if (k > policy.max_terms)
            throw ConvergenceError("theta_1d: dual series exceeded max_terms at X=" + std::to_string(X));
        const double um = -(double(k) + yf); // n = -k
        const double up = double(k) + 1.0 - yf; // n = k + 1
        add(um);
        add(up);
        // Tail over both directions; next |u| >= k + 1 - 1/2 on the worst side.
        const double u0 = double(k) + 0.5;
        const double t = pow_int(u0, 4) * std::exp(-a * u0 * u0);
        const double rho = pow_int((u0 + 1.0) / u0, 4) * std::exp(-a * (2.0 * u0 + 1.0));
        if (rho < 1.0 && coef * 2.0 * t / (1.0 - rho) < policy.abs_tol / 10.0) break;
    }

    const double xm12 = 1.0 / std::sqrt(X);
    const double xm32 = xm12 / X;
    const double xm52 = xm32 / X;
    const double xm72 = xm52 / X;
    const double xm92 = xm72 / X;
    ThetaDerivatives r;
    r.v = xm12 * f0;
    r.dY = odd_sign * 2.0 * kPi * xm32 * f1;
    r.dX = -0.5 * xm32 * f0 + kPi * xm52 * f2;
    r.dXY = odd_sign * (-3.0 * kPi * xm52 * f1 + 2.0 * kPi * kPi * xm72 * f3);
    r.dXX = 0.75 * xm52 * f0 - 3.0 * kPi * xm72 * f2 + kPi * kPi * xm92 * f4;
    return r;
}

} // namespace

ThetaDerivatives theta_1d_all(ThetaArgs args, const TruncationPolicy& policy) {
    policy.validate();
    if (!(args.X > 0.0)) throw DomainError("theta_1d: X must be positive");
    double odd_sign;
    const double yf = fold_phase(args.Y, odd_sign);
    if (args.X < policy.switch_threshold) return theta_dual(args.X, yf, odd_sign, policy);
    return theta_direct(args.X, yf, odd_sign, policy);
}

double theta_1d(ThetaArgs args, const TruncationPolicy& policy) { return theta_1d_all(args, policy).v; }
double theta_1d_dY(ThetaArgs args, const TruncationPolicy& policy) { return theta_1d_all(args, policy).dY; }
double theta_1d_dX(ThetaArgs args, const TruncationPolicy& policy) { return theta_1d_all(args, policy).dX; }
double theta_1d_dXdY(ThetaArgs args, const TruncationPolicy& policy) { return theta_1d_all(args, policy).dXY; }
double theta_1d_dXX(ThetaArgs args, const TruncationPolicy& policy) { return theta_1d_all(args, policy).dXX; }

double aux_series(AuxSeriesKind kind, double x, const TruncationPolicy& policy) {
    policy.validate();
    if (!(x > 0.0)) throw DomainError("aux_series: argument must be positive");
    const int p = (kind == AuxSeriesKind::Mu || kind == AuxSeriesKind::MuHat) ? 2
                : (kind == AuxSeriesKind::Nu || kind == AuxSeriesKind::NuHat) ? 4
                                                                              : 0;
    const bool alternating = (kind == AuxSeriesKind::MuHat || kind == AuxSeriesKind::NuHat);
    const double a = kPi * x;
    const double lift = std::exp(a); // e^{-pi (n^2-1) x} = e^{pi x} e^{-pi n^2 x}
    double s = 0.0;
    for (int n = 2;; ++n) {
        if (n - 1 > policy.max_terms)
            throw ConvergenceError("aux_series: exceeded max_terms at x=" + std::to_string(x));
        double term = pow_int(double(n), p) * std::exp(-a * (double(n) * n - 1.0));
        if (alternating && (n % 2 == 0)) term = -term;
        s += term;
        if (lift * gaussian_poly_tail(a, p, n) < policy.abs_tol / 10.0) break;
    }
    return s;
}

} // namespace latk
