#include "latk/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace latk {

namespace {

constexpr double kGolden = 0.6180339887498948482045868343656381; // (sqrt(5)-1)/2

double golden_section(const std::function<double(double)>& f, double a, double b, double tol,
                      int max_iter, long& evals) {
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = f(c), fd = f(d);
    evals += 2;
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    return 0.5 * (a + b);
}

} // namespace

MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                               const LineSearchConfig& cfg) {
    cfg.validate();
    if (!(hi > lo)) throw DomainError("minimize_scalar: empty interval");
    if (!(lo > 0.0)) throw DomainError("minimize_scalar: geometric scan needs lo > 0");

    std::vector<double> ys;
    for (double y = lo; y < hi; y *= cfg.scan_ratio) ys.push_back(y);
    ys.push_back(hi);

    long evals = 0;
    std::vector<double> vals(ys.size());
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < ys.size(); ++i) {
        vals[i] = f(ys[i]);
        ++evals;
        if (!std::isfinite(vals[i])) throw EvaluationError("minimize_scalar: non-finite objective");
        best = std::min(best, vals[i]);
    }
    // Smallest-abscissa bracket among near-ties (prefers the left endpoint at
    // a phase boundary).
    size_t win = 0;
    while (win < ys.size() && vals[win] > best + cfg.f_tol) ++win;

    const double bl = ys[win == 0 ? 0 : win - 1];
    const double br = ys[std::min(win + 1, ys.size() - 1)];
    double y_star = golden_section(f, bl, br, cfg.x_tol * 0.25, cfg.max_iter, evals);
    double v_star = f(y_star);
    ++evals;

    // Endpoints win exact ties.
    if (vals.front() <= v_star) {
        y_star = ys.front();
        v_star = vals.front();
    }
    if (vals.back() < v_star) {
        y_star = ys.back();
        v_star = vals.back();
    }

    MinimizeResult r;
    r.argmin = {0.5, y_star};
    r.value = v_star;
    r.iterations = evals;
    if (std::abs(y_star - lo) <= cfg.x_tol)
        r.kind = MinKind::LeftEndpointHexagonal;
    else if (y_star >= hi - cfg.x_tol)
        r.kind = MinKind::CeilingHit;
    else
        r.kind = MinKind::Interior;
    return r;
}

MinimizeResult minimize_on_gamma_c(EnergyParams params, const LineSearchConfig& cfg,
                                   const TruncationPolicy& policy) {
    params.validate();
    auto f = [&](double y) { return difference_energy(params, {0.5, y}, policy).value; };
    MinimizeResult r = minimize_scalar(f, cfg.y_min, cfg.y_max, cfg);
    if (r.kind == MinKind::LeftEndpointHexagonal) r.argmin = {0.5, cfg.y_min};
    return r;
}

namespace {

double domain_floor(double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); }

UpperHalfPoint clamp_to_domain(UpperHalfPoint p, double y_max) {
    p.x = std::clamp(p.x, 0.0, 0.5);
    const double yf = domain_floor(p.x);
    p.y = std::clamp(p.y, yf, y_max);
    return p;
}

} // namespace

MinimizeResult minimize_2d(EnergyParams params, const LineSearchConfig& cfg,
                           const TruncationPolicy& policy) {
    params.validate();
    cfg.validate();
    long evals = 0;
    auto f = [&](UpperHalfPoint p) {
        ++evals;
        const double v = difference_energy(params, p, policy).value;
        if (!std::isfinite(v)) throw EvaluationError("minimize_2d: non-finite energy");
        return v;
    };

    // Coarse grid over the closed domain, geometric in y.
    UpperHalfPoint best_p{0.5, cfg.y_min};
    double best_v = f(best_p);
    for (int i = 0; i <= cfg.grid_n; ++i) {
        const double x = 0.5 * double(i) / cfg.grid_n;
        const double y0 = domain_floor(x);
        for (double y = y0; y <= cfg.y_max; y = std::max(y * 1.25, y + 0.05)) {
            const UpperHalfPoint p{x, y};
            const double v = f(p);
            if (v < best_v) {
                best_v = v;
                best_p = p;
            }
        }
    }

    // Projected gradient descent with backtracking.
    UpperHalfPoint p = best_p;
    double fp = best_v;
    double step = 0.25;
    for (int it = 0; it < cfg.max_iter; ++it) {
        const Gradient g = difference_energy_grad(params, p, policy);
        const double gn = std::hypot(g.dx, g.dy);
        if (gn * std::max(1.0, std::abs(fp)) < 1e-15 || step < 1e-14) break;
        bool moved = false;
        while (step >= 1e-14) {
            UpperHalfPoint q = clamp_to_domain({p.x - step * g.dx, p.y - step * g.dy}, cfg.y_max);
            const double fq = f(q);
            if (fq < fp - 1e-18) {
                p = q;
                fp = fq;
                step *= 1.6;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }

    // Coordinate polish: golden section in each coordinate, twice around.
    for (int round = 0; round < 2; ++round) {
        auto fy = [&](double y) { return f({p.x, y}); };
        LineSearchConfig c1 = cfg;
        c1.scan_ratio = 1.2;
        const double ylo = std::max(domain_floor(p.x), 1e-6);
        MinimizeResult ry = minimize_scalar(fy, ylo, cfg.y_max, c1);
        p.y = ry.argmin.y;
        auto fx = [&](double x) { return f(clamp_to_domain({x, p.y}, cfg.y_max)); };
        long dummy = 0;
        p.x = golden_section(fx, 0.0, 0.5, cfg.x_tol * 0.25, cfg.max_iter, dummy);
        p = clamp_to_domain(p, cfg.y_max);
        fp = f(p);
    }

    // Return the representative inside the closed fundamental domain.
    const FundamentalDomainPoint red = reduce(p);
    MinimizeResult r;
    r.argmin = red.point;
    r.value = fp;
    r.iterations = evals;
    const double hex_y = hexagonal_point().y;
    if (std::abs(r.argmin.y - hex_y) <= cfg.x_tol && std::abs(r.argmin.x - 0.5) <= cfg.x_tol)
        r.kind = MinKind::LeftEndpointHexagonal;
    else if (r.argmin.y >= cfg.y_max - cfg.x_tol)
        r.kind = MinKind::CeilingHit;
    else
        r.kind = MinKind::Interior;
    return r;
}

MonotonicityReport certify_transversal_monotonicity(double alpha, double b, int nx, int ny,
                                                    double y_max, const TruncationPolicy& policy,
                                                    double margin) {
    if (!(alpha > 0.0)) throw DomainError("certify_transversal_monotonicity: alpha must be positive");
    if (nx < 2 || ny < 2) throw DomainError("certify_transversal_monotonicity: grid too small");

    MonotonicityReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    const EnergyParams params{alpha, b};
    for (int i = 0; i < nx; ++i) {
        const double x = margin + (0.5 - 2.0 * margin) * double(i) / (nx - 1);
        const double y_lo = domain_floor(x) + margin;
        for (int j = 0; j < ny; ++j) {
            const double y = y_lo + (y_max - y_lo) * double(j) / (ny - 1);
            const UpperHalfPoint z{x, y};
            const double dx = difference_energy_grad(params, z, policy).dx;
            rep.min_margin = std::min(rep.min_margin, -dx);
            ++rep.points;
            // deep in the tail the derivative underflows; only a measurably
            // positive value contradicts the monotonicity
            if (dx > 0.0 || std::isnan(dx)) rep.violations.push_back(z);
        }
    }
    return rep;
}

} // namespace latk
