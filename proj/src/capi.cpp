#include "latk.h"

#include <cstring>
#include <map>
#include <string>

#include "latk/bounds.hpp"
#include "latk/lattice.hpp"
#include "latk/minimize.hpp"
#include "latk/modular.hpp"
#include "latk/phase.hpp"
#include "latk/theta.hpp"

namespace {

thread_local std::string g_last_error;

struct Options {
    latk::TruncationPolicy trunc;
    latk::LineSearchConfig line;
};

const Options kDefaults;

const Options& opts_or_default(const latk_options* opt) {
    return opt ? *reinterpret_cast<const Options*>(opt) : kDefaults;
}

template <class Fn>
latk_status guarded(Fn&& fn) {
    try {
        fn();
        return LATK_OK;
    } catch (const latk::DomainError& e) {
        g_last_error = e.what();
        return LATK_ERR_DOMAIN;
    } catch (const latk::ConvergenceError& e) {
        g_last_error = e.what();
        return LATK_ERR_CONVERGENCE;
    } catch (const latk::ReductionError& e) {
        g_last_error = e.what();
        return LATK_ERR_REDUCTION;
    } catch (const latk::ThresholdAmbiguityError& e) {
        g_last_error = e.what();
        return LATK_ERR_THRESHOLD;
    } catch (const latk::EvaluationError& e) {
        g_last_error = e.what();
        return LATK_ERR_EVAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LATK_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return LATK_ERR_INTERNAL;
    }
}

latk_status usage_error(const char* msg) {
    g_last_error = msg;
    return LATK_ERR_USAGE;
}

} // namespace

extern "C" {

const char* latk_status_message(latk_status s) {
    switch (s) {
    case LATK_OK: return "ok";
    case LATK_ERR_DOMAIN: return "domain error";
    case LATK_ERR_USAGE: return "usage error";
    case LATK_ERR_IO: return "i/o error";
    case LATK_ERR_CHECK_FAILED: return "verification check failed";
    case LATK_ERR_CONVERGENCE: return "series did not converge";
    case LATK_ERR_REDUCTION: return "reduction failed";
    case LATK_ERR_THRESHOLD: return "threshold predicate ambiguous";
    case LATK_ERR_EVAL: return "evaluation error";
    case LATK_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* latk_last_error(void) { return g_last_error.c_str(); }

const char* latk_version(void) { return "0.1.0"; }

latk_options* latk_options_new(void) { return reinterpret_cast<latk_options*>(new Options); }

void latk_options_free(latk_options* opt) { delete reinterpret_cast<Options*>(opt); }

latk_status latk_options_set(latk_options* opt, const char* key, double value) {
    if (!opt || !key) return usage_error("latk_options_set: null argument");
    Options& o = *reinterpret_cast<Options*>(opt);
    const std::string k(key);
    if (k == "abs_tol") o.trunc.abs_tol = value;
    else if (k == "max_terms") o.trunc.max_terms = int(value);
    else if (k == "switch_threshold") o.trunc.switch_threshold = value;
    else if (k == "y_max") o.line.y_max = value;
    else if (k == "x_tol") o.line.x_tol = value;
    else if (k == "f_tol") o.line.f_tol = value;
    else if (k == "max_iter") o.line.max_iter = int(value);
    else if (k == "scan_ratio") o.line.scan_ratio = value;
    else if (k == "grid_n") o.line.grid_n = int(value);
    else return usage_error("latk_options_set: unknown key");
    return guarded([&] { o.trunc.validate(); o.line.validate(); });
}

latk_status latk_options_get(const latk_options* opt, const char* key, double* value) {
    if (!opt || !key || !value) return usage_error("latk_options_get: null argument");
    const Options& o = *reinterpret_cast<const Options*>(opt);
    const std::string k(key);
    if (k == "abs_tol") *value = o.trunc.abs_tol;
    else if (k == "max_terms") *value = o.trunc.max_terms;
    else if (k == "switch_threshold") *value = o.trunc.switch_threshold;
    else if (k == "y_min") *value = o.line.y_min;
    else if (k == "y_max") *value = o.line.y_max;
    else if (k == "x_tol") *value = o.line.x_tol;
    else if (k == "f_tol") *value = o.line.f_tol;
    else if (k == "max_iter") *value = o.line.max_iter;
    else if (k == "scan_ratio") *value = o.line.scan_ratio;
    else if (k == "grid_n") *value = o.line.grid_n;
    else return usage_error("latk_options_get: unknown key");
    return LATK_OK;
}

latk_status latk_theta(const latk_options* opt, double X, double Y, double* out) {
    if (!out) return usage_error("latk_theta: null out");
    return guarded([&] { *out = latk::theta_1d({X, Y}, opts_or_default(opt).trunc); });
}

latk_status latk_theta_dx(const latk_options* opt, double X, double Y, double* out) {
    if (!out) return usage_error("latk_theta_dx: null out");
    return guarded([&] { *out = latk::theta_1d_dX({X, Y}, opts_or_default(opt).trunc); });
}

latk_status latk_theta_dy(const latk_options* opt, double X, double Y, double* out) {
    if (!out) return usage_error("latk_theta_dy: null out");
    return guarded([&] { *out = latk::theta_1d_dY({X, Y}, opts_or_default(opt).trunc); });
}

latk_status latk_theta_dxdy(const latk_options* opt, double X, double Y, double* out) {
    if (!out) return usage_error("latk_theta_dxdy: null out");
    return guarded([&] { *out = latk::theta_1d_dXdY({X, Y}, opts_or_default(opt).trunc); });
}

latk_status latk_aux(const latk_options* opt, latk_aux_series kind, double x, double* out) {
    if (!out) return usage_error("latk_aux: null out");
    if (kind < LATK_AUX_MU || kind > LATK_AUX_DELTA) return usage_error("latk_aux: bad kind");
    return guarded([&] {
        *out = latk::aux_series(static_cast<latk::AuxSeriesKind>(kind), x,
                                opts_or_default(opt).trunc);
    });
}

latk_status latk_theta2d(const latk_options* opt, double alpha, double x, double y,
                         latk_energy* out) {
    if (!out) return usage_error("latk_theta2d: null out");
    return guarded([&] {
        const auto e = latk::theta_2d(alpha, {x, y}, opts_or_default(opt).trunc);
        *out = {e.value, e.est_error};
    });
}

latk_status latk_kernel_direct(const latk_options* opt, double alpha, double x, double y,
                               latk_energy* out) {
    if (!out) return usage_error("latk_kernel_direct: null out");
    return guarded([&] {
        const auto e = latk::k_energy_direct(alpha, {x, y}, opts_or_default(opt).trunc);
        *out = {e.value, e.est_error};
    });
}

latk_status latk_kernel_expansion(const latk_options* opt, double alpha, double x, double y,
                                  latk_energy* out) {
    if (!out) return usage_error("latk_kernel_expansion: null out");
    return guarded([&] {
        const auto e = latk::k_energy_expansion(alpha, {x, y}, opts_or_default(opt).trunc);
        *out = {e.value, e.est_error};
    });
}

latk_status latk_diff_energy(const latk_options* opt, double alpha, double b, double x, double y,
                             latk_energy* out) {
    if (!out) return usage_error("latk_diff_energy: null out");
    return guarded([&] {
        const auto e = latk::difference_energy({alpha, b}, {x, y}, opts_or_default(opt).trunc);
        *out = {e.value, e.est_error};
    });
}

latk_status latk_diff_energy_grad(const latk_options* opt, double alpha, double b, double x,
                                  double y, double* dx, double* dy) {
    if (!dx || !dy) return usage_error("latk_diff_energy_grad: null out");
    return guarded([&] {
        const auto g = latk::difference_energy_grad({alpha, b}, {x, y}, opts_or_default(opt).trunc);
        *dx = g.dx;
        *dy = g.dy;
    });
}

int latk_theorem_covered(double alpha, double b) {
    return latk::theorem_covered({alpha, b}) ? 1 : 0;
}

int latk_nonexistence_regime(double alpha, double b) {
    return latk::nonexistence_regime({alpha, b}) ? 1 : 0;
}

latk_status latk_reduce(const latk_options*, double x, double y, double* out_x, double* out_y,
                        char* word, size_t word_cap) {
    if (!out_x || !out_y) return usage_error("latk_reduce: null out");
    return guarded([&] {
        const auto r = latk::reduce({x, y});
        *out_x = r.point.x;
        *out_y = r.point.y;
        if (word && word_cap > 0) {
            const std::string s = latk::word_to_string(r.word);
            std::strncpy(word, s.c_str(), word_cap - 1);
            word[word_cap - 1] = '\0';
        }
    });
}

latk_status latk_apply_word(const char* word, double x, double y, double* out_x, double* out_y) {
    if (!word || !out_x || !out_y) return usage_error("latk_apply_word: null argument");
    return guarded([&] {
        const auto z = latk::apply(latk::word_from_string(word), {x, y});
        *out_x = z.x;
        *out_y = z.y;
    });
}

int latk_is_on_gamma_c(double x, double y, double tol) {
    return latk::is_on_gamma_c({x, y}, tol) ? 1 : 0;
}

latk_status latk_minimize_gamma_c(const latk_options* opt, double alpha, double b,
                                  latk_min_result* out) {
    if (!out) return usage_error("latk_minimize_gamma_c: null out");
    return guarded([&] {
        const Options& o = opts_or_default(opt);
        const auto r = latk::minimize_on_gamma_c({alpha, b}, o.line, o.trunc);
        *out = {r.argmin.x, r.argmin.y, r.value, int(r.kind), r.iterations};
    });
}

latk_status latk_minimize_2d(const latk_options* opt, double alpha, double b,
                             latk_min_result* out) {
    if (!out) return usage_error("latk_minimize_2d: null out");
    return guarded([&] {
        const Options& o = opts_or_default(opt);
        const auto r = latk::minimize_2d({alpha, b}, o.line, o.trunc);
        *out = {r.argmin.x, r.argmin.y, r.value, int(r.kind), r.iterations};
    });
}

latk_status latk_classify_phase(const latk_options* opt, double alpha, double b,
                                latk_phase_result* out) {
    if (!out) return usage_error("latk_classify_phase: null out");
    return guarded([&] {
        const Options& o = opts_or_default(opt);
        const auto r = latk::classify_phase({alpha, b}, o.line, o.trunc);
        *out = {r.alpha, r.b, int(r.phase), r.y_b, r.energy_at_min.value_or(0.0)};
    });
}

const char* latk_phase_name(int phase) {
    return latk::phase_name(static_cast<latk::Phase>(phase));
}

latk_status latk_find_bc1(const latk_options* opt, double alpha, double tol, latk_threshold* out) {
    if (!out) return usage_error("latk_find_bc1: null out");
    return guarded([&] {
        const Options& o = opts_or_default(opt);
        const auto r = latk::find_bc1(alpha, tol, o.line, o.trunc);
        *out = {r.alpha, r.b_c1, r.bracket_width};
    });
}

latk_status latk_certify_transversal(const latk_options* opt, double alpha, double b, int nx,
                                     int ny, double y_max, latk_certificate* out) {
    if (!out) return usage_error("latk_certify_transversal: null out");
    return guarded([&] {
        const Options& o = opts_or_default(opt);
        const auto r = latk::certify_transversal_monotonicity(alpha, b, nx, ny, y_max, o.trunc);
        *out = {r.min_margin, r.points, long(r.violations.size())};
    });
}

latk_status latk_nonexistence_asymptotics(const latk_options* opt, double alpha, double b,
                                          const double* ys, size_t n, double* energies,
                                          latk_asym_report* out) {
    if (!ys || !out || n == 0) return usage_error("latk_nonexistence_asymptotics: null argument");
    return guarded([&] {
        const Options& o = opts_or_default(opt);
        const auto rep = latk::check_nonexistence_asymptotics(
            {alpha, b}, std::span<const double>(ys, n), o.trunc);
        if (energies)
            for (size_t i = 0; i < n; ++i) energies[i] = rep.energy[i];
        *out = {rep.strictly_decreasing ? 1 : 0, rep.all_positive ? 1 : 0,
                rep.negative_at_end ? 1 : 0, rep.rel_dev_at_last};
    });
}

struct latk_report {
    std::vector<latk::BoundCheck> checks;
};

latk_status latk_verify_run(const latk_options* opt, const char* suite, int grid_n,
                            latk_report** out) {
    if (!suite || !out) return usage_error("latk_verify_run: null argument");
    return guarded([&] {
        auto* rep = new latk_report;
        rep->checks = latk::run_suite(suite, grid_n > 0 ? grid_n : 25, opts_or_default(opt).trunc);
        *out = rep;
    });
}

void latk_report_free(latk_report* rep) { delete rep; }

size_t latk_report_size(const latk_report* rep) { return rep ? rep->checks.size() : 0; }

latk_status latk_report_entry(const latk_report* rep, size_t i, const char** name,
                              const char** hypothesis, double* margin, long* points,
                              long* violations, int* passed) {
    if (!rep || i >= rep->checks.size()) return usage_error("latk_report_entry: bad index");
    const auto& c = rep->checks[i];
    if (name) *name = c.name.c_str();
    if (hypothesis) *hypothesis = c.hypothesis.c_str();
    if (margin) *margin = c.margin;
    if (points) *points = c.points;
    if (violations) *violations = long(c.violations.size());
    if (passed) *passed = c.passed() ? 1 : 0;
    return LATK_OK;
}

int latk_report_all_passed(const latk_report* rep) {
    if (!rep) return 0;
    for (const auto& c : rep->checks)
        if (!c.passed()) return 0;
    return 1;
}

latk_status latk_proof_sum(const latk_options* opt, const char* which, double alpha, double y,
                           double* out) {
    if (!which || !out) return usage_error("latk_proof_sum: null argument");
    return guarded([&] {
        *out = latk::eval_proof_sum(latk::proof_sum_from_name(which), alpha, y,
                                    opts_or_default(opt).trunc);
    });
}

} // extern "C"
