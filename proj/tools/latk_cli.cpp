// Command-line front end for the latk shared library. Uses only the public
// C interface.
//
// Exit codes: 0 success, 1 domain error, 2 usage error, 3 i/o error,
// 4 verification/replay failure.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latk.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitCheck = 4;

int exit_code_for(latk_status s) {
    switch (s) {
    case LATK_OK: return kExitOk;
    case LATK_ERR_USAGE: return kExitUsage;
    case LATK_ERR_IO: return kExitIo;
    case LATK_ERR_CHECK_FAILED: return kExitCheck;
    default: return kExitDomain;
    }
}

[[noreturn]] void fail(latk_status s) {
    std::cerr << "error: " << latk_status_message(s) << ": " << latk_last_error() << "\n";
    std::exit(exit_code_for(s));
}

void check(latk_status s) {
    if (s != LATK_OK) fail(s);
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct OptionsHandle {
    latk_options* ptr;
    OptionsHandle() : ptr(latk_options_new()) {}
    ~OptionsHandle() { latk_options_free(ptr); }
    OptionsHandle(const OptionsHandle&) = delete;
    OptionsHandle& operator=(const OptionsHandle&) = delete;
};

// Flat "key = value" configuration; '#' starts a comment.
void apply_config(latk_options* opt, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open config file " << path << "\n";
        std::exit(kExitIo);
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                std::cerr << "error: " << path << ":" << lineno << ": expected key = value\n";
                std::exit(kExitUsage);
            }
            continue;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            check(latk_options_set(opt, key.c_str(), std::stod(val)));
        } catch (const std::exception&) {
            std::cerr << "error: " << path << ":" << lineno << ": bad value '" << val << "'\n";
            std::exit(kExitUsage);
        }
    }
}

bool parse_point(const std::string& s, double& x, double& y) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return false;
    try {
        x = std::stod(s.substr(0, comma));
        y = std::stod(s.substr(comma + 1));
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

// "1,2,3" or "lo:hi:step".
std::vector<double> parse_values(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double lo = 0, hi = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(s);
        if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 ||
            hi < lo) {
            std::cerr << "error: bad range '" << s << "' (want lo:hi:step)\n";
            std::exit(kExitUsage);
        }
        for (double v = lo; v < hi + 0.25 * step; v += step) out.push_back(std::min(v, hi));
        return out;
    }
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            std::cerr << "error: bad number '" << tok << "'\n";
            std::exit(kExitUsage);
        }
    }
    if (out.empty()) {
        std::cerr << "error: empty value list\n";
        std::exit(kExitUsage);
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot open output file " << path << "\n";
        std::exit(kExitIo);
    }
    out << content;
    out.flush();
    if (!out) {
        std::cerr << "error: write failed for " << path << "\n";
        std::exit(kExitIo);
    }
}

struct SweepRow {
    double alpha, b;
    int phase;
    double y_b, energy, est_error;
};

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string s = "alpha,b,phase,y_b,energy\n";
    for (const auto& r : rows) {
        s += fmt17(r.alpha) + "," + fmt17(r.b) + "," + latk_phase_name(r.phase) + "," +
             fmt17(r.y_b) + "," + fmt17(r.energy) + "\n";
    }
    return s;
}

json sweep_json(const std::vector<SweepRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"alpha", r.alpha},
                       {"b", r.b},
                       {"phase", latk_phase_name(r.phase)},
                       {"y_b", r.y_b},
                       {"energy", r.energy},
                       {"est_error", r.est_error}});
    }
    return arr;
}

int cmd_eval(const OptionsHandle& opt, double alpha, double b, const std::string& zspec,
             const std::string& out_path, const std::string& format,
             const std::string& replay_path) {
    if (!replay_path.empty()) {
        std::ifstream in(replay_path);
        if (!in) {
            std::cerr << "error: cannot open replay file " << replay_path << "\n";
            return kExitIo;
        }
        json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            std::cerr << "error: bad JSON in " << replay_path << ": " << e.what() << "\n";
            return kExitIo;
        }
        if (!j.is_array()) j = json::array({j});
        size_t mismatches = 0;
        for (const auto& rec : j) {
            const double a = rec.at("alpha").get<double>();
            const double bb = rec.value("b", 0.0);
            double x, y;
            if (rec.contains("x")) {
                x = rec.at("x").get<double>();
                y = rec.at("y").get<double>();
            } else { // sweep rows live on the critical ray
                x = 0.5;
                y = rec.at("y_b").get<double>();
            }
            latk_energy e;
            check(latk_diff_energy(opt.ptr, a, bb, x, y, &e));
            const double recorded = rec.contains("value") ? rec.at("value").get<double>()
                                                          : rec.at("energy").get<double>();
            if (e.value != recorded) {
                ++mismatches;
                std::cout << "mismatch alpha=" << fmt17(a) << " b=" << fmt17(bb)
                          << " recorded=" << fmt17(recorded) << " recomputed=" << fmt17(e.value)
                          << "\n";
            }
        }
        std::cout << (mismatches == 0 ? "replay ok: " : "replay FAILED: ") << j.size()
                  << " records, " << mismatches << " mismatches\n";
        return mismatches == 0 ? kExitOk : kExitCheck;
    }

    double x, y;
    if (!parse_point(zspec, x, y)) {
        std::cerr << "error: --z expects x,y\n";
        return kExitUsage;
    }
    latk_energy e;
    check(latk_diff_energy(opt.ptr, alpha, b, x, y, &e));
    std::cout << "value " << fmt17(e.value) << "\n";
    std::cout << "est_error " << fmt17(e.est_error) << "\n";
    if (!latk_theorem_covered(alpha, b))
        std::cout << "note: alpha < 2, outside the theorem-backed range\n";
    if (latk_nonexistence_regime(alpha, b))
        std::cout << "note: b >= 2 sqrt(2), no-minimizer regime\n";
    if (!out_path.empty()) {
        if (format == "csv") {
            write_file(out_path, "alpha,b,x,y,value,est_error\n" + fmt17(alpha) + "," + fmt17(b) +
                                     "," + fmt17(x) + "," + fmt17(y) + "," + fmt17(e.value) + "," +
                                     fmt17(e.est_error) + "\n");
        } else {
            const json j = {{"alpha", alpha}, {"b", b},           {"x", x},
                            {"y", y},         {"value", e.value}, {"est_error", e.est_error}};
            write_file(out_path, j.dump(2) + "\n");
        }
    }
    return kExitOk;
}

int cmd_reduce(const OptionsHandle& opt, const std::string& zspec, const std::string& out_path,
               const std::string& format) {
    double x, y;
    if (!parse_point(zspec, x, y)) {
        std::cerr << "error: --z expects x,y\n";
        return kExitUsage;
    }
    double rx, ry;
    char word[512];
    check(latk_reduce(opt.ptr, x, y, &rx, &ry, word, sizeof word));
    std::cout << "point " << fmt17(rx) << "," << fmt17(ry) << "\n";
    std::cout << "word " << (word[0] ? word : "(identity)") << "\n";
    std::cout << "on_gamma_c " << (latk_is_on_gamma_c(rx, ry, 1e-9) ? "yes" : "no") << "\n";
    if (!out_path.empty()) {
        if (format == "csv") {
            write_file(out_path, "x,y,reduced_x,reduced_y,word\n" + fmt17(x) + "," + fmt17(y) +
                                     "," + fmt17(rx) + "," + fmt17(ry) + "," + word + "\n");
        } else {
            const json j = {
                {"x", x}, {"y", y}, {"reduced_x", rx}, {"reduced_y", ry}, {"word", word}};
            write_file(out_path, j.dump(2) + "\n");
        }
    }
    return kExitOk;
}

int cmd_minimize(const OptionsHandle& opt, double alpha, double b, bool two_d) {
    latk_min_result r;
    check(two_d ? latk_minimize_2d(opt.ptr, alpha, b, &r)
                : latk_minimize_gamma_c(opt.ptr, alpha, b, &r));
    static const char* kinds[] = {"interior", "left_endpoint_hexagonal", "ceiling_hit"};
    std::cout << "argmin " << fmt17(r.x) << "," << fmt17(r.y) << "\n";
    std::cout << "value " << fmt17(r.value) << "\n";
    std::cout << "kind " << kinds[r.kind] << "\n";
    std::cout << "evaluations " << r.iterations << "\n";
    if (r.kind == LATK_MIN_CEILING_HIT)
        std::cout << "note: minimum ran into y_max, suspected nonexistence\n";
    return kExitOk;
}

int cmd_threshold(const OptionsHandle& opt, double alpha, double tol) {
    latk_threshold t;
    check(latk_find_bc1(opt.ptr, alpha, tol, &t));
    std::cout << "b_c1 " << fmt17(t.b_c1) << "\n";
    std::cout << "bracket_width " << fmt17(t.bracket_width) << "\n";
    return kExitOk;
}

int cmd_sweep(const OptionsHandle& opt, const std::string& alphas, const std::string& bs,
              const std::string& out_path, const std::string& format) {
    const auto avals = parse_values(alphas);
    const auto bvals = parse_values(bs);
    std::vector<std::pair<double, double>> cells;
    cells.reserve(avals.size() * bvals.size());
    for (double a : avals)
        for (double b : bvals) cells.push_back({a, b});
    std::vector<SweepRow> rows(cells.size());

    // Fan out one task per (alpha, b) cell, join before writing.
    std::atomic<size_t> next{0};
    std::atomic<int> status{LATK_OK};
    const unsigned workers = unsigned(
        std::min<size_t>(std::max(1u, std::thread::hardware_concurrency()), cells.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                latk_phase_result pr;
                const latk_status s =
                    latk_classify_phase(opt.ptr, cells[i].first, cells[i].second, &pr);
                if (s != LATK_OK) {
                    status.store(s);
                    return;
                }
                latk_energy e{0.0, 0.0};
                latk_diff_energy(opt.ptr, pr.alpha, pr.b, 0.5, pr.y_b, &e);
                rows[i] = {pr.alpha, pr.b, pr.phase, pr.y_b, pr.energy, e.est_error};
            }
        });
    }
    for (auto& t : pool) t.join();
    if (status.load() != LATK_OK) fail(static_cast<latk_status>(status.load()));

    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return a.alpha != b.alpha ? a.alpha < b.alpha : a.b < b.b;
    });
    const std::string content =
        (format == "json") ? sweep_json(rows).dump(2) + "\n" : sweep_csv(rows);
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
    return kExitOk;
}

int cmd_verify(const OptionsHandle& opt, const std::string& suite, int grid_n,
               const std::string& out_path, const std::string& format) {
    latk_report* rep = nullptr;
    check(latk_verify_run(opt.ptr, suite.c_str(), grid_n, &rep));
    const size_t n = latk_report_size(rep);
    json arr = json::array();
    std::string csv = "name,passed,margin,points,violations,hypothesis\n";
    size_t failures = 0;
    for (size_t i = 0; i < n; ++i) {
        const char *name = nullptr, *hyp = nullptr;
        double margin = 0;
        long points = 0, viol = 0;
        int passed = 0;
        latk_report_entry(rep, i, &name, &hyp, &margin, &points, &viol, &passed);
        if (!passed) ++failures;
        std::printf("%-4s %-32s margin=% .3e points=%ld violations=%ld\n",
                    passed ? "ok" : "FAIL", name, margin, points, viol);
        csv += std::string(name) + "," + (passed ? "1" : "0") + "," + fmt17(margin) + "," +
               std::to_string(points) + "," + std::to_string(viol) + ",\"" + hyp + "\"\n";
        arr.push_back({{"name", name},
                       {"passed", bool(passed)},
                       {"margin", margin},
                       {"points", points},
                       {"violations", viol},
                       {"hypothesis", hyp}});
    }
    std::printf("%zu checks, %zu failures\n", n, failures);
    latk_report_free(rep);
    if (!out_path.empty()) write_file(out_path, format == "csv" ? csv : arr.dump(2) + "\n");
    return failures == 0 ? kExitOk : kExitCheck;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-Gaussian lattice energy toolkit"};
    app.require_subcommand(1);
    OptionsHandle opt;

    std::string config_path;
    app.add_option("--config", config_path, "key = value settings file");

    auto* eval = app.add_subcommand("eval", "evaluate the difference energy at a point");
    double e_alpha = 2.0, e_b = 0.0, e_tol = 0.0;
    std::string e_z, e_out, e_format = "json", e_replay;
    eval->add_option("--alpha", e_alpha, "Gaussian scale");
    eval->add_option("--b", e_b, "mixing coefficient");
    eval->add_option("--z", e_z, "evaluation point x,y");
    eval->add_option("--tol", e_tol, "absolute series tolerance");
    eval->add_option("--out", e_out, "output file");
    eval->add_option("--format", e_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    eval->add_option("--replay", e_replay, "re-evaluate a previous JSON output and compare");

    auto* red = app.add_subcommand("reduce", "reduce a point to the fundamental domain");
    std::string r_z, r_out, r_format = "json";
    red->add_option("--z", r_z, "point x,y")->required();
    red->add_option("--out", r_out, "output file");
    red->add_option("--format", r_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* mini = app.add_subcommand("minimize", "minimize the energy along the critical ray");
    double m_alpha = 2.0, m_b = 0.0, m_ymax = 0.0, m_tol = 0.0;
    bool m_2d = false;
    mini->add_option("--alpha", m_alpha)->required();
    mini->add_option("--b", m_b)->required();
    mini->add_option("--y-max", m_ymax, "search ceiling");
    mini->add_option("--tol", m_tol, "argmin tolerance");
    mini->add_flag("--two-d", m_2d, "cross-check over the full fundamental domain");

    auto* thr = app.add_subcommand("threshold", "locate the first phase threshold b_c1(alpha)");
    double t_alpha = 2.0, t_tol = 1e-4, t_ymax = 0.0;
    thr->add_option("--alpha", t_alpha)->required();
    thr->add_option("--tol", t_tol, "bisection width in b");
    thr->add_option("--y-max", t_ymax, "search ceiling");

    auto* swp = app.add_subcommand("sweep", "classify phases over an (alpha, b) grid");
    std::string s_alphas, s_bs, s_out, s_format = "csv";
    double s_ymax = 0.0;
    swp->add_option("--alpha", s_alphas, "comma list or lo:hi:step")->required();
    swp->add_option("--b", s_bs, "comma list or lo:hi:step")->required();
    swp->add_option("--y-max", s_ymax, "search ceiling");
    swp->add_option("--out", s_out, "output file (stdout when omitted)");
    swp->add_option("--format", s_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* ver = app.add_subcommand("verify", "run the inequality verification suites");
    std::string v_suite = "all", v_out, v_format = "json";
    int v_grid = 0;
    ver->add_option("--suite", v_suite,
                    "theta, transversal, curvature, comparison, decay, constants, or all");
    ver->add_option("--grid", v_grid, "points per parameter dimension");
    ver->add_option("--out", v_out, "report file");
    ver->add_option("--format", v_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (!config_path.empty()) apply_config(opt.ptr, config_path);

    auto set_if = [&](const char* key, double v, bool given) {
        if (given) check(latk_options_set(opt.ptr, key, v));
    };

    if (eval->parsed()) {
        set_if("abs_tol", e_tol, eval->count("--tol") > 0);
        if (e_z.empty() && e_replay.empty()) {
            std::cerr << "error: eval needs --z or --replay\n";
            return kExitUsage;
        }
        return cmd_eval(opt, e_alpha, e_b, e_z, e_out, e_format, e_replay);
    }
    if (red->parsed()) return cmd_reduce(opt, r_z, r_out, r_format);
    if (mini->parsed()) {
        set_if("y_max", m_ymax, mini->count("--y-max") > 0);
        set_if("x_tol", m_tol, mini->count("--tol") > 0);
        return cmd_minimize(opt, m_alpha, m_b, m_2d);
    }
    if (thr->parsed()) {
        set_if("y_max", t_ymax, thr->count("--y-max") > 0);
        return cmd_threshold(opt, t_alpha, t_tol);
    }
    if (swp->parsed()) {
        set_if("y_max", s_ymax, swp->count("--y-max") > 0);
        return cmd_sweep(opt, s_alphas, s_bs, s_out, s_format);
    }
    if (ver->parsed()) return cmd_verify(opt, v_suite, v_grid, v_out, v_format);
    return kExitUsage;
}
