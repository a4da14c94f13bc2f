#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "config.hpp"

namespace biquant::cli {

using nlohmann::json;

std::string format_number(double value, int digits) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
    return {buf, res.ptr};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string csv = "a,f,g,F,mi_bits,n_roots,degenerate\n";
    for (const auto& r : rows) {
        csv += format_number(r.a, 17) + ',' + format_number(r.f, 17) + ',' +
               format_number(r.g, 17) + ',' + format_number(r.F, 17) + ',' +
               format_number(r.mi_bits, 17) + ',' + std::to_string(r.n_roots) + ',' +
               (r.degenerate ? "1" : "0") + '\n';
    }
    return csv;
}

namespace {

std::string fmt6(double v) { return format_number(v, 6); }

std::string tuple_text(const ThresholdVector& h) {
    std::string s = "(";
    for (std::size_t i = 0; i < h.size(); ++i) s += (i ? ", " : "") + fmt6(h[i]);
    return s + ")";
}

// Writes the finished report once, to the requested file or to `out`.
int emit(const std::string& text, const std::optional<std::filesystem::path>& path,
         std::ostream& out, std::ostream& err) {
    if (!path) {
        out << text;
        return kExitOk;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) {
        err << "error: cannot write " << path->string() << '\n';
        return kExitConfigError;
    }
    return kExitOk;
}

// Runs `body` with config errors and solver failures mapped to exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const NoSignChange& e) {
        err << "no stationary point: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const DegenerateChannel& e) {
        err << "degenerate channel: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const NotConverged& e) {
        err << "not converged: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kExitConfigError;
    }
}

} // namespace

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        const auto cfg = load_config(opts.config);
        const auto design = solve(cfg.channel, cfg.solver);
        const bool single = predict_single_threshold(cfg.channel, cfg.solver.grid_points);

        std::ostringstream s;
        if (opts.format == OutputFormat::Json) {
            auto j = design_to_json(design);
            j["single_threshold_predicted"] = single;
            s << j.dump(2) << '\n';
        } else {
            s << "a*                 " << fmt6(design.a_star) << '\n'
              << "r*                 " << fmt6(design.r_star) << '\n'
              << "thresholds         " << tuple_text(design.thresholds) << '\n'
              << "mapping            " << to_string(design.mapping) << '\n'
              << "A11, A22           " << fmt6(design.channel.a11) << ", "
              << fmt6(design.channel.a22) << '\n'
              << "I(X;Z)             " << fmt6(design.mi_bits) << " bits\n"
              << "residual           " << fmt6(design.stationarity_residual) << '\n'
              << "iterations         " << design.iterations << '\n'
              << "single-threshold   " << (single ? "predicted" : "not predicted") << '\n';
            for (const auto& w : design.warnings) s << "warning: " << w << '\n';
        }
        return emit(s.str(), opts.out, out, err);
    });
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        if (!(opts.a_min > 0.0 && opts.a_min < opts.a_max && opts.a_max < 1.0))
            throw ConfigError("sweep needs 0 < a_min < a_max < 1");
        if (opts.steps < 2) throw ConfigError("sweep needs steps >= 2");
        const auto cfg = load_config(opts.config);
        std::vector<double> grid(opts.steps);
        for (std::size_t k = 0; k < opts.steps; ++k)
            grid[k] = k + 1 == opts.steps
                          ? opts.a_max
                          : opts.a_min + (opts.a_max - opts.a_min) * static_cast<double>(k) /
                                             static_cast<double>(opts.steps - 1);
        const auto rows = sweep_a(cfg.channel, grid, cfg.solver.grid_points);
        return emit(sweep_csv(rows), opts.out, out, err);
    });
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        const auto cfg = load_config(opts.config);
        const auto design = solve(cfg.channel, cfg.solver);
        const std::size_t n = opts.n_thresholds.value_or(
            std::clamp<std::size_t>(design.thresholds.size(), 1, 2));
        const auto oracle = grid_search(cfg.channel, n, opts.grid_step);
        const auto lemmas = lemma_checks(cfg.channel, level_grid(0.05, 0.95, 0.05), opts.fd_step,
                                         cfg.solver.grid_points);
        const double gap = design.mi_bits - oracle.best_mi_bits;
        const bool gap_ok = gap >= -1e-4;
        const bool ok = gap_ok && lemmas.all_pass();

        std::ostringstream s;
        if (opts.format == OutputFormat::Json) {
            json checks = json::array();
            for (const auto& c : lemmas.checks)
                checks.push_back({{"name", c.name},
                                  {"pass", c.pass},
                                  {"gating", c.gating},
                                  {"worst_violation", c.worst_violation},
                                  {"points_checked", c.points_checked}});
            s << json{{"solver_mi_bits", design.mi_bits},
                      {"solver_thresholds", design.thresholds.vector()},
                      {"oracle_n_thresholds", n},
                      {"oracle_grid_step", opts.grid_step},
                      {"oracle_mi_bits", oracle.best_mi_bits},
                      {"oracle_thresholds", oracle.best_thresholds.vector()},
                      {"gap_bits", gap},
                      {"lemma_checks", checks},
                      {"pass", ok}}
                     .dump(2)
              << '\n';
        } else {
            s << "solver   " << design.thresholds.size() << " threshold(s) "
              << tuple_text(design.thresholds) << "  I = " << fmt6(design.mi_bits) << " bits\n"
              << "oracle   " << n << " threshold(s) " << tuple_text(oracle.best_thresholds)
              << "  I = " << fmt6(oracle.best_mi_bits) << " bits  (step " << fmt6(opts.grid_step)
              << ", " << oracle.n_evaluated << " evaluations)\n"
              << "gap      " << fmt6(gap) << " bits  " << (gap_ok ? "ok" : "FAIL") << '\n';
            if (design.thresholds.size() != n && gap > 0.0)
                s << "         the " << design.thresholds.size()
                  << "-threshold design beats the best " << n << "-threshold grid quantizer\n";
            s << "\ncheck                 result  worst violation  points\n";
            for (const auto& c : lemmas.checks) {
                std::string name = c.name;
                name.resize(22, ' ');
                s << name << (c.pass ? "pass  " : (c.gating ? "FAIL  " : "info  ")) << "  "
                  << fmt6(c.worst_violation) << "  " << c.points_checked << '\n';
            }
            s << (ok ? "\nverification passed\n" : "\nverification FAILED\n");
        }
        const int written = emit(s.str(), opts.out, out, err);
        if (written != kExitOk) return written;
        return ok ? kExitOk : kExitVerificationFailed;
    });
}

int cmd_classify(const ClassifyOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        const auto cfg = load_config(opts.config);
        const auto grid = cfg.solver.grid_points;
        const auto mono = classify_monotonicity(cfg.channel, grid);
        const auto shift = check_log_concavity_shift(cfg.channel, grid);
        const bool single = predict_single_threshold(cfg.channel, grid);

        std::ostringstream s;
        if (opts.format == OutputFormat::Json) {
            s << json{{"monotonicity", std::string(to_string(mono.kind))},
                      {"grid_points", mono.grid_points},
                      {"flat", mono.flat},
                      {"shift_detected", shift.shift_detected},
                      {"mu", shift.mu},
                      {"log_concave", shift.log_concave},
                      {"log_convex", shift.log_convex},
                      {"single_threshold_optimal", single}}
                     .dump(2)
              << '\n';
        } else {
            s << to_string(mono.kind) << "; single-threshold optimal: " << (single ? "yes" : "no")
              << '\n'
              << "  r(y) on " << mono.grid_points << " grid points"
              << (mono.flat ? " (flat: r is constant)" : "") << '\n';
            if (shift.shift_detected)
                s << "  phi1(y) = phi0(y - " << fmt6(shift.mu) << "); phi0 log-concave: "
                  << (shift.log_concave ? "yes" : "no")
                  << ", log-convex: " << (shift.log_convex ? "yes" : "no") << '\n';
            else
                s << "  phi1 is not a translate of phi0\n";
        }
        return emit(s.str(), opts.out, out, err);
    });
}

} // namespace biquant::cli
