// biquant: optimal binary quantizers for binary-input continuous-output channels.
//
//   biquant solve    --config ch.json [--format text|json] [--out path]
//   biquant sweep    --config ch.json --out levels.csv [--a-min 0.01 --a-max 0.99 --steps 99]
//   biquant verify   --config ch.json [--n-thresholds n] [--grid-step 0.02] [--fd-step 1e-5]
//   biquant classify --config ch.json [--format text|json]

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace biquant::cli;

int main(int argc, char** argv) {
    CLI::App app{"Mutual-information-maximizing binary quantizers"};
    app.require_subcommand(1);

    const std::map<std::string, OutputFormat> formats{{"text", OutputFormat::Text},
                                                      {"json", OutputFormat::Json}};

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "find the optimal level a* and its thresholds");
    solve_cmd->add_option("--config", solve.config, "channel config (JSON)")->required();
    solve_cmd->add_option("--format", solve.format)
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    solve_cmd->add_option("--out", solve.out, "write the report here instead of stdout");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "tabulate f, g, F and I(X;Z) over levels a");
    sweep_cmd->add_option("--config", sweep.config)->required();
    sweep_cmd->add_option("--a-min", sweep.a_min);
    sweep_cmd->add_option("--a-max", sweep.a_max);
    sweep_cmd->add_option("--steps", sweep.steps, "number of levels (>= 2)");
    sweep_cmd->add_option("--out", sweep.out, "CSV output path")->required();

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "compare against brute force and lemma checks");
    verify_cmd->add_option("--config", verify.config)->required();
    verify_cmd->add_option("--n-thresholds", verify.n_thresholds, "oracle tuple size (1-3)");
    verify_cmd->add_option("--grid-step", verify.grid_step);
    verify_cmd->add_option("--fd-step", verify.fd_step);
    verify_cmd->add_option("--format", verify.format)
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    verify_cmd->add_option("--out", verify.out);

    ClassifyOptions classify;
    auto* classify_cmd =
        app.add_subcommand("classify", "monotonicity of r(y) and single-threshold prediction");
    classify_cmd->add_option("--config", classify.config)->required();
    classify_cmd->add_option("--format", classify.format)
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    classify_cmd->add_option("--out", classify.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    if (*solve_cmd) return cmd_solve(solve, std::cout, std::cerr);
    if (*sweep_cmd) return cmd_sweep(sweep, std::cout, std::cerr);
    if (*verify_cmd) return cmd_verify(verify, std::cout, std::cerr);
    return cmd_classify(classify, std::cout, std::cerr);
}
