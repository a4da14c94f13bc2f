#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "biquant/oracle.hpp"

namespace biquant::cli {

/// Process exit codes; stable across releases.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 1,
    kExitDegenerate = 2,
    kExitVerificationFailed = 3,
};

enum class OutputFormat { Text, Json };

/// Locale-independent shortest-exact-ish rendering with `digits` significant digits.
std::string format_number(double value, int digits);

/// CSV body for a level sweep, header `a,f,g,F,mi_bits,n_roots,degenerate`,
/// numbers at 17 significant digits, '\n' line endings.
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct SolveOptions {
    std::filesystem::path config;
    OutputFormat format = OutputFormat::Text;
    std::optional<std::filesystem::path> out;
};

struct SweepOptions {
    std::filesystem::path config;
    double a_min = 0.01;
    double a_max = 0.99;
    std::size_t steps = 99;
    std::filesystem::path out;
};

struct VerifyOptions {
    std::filesystem::path config;
    std::optional<std::size_t> n_thresholds; // default: solver root count, capped at 2
    double grid_step = 0.02;
    double fd_step = 1e-5;
    OutputFormat format = OutputFormat::Text;
    std::optional<std::filesystem::path> out;
};

struct ClassifyOptions {
    std::filesystem::path config;
    OutputFormat format = OutputFormat::Text;
    std::optional<std::filesystem::path> out;
};

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_classify(const ClassifyOptions& opts, std::ostream& out, std::ostream& err);

} // namespace biquant::cli
