#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wsim/errors.hpp"

namespace wsim::cli {

enum class Mode { Enumerate, MonteCarlo, VerifyPovm, Sweep };
enum class OutputFormat { Table, Json, Csv };

struct SweepSpec {
    std::string parameter; // "a", "b" or "c"
    double start = 0.0;
    double stop = 0.0;
    std::uint64_t steps = 0; // number of grid points, inclusive of both ends
};

struct RunConfig {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double alpha_re = 0.70710678118654752440;
    double alpha_im = 0.0;
    double beta_re = 0.70710678118654752440;
    double beta_im = 0.0;
    Mode mode = Mode::Enumerate;
    std::uint64_t trials = 0; // 0 = not set
    std::uint64_t seed = 0;
    std::optional<SweepSpec> sweep_spec;
    OutputFormat format = OutputFormat::Table;
    std::optional<std::string> out_path; // standard output when absent
};

/// Thrown when --help (or --version) short-circuits a run; carries the text
/// to print on standard output.
struct HelpRequested {
    std::string text;
};

/// Parses flags and an optional flat key=value config file (command line
/// wins). Throws UsageError on bad input and HelpRequested for --help.
RunConfig parse_args(int argc, const char* const* argv);

/// Colon-separated "param:start:stop:steps", e.g. "c:0.5:0:11".
SweepSpec parse_sweep_spec(const std::string& text);

/// Executes a parsed config. Returns 0 on success, 1 when a verification
/// check or I/O fails, 2 on parameter errors.
int run(const RunConfig& cfg);

/// Full entry point: parse, run, map errors to the 0/1/2 exit contract.
int cli_main(int argc, const char* const* argv);

}  // namespace wsim::cli
