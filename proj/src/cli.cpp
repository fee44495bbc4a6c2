#include "wsim/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "wsim/analysis.hpp"
#include "wsim/report_io.hpp"

namespace wsim::cli {

namespace {

bool color_enabled(bool to_stdout) {
    if (!to_stdout) {
        return false;
    }
    const char* no_color = std::getenv("NO_COLOR");
    if (no_color != nullptr && no_color[0] != '\0') {
        return false;
    }
    return isatty(STDOUT_FILENO) == 1;
}

std::vector<ChannelParams> build_sweep_grid(const RunConfig& cfg) {
    const SweepSpec& spec = *cfg.sweep_spec;
    std::vector<ChannelParams> grid;
    grid.reserve(spec.steps);
    for (std::uint64_t i = 0; i < spec.steps; ++i) {
        const double t = spec.steps == 1
                             ? 0.0
                             : static_cast<double>(i) / static_cast<double>(spec.steps - 1);
        const double v = spec.start + (spec.stop - spec.start) * t;

        double a = cfg.a, b = cfg.b, c = cfg.c;
        double* swept = spec.parameter == "a" ? &a : spec.parameter == "b" ? &b : &c;
        const double rest2 = a * a + b * b + c * c - *swept * *swept;
        *swept = v;
        const double target2 = 1.0 - v * v;
        try {
            if (target2 < -kNormTol) {
                throw ParameterError("swept value exceeds 1 in magnitude");
            }
            double scale = 0.0;
            if (rest2 > 0.0) {
                scale = std::sqrt(std::max(target2, 0.0) / rest2);
            } else if (target2 > kNormTol) {
                throw ParameterError(
                    "cannot renormalize: the remaining amplitudes are all zero");
            }
            if (spec.parameter != "a") {
                a *= scale;
            }
            if (spec.parameter != "b") {
                b *= scale;
            }
            if (spec.parameter != "c") {
                c *= scale;
            }
            grid.emplace_back(a, b, c);
        } catch (const ParameterError& e) {
            std::ostringstream msg;
            msg << "sweep point " << i << " (" << spec.parameter << "=" << format_double(v)
                << "): " << e.what();
            throw ParameterError(msg.str());
        }
    }
    return grid;
}

int write_output(const RunConfig& cfg, const std::string& content) {
    if (!cfg.out_path) {
        std::cout << content;
        return std::cout.good() ? 0 : 1;
    }
    std::ofstream f(*cfg.out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file '" << *cfg.out_path << "'\n";
        return 1;
    }
    f << content;
    f.flush();
    if (!f.good()) {
        std::cerr << "error: failed writing output file '" << *cfg.out_path << "'\n";
        return 1;
    }
    return 0;
}

int report_failed_checks(const std::vector<Check>& checks) {
    int failures = 0;
    for (const auto& c : checks) {
        if (!c.passed) {
            ++failures;
            std::cerr << "check failed: " << c.name << " (residual "
                      << format_double(c.residual) << " > " << format_double(c.threshold)
                      << ")\n";
        }
    }
    return failures;
}

int run_report_mode(const RunConfig& cfg) {
    const ChannelParams params(cfg.a, cfg.b, cfg.c);
    const InputState input(cplx{cfg.alpha_re, cfg.alpha_im}, cplx{cfg.beta_re, cfg.beta_im});
    const std::optional<std::uint64_t> trials =
        cfg.mode == Mode::MonteCarlo ? std::optional<std::uint64_t>(cfg.trials)
                                     : std::nullopt;

    const ProtocolReport rep = report(params, input, trials, cfg.seed);
    const std::vector<Check> checks = run_checks(rep);

    std::string content;
    switch (cfg.format) {
    case OutputFormat::Json: content = report_json(rep); break;
    case OutputFormat::Csv: content = report_csv(rep); break;
    case OutputFormat::Table:
        content = report_table(rep, checks, color_enabled(!cfg.out_path));
        break;
    }
    const int io = write_output(cfg, content);
    if (io != 0) {
        return io;
    }
    return report_failed_checks(checks) == 0 ? 0 : 1;
}

int run_verify_povm(const RunConfig& cfg) {
    const ChannelParams params(cfg.a, cfg.b, cfg.c);
    const DiscriminationParams d = derive_params(params);
    const PovmReport rep{params, d, validate(build_set_a(d)), validate(build_set_b(d))};

    std::string content;
    switch (cfg.format) {
    case OutputFormat::Json: content = povm_report_json(rep); break;
    case OutputFormat::Csv: content = povm_report_csv(rep); break;
    case OutputFormat::Table:
        content = povm_report_table(rep, color_enabled(!cfg.out_path));
        break;
    }
    const int io = write_output(cfg, content);
    if (io != 0) {
        return io;
    }
    if (!rep.set_a.passed() || !rep.set_b.passed()) {
        std::cerr << "check failed: POVM axioms\n";
        return 1;
    }
    return 0;
}

int run_sweep(const RunConfig& cfg) {
    const InputState input(cplx{cfg.alpha_re, cfg.alpha_im}, cplx{cfg.beta_re, cfg.beta_im});
    const std::vector<ChannelParams> grid = build_sweep_grid(cfg);
    const std::vector<ProtocolReport> reports = sweep(grid, input);

    std::string content;
    switch (cfg.format) {
    case OutputFormat::Json: content = sweep_json(reports); break;
    case OutputFormat::Csv: content = sweep_csv(reports); break;
    case OutputFormat::Table:
        content = sweep_table(reports, color_enabled(!cfg.out_path));
        break;
    }
    const int io = write_output(cfg, content);
    if (io != 0) {
        return io;
    }
    int failures = 0;
    for (const auto& r : reports) {
        failures += report_failed_checks(run_checks(r));
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

SweepSpec parse_sweep_spec(const std::string& text) {
    std::vector<std::string> parts;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ':')) {
        parts.push_back(token);
    }
    if (parts.size() != 4) {
        throw UsageError("sweep spec must be param:start:stop:steps, e.g. c:0.5:0:11");
    }
    SweepSpec spec;
    spec.parameter = parts[0];
    if (spec.parameter != "a" && spec.parameter != "b" && spec.parameter != "c") {
        throw UsageError("sweep parameter must be one of a, b, c");
    }
    try {
        std::size_t used = 0;
        spec.start = std::stod(parts[1], &used);
        if (used != parts[1].size()) {
            throw std::invalid_argument(parts[1]);
        }
        spec.stop = std::stod(parts[2], &used);
        if (used != parts[2].size()) {
            throw std::invalid_argument(parts[2]);
        }
        const long long steps = std::stoll(parts[3], &used);
        if (used != parts[3].size() || steps < 1) {
            throw std::invalid_argument(parts[3]);
        }
        spec.steps = static_cast<std::uint64_t>(steps);
    } catch (const std::exception&) {
        throw UsageError("unparseable sweep spec '" + text + "'");
    }
    return spec;
}

RunConfig parse_args(int argc, const char* const* argv) {
    RunConfig cfg;
    std::string mode_name = "enumerate";
    std::string format_name = "table";
    std::string sweep_text;
    std::string out_path;

    CLI::App app{"Simulator for probabilistic teleportation of a two-particle entangled "
                 "state through a three-qubit W-class channel"};
    app.set_config("--config", "", "flat key=value config file; command line wins");
    app.add_option("--a", cfg.a, "channel amplitude a")->required();
    app.add_option("--b", cfg.b, "channel amplitude b")->required();
    app.add_option("--c", cfg.c, "channel amplitude c")->required();
    app.add_option("--alpha-re", cfg.alpha_re, "input alpha, real part");
    app.add_option("--alpha-im", cfg.alpha_im, "input alpha, imaginary part");
    app.add_option("--beta-re", cfg.beta_re, "input beta, real part");
    app.add_option("--beta-im", cfg.beta_im, "input beta, imaginary part");
    app.add_option("--mode", mode_name, "enumerate | montecarlo | verify-povm | sweep")
        ->check(CLI::IsMember({"enumerate", "montecarlo", "verify-povm", "sweep"}));
    app.add_option("--trials", cfg.trials, "Monte Carlo trial count");
    app.add_option("--seed", cfg.seed, "Monte Carlo master seed");
    app.add_option("--sweep", sweep_text, "sweep spec param:start:stop:steps");
    app.add_option("--format", format_name, "table | json | csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--out", out_path, "output path (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    cfg.mode = mode_name == "enumerate"     ? Mode::Enumerate
               : mode_name == "montecarlo"  ? Mode::MonteCarlo
               : mode_name == "verify-povm" ? Mode::VerifyPovm
                                            : Mode::Sweep;
    cfg.format = format_name == "table" ? OutputFormat::Table
                 : format_name == "json" ? OutputFormat::Json
                                         : OutputFormat::Csv;
    if (!out_path.empty()) {
        cfg.out_path = out_path;
    }
    if (!sweep_text.empty()) {
        cfg.sweep_spec = parse_sweep_spec(sweep_text);
    }

    if (cfg.mode == Mode::MonteCarlo && cfg.trials < 1) {
        throw UsageError("montecarlo mode requires --trials >= 1");
    }
    if (cfg.mode == Mode::Sweep && !cfg.sweep_spec) {
        throw UsageError("sweep mode requires --sweep param:start:stop:steps");
    }
    return cfg;
}

int run(const RunConfig& cfg) {
    switch (cfg.mode) {
    case Mode::Enumerate:
    case Mode::MonteCarlo: return run_report_mode(cfg);
    case Mode::VerifyPovm: return run_verify_povm(cfg);
    case Mode::Sweep: return run_sweep(cfg);
    }
    return 2;
}

int cli_main(int argc, const char* const* argv) {
    try {
        const RunConfig cfg = parse_args(argc, argv);
        return run(cfg);
    } catch (const HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace wsim::cli
