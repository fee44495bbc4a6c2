#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsim/channel.hpp"
#include "wsim/povm.hpp"
#include "wsim/protocol.hpp"

namespace wsim {

/// One leaf of the measurement-outcome tree.
struct BranchRecord {
    StepOutcomes outcomes;
    double probability = 0.0;      // exact joint probability of the leaf
    Classification classification = Classification::Success;
    std::optional<double> fidelity; // reachable Success leaves only
    bool zero_probability = false;  // retained for table stability, flagged
};

/// All 16 leaves (4 Bell x {3 POVM after Von Neumann 0, Von Neumann 1}) in
/// fixed order. Probabilities sum to 1.
struct BranchTable {
    std::vector<BranchRecord> rows;

    double total(Classification c) const;
    double total_probability() const;
};

struct McStats {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t fail_vn = 0;
    std::uint64_t fail_inconclusive = 0;
    double p_hat = 0.0;
    double std_err = 0.0;
    std::uint64_t seed = 0;

    bool operator==(const McStats&) const = default;
};

struct ProtocolReport {
    ChannelParams params;
    InputState input;
    double p_success_exact = 0.0;
    double p_fail_vn_exact = 0.0;
    double p_fail_inconclusive_exact = 0.0;
    double p_success_formula = 0.0; // 2 b^2
    BranchTable branches;
    std::optional<McStats> mc;
    PovmValidation povm_a{};
    PovmValidation povm_b{};
    double min_success_fidelity = 1.0; // over reachable Success leaves; 1 if none
};

/// Exact enumeration of the full outcome tree. Zero-probability paths are
/// kept (probability 0, flagged) so the table shape is parameter-independent.
BranchTable enumerate(const ChannelParams& p, const InputState& s);

/// Seeded Monte Carlo over the exact conditional outcome distributions.
/// Trial i's randomness is derived from (seed, i) alone, so results are
/// reproducible and independent of evaluation order.
McStats sample(const ChannelParams& p, const InputState& s, std::uint64_t trials,
               std::uint64_t seed);

/// Full report: enumeration, optional sampling, POVM validation for both
/// sets, and the minimum fidelity over reachable Success leaves.
ProtocolReport report(const ChannelParams& p, const InputState& s,
                      std::optional<std::uint64_t> trials = std::nullopt,
                      std::uint64_t seed = 0);

/// One report per grid point.
std::vector<ProtocolReport> sweep(const std::vector<ChannelParams>& grid,
                                  const InputState& s);

struct Check {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

/// Verification checklist for a report: closed-form probability identities,
/// fidelity floor, POVM axioms, and (when sampled) the 3-sigma consistency
/// of the Monte Carlo estimate.
std::vector<Check> run_checks(const ProtocolReport& r);

bool all_passed(const std::vector<Check>& checks);

}  // namespace wsim
