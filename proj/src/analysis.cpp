#include "wsim/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace wsim {

namespace {

// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based stream: the whole sequence is a function of (seed, trial),
// so parallel and serial runs agree and reruns are bitwise identical.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t trial) : state_(mix(mix(seed) ^ trial)) {}

    double uniform() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return static_cast<double>(mix(state_) >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// Inverse CDF over a short discrete distribution; rounding slack falls into
// the last bucket.
template <std::size_t N>
std::size_t pick(const std::array<double, N>& probs, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < N; ++i) {
        acc += probs[i];
        if (u < acc) {
            return i;
        }
    }
    return N - 1;
}

struct OutcomeDistributions {
    std::array<double, 4> bell{};
    std::array<double, 4> vn1_given_bell{};
    std::array<std::array<double, 3>, 4> povm_given_bell{}; // conditioned on vn = 0
};

// Rows are laid out 4 per Bell outcome: conclusive1, conclusive2,
// inconclusive, then the Von Neumann 1 terminal.
OutcomeDistributions conditionals(const BranchTable& t) {
    OutcomeDistributions d;
    for (std::size_t k = 0; k < 4; ++k) {
        const double p_vn1 = t.rows[4 * k + 3].probability;
        double p_bell = p_vn1;
        for (std::size_t i = 0; i < 3; ++i) {
            p_bell += t.rows[4 * k + i].probability;
        }
        d.bell[k] = p_bell;
        d.vn1_given_bell[k] = p_bell > 0.0 ? p_vn1 / p_bell : 0.0;
        const double p_vn0 = p_bell - p_vn1;
        for (std::size_t i = 0; i < 3; ++i) {
            d.povm_given_bell[k][i] =
                p_vn0 > 0.0 ? t.rows[4 * k + i].probability / p_vn0 : 0.0;
        }
    }
    return d;
}

constexpr std::array<PovmOutcome, 3> kPovmOrder{
    PovmOutcome::Conclusive1, PovmOutcome::Conclusive2, PovmOutcome::Inconclusive};

}  // namespace

double BranchTable::total(Classification c) const {
    double acc = 0.0;
    for (const auto& r : rows) {
        if (r.classification == c) {
            acc += r.probability;
        }
    }
    return acc;
}

double BranchTable::total_probability() const {
    double acc = 0.0;
    for (const auto& r : rows) {
        acc += r.probability;
    }
    return acc;
}

BranchTable enumerate(const ChannelParams& p, const InputState& s) {
    const StateVector composite = build_composite(p, s);
    const DiscriminationParams d = derive_params(p);

    BranchTable table;
    table.rows.reserve(16);
    for (const BellBranch& bb : alice_bell_measure(composite)) {
        const auto vns = bob_vonneumann(bb.residual);
        const StateVector state25A = bob_attach_and_cnot(vns[0].residual, bb.outcome);
        const auto povms = alice_povm(state25A, bb.outcome, d);

        for (std::size_t i = 0; i < 3; ++i) {
            BranchRecord rec;
            rec.outcomes = StepOutcomes{bb.outcome, 0, kPovmOrder[i]};
            rec.probability = povms[i].probability;
            rec.classification = i < 2 ? Classification::Success
                                       : Classification::FailInconclusive;
            rec.zero_probability = rec.probability <= kZeroProb;
            if (rec.classification == Classification::Success && !rec.zero_probability) {
                rec.fidelity =
                    finish_conclusive(*povms[i].collapsed, bb.outcome, kPovmOrder[i], s)
                        .fidelity;
            }
            table.rows.push_back(std::move(rec));
        }

        BranchRecord vn1;
        vn1.outcomes = StepOutcomes{bb.outcome, 1, std::nullopt};
        vn1.probability = vns[1].probability;
        vn1.classification = Classification::FailVonNeumann;
        vn1.zero_probability = vn1.probability <= kZeroProb;
        table.rows.push_back(std::move(vn1));
    }
    return table;
}

McStats sample(const ChannelParams& p, const InputState& s, std::uint64_t trials,
               std::uint64_t seed) {
    if (trials == 0) {
        throw ParameterError("Monte Carlo requires at least one trial");
    }
    const OutcomeDistributions dist = conditionals(enumerate(p, s));

    McStats st;
    st.trials = trials;
    st.seed = seed;
    for (std::uint64_t i = 0; i < trials; ++i) {
        TrialRng rng(seed, i);
        const std::size_t k = pick(dist.bell, rng.uniform());
        if (rng.uniform() < dist.vn1_given_bell[k]) {
            ++st.fail_vn;
            continue;
        }
        const std::size_t j = pick(dist.povm_given_bell[k], rng.uniform());
        if (j == 2) {
            ++st.fail_inconclusive;
        } else {
            ++st.successes;
        }
    }
    st.p_hat = static_cast<double>(st.successes) / static_cast<double>(trials);
    st.std_err = std::sqrt(st.p_hat * (1.0 - st.p_hat) / static_cast<double>(trials));
    return st;
}

ProtocolReport report(const ChannelParams& p, const InputState& s,
                      std::optional<std::uint64_t> trials, std::uint64_t seed) {
    ProtocolReport r{p, s};
    r.branches = enumerate(p, s);
    r.p_success_exact = r.branches.total(Classification::Success);
    r.p_fail_vn_exact = r.branches.total(Classification::FailVonNeumann);
    r.p_fail_inconclusive_exact = r.branches.total(Classification::FailInconclusive);
    r.p_success_formula = 2.0 * p.b() * p.b();

    const DiscriminationParams d = derive_params(p);
    r.povm_a = validate(build_set_a(d));
    r.povm_b = validate(build_set_b(d));

    r.min_success_fidelity = 1.0;
    for (const auto& row : r.branches.rows) {
        if (row.fidelity) {
            r.min_success_fidelity = std::min(r.min_success_fidelity, *row.fidelity);
        }
    }

    if (trials) {
        r.mc = sample(p, s, *trials, seed);
    }
    return r;
}

std::vector<ProtocolReport> sweep(const std::vector<ChannelParams>& grid,
                                  const InputState& s) {
    std::vector<ProtocolReport> out;
    out.reserve(grid.size());
    for (const auto& p : grid) {
        out.push_back(report(p, s));
    }
    return out;
}

std::vector<Check> run_checks(const ProtocolReport& r) {
    std::vector<Check> checks;
    auto add = [&](std::string name, double residual, double threshold) {
        checks.push_back(Check{std::move(name), residual, threshold,
                               residual <= threshold});
    };

    add("success_matches_formula",
        std::abs(r.p_success_exact - r.p_success_formula), kEqTol);
    add("failure_vonneumann_is_c_squared",
        std::abs(r.p_fail_vn_exact - r.params.c() * r.params.c()), kEqTol);
    add("failure_inconclusive_is_a2_minus_b2",
        std::abs(r.p_fail_inconclusive_exact -
                 (r.params.a() * r.params.a() - r.params.b() * r.params.b())),
        kEqTol);
    add("probabilities_sum_to_one",
        std::abs(r.p_success_exact + r.p_fail_vn_exact + r.p_fail_inconclusive_exact - 1.0),
        kEqTol);
    add("success_fidelity_is_one", 1.0 - r.min_success_fidelity, kEqTol);

    auto add_povm = [&](const char* name, const PovmValidation& v) {
        const double residual =
            std::max({v.completeness_residual, v.unambiguity_residual,
                      std::max(0.0, -v.min_eigenvalue)});
        add(name, residual, kEqTol);
    };
    add_povm("povm_set_a_axioms", r.povm_a);
    add_povm("povm_set_b_axioms", r.povm_b);

    if (r.mc) {
        add("mc_within_3_sigma", std::abs(r.mc->p_hat - r.p_success_exact),
            3.0 * r.mc->std_err);
    }
    return checks;
}

bool all_passed(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.passed; });
}

}  // namespace wsim
