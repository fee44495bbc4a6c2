#include "wsim/protocol.hpp"

#include <cmath>
#include <utility>

namespace wsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

const Labels kBellTargets{"3", "4"};
const Label kVnTarget = "1";
const Label kPovmTarget = "5";
const Label kAncilla = "A";
const Labels kBobLabels{"2", "A"};

std::size_t bell_index(BellOutcome o) {
    for (std::size_t i = 0; i < kBellOutcomes.size(); ++i) {
        if (kBellOutcomes[i] == o) {
            return i;
        }
    }
    throw ProtocolError("invalid Bell outcome");
}

Transcript make_transcript(const StepOutcomes& o) {
    Transcript t;
    t.messages.push_back({"Alice", "Bob", to_string(o.bell)});
    t.messages.push_back({"Bob", "Alice", o.vonneumann == 0 ? "0" : "1"});
    if (o.povm) {
        t.messages.push_back({"Alice", "Bob", to_string(*o.povm)});
    }
    return t;
}

// Phi-family leaves hold (2,A) weight on {|01>,|10>}, Psi-family on
// {|00>,|11>}; anything else means an upstream bug.
void require_family_support(const StateVector& state2A, BellFamily family) {
    const double off = family == BellFamily::Phi
                           ? std::abs(state2A.amp("00")) + std::abs(state2A.amp("11"))
                           : std::abs(state2A.amp("01")) + std::abs(state2A.amp("10"));
    if (off > 1e-8) {
        throw ProtocolError("state does not match the keyed correction family");
    }
}

}  // namespace

std::string to_string(BellOutcome o) {
    std::string s = o.family == BellFamily::Phi ? "Phi" : "Psi";
    s += o.sign == BellSign::Plus ? '+' : '-';
    return s;
}

std::string to_string(PovmOutcome o) {
    switch (o) {
    case PovmOutcome::Conclusive1: return "conclusive1";
    case PovmOutcome::Conclusive2: return "conclusive2";
    case PovmOutcome::Inconclusive: return "inconclusive";
    }
    throw ProtocolError("invalid POVM outcome");
}

std::string to_string(Classification c) {
    switch (c) {
    case Classification::Success: return "Success";
    case Classification::FailVonNeumann: return "FailVonNeumann";
    case Classification::FailInconclusive: return "FailInconclusive";
    }
    throw ProtocolError("invalid classification");
}

std::array<StateVector, 4> bell_basis(const Label& l1, const Label& l2) {
    const Labels ls{l1, l2};
    return {
        StateVector::from_terms(ls, {{"00", kInvSqrt2}, {"11", kInvSqrt2}}),
        StateVector::from_terms(ls, {{"00", kInvSqrt2}, {"11", -kInvSqrt2}}),
        StateVector::from_terms(ls, {{"01", kInvSqrt2}, {"10", kInvSqrt2}}),
        StateVector::from_terms(ls, {{"01", kInvSqrt2}, {"10", -kInvSqrt2}}),
    };
}

std::array<BellBranch, 4> alice_bell_measure(const StateVector& composite) {
    const Labels expected{"1", "2", "3", "4", "5"};
    if (composite.labels() != expected) {
        throw LabelError("composite must carry labels (1,2,3,4,5)");
    }
    const auto basis = bell_basis();
    std::array<BellBranch, 4> out{{
        {kBellOutcomes[0], 0.0, StateVector::zero({"1", "2", "5"})},
        {kBellOutcomes[1], 0.0, StateVector::zero({"1", "2", "5"})},
        {kBellOutcomes[2], 0.0, StateVector::zero({"1", "2", "5"})},
        {kBellOutcomes[3], 0.0, StateVector::zero({"1", "2", "5"})},
    }};
    for (std::size_t i = 0; i < 4; ++i) {
        Projection pr = project(composite, kBellTargets, basis[i]);
        out[i] = BellBranch{kBellOutcomes[i], pr.probability, std::move(pr.residual)};
    }
    return out;
}

std::array<VonNeumannBranch, 2> bob_vonneumann(const StateVector& residual125) {
    const Labels expected{"1", "2", "5"};
    if (residual125.labels() != expected) {
        throw LabelError("Von Neumann input must carry labels (1,2,5)");
    }
    Projection p0 = project(residual125, {kVnTarget}, StateVector::basis({kVnTarget}, "0"));
    Projection p1 = project(residual125, {kVnTarget}, StateVector::basis({kVnTarget}, "1"));
    return {VonNeumannBranch{0, p0.probability, std::move(p0.residual)},
            VonNeumannBranch{1, p1.probability, std::move(p1.residual)}};
}

StateVector bob_attach_and_cnot(const StateVector& residual25, BellOutcome bell) {
    const Labels expected{"2", "5"};
    if (residual25.labels() != expected) {
        throw LabelError("ancilla attachment expects labels (2,5)");
    }
    const char* init = bell.family == BellFamily::Phi ? "1" : "0";
    StateVector with_ancilla = tensor(residual25, StateVector::basis({kAncilla}, init));
    return apply(Operator::cnot(), {"2", kAncilla}, with_ancilla);
}

double decompose_check(const StateVector& state, BellOutcome bell,
                       const DiscriminationParams& d) {
    const Labels expected{"2", "5", "A"};
    if (state.labels() != expected) {
        throw LabelError("decomposition check expects labels (2,5,A)");
    }
    const double x = d.x1();
    const double y = d.y1();
    const bool phi = bell.family == BellFamily::Phi;

    // Coefficients of the two surviving basis strings; the dual-state
    // weights follow by dividing out x1 (resp. y1, zero when y1 = 0 since
    // those terms cancel in the sum).
    const cplx g_plus = std::sqrt(2.0) * state.amp(phi ? "011" : "000");
    const cplx g_minus = std::sqrt(2.0) * state.amp(phi ? "100" : "111");
    const cplx w_plus = g_plus / x;
    const cplx w_minus = y > 0.0 ? g_minus / y : cplx{0.0, 0.0};

    StateVector pair_sum = StateVector::zero(kBobLabels);
    StateVector pair_diff = StateVector::zero(kBobLabels);
    if (phi) {
        pair_sum = StateVector::from_terms(kBobLabels, {{"01", w_plus}, {"10", w_minus}});
        pair_diff = StateVector::from_terms(kBobLabels, {{"01", w_plus}, {"10", -w_minus}});
    } else {
        pair_sum = StateVector::from_terms(kBobLabels, {{"00", w_plus}, {"11", w_minus}});
        pair_diff = StateVector::from_terms(kBobLabels, {{"00", w_plus}, {"11", -w_minus}});
    }
    const StateVector psi_plus =
        phi ? StateVector::from_terms({kPovmTarget}, {{"1", x}, {"0", y}})
            : StateVector::from_terms({kPovmTarget}, {{"0", x}, {"1", y}});
    const StateVector psi_minus =
        phi ? StateVector::from_terms({kPovmTarget}, {{"1", x}, {"0", -y}})
            : StateVector::from_terms({kPovmTarget}, {{"0", x}, {"1", -y}});

    const cplx half_inv_sqrt2{0.5 * kInvSqrt2, 0.0};
    StateVector rhs = half_inv_sqrt2 * (tensor(pair_sum, psi_plus) +
                                        tensor(pair_diff, psi_minus));
    return max_abs_diff(reorder(rhs, expected), state);
}

std::array<PovmBranch, 3> alice_povm(const StateVector& state25A, BellOutcome bell,
                                     const DiscriminationParams& d) {
    const Labels expected{"2", "5", "A"};
    if (state25A.labels() != expected) {
        throw LabelError("POVM step expects labels (2,5,A)");
    }
    const PovmSet set =
        bell.family == BellFamily::Phi ? build_set_a(d) : build_set_b(d);

    std::array<PovmBranch, 3> out{{
        {PovmOutcome::Conclusive1, 0.0, std::nullopt},
        {PovmOutcome::Conclusive2, 0.0, std::nullopt},
        {PovmOutcome::Inconclusive, 0.0, std::nullopt},
    }};
    const double branch_weight = state25A.squared_norm();
    if (branch_weight <= kZeroProb) {
        return out; // unreachable branch, all outcomes stay at probability 0
    }
    const StateVector unit = state25A.normalized();
    const auto cond = povm_probabilities(set.effects(), kPovmTarget, unit);
    for (std::size_t i = 0; i < 3; ++i) {
        out[i].probability = branch_weight * cond[i];
        if (cond[i] > kZeroProb) {
            out[i].collapsed = povm_collapse(set.effects(), i, kPovmTarget, unit);
        }
    }
    return out;
}

Operator correction_unitary(BellOutcome bell, PovmOutcome conclusive) {
    if (conclusive == PovmOutcome::Inconclusive) {
        throw ProtocolError("no correction exists for an inconclusive outcome");
    }
    const double s = bell.sign == BellSign::Plus ? 1.0 : -1.0;
    const bool first = conclusive == PovmOutcome::Conclusive1;
    if (bell.family == BellFamily::Phi) {
        // (±|0><1| ± |1><0|)_2: first sign tracks the Bell sign, the second
        // flips for the minus-target conclusive outcome.
        return first ? Operator::mat2(0.0, s, 1.0, 0.0)
                     : Operator::mat2(0.0, s, -1.0, 0.0);
    }
    return first ? Operator::mat2(s, 0.0, 0.0, 1.0)
                 : Operator::mat2(s, 0.0, 0.0, -1.0);
}

StateVector expected_conclusive_state(BellOutcome bell, PovmOutcome conclusive,
                                      const InputState& s) {
    if (conclusive == PovmOutcome::Inconclusive) {
        throw ProtocolError("inconclusive outcomes leave no (2,A) state");
    }
    const double sg = bell.sign == BellSign::Plus ? 1.0 : -1.0;
    const double c2 = conclusive == PovmOutcome::Conclusive1 ? 1.0 : -1.0;
    if (bell.family == BellFamily::Phi) {
        return StateVector::from_terms(kBobLabels,
                                       {{"01", sg * s.beta()}, {"10", c2 * s.alpha()}});
    }
    return StateVector::from_terms(kBobLabels,
                                   {{"00", sg * s.alpha()}, {"11", c2 * s.beta()}});
}

StateVector teleport_target(const InputState& s) {
    return StateVector::from_terms(kBobLabels, {{"00", s.alpha()}, {"11", s.beta()}});
}

StateVector bob_correct(const StateVector& state2A, BellOutcome bell,
                        PovmOutcome conclusive) {
    if (state2A.labels() != kBobLabels) {
        throw LabelError("correction expects labels (2,A)");
    }
    require_family_support(state2A, bell.family);
    return apply(correction_unitary(bell, conclusive), {"2"}, state2A);
}

ConclusiveResult finish_conclusive(const StateVector& collapsed25A, BellOutcome bell,
                                   PovmOutcome conclusive, const InputState& s) {
    DensityMatrix rho = discard(collapsed25A, {kPovmTarget});
    if (purity(rho) < 1.0 - kEqTol) {
        throw ProtocolError("particle 5 failed to factor out after a conclusive outcome");
    }
    StateVector state2A = principal_state(rho);
    StateVector corrected = bob_correct(state2A, bell, conclusive);
    std::vector<cplx> proj(corrected.dim() * corrected.dim());
    for (std::size_t r = 0; r < corrected.dim(); ++r) {
        for (std::size_t c = 0; c < corrected.dim(); ++c) {
            proj[r * corrected.dim() + c] =
                corrected.amps()[r] * std::conj(corrected.amps()[c]);
        }
    }
    DensityMatrix final_state(corrected.labels(), std::move(proj));
    const double f = fidelity(final_state, teleport_target(s));
    return ConclusiveResult{std::move(final_state), f};
}

TrialResult run_branch(const ChannelParams& p, const InputState& s,
                       const StepOutcomes& outcomes) {
    if (outcomes.vonneumann != 0 && outcomes.vonneumann != 1) {
        throw ProtocolError("Von Neumann outcome must be 0 or 1");
    }
    if ((outcomes.vonneumann == 0) != outcomes.povm.has_value()) {
        throw ProtocolError("POVM outcome must be present exactly when the Von Neumann "
                            "measurement returned 0");
    }

    TrialResult r;
    r.outcomes = outcomes;
    r.transcript = make_transcript(outcomes);

    const StateVector composite = build_composite(p, s);
    const auto bells = alice_bell_measure(composite);
    const BellBranch& bb = bells[bell_index(outcomes.bell)];

    const auto vns = bob_vonneumann(bb.residual);
    if (outcomes.vonneumann == 1) {
        r.classification = Classification::FailVonNeumann;
        r.probability = vns[1].probability;
        return r;
    }

    const StateVector state25A = bob_attach_and_cnot(vns[0].residual, outcomes.bell);
    const auto povms = alice_povm(state25A, outcomes.bell, derive_params(p));
    const std::size_t idx = static_cast<std::size_t>(*outcomes.povm);
    const PovmBranch& pb = povms[idx];
    r.probability = pb.probability;

    if (*outcomes.povm == PovmOutcome::Inconclusive) {
        r.classification = Classification::FailInconclusive;
        return r;
    }

    if (!pb.collapsed) {
        throw ParameterError("zero-probability POVM outcome requested");
    }
    // Cross-check the keyed correction's precondition before applying it.
    const StateVector expect = expected_conclusive_state(outcomes.bell, *outcomes.povm, s);
    DensityMatrix check = discard(*pb.collapsed, {kPovmTarget});
    if (std::abs(fidelity(check, expect) - 1.0) > 1e-9) {
        throw ProtocolError("conclusive (2,A) state does not match its outcome key");
    }

    ConclusiveResult leaf = finish_conclusive(*pb.collapsed, outcomes.bell, *outcomes.povm, s);
    r.classification = Classification::Success;
    r.final_state = std::move(leaf.final_state);
    r.fidelity = leaf.fidelity;
    return r;
}

}  // namespace wsim
