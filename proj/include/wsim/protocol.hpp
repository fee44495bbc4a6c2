#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wsim/channel.hpp"
#include "wsim/povm.hpp"
#include "wsim/qsim.hpp"

namespace wsim {

enum class BellFamily { Phi, Psi };
enum class BellSign { Plus, Minus };

struct BellOutcome {
    BellFamily family;
    BellSign sign;

    bool operator==(const BellOutcome&) const = default;
};

/// Fixed enumeration order: Phi+, Phi-, Psi+, Psi-.
inline constexpr std::array<BellOutcome, 4> kBellOutcomes{{
    {BellFamily::Phi, BellSign::Plus},
    {BellFamily::Phi, BellSign::Minus},
    {BellFamily::Psi, BellSign::Plus},
    {BellFamily::Psi, BellSign::Minus},
}};

std::string to_string(BellOutcome o);

enum class PovmOutcome { Conclusive1, Conclusive2, Inconclusive };

std::string to_string(PovmOutcome o);

/// One full assignment of measurement outcomes. The POVM stage only exists
/// when the Von Neumann measurement returned 0.
struct StepOutcomes {
    BellOutcome bell;
    int vonneumann = 0; // 0 or 1
    std::optional<PovmOutcome> povm;
};

enum class Classification { Success, FailVonNeumann, FailInconclusive };

std::string to_string(Classification c);

struct Message {
    std::string from;
    std::string to;
    std::string payload;

    bool operator==(const Message&) const = default;
};

/// Classical messages in protocol order: Alice->Bob (Bell result, 2 bits),
/// Bob->Alice (Von Neumann result, 1 bit), Alice->Bob (POVM result, 1 trit).
/// Messages after a failure are absent.
struct Transcript {
    std::vector<Message> messages;
};

struct TrialResult {
    StepOutcomes outcomes;
    Classification classification;
    double probability = 0.0;                // exact leaf probability
    std::optional<DensityMatrix> final_state; // on labels (2,A); Success only
    std::optional<double> fidelity;          // Success only
    Transcript transcript;
};

/// The four orthonormal Bell states (|00>±|11>)/sqrt(2), (|01>±|10>)/sqrt(2)
/// on the given labels, ordered as kBellOutcomes.
std::array<StateVector, 4> bell_basis(const Label& l1 = "3", const Label& l2 = "4");

struct BellBranch {
    BellOutcome outcome;
    double probability;   // squared norm of the residual
    StateVector residual; // unnormalized, on labels (1,2,5)
};

/// Alice's joint measurement of particles 3 and 4 on the five-qubit
/// composite. Branch probabilities sum to the composite's squared norm.
std::array<BellBranch, 4> alice_bell_measure(const StateVector& composite);

struct VonNeumannBranch {
    int outcome;          // 0 or 1
    double probability;   // squared norm of the residual (joint with upstream)
    StateVector residual; // unnormalized, on labels (2,5)
};

/// Bob's computational-basis measurement of particle 1. Outcome 1 ends the
/// run (only a single basis component survives).
std::array<VonNeumannBranch, 2> bob_vonneumann(const StateVector& residual125);

/// Attaches Bob's ancilla (|1>_A for the Phi family, |0>_A for the Psi
/// family) and applies C-NOT with particle 2 as control and A as target.
/// Norm is preserved.
StateVector bob_attach_and_cnot(const StateVector& residual25, BellOutcome bell);

/// Self-test: rebuilds the post-C-NOT state from its product decomposition
/// over the pair of nonorthogonal particle-5 states and returns the max
/// entrywise deviation from `state`. Not a protocol step.
double decompose_check(const StateVector& state, BellOutcome bell,
                       const DiscriminationParams& d);

struct PovmBranch {
    PovmOutcome outcome;
    double probability;                  // joint with upstream conditioning
    std::optional<StateVector> collapsed; // normalized, on (2,5,A); absent if unreachable
};

/// Alice's unambiguous discrimination on particle 5. The first set variant
/// serves the Phi family, the second the Psi family.
std::array<PovmBranch, 3> alice_povm(const StateVector& state25A, BellOutcome bell,
                                     const DiscriminationParams& d);

/// Correction unitary on particle 2 for a conclusive leaf, keyed by
/// (Bell family, Bell sign, conclusive index). Eight entries total.
Operator correction_unitary(BellOutcome bell, PovmOutcome conclusive);

/// The (2,A) state a conclusive leaf hands to Bob, before correction.
StateVector expected_conclusive_state(BellOutcome bell, PovmOutcome conclusive,
                                      const InputState& s);

/// The teleportation target alpha|00> + beta|11> on labels (2,A).
StateVector teleport_target(const InputState& s);

/// Applies the keyed correction to a (2,A) state. Throws ProtocolError when
/// the state's support does not match the keyed family (an upstream bug).
StateVector bob_correct(const StateVector& state2A, BellOutcome bell,
                        PovmOutcome conclusive);

struct ConclusiveResult {
    DensityMatrix final_state; // corrected, on labels (2,A)
    double fidelity;           // against the teleportation target
};

/// Tail of a conclusive leaf: discards particle 5 (asserting the reduced
/// state is pure), extracts the (2,A) state, corrects it, and scores the
/// fidelity.
ConclusiveResult finish_conclusive(const StateVector& collapsed25A, BellOutcome bell,
                                   PovmOutcome conclusive, const InputState& s);

/// Deterministic replay of one outcome path, with exact leaf probability,
/// classification, transcript, and (on success) the corrected final state
/// and its fidelity against the teleportation target.
TrialResult run_branch(const ChannelParams& p, const InputState& s,
                       const StepOutcomes& outcomes);

}  // namespace wsim
