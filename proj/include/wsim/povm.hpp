#pragma once

#include <array>

#include "wsim/channel.hpp"
#include "wsim/qsim.hpp"

namespace wsim {

/// Parameters (x1, y1) of the nonorthogonal state pair to discriminate,
/// with x1 = a/sqrt(a^2+b^2), y1 = b/sqrt(a^2+b^2). Valid when
/// x1^2 + y1^2 = 1, x1 >= y1 >= 0 and x1 > 0.
class DiscriminationParams {
  public:
    DiscriminationParams(double x1, double y1);

    double x1() const { return x1_; }
    double y1() const { return y1_; }

  private:
    double x1_, y1_;
};

DiscriminationParams derive_params(const ChannelParams& p);

enum class PovmVariant { SetA, SetB };

/// Three positive effects resolving the identity: E1 conclusive for the
/// "+" target, E2 conclusive for the "-" target, E3 inconclusive. The
/// target pair are the two nonorthogonal single-qubit states (on particle
/// 5) this set unambiguously discriminates.
class PovmSet {
  public:
    /// No deep validation here; validate() reports the axioms' residuals.
    PovmSet(std::array<Operator, 3> effects, PovmVariant variant,
            StateVector target_plus, StateVector target_minus);

    const std::array<Operator, 3>& effects() const { return effects_; }
    PovmVariant variant() const { return variant_; }
    const StateVector& target_plus() const { return target_plus_; }
    const StateVector& target_minus() const { return target_minus_; }

  private:
    std::array<Operator, 3> effects_;
    PovmVariant variant_;
    StateVector target_plus_;
    StateVector target_minus_;
};

/// Set discriminating x1|1> + y1|0> from x1|1> - y1|0>.
PovmSet build_set_a(const DiscriminationParams& d);

/// Set discriminating x1|0> + y1|1> from x1|0> - y1|1>; equals the first
/// set conjugated by the bit flip.
PovmSet build_set_b(const DiscriminationParams& d);

/// Probability of a conclusive identification on either target, <psi+|E1|psi+>.
double conclusive_probability(const PovmSet& set);

struct PovmValidation {
    double completeness_residual;  // max entrywise |E1+E2+E3 - I|
    double min_eigenvalue;         // over all three effects
    double unambiguity_residual;   // max wrong-target conclusive probability
    double conclusive_probability; // <psi+|E1|psi+>

    bool passed() const {
        return completeness_residual <= kEqTol && min_eigenvalue >= kEigFloor &&
               unambiguity_residual <= kEqTol;
    }
};

/// Checks completeness, positivity (closed-form 2x2 eigenvalues) and
/// unambiguity against the declared targets; never throws, the report
/// carries any failures.
PovmValidation validate(const PovmSet& set);

}  // namespace wsim
