#pragma once

#include "wsim/qsim.hpp"

namespace wsim {

/// Real nonnegative amplitudes (a, b, c) of the three-qubit channel state
/// a|001> + b|010> + c|100> on particles (1,2,3). Valid when a^2+b^2+c^2 = 1
/// and a >= b >= c >= 0 with a > 0; the boundary cases a = b, b = c and
/// c = 0 are accepted.
class ChannelParams {
  public:
    ChannelParams(double a, double b, double c);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }

  private:
    double a_, b_, c_;
};

/// The unknown entangled pair alpha|00> + beta|11> on particles (4,5).
/// alpha and beta may be complex; |alpha|^2 + |beta|^2 = 1.
class InputState {
  public:
    InputState(cplx alpha, cplx beta);

    cplx alpha() const { return alpha_; }
    cplx beta() const { return beta_; }

  private:
    cplx alpha_, beta_;
};

/// Three-qubit channel state on labels (1,2,3).
StateVector build_channel(const ChannelParams& p);

/// Two-qubit input state on labels (4,5).
StateVector build_input(const InputState& s);

/// Five-qubit composite channel ⊗ input on labels (1,2,3,4,5).
StateVector build_composite(const ChannelParams& p, const InputState& s);

}  // namespace wsim
