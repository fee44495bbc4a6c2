#include "wsim/channel.hpp"

#include <cmath>
#include <sstream>

namespace wsim {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw ParameterError(std::string("channel amplitude ") + name + " must be finite");
    }
}

}  // namespace

ChannelParams::ChannelParams(double a, double b, double c) : a_(a), b_(b), c_(c) {
    require_finite(a, "a");
    require_finite(b, "b");
    require_finite(c, "c");
    if (c < 0.0 || b < c || a < b) {
        std::ostringstream msg;
        msg << "ordering a >= b >= c >= 0 violated (a=" << a << ", b=" << b << ", c=" << c
            << ")";
        throw ParameterError(msg.str());
    }
    if (a <= 0.0) {
        throw ParameterError("channel amplitude a must be positive");
    }
    const double n2 = a * a + b * b + c * c;
    if (std::abs(n2 - 1.0) > kNormTol) {
        std::ostringstream msg;
        msg << "a^2 + b^2 + c^2 must equal 1 (got " << n2 << ")";
        throw ParameterError(msg.str());
    }
}

InputState::InputState(cplx alpha, cplx beta) : alpha_(alpha), beta_(beta) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
        !std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
        throw ParameterError("input amplitudes must be finite");
    }
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(n2 - 1.0) > kNormTol) {
        std::ostringstream msg;
        msg << "|alpha|^2 + |beta|^2 must equal 1 (got " << n2 << ")";
        throw ParameterError(msg.str());
    }
}

StateVector build_channel(const ChannelParams& p) {
    return StateVector::from_terms({"1", "2", "3"}, {{"001", p.a()},
                                                     {"010", p.b()},
                                                     {"100", p.c()}});
}

StateVector build_input(const InputState& s) {
    return StateVector::from_terms({"4", "5"}, {{"00", s.alpha()}, {"11", s.beta()}});
}

StateVector build_composite(const ChannelParams& p, const InputState& s) {
    return tensor(build_channel(p), build_input(s));
}

}  // namespace wsim
