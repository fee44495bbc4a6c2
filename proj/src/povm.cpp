#include "wsim/povm.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace wsim {

namespace {

const Label kTargetLabel = "5";

double quad_form(const Operator& e, const StateVector& psi) {
    return expectation(e, psi.labels(), psi).real();
}

}  // namespace

DiscriminationParams::DiscriminationParams(double x1, double y1) : x1_(x1), y1_(y1) {
    if (!std::isfinite(x1) || !std::isfinite(y1)) {
        throw ParameterError("discrimination parameters must be finite");
    }
    if (y1 < 0.0 || x1 < y1) {
        std::ostringstream msg;
        msg << "ordering x1 >= y1 >= 0 violated (x1=" << x1 << ", y1=" << y1 << ")";
        throw ParameterError(msg.str());
    }
    if (x1 <= 0.0) {
        throw ParameterError("discrimination parameter x1 must be positive");
    }
    const double n2 = x1 * x1 + y1 * y1;
    if (std::abs(n2 - 1.0) > kNormTol) {
        std::ostringstream msg;
        msg << "x1^2 + y1^2 must equal 1 (got " << n2 << ")";
        throw ParameterError(msg.str());
    }
}

DiscriminationParams derive_params(const ChannelParams& p) {
    const double r = std::sqrt(p.a() * p.a() + p.b() * p.b());
    return DiscriminationParams(p.a() / r, p.b() / r);
}

PovmSet::PovmSet(std::array<Operator, 3> effects, PovmVariant variant,
                 StateVector target_plus, StateVector target_minus)
    : effects_(std::move(effects)), variant_(variant),
      target_plus_(std::move(target_plus)), target_minus_(std::move(target_minus)) {
    for (const auto& e : effects_) {
        if (e.dim() != 2) {
            throw ShapeError("POVM effects must be 2x2");
        }
    }
    if (target_plus_.num_qubits() != 1 || target_minus_.num_qubits() != 1) {
        throw ShapeError("POVM targets must be single-qubit states");
    }
}

PovmSet build_set_a(const DiscriminationParams& d) {
    const double x = d.x1();
    const double y = d.y1();
    const double k = 1.0 / (2.0 * x * x);
    const Operator e1 = Operator::mat2(k * x * x, k * x * y, k * x * y, k * y * y);
    const Operator e2 = Operator::mat2(k * x * x, -k * x * y, -k * x * y, k * y * y);
    const Operator e3 = Operator::mat2(0.0, 0.0, 0.0, 1.0 - (y * y) / (x * x));
    StateVector plus = StateVector::from_terms({kTargetLabel}, {{"1", x}, {"0", y}});
    StateVector minus = StateVector::from_terms({kTargetLabel}, {{"1", x}, {"0", -y}});
    return PovmSet({e1, e2, e3}, PovmVariant::SetA, std::move(plus), std::move(minus));
}

PovmSet build_set_b(const DiscriminationParams& d) {
    const double x = d.x1();
    const double y = d.y1();
    const double k = 1.0 / (2.0 * x * x);
    const Operator e1 = Operator::mat2(k * y * y, k * x * y, k * x * y, k * x * x);
    const Operator e2 = Operator::mat2(k * y * y, -k * x * y, -k * x * y, k * x * x);
    const Operator e3 = Operator::mat2(1.0 - (y * y) / (x * x), 0.0, 0.0, 0.0);
    StateVector plus = StateVector::from_terms({kTargetLabel}, {{"0", x}, {"1", y}});
    StateVector minus = StateVector::from_terms({kTargetLabel}, {{"0", x}, {"1", -y}});
    return PovmSet({e1, e2, e3}, PovmVariant::SetB, std::move(plus), std::move(minus));
}

double conclusive_probability(const PovmSet& set) {
    return quad_form(set.effects()[0], set.target_plus());
}

PovmValidation validate(const PovmSet& set) {
    PovmValidation v{};

    Operator sum = set.effects()[0] + set.effects()[1] + set.effects()[2];
    v.completeness_residual = max_abs_diff(sum, Operator::identity(2));

    v.min_eigenvalue = eigenvalues_herm_2x2(set.effects()[0])[0];
    for (std::size_t i = 1; i < 3; ++i) {
        v.min_eigenvalue = std::min(v.min_eigenvalue, eigenvalues_herm_2x2(set.effects()[i])[0]);
    }

    const double wrong_plus = quad_form(set.effects()[1], set.target_plus());
    const double wrong_minus = quad_form(set.effects()[0], set.target_minus());
    v.unambiguity_residual = std::max(std::abs(wrong_plus), std::abs(wrong_minus));

    v.conclusive_probability = conclusive_probability(set);
    return v;
}

}  // namespace wsim
