#include "wsim/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace wsim {

namespace {

bool is_finite(const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_finite(const std::vector<cplx>& v, const char* what) {
    for (const auto& z : v) {
        if (!is_finite(z)) {
            throw ParameterError(std::string(what) + " contains a non-finite entry");
        }
    }
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Bit of `index` at label position `pos` (0 = most significant of n bits).
std::size_t bit_of(std::size_t index, std::size_t pos, std::size_t n) {
    return (index >> (n - 1 - pos)) & std::size_t{1};
}

std::vector<std::size_t> positions_of(const StateVector& s, const Labels& targets) {
    std::vector<std::size_t> pos;
    pos.reserve(targets.size());
    for (const auto& t : targets) {
        pos.push_back(s.bit_position(t));
    }
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            if (pos[i] == pos[j]) {
                throw LabelError("target label '" + targets[i] + "' repeated");
            }
        }
    }
    return pos;
}

}  // namespace

StateVector::StateVector(Labels labels, std::vector<cplx> amps)
    : labels_(std::move(labels)), amps_(std::move(amps)) {
    const std::size_t n = labels_.size();
    if (n >= 8 * sizeof(std::size_t)) {
        throw ShapeError("register too large");
    }
    if (amps_.size() != (std::size_t{1} << n)) {
        std::ostringstream msg;
        msg << "amplitude count " << amps_.size() << " is not 2^" << n;
        throw ShapeError(msg.str());
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (labels_[i] == labels_[j]) {
                throw LabelError("duplicate qubit label '" + labels_[i] + "'");
            }
        }
    }
    require_finite(amps_, "state vector");
}

StateVector StateVector::zero(Labels labels) {
    const std::size_t dim = std::size_t{1} << labels.size();
    return StateVector(std::move(labels), std::vector<cplx>(dim, cplx{0.0, 0.0}));
}

StateVector StateVector::basis(Labels labels, std::string_view bits) {
    StateVector s = zero(std::move(labels));
    s.amps_[s.index_of(bits)] = cplx{1.0, 0.0};
    return s;
}

StateVector StateVector::from_terms(
    Labels labels, std::initializer_list<std::pair<std::string_view, cplx>> terms) {
    StateVector s = zero(std::move(labels));
    for (const auto& [bits, amp] : terms) {
        s.amps_[s.index_of(bits)] += amp;
    }
    require_finite(s.amps_, "state vector");
    return s;
}

bool StateVector::has_label(const Label& l) const {
    return std::find(labels_.begin(), labels_.end(), l) != labels_.end();
}

std::size_t StateVector::bit_position(const Label& l) const {
    auto it = std::find(labels_.begin(), labels_.end(), l);
    if (it == labels_.end()) {
        throw LabelError("unknown qubit label '" + l + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t StateVector::index_of(std::string_view bits) const {
    if (bits.size() != labels_.size()) {
        std::ostringstream msg;
        msg << "bitstring '" << bits << "' has " << bits.size() << " bits, register has "
            << labels_.size();
        throw ShapeError(msg.str());
    }
    std::size_t idx = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw ShapeError("bitstring must contain only 0s and 1s");
        }
        idx = (idx << 1) | static_cast<std::size_t>(c == '1');
    }
    return idx;
}

double StateVector::squared_norm() const {
    double s = 0.0;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return s;
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(squared_norm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
    const double n2 = squared_norm();
    if (n2 <= 0.0) {
        throw ParameterError("cannot normalize a zero state vector");
    }
    const double inv = 1.0 / std::sqrt(n2);
    std::vector<cplx> out(amps_);
    for (auto& a : out) {
        a *= inv;
    }
    return StateVector(labels_, std::move(out));
}

StateVector operator+(const StateVector& a, const StateVector& b) {
    if (a.labels() != b.labels()) {
        throw LabelError("cannot add states over different label sequences");
    }
    std::vector<cplx> out(a.amps());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += b.amps()[i];
    }
    return StateVector(a.labels(), std::move(out));
}

StateVector operator*(const cplx& k, const StateVector& s) {
    std::vector<cplx> out(s.amps());
    for (auto& a : out) {
        a *= k;
    }
    return StateVector(s.labels(), std::move(out));
}

Operator::Operator(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (!is_pow2(dim_)) {
        throw ShapeError("operator dimension must be a power of two");
    }
    if (entries_.size() != dim_ * dim_) {
        throw ShapeError("operator entry count does not match its dimension");
    }
    require_finite(entries_, "operator");
}

Operator Operator::identity(std::size_t dim) {
    std::vector<cplx> e(dim * dim, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) {
        e[i * dim + i] = cplx{1.0, 0.0};
    }
    return Operator(dim, std::move(e));
}

Operator Operator::mat2(cplx e00, cplx e01, cplx e10, cplx e11) {
    return Operator(2, {e00, e01, e10, e11});
}

Operator Operator::cnot() {
    return Operator(4, {1, 0, 0, 0,  //
                        0, 1, 0, 0,  //
                        0, 0, 0, 1,  //
                        0, 0, 1, 0});
}

Operator operator+(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) {
        throw ShapeError("operator dimensions differ");
    }
    std::vector<cplx> e(a.entries());
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] += b.entries()[i];
    }
    return Operator(a.dim(), std::move(e));
}

Operator operator*(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) {
        throw ShapeError("operator dimensions differ");
    }
    const std::size_t d = a.dim();
    std::vector<cplx> e(d * d, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t k = 0; k < d; ++k) {
            const cplx ark = a.entry(r, k);
            if (ark == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::size_t c = 0; c < d; ++c) {
                e[r * d + c] += ark * b.entry(k, c);
            }
        }
    }
    return Operator(d, std::move(e));
}

Operator operator*(const cplx& k, const Operator& a) {
    std::vector<cplx> e(a.entries());
    for (auto& z : e) {
        z *= k;
    }
    return Operator(a.dim(), std::move(e));
}

double max_abs_diff(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) {
        throw ShapeError("operator dimensions differ");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
    if (a.labels() != b.labels()) {
        throw LabelError("cannot compare states over different label sequences");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        m = std::max(m, std::abs(a.amps()[i] - b.amps()[i]));
    }
    return m;
}

Operator sqrt_psd_2x2(const Operator& a) {
    if (a.dim() != 2) {
        throw ShapeError("principal square root implemented for 2x2 only");
    }
    const cplx off = a.entry(0, 1);
    if (std::abs(off - std::conj(a.entry(1, 0))) > kNormTol) {
        throw ParameterError("matrix is not Hermitian");
    }
    const double tr = a.entry(0, 0).real() + a.entry(1, 1).real();
    double det = (a.entry(0, 0) * a.entry(1, 1) - a.entry(0, 1) * a.entry(1, 0)).real();
    if (det < 0.0) {
        if (det < kEigFloor) {
            throw ParameterError("matrix is not positive semidefinite");
        }
        det = 0.0;
    }
    const double s = std::sqrt(det);
    const double denom2 = tr + 2.0 * s;
    if (denom2 <= kZeroProb) {
        // tr >= both eigenvalues >= 0, so this is the zero matrix.
        return Operator(2, std::vector<cplx>(4, cplx{0.0, 0.0}));
    }
    const double inv = 1.0 / std::sqrt(denom2);
    return Operator::mat2(inv * (a.entry(0, 0) + s), inv * a.entry(0, 1),
                          inv * a.entry(1, 0), inv * (a.entry(1, 1) + s));
}

std::array<double, 2> eigenvalues_herm_2x2(const Operator& a) {
    if (a.dim() != 2) {
        throw ShapeError("closed-form eigenvalues implemented for 2x2 only");
    }
    const double tr = a.entry(0, 0).real() + a.entry(1, 1).real();
    const double det = (a.entry(0, 0) * a.entry(1, 1) - a.entry(0, 1) * a.entry(1, 0)).real();
    const double disc = std::max(tr * tr / 4.0 - det, 0.0);
    const double r = std::sqrt(disc);
    return {tr / 2.0 - r, tr / 2.0 + r};
}

DensityMatrix::DensityMatrix(Labels labels, std::vector<cplx> entries)
    : labels_(std::move(labels)), dim_(std::size_t{1} << labels_.size()),
      entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw ShapeError("density matrix entry count does not match its label count");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        for (std::size_t j = i + 1; j < labels_.size(); ++j) {
            if (labels_[i] == labels_[j]) {
                throw LabelError("duplicate qubit label '" + labels_[i] + "'");
            }
        }
    }
    require_finite(entries_, "density matrix");
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            if (std::abs(entry(r, c) - std::conj(entry(c, r))) > kNormTol) {
                throw ParameterError("density matrix is not Hermitian");
            }
        }
    }
}

double DensityMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += entry(i, i).real();
    }
    return t;
}

bool DensityMatrix::is_normalized(double tol) const {
    return std::abs(trace() - 1.0) <= tol;
}

DensityMatrix DensityMatrix::normalized() const {
    const double t = trace();
    if (t <= 0.0) {
        throw ParameterError("cannot normalize a zero-trace density matrix");
    }
    std::vector<cplx> e(entries_);
    for (auto& z : e) {
        z /= t;
    }
    return DensityMatrix(labels_, std::move(e));
}

StateVector tensor(const StateVector& s1, const StateVector& s2) {
    for (const auto& l : s2.labels()) {
        if (s1.has_label(l)) {
            throw LabelError("label '" + l + "' appears in both tensor factors");
        }
    }
    Labels labels(s1.labels());
    labels.insert(labels.end(), s2.labels().begin(), s2.labels().end());
    std::vector<cplx> amps(s1.dim() * s2.dim());
    for (std::size_t i = 0; i < s1.dim(); ++i) {
        for (std::size_t j = 0; j < s2.dim(); ++j) {
            amps[(i << s2.num_qubits()) | j] = s1.amps()[i] * s2.amps()[j];
        }
    }
    return StateVector(std::move(labels), std::move(amps));
}

StateVector apply(const Operator& op, const Labels& targets, const StateVector& s) {
    const std::size_t m = targets.size();
    if (op.dim() != (std::size_t{1} << m)) {
        std::ostringstream msg;
        msg << "operator dimension " << op.dim() << " does not cover " << m << " target(s)";
        throw ShapeError(msg.str());
    }
    const auto pos = positions_of(s, targets);
    const std::size_t n = s.num_qubits();

    std::vector<cplx> out(s.dim(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const cplx a = s.amps()[i];
        if (a == cplx{0.0, 0.0}) {
            continue;
        }
        // Sub-index of the target bits, big-endian in target order.
        std::size_t sub = 0;
        std::size_t base = i;
        for (std::size_t k = 0; k < m; ++k) {
            sub = (sub << 1) | bit_of(i, pos[k], n);
            base &= ~(std::size_t{1} << (n - 1 - pos[k]));
        }
        for (std::size_t row = 0; row < op.dim(); ++row) {
            const cplx coeff = op.entry(row, sub);
            if (coeff == cplx{0.0, 0.0}) {
                continue;
            }
            std::size_t j = base;
            for (std::size_t k = 0; k < m; ++k) {
                if ((row >> (m - 1 - k)) & 1u) {
                    j |= std::size_t{1} << (n - 1 - pos[k]);
                }
            }
            out[j] += coeff * a;
        }
    }
    return StateVector(s.labels(), std::move(out));
}

Projection project(const StateVector& s, const Labels& targets, const StateVector& bra) {
    if (bra.labels() != targets) {
        throw LabelError("bra must be defined on exactly the target label sequence");
    }
    if (!bra.is_normalized()) {
        throw ParameterError("projection bra must be normalized");
    }
    const auto pos = positions_of(s, targets);
    const std::size_t n = s.num_qubits();
    const std::size_t m = targets.size();

    Labels rest;
    for (const auto& l : s.labels()) {
        if (std::find(targets.begin(), targets.end(), l) == targets.end()) {
            rest.push_back(l);
        }
    }
    std::vector<std::size_t> rest_pos;
    for (const auto& l : rest) {
        rest_pos.push_back(s.bit_position(l));
    }

    std::vector<cplx> res(std::size_t{1} << rest.size(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::size_t sub = 0;
        for (std::size_t k = 0; k < m; ++k) {
            sub = (sub << 1) | bit_of(i, pos[k], n);
        }
        std::size_t r = 0;
        for (std::size_t k = 0; k < rest_pos.size(); ++k) {
            r = (r << 1) | bit_of(i, rest_pos[k], n);
        }
        res[r] += std::conj(bra.amps()[sub]) * s.amps()[i];
    }
    StateVector residual(std::move(rest), std::move(res));
    return Projection{residual.squared_norm(), std::move(residual)};
}

cplx inner_product(const StateVector& bra, const StateVector& ket) {
    if (bra.labels() != ket.labels()) {
        throw LabelError("inner product requires identical label sequences");
    }
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < bra.dim(); ++i) {
        acc += std::conj(bra.amps()[i]) * ket.amps()[i];
    }
    return acc;
}

cplx expectation(const Operator& op, const Labels& targets, const StateVector& s) {
    return inner_product(s, apply(op, targets, s));
}

std::array<double, 3> povm_probabilities(const std::array<Operator, 3>& effects,
                                         const Label& target, const StateVector& s) {
    for (const auto& e : effects) {
        if (e.dim() != 2) {
            throw ShapeError("POVM effects must be 2x2");
        }
    }
    if (max_abs_diff(effects[0] + effects[1] + effects[2], Operator::identity(2)) > kNormTol) {
        throw ParameterError("POVM effects do not sum to the identity");
    }
    if (!s.is_normalized()) {
        throw ParameterError("POVM probabilities require a normalized state");
    }
    std::array<double, 3> p{};
    for (std::size_t i = 0; i < 3; ++i) {
        p[i] = expectation(effects[i], {target}, s).real();
    }
    return p;
}

StateVector povm_collapse(const std::array<Operator, 3>& effects, std::size_t outcome,
                          const Label& target, const StateVector& s) {
    if (outcome >= effects.size()) {
        throw ShapeError("POVM outcome index out of range");
    }
    const double weight = expectation(effects[outcome], {target}, s).real();
    if (weight <= kZeroProb) {
        throw ParameterError("zero-probability POVM outcome requested");
    }
    const Operator m = sqrt_psd_2x2(effects[outcome]);
    return apply(m, {target}, s).normalized();
}

DensityMatrix discard(const StateVector& s, const Labels& drop) {
    const auto drop_pos = positions_of(s, drop);
    if (drop.size() == s.num_qubits()) {
        throw LabelError("cannot discard every label of a register");
    }
    const std::size_t n = s.num_qubits();

    Labels keep;
    std::vector<std::size_t> keep_pos;
    for (const auto& l : s.labels()) {
        if (std::find(drop.begin(), drop.end(), l) == drop.end()) {
            keep.push_back(l);
            keep_pos.push_back(s.bit_position(l));
        }
    }
    const std::size_t kd = std::size_t{1} << keep.size();

    auto split = [&](std::size_t i) {
        std::size_t k = 0;
        for (std::size_t p : keep_pos) {
            k = (k << 1) | bit_of(i, p, n);
        }
        std::size_t d = 0;
        for (std::size_t p : drop_pos) {
            d = (d << 1) | bit_of(i, p, n);
        }
        return std::pair<std::size_t, std::size_t>{k, d};
    };

    std::vector<cplx> rho(kd * kd, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (s.amps()[i] == cplx{0.0, 0.0}) {
            continue;
        }
        const auto [ki, di] = split(i);
        for (std::size_t j = 0; j < s.dim(); ++j) {
            const auto [kj, dj] = split(j);
            if (di != dj) {
                continue;
            }
            rho[ki * kd + kj] += s.amps()[i] * std::conj(s.amps()[j]);
        }
    }
    return DensityMatrix(std::move(keep), std::move(rho));
}

double fidelity(const DensityMatrix& rho, const StateVector& target) {
    if (rho.labels() != target.labels()) {
        throw LabelError("fidelity requires matching label sequences");
    }
    if (!target.is_normalized()) {
        throw ParameterError("fidelity target must be normalized");
    }
    if (!rho.is_normalized()) {
        throw ParameterError("fidelity requires a normalized density matrix");
    }
    cplx acc{0.0, 0.0};
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            acc += std::conj(target.amps()[r]) * rho.entry(r, c) * target.amps()[c];
        }
    }
    return acc.real();
}

double purity(const DensityMatrix& rho) {
    cplx acc{0.0, 0.0};
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            acc += rho.entry(r, c) * rho.entry(c, r);
        }
    }
    return acc.real();
}

StateVector reorder(const StateVector& s, const Labels& new_order) {
    if (new_order.size() != s.num_qubits()) {
        throw LabelError("reorder requires a permutation of the existing labels");
    }
    const auto pos = positions_of(s, new_order);
    const std::size_t n = s.num_qubits();
    std::vector<cplx> out(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::size_t j = 0;
        for (std::size_t k = 0; k < n; ++k) {
            j = (j << 1) | bit_of(i, pos[k], n);
        }
        out[j] = s.amps()[i];
    }
    return StateVector(new_order, std::move(out));
}

StateVector principal_state(const DensityMatrix& rho) {
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        const double d = rho.entry(r, r).real();
        if (d > best) {
            best = d;
            pivot = r;
        }
    }
    if (best <= 0.0) {
        throw ParameterError("density matrix has no positive diagonal entry");
    }
    const double inv = 1.0 / std::sqrt(best);
    std::vector<cplx> amps(rho.dim());
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        amps[r] = rho.entry(r, pivot) * inv;
    }
    return StateVector(rho.labels(), std::move(amps)).normalized();
}

}  // namespace wsim
