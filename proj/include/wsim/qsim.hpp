#pragma once

#include <array>
#include <complex>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wsim/errors.hpp"

namespace wsim {

using cplx = std::complex<double>;
using Label = std::string;
using Labels = std::vector<Label>;

// Tolerances used throughout: all arithmetic here is exact small dense
// algebra, so only rounding noise accumulates.
inline constexpr double kNormTol = 1e-10;   // normalization / hermiticity
inline constexpr double kEqTol = 1e-12;     // equality assertions
inline constexpr double kEigFloor = -1e-12; // positivity eigenvalue floor
inline constexpr double kZeroProb = 1e-14;  // below this an outcome counts as unreachable

/// Pure state of a labeled qubit register. Amplitudes are indexed big-endian
/// in label order: labels()[0] is the most significant bit of the basis
/// index, bit value 0/1 meaning |0>/|1>. Immutable after construction.
class StateVector {
  public:
    StateVector(Labels labels, std::vector<cplx> amps);

    /// All-zero amplitude vector (useful as an accumulator seed).
    static StateVector zero(Labels labels);

    /// Computational basis state |bits>, e.g. basis({"2","5"}, "01").
    static StateVector basis(Labels labels, std::string_view bits);

    /// Sparse construction from (bitstring, amplitude) terms; unlisted
    /// amplitudes are zero. Duplicate bitstrings accumulate.
    static StateVector
    from_terms(Labels labels,
               std::initializer_list<std::pair<std::string_view, cplx>> terms);

    const Labels& labels() const { return labels_; }
    const std::vector<cplx>& amps() const { return amps_; }
    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dim() const { return amps_.size(); }

    bool has_label(const Label& l) const;
    /// Bit position of a label (0 = most significant). Throws LabelError.
    std::size_t bit_position(const Label& l) const;

    /// Basis index of a bitstring given in label order.
    std::size_t index_of(std::string_view bits) const;
    cplx amp(std::string_view bits) const { return amps_[index_of(bits)]; }

    double squared_norm() const;
    bool is_normalized(double tol = kNormTol) const;
    /// Scales to unit norm; throws ParameterError on a zero vector.
    StateVector normalized() const;

  private:
    Labels labels_;
    std::vector<cplx> amps_;
};

/// Sum of two states over the same label sequence.
StateVector operator+(const StateVector& a, const StateVector& b);
/// Scalar multiple.
StateVector operator*(const cplx& k, const StateVector& s);

/// Square complex matrix over a power-of-two dimension, row/column basis
/// ordered |0...0> .. |1...1> with the same big-endian bit convention as
/// StateVector.
class Operator {
  public:
    Operator(std::size_t dim, std::vector<cplx> entries); // row-major

    static Operator identity(std::size_t dim);
    /// 2x2 in basis order (|0>, |1>).
    static Operator mat2(cplx e00, cplx e01, cplx e10, cplx e11);
    /// Controlled-not on basis order (control, target).
    static Operator cnot();

    std::size_t dim() const { return dim_; }
    const std::vector<cplx>& entries() const { return entries_; }
    cplx entry(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

  private:
    std::size_t dim_;
    std::vector<cplx> entries_;
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(const cplx& k, const Operator& a);

/// Max entrywise absolute difference.
double max_abs_diff(const Operator& a, const Operator& b);
double max_abs_diff(const StateVector& a, const StateVector& b);

/// Principal square root of a 2x2 Hermitian positive-semidefinite matrix,
/// in closed form via trace and determinant.
Operator sqrt_psd_2x2(const Operator& a);

/// Eigenvalues of a 2x2 Hermitian matrix, ascending, in closed form.
std::array<double, 2> eigenvalues_herm_2x2(const Operator& a);

/// Mixed state over a labeled register. Hermitian by construction; trace
/// equals the squared norm of the pure state it was reduced from.
class DensityMatrix {
  public:
    DensityMatrix(Labels labels, std::vector<cplx> entries); // row-major

    const Labels& labels() const { return labels_; }
    const std::vector<cplx>& entries() const { return entries_; }
    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dim() const { return dim_; }
    cplx entry(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

    double trace() const;
    bool is_normalized(double tol = kNormTol) const;
    /// Scales to unit trace; throws ParameterError on zero trace.
    DensityMatrix normalized() const;

  private:
    Labels labels_;
    std::size_t dim_;
    std::vector<cplx> entries_;
};

/// Kronecker product; label sets must be disjoint. The amplitude of a
/// concatenated bitstring is the product of the component amplitudes.
StateVector tensor(const StateVector& s1, const StateVector& s2);

/// Applies op to the targeted labels (identity elsewhere). The order of
/// `targets` defines the operator's basis ordering.
StateVector apply(const Operator& op, const Labels& targets, const StateVector& s);

struct Projection {
    double probability;   // squared norm of the residual
    StateVector residual; // unnormalized partial inner product <bra|s>
};

/// Projects the target labels onto `bra` (which must be normalized and
/// carry exactly the `targets` label sequence). The residual lives on the
/// remaining labels in their original order.
Projection project(const StateVector& s, const Labels& targets, const StateVector& bra);

/// <bra|ket> over identical label sequences.
cplx inner_product(const StateVector& bra, const StateVector& ket);

/// <s| op acting on targets |s>.
cplx expectation(const Operator& op, const Labels& targets, const StateVector& s);

/// Outcome probabilities <s|E_i ⊗ I|s> of a three-effect POVM on one qubit.
/// Requires a normalized state and effects that sum to the identity.
std::array<double, 3> povm_probabilities(const std::array<Operator, 3>& effects,
                                         const Label& target, const StateVector& s);

/// Post-measurement state for one POVM outcome: applies the principal
/// square root of the chosen effect and renormalizes. Throws on an outcome
/// of (numerically) zero probability.
StateVector povm_collapse(const std::array<Operator, 3>& effects, std::size_t outcome,
                          const Label& target, const StateVector& s);

/// Reduced density matrix after tracing out `drop`; trace equals the
/// squared norm of s. Throws when dropping every label.
DensityMatrix discard(const StateVector& s, const Labels& drop);

/// <target|rho|target>, in [0,1]; blind to the global phase of target.
/// Requires rho normalized and labels matching the target's.
double fidelity(const DensityMatrix& rho, const StateVector& target);

/// tr(rho^2); 1 for pure states.
double purity(const DensityMatrix& rho);

/// Same state expressed over a permutation of its labels.
StateVector reorder(const StateVector& s, const Labels& new_order);

/// Unit vector spanning a (numerically) rank-1 density matrix. Global phase
/// is unspecified. Callers should check purity first.
StateVector principal_state(const DensityMatrix& rho);

}  // namespace wsim
