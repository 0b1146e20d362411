#pragma once

#include <complex>
#include <vector>

#include "absim/errors.hpp"

namespace absim {

using cdouble = std::complex<double>;

// Tolerance for exact-algebra comparisons (tiny spaces, no error accumulation).
inline constexpr double kAlgebraTol = 1e-12;

/// Pure state as a dense amplitude vector. The raw constructor stores the
/// amplitudes untouched; use make_ket() for a normalized state. Basis
/// convention for qubits: index 0 = |sigma_z=-1> = |L>, index 1 = |sigma_z=+1> = |R>.
struct Ket {
    std::vector<cdouble> amps;

    Ket() = default;
    explicit Ket(std::vector<cdouble> a) : amps(std::move(a)) {
    }

    int dim() const {
        return static_cast<int>(amps.size());
    }
    double norm() const;
};

/// Normalize to unit norm; throws ZeroVectorError when all amplitudes vanish.
Ket make_ket(std::vector<cdouble> amps);

/// Dense complex square matrix. The hermitian/unitary flags are detected at
/// construction (deviation <= 1e-12), so they can be trusted downstream.
class LinOp {
  public:
    LinOp() : dim_(0) {
    }
    LinOp(int dim, std::vector<cdouble> entries);

    int dim() const {
        return dim_;
    }
    bool hermitian() const {
        return hermitian_;
    }
    bool unitary() const {
        return unitary_;
    }

    const cdouble &at(int r, int c) const {
        return entries_[static_cast<size_t>(r) * dim_ + c];
    }
    cdouble &at(int r, int c) {
        return entries_[static_cast<size_t>(r) * dim_ + c];
    }
    const std::vector<cdouble> &entries() const {
        return entries_;
    }

    /// Re-run the hermitian/unitary detection (after in-place edits).
    void refresh_flags();

  private:
    int dim_;
    std::vector<cdouble> entries_;  // row-major
    bool hermitian_ = false;
    bool unitary_ = false;
};

LinOp identity_op(int dim);
LinOp pauli_x();
LinOp pauli_y();  // fixed convention sigma_y = i sigma_x sigma_z
LinOp pauli_z();  // diag(-1, +1) under the |L>, |R> ordering

Ket ket_L();        // |sigma_z = -1>
Ket ket_R();        // |sigma_z = +1>
Ket ket_x_plus();   // (|L> + |R>) / sqrt(2)
Ket ket_x_minus();  // (|L> - |R>) / sqrt(2)

/// op * s, not renormalized (projections legitimately shrink the norm).
Ket apply(const LinOp &op, const Ket &s);

/// <a|b>, conjugate-linear in the first argument.
cdouble inner(const Ket &a, const Ket &b);

/// Kronecker products; index ordering is (first factor, second factor).
Ket tensor(const Ket &a, const Ket &b);
LinOp tensor(const LinOp &a, const LinOp &b);

LinOp matmul(const LinOp &a, const LinOp &b);
LinOp adjoint(const LinOp &a);
LinOp add(const LinOp &a, const LinOp &b);
LinOp subtract(const LinOp &a, const LinOp &b);
LinOp scale(const LinOp &a, cdouble factor);

/// exp(scale * op) by scaling-and-squaring with a converged Taylor series.
LinOp matrix_exponential(const LinOp &op, cdouble scale);

/// |v><v| for a unit vector v.
LinOp projector(const Ket &v);

/// <s|op|s>.
cdouble expectation(const LinOp &op, const Ket &s);

/// Equality up to a global phase: |<a|b>| >= 1 - 1e-12 for unit vectors.
bool equal_up_to_phase(const Ket &a, const Ket &b);

double max_abs_diff(const LinOp &a, const LinOp &b);

/// Eigendecomposition of a hermitian operator (cyclic complex Jacobi).
/// Eigenvalues ascending; eigenvectors are the matching columns of `vectors`.
struct EigenSystem {
    std::vector<double> values;
    LinOp vectors;
};
EigenSystem eigh(const LinOp &op);

}  // namespace absim
