#pragma once

#include <vector>

#include "absim/hilbert.hpp"
#include "absim/rng.hpp"

namespace absim {

/// Gaussian pointer wavefunction exp(-(q-center)^2 / 4 delta^2), up to
/// normalization; delta is the position standard deviation.
struct GaussianPointer {
    double delta;
    double center;

    explicit GaussianPointer(double delta_, double center_ = 0.0) : delta(delta_), center(center_) {
        if (!(delta > 0.0)) {
            throw NonPositiveDeltaError("GaussianPointer: delta must be positive");
        }
    }
};

/// One eigenbranch of the coupled system+pointer state: the branch ket lives
/// on the system space, the pointer Gaussian is centered at `shift`.
struct PointerBranch {
    Ket ket;
    cdouble coeff;
    double shift;
};

/// System x pointer state after the impulsive coupling exp(i g0 A P).
/// Exactly sum_b coeff_b * ket_b (x) Phi_delta(q - shift_b); the branch kets
/// are mutually orthogonal (eigenbasis of the measured observable).
struct PointerCoupledState {
    double delta;
    std::vector<PointerBranch> branches;
};

/// Outcome of reading the pointer: the position value, the collapsed system
/// state, and whether the post-readout <sigma_x> changed sign relative to a
/// |sigma_x=+1> preselection (descriptive flag, 2-dim systems only).
struct ReadoutRecord {
    double q0;
    Ket post_system;
    bool flipped;
};

/// First-order expansion of the coupled state around |sigma_x=+1>:
/// plus_coeff * |x+> (x) Phi  +  minus_q_coeff * |x-> (x) q Phi.
struct FirstOrderState {
    double delta;
    double plus_coeff;
    double minus_q_coeff;
};

/// Exact coupling: decompose `system` in the eigenbasis of the hermitian
/// `meas_op`; the eigenvalue-lambda branch keeps its Gaussian shape with the
/// center translated by +g0*lambda (sign fixed by the first-order expansion,
/// see the pointer unit tests).
PointerCoupledState couple(const Ket &system, const LinOp &meas_op, double g0, const GaussianPointer &ptr);

/// Same coupling with a precomputed eigendecomposition of meas_op
/// (the decomposition does not depend on the state).
PointerCoupledState couple_with_basis(const Ket &system, const EigenSystem &basis, double g0,
                                      const GaussianPointer &ptr);

/// Two-term approximation of the coupled state, valid for system = |x+> and
/// g0/delta < 1; used to validate couple() at first order.
FirstOrderState first_order_state(const Ket &system, double g0, const GaussianPointer &ptr);

/// Fidelity |<approx|exact>|^2 / <approx|approx> via closed-form Gaussian
/// integrals (the exact state is normalized).
double fidelity_first_order(const PointerCoupledState &st, const FirstOrderState &fo);

/// Marginal readout density p(q) = sum_b |coeff_b|^2 N(q; shift_b, delta^2).
double marginal_density(const PointerCoupledState &st, double q);

/// Collapsed, normalized system state after reading pointer value q0.
Ket post_readout_state(const PointerCoupledState &st, double q0);

/// Sample q0 from the exact Gaussian mixture (branch by |coeff|^2, then a
/// normal draw), then collapse. Deterministic given the stream.
ReadoutRecord readout(const PointerCoupledState &st, RngStream &rng);

/// Exact probability that a strong sigma_x check after the readout finds
/// |sigma_x=-1>, for preselection |x+> and measured operator sigma_z:
/// (1 - exp(-g0^2 / 2 delta^2)) / 2. Always <= g0^2/delta^2.
double flip_probability(double g0, double delta);

/// Exact conditional mean E[q0 | postselection on `post` succeeds], with the
/// interference cross terms between branches.
double conditional_pointer_mean(const PointerCoupledState &st, const Ket &post);

/// Overlap integral of two unit-normalized Gaussians of common width delta
/// centered at a and b: exp(-(a-b)^2 / 8 delta^2).
double gaussian_overlap(double a, double b, double delta);

}  // namespace absim
