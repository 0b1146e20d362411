#include "absim/pointer.hpp"

#include <algorithm>
#include <cmath>

namespace absim {

namespace {

constexpr double kBranchCutoff = 1e-14;  // drop eigenbranches with no weight

double two_pi() {
    return 6.283185307179586476925286766559;
}

}  // namespace

double gaussian_overlap(double a, double b, double delta) {
    const double d = a - b;
    return std::exp(-d * d / (8.0 * delta * delta));
}

PointerCoupledState couple_with_basis(const Ket &system, const EigenSystem &basis, double g0,
                                      const GaussianPointer &ptr) {
    const int d = basis.vectors.dim();
    if (d != system.dim()) {
        throw DimMismatchError("couple: operator and system dims differ");
    }

    PointerCoupledState st;
    st.delta = ptr.delta;

    // Group degenerate eigenvalues so each branch is one spectral projection.
    int i = 0;
    while (i < d) {
        int j = i + 1;
        while (j < d && std::abs(basis.values[j] - basis.values[i]) <= 1e-9) {
            ++j;
        }
        std::vector<cdouble> amps(static_cast<size_t>(d), 0.0);
        for (int k = i; k < j; ++k) {
            cdouble overlap = 0.0;
            for (int r = 0; r < d; ++r) {
                overlap += std::conj(basis.vectors.at(r, k)) * system.amps[r];
            }
            for (int r = 0; r < d; ++r) {
                amps[r] += basis.vectors.at(r, k) * overlap;
            }
        }
        double n2 = 0.0;
        for (const auto &a : amps) {
            n2 += std::norm(a);
        }
        const double n = std::sqrt(n2);
        if (n > kBranchCutoff) {
            PointerBranch b;
            for (auto &a : amps) {
                a /= n;
            }
            b.ket = Ket(std::move(amps));
            b.coeff = n;
            b.shift = ptr.center + g0 * basis.values[i];
            st.branches.push_back(std::move(b));
        }
        i = j;
    }
    return st;
}

PointerCoupledState couple(const Ket &system, const LinOp &meas_op, double g0, const GaussianPointer &ptr) {
    if (!meas_op.hermitian()) {
        throw NonHermitianError("couple: measured operator is not hermitian");
    }
    if (meas_op.dim() != system.dim()) {
        throw DimMismatchError("couple: operator and system dims differ");
    }
    return couple_with_basis(system, eigh(meas_op), g0, ptr);
}

FirstOrderState first_order_state(const Ket &system, double g0, const GaussianPointer &ptr) {
    if (std::abs(g0) / ptr.delta >= 1.0) {
        throw OutOfRegimeError("first_order_state: g0/delta must be < 1");
    }
    if (system.dim() != 2 || std::abs(inner(ket_x_plus(), system)) < 1.0 - 1e-9) {
        throw Error("first_order_state: expansion point is |sigma_x=+1>");
    }
    FirstOrderState fo;
    fo.delta = ptr.delta;
    fo.plus_coeff = 1.0;
    fo.minus_q_coeff = -g0 / (2.0 * ptr.delta * ptr.delta);
    return fo;
}

double fidelity_first_order(const PointerCoupledState &st, const FirstOrderState &fo) {
    // <Phi_0 | Phi_s> = exp(-s^2/8d^2), <q Phi_0 | Phi_s> = (s/2) exp(-s^2/8d^2),
    // <q Phi_0 | q Phi_0> = delta^2. Pointer Gaussians here are centered at 0.
    const double delta = st.delta;
    const Ket xp = ket_x_plus();
    const Ket xm = ket_x_minus();
    cdouble overlap = 0.0;
    for (const auto &b : st.branches) {
        const double g = gaussian_overlap(0.0, b.shift, delta);
        overlap += b.coeff * (fo.plus_coeff * std::conj(inner(b.ket, xp)) * g +
                              fo.minus_q_coeff * std::conj(inner(b.ket, xm)) * (b.shift / 2.0) * g);
    }
    const double approx_norm2 =
        fo.plus_coeff * fo.plus_coeff + fo.minus_q_coeff * fo.minus_q_coeff * delta * delta;
    return std::norm(overlap) / approx_norm2;
}

double marginal_density(const PointerCoupledState &st, double q) {
    const double delta = st.delta;
    const double norm = 1.0 / (std::sqrt(two_pi()) * delta);
    double p = 0.0;
    for (const auto &b : st.branches) {
        const double z = (q - b.shift) / delta;
        p += std::norm(b.coeff) * norm * std::exp(-0.5 * z * z);
    }
    return p;
}

Ket post_readout_state(const PointerCoupledState &st, double q0) {
    if (st.branches.empty()) {
        throw Error("post_readout_state: empty coupled state");
    }
    const int d = st.branches.front().ket.dim();
    const double delta = st.delta;

    // Factor out the largest exponent so far-tail readouts stay normalizable.
    double max_lw = -1e300;
    std::vector<double> lw(st.branches.size());
    for (size_t b = 0; b < st.branches.size(); ++b) {
        const double dq = q0 - st.branches[b].shift;
        lw[b] = -dq * dq / (4.0 * delta * delta);
        max_lw = std::max(max_lw, lw[b]);
    }
    std::vector<cdouble> amps(static_cast<size_t>(d), 0.0);
    for (size_t b = 0; b < st.branches.size(); ++b) {
        const cdouble w = st.branches[b].coeff * std::exp(lw[b] - max_lw);
        for (int r = 0; r < d; ++r) {
            amps[r] += w * st.branches[b].ket.amps[r];
        }
    }
    return make_ket(std::move(amps));
}

ReadoutRecord readout(const PointerCoupledState &st, RngStream &rng) {
    if (st.branches.empty()) {
        throw Error("readout: empty coupled state");
    }
    // Exact mixture sampling: branch by |coeff|^2, then the branch Gaussian.
    const double u = rng.uniform();
    double acc = 0.0;
    size_t pick = st.branches.size() - 1;
    for (size_t b = 0; b < st.branches.size(); ++b) {
        acc += std::norm(st.branches[b].coeff);
        if (u < acc) {
            pick = b;
            break;
        }
    }
    ReadoutRecord rec;
    rec.q0 = rng.normal(st.branches[pick].shift, st.delta);
    rec.post_system = post_readout_state(st, rec.q0);
    rec.flipped = false;
    if (rec.post_system.dim() == 2) {
        rec.flipped = expectation(pauli_x(), rec.post_system).real() < 0.0;
    }
    return rec;
}

double flip_probability(double g0, double delta) {
    if (!(delta > 0.0)) {
        throw NonPositiveDeltaError("flip_probability: delta must be positive");
    }
    // integral of p(q0) |<x-|post(q0)>|^2 dq0 in closed form; expm1 keeps
    // precision for small g0/delta.
    return -0.5 * std::expm1(-g0 * g0 / (2.0 * delta * delta));
}

double conditional_pointer_mean(const PointerCoupledState &st, const Ket &post) {
    const size_t n = st.branches.size();
    std::vector<cdouble> w(n);
    for (size_t b = 0; b < n; ++b) {
        if (post.dim() != st.branches[b].ket.dim()) {
            throw DimMismatchError("conditional_pointer_mean: postselection dim differs");
        }
        w[b] = st.branches[b].coeff * inner(post, st.branches[b].ket);
    }
    double num = 0.0;
    double den = 0.0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            const double g = gaussian_overlap(st.branches[i].shift, st.branches[j].shift, st.delta);
            const double cross = (std::conj(w[i]) * w[j]).real() * g;
            den += cross;
            num += cross * 0.5 * (st.branches[i].shift + st.branches[j].shift);
        }
    }
    if (den <= 1e-20) {
        throw OrthogonalSelectionError("conditional_pointer_mean: postselection never succeeds");
    }
    return num / den;
}

}  // namespace absim
