#include "absim/modular.hpp"

#include <cmath>

namespace absim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Circulant matrix from one row of values indexed by (j - m) mod d:
// entry (j, m) = row[(j - m + d) % d].
LinOp circulant(int d, const std::vector<cdouble> &row) {
    std::vector<cdouble> e(static_cast<size_t>(d) * d);
    for (int j = 0; j < d; ++j) {
        for (int m = 0; m < d; ++m) {
            e[static_cast<size_t>(j) * d + m] = row[(j - m + d) % d];
        }
    }
    return LinOp(d, std::move(e));
}

// row[diff] = (1/d) sum_k f(p_k) exp(-2 pi i k diff / d), the position-basis
// kernel of a function of the lattice momentum.
std::vector<cdouble> momentum_function_row(const CyclicLattice &lat, double (*f)(double)) {
    const int d = lat.sites;
    std::vector<cdouble> row(static_cast<size_t>(d), 0.0);
    const int kmin = -(d / 2);
    const int kmax = (d + 1) / 2;  // exclusive
    for (int diff = 0; diff < d; ++diff) {
        cdouble acc = 0.0;
        for (int k = kmin; k < kmax; ++k) {
            const double p = kTwoPi * k / (d * lat.spacing);
            const double ang = -kTwoPi * k * diff / d;
            acc += f(p) * cdouble(std::cos(ang), std::sin(ang));
        }
        row[diff] = acc / static_cast<double>(d);
    }
    return row;
}

double ident(double p) {
    return p;
}

double half_square(double p) {
    return 0.5 * p * p;
}

}  // namespace

LinOp translation_op(const CyclicLattice &lat, int steps) {
    const int d = lat.sites;
    if (std::abs(steps) >= d) {
        throw StepsOutOfRangeError("translation_op: |steps| must be < number of sites");
    }
    std::vector<cdouble> e(static_cast<size_t>(d) * d, 0.0);
    for (int m = 0; m < d; ++m) {
        const int j = ((m + steps) % d + d) % d;
        e[static_cast<size_t>(j) * d + m] = 1.0;
    }
    return LinOp(d, std::move(e));
}

LinOp momentum_op(const CyclicLattice &lat) {
    return circulant(lat.sites, momentum_function_row(lat, ident));
}

LinOp lattice_hamiltonian(const CyclicLattice &lat, const LatticePotential &v) {
    const int d = lat.sites;
    if (static_cast<int>(v.values.size()) != d) {
        throw DimMismatchError("lattice_hamiltonian: potential length differs from site count");
    }
    auto row = momentum_function_row(lat, half_square);
    for (auto &x : row) {
        x /= lat.mass;  // kinetic row already carries p^2/2
    }
    LinOp h = circulant(d, row);
    for (int j = 0; j < d; ++j) {
        h.at(j, j) += v.values[j];
    }
    h.refresh_flags();
    return h;
}

double modular_commutator_check(const CyclicLattice &lat, const LatticePotential &v, int steps) {
    const int d = lat.sites;
    const LinOp t = translation_op(lat, steps);
    const LinOp h = lattice_hamiltonian(lat, v);

    const LinOp lhs = heisenberg_derivative(t, h);

    // The translated state at site j came from site j-steps, so the potential
    // difference factor samples v there. This is the arrangement in which the
    // commutator identity is exact; the kinetic part drops out entirely.
    std::vector<cdouble> e(static_cast<size_t>(d) * d, 0.0);
    for (int j = 0; j < d; ++j) {
        const int src = ((j - steps) % d + d) % d;
        e[static_cast<size_t>(j) * d + j] = v.values[src] - v.values[j];
    }
    const LinOp diff(d, std::move(e));
    const LinOp rhs = scale(matmul(diff, t), cdouble(0.0, -1.0));

    return max_abs_diff(lhs, rhs);
}

LinOp kicked_qubit_evolution(double v0) {
    if (!std::isfinite(v0)) {
        throw Error("kicked_qubit_evolution: v0 must be finite");
    }
    // (1 - sigma_z)/2 projects onto |L>; the kick leaves |R> untouched.
    return LinOp(2, {cdouble(std::cos(v0), -std::sin(v0)), 0.0, 0.0, 1.0});
}

LinOp heisenberg_derivative(const LinOp &a, const LinOp &h) {
    if (a.dim() != h.dim()) {
        throw DimMismatchError("heisenberg_derivative: operator dims differ");
    }
    return scale(subtract(matmul(a, h), matmul(h, a)), cdouble(0.0, -1.0));
}

}  // namespace absim
