#pragma once

#include <vector>

#include "absim/hilbert.hpp"

namespace absim {

/// Cyclic position lattice: sites x_j = j * spacing, arithmetic mod d*spacing.
struct CyclicLattice {
    int sites;
    double spacing;
    double mass;

    CyclicLattice(int sites_, double spacing_, double mass_) : sites(sites_), spacing(spacing_), mass(mass_) {
        if (sites < 1) {
            throw Error("CyclicLattice: need at least one site");
        }
        if (!(spacing > 0.0) || !(mass > 0.0)) {
            throw Error("CyclicLattice: spacing and mass must be positive");
        }
    }
};

/// Diagonal potential V(X), one energy per site.
struct LatticePotential {
    std::vector<double> values;
};

/// Cyclic shift by `steps` sites: maps site j to site (j+steps) mod d.
/// Equals exp(i P l) with l = steps*spacing for the lattice momentum below.
LinOp translation_op(const CyclicLattice &lat, int steps);

/// Lattice momentum from the discrete Fourier basis, eigenvalues
/// 2 pi k / (d * spacing), k in {-floor(d/2), ..., ceil(d/2)-1}. The Fourier
/// phases are chosen so exp(i P l) is exactly the site shift above.
LinOp momentum_op(const CyclicLattice &lat);

/// H = P^2/2m + V(X). The kinetic part is assembled circulant (one value per
/// site difference), so it commutes with every translation bit-exactly.
LinOp lattice_hamiltonian(const CyclicLattice &lat, const LatticePotential &v);

/// Max-norm deviation between -i[T, H] and -i*(V_T - V)*T, where T is the
/// translation by `steps` and V_T is the potential the translated state sees,
/// i.e. (V_T)_jj = v((j-steps) mod d). Exactly zero up to rounding.
double modular_commutator_check(const CyclicLattice &lat, const LatticePotential &v, int steps);

/// Unitary integrating the impulsive kick (1-sigma_z) V0/2 applied at one
/// instant: U = exp(-i V0 (1-sigma_z)/2) = diag(e^{-i V0}, 1).
/// Heisenberg action: U^dagger sigma_x U = cos(V0) sigma_x + sin(V0) sigma_y.
LinOp kicked_qubit_evolution(double v0);

/// -i (A H - H A).
LinOp heisenberg_derivative(const LinOp &a, const LinOp &h);

}  // namespace absim
