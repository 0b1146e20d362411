#include <doctest.h>

#include <cmath>
#include <random>

#include "absim/hilbert.hpp"

using namespace absim;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

LinOp random_hermitian(int d, std::mt19937_64 &eng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cdouble> e(static_cast<size_t>(d) * d);
    for (int r = 0; r < d; ++r) {
        e[static_cast<size_t>(r) * d + r] = u(eng);
        for (int c = r + 1; c < d; ++c) {
            const cdouble z(u(eng), u(eng));
            e[static_cast<size_t>(r) * d + c] = z;
            e[static_cast<size_t>(c) * d + r] = std::conj(z);
        }
    }
    return LinOp(d, std::move(e));
}

// Independent oracle for small matrix exponentials: plain 20-term Taylor
// series without any scaling tricks.
LinOp taylor_exp_oracle(const LinOp &op, cdouble s) {
    LinOp term = identity_op(op.dim());
    LinOp sum = identity_op(op.dim());
    const LinOp b = scale(op, s);
    for (int k = 1; k <= 20; ++k) {
        term = scale(matmul(term, b), cdouble(1.0 / k, 0.0));
        sum = add(sum, term);
    }
    return sum;
}

}  // namespace

TEST_CASE("make_ket normalizes and flags zero vectors") {
    const Ket plus = make_ket({1.0, 1.0});
    CHECK(std::abs(plus.amps[0] - kInvSqrt2) < 1e-12);
    CHECK(std::abs(plus.amps[1] - kInvSqrt2) < 1e-12);
    CHECK(std::abs(plus.norm() - 1.0) < 1e-12);

    const Ket basis = make_ket({1.0, 0.0});
    CHECK(basis.amps[0] == cdouble(1.0));
    CHECK(basis.amps[1] == cdouble(0.0));

    CHECK_THROWS_AS(make_ket({0.0, 0.0}), ZeroVectorError);
}

TEST_CASE("apply: Pauli actions under the |L>,|R> ordering") {
    const Ket plus = ket_x_plus();

    // sigma_z |x+> lands on |x-> up to sign: entries (-1/sqrt2, +1/sqrt2)
    const Ket flipped = apply(pauli_z(), plus);
    CHECK(std::abs(flipped.amps[0] + kInvSqrt2) < 1e-12);
    CHECK(std::abs(flipped.amps[1] - kInvSqrt2) < 1e-12);
    CHECK(equal_up_to_phase(flipped, ket_x_minus()));

    const Ket same = apply(identity_op(2), plus);
    CHECK(std::abs(same.amps[0] - plus.amps[0]) < 1e-15);
    CHECK(std::abs(same.amps[1] - plus.amps[1]) < 1e-15);

    // |x+> is a sigma_x eigenstate with eigenvalue +1
    const Ket eig = apply(pauli_x(), plus);
    CHECK(std::abs(eig.amps[0] - plus.amps[0]) < 1e-12);
    CHECK(std::abs(eig.amps[1] - plus.amps[1]) < 1e-12);

    CHECK_THROWS_AS(apply(identity_op(3), plus), DimMismatchError);
}

TEST_CASE("inner products") {
    CHECK(std::abs(inner(ket_R(), ket_x_plus()) - kInvSqrt2) < 1e-12);
    const Ket psi = make_ket({cdouble(0.3, 0.2), cdouble(-0.5, 0.7)});
    CHECK(std::abs(inner(psi, psi) - 1.0) < 1e-12);
    CHECK(std::abs(inner(ket_R(), ket_L())) < 1e-15);
    CHECK_THROWS_AS(inner(psi, Ket({1.0, 0.0, 0.0})), DimMismatchError);
}

TEST_CASE("tensor products follow the fixed basis ordering") {
    const LinOp i4 = tensor(identity_op(2), identity_op(2));
    CHECK(max_abs_diff(i4, identity_op(4)) == 0.0);

    // index 0 = |sigma_z=-1>, so |sigma_z=-1> (x) |sigma_z=-1> = (1,0,0,0)
    const Ket ll = tensor(ket_L(), ket_L());
    CHECK(ll.amps[0] == cdouble(1.0));
    const Ket rr = tensor(ket_R(), ket_R());
    CHECK(rr.amps[3] == cdouble(1.0));

    // sigma_z (x) sigma_z has eigenvalue (+1) on |L>|L>
    const Ket out = apply(tensor(pauli_z(), pauli_z()), ll);
    CHECK(std::abs(inner(ll, out) - 1.0) < 1e-12);
}

TEST_CASE("tensor is associative up to the index-order convention") {
    std::mt19937_64 eng(11);
    const LinOp a = random_hermitian(2, eng);
    const LinOp b = random_hermitian(3, eng);
    const LinOp c = random_hermitian(2, eng);
    CHECK(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) < 1e-12);
}

TEST_CASE("matrix exponential: qubit rotations") {
    // exp(i pi/2 sigma_x) = i sigma_x, which swaps |L> and |R> up to phase
    const LinOp r = matrix_exponential(pauli_x(), cdouble(0.0, M_PI / 2));
    CHECK(max_abs_diff(r, scale(pauli_x(), cdouble(0.0, 1.0))) < 1e-12);
    CHECK(r.unitary());
    CHECK(equal_up_to_phase(apply(r, ket_L()), ket_R()));

    const LinOp one = matrix_exponential(pauli_z(), 0.0);
    CHECK(max_abs_diff(one, identity_op(2)) < 1e-15);

    // exp(i pi sigma_z) = -identity; frozen from the 20-term Taylor oracle
    const LinOp m = matrix_exponential(pauli_z(), cdouble(0.0, M_PI));
    CHECK(max_abs_diff(m, scale(identity_op(2), -1.0)) < 1e-12);
    CHECK(max_abs_diff(m, taylor_exp_oracle(pauli_z(), cdouble(0.0, M_PI))) < 1e-9);
}

TEST_CASE("matrix exponential of hermitian generators is unitary") {
    std::mt19937_64 eng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 5;
        const LinOp h = random_hermitian(d, eng);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        const LinOp exp_h = matrix_exponential(h, cdouble(0.0, u(eng)));
        CHECK(max_abs_diff(matmul(exp_h, adjoint(exp_h)), identity_op(d)) < 1e-12);
    }
}

TEST_CASE("unitaries preserve inner products") {
    std::mt19937_64 eng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 4;
        const LinOp v = matrix_exponential(random_hermitian(d, eng), cdouble(0.0, 1.3));
        std::vector<cdouble> a(static_cast<size_t>(d)), b(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) {
            a[i] = cdouble(u(eng), u(eng));
            b[i] = cdouble(u(eng), u(eng));
        }
        const Ket ka = make_ket(a);
        const Ket kb = make_ket(b);
        CHECK(std::abs(inner(apply(v, ka), apply(v, kb)) - inner(ka, kb)) < 1e-12);
    }
}

TEST_CASE("Pauli algebra under the fixed convention") {
    CHECK(max_abs_diff(matmul(pauli_x(), pauli_z()), scale(matmul(pauli_z(), pauli_x()), -1.0)) < 1e-15);
    CHECK(max_abs_diff(matmul(pauli_x(), pauli_x()), identity_op(2)) < 1e-15);
    CHECK(max_abs_diff(matmul(pauli_z(), pauli_z()), identity_op(2)) < 1e-15);
    // sigma_y = i sigma_x sigma_z by definition
    CHECK(max_abs_diff(pauli_y(), scale(matmul(pauli_x(), pauli_z()), cdouble(0.0, 1.0))) < 1e-15);
    CHECK(max_abs_diff(matmul(pauli_y(), pauli_y()), identity_op(2)) < 1e-15);
}

TEST_CASE("hermitian/unitary flags are detected") {
    CHECK(pauli_x().hermitian());
    CHECK(pauli_x().unitary());
    const LinOp shear(2, {1.0, 1.0, 0.0, 1.0});
    CHECK_FALSE(shear.hermitian());
    CHECK_FALSE(shear.unitary());
}

TEST_CASE("eigh reproduces hermitian operators") {
    std::mt19937_64 eng(47);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 6;
        const LinOp a = random_hermitian(d, eng);
        const EigenSystem es = eigh(a);
        LinOp diag = identity_op(d);
        for (int i = 0; i < d; ++i) {
            diag.at(i, i) = es.values[i];
        }
        CHECK(max_abs_diff(matmul(matmul(es.vectors, diag), adjoint(es.vectors)), a) < 1e-10);
        CHECK(max_abs_diff(matmul(es.vectors, adjoint(es.vectors)), identity_op(d)) < 1e-10);
        for (int i = 0; i + 1 < d; ++i) {
            CHECK(es.values[i] <= es.values[i + 1]);
        }
    }
    const EigenSystem ez = eigh(pauli_z());
    CHECK(ez.values[0] == doctest::Approx(-1.0));
    CHECK(ez.values[1] == doctest::Approx(1.0));
    CHECK_THROWS_AS(eigh(LinOp(2, {1.0, 1.0, 0.0, 1.0})), NonHermitianError);
}
