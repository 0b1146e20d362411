#include <doctest.h>

#include <cmath>
#include <random>

#include "absim/interferometer.hpp"
#include "absim/tsvf.hpp"

using namespace absim;

namespace {

const cdouble kI(0.0, 1.0);

// Brute-force product of the double-MZI element matrices, written out by
// hand so it cannot share code with the Network implementation. Matrices act
// on (rail0, rail1) column vectors.
struct Mat2 {
    cdouble a, b, c, d;
};

Mat2 mul(const Mat2 &x, const Mat2 &y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 beamsplitter_oracle() {
    const double r = 1.0 / std::sqrt(2.0);
    return {r, r * kI, r * kI, r};
}

Mat2 rail0_phase_oracle(double value) {
    return {std::polar(1.0, value), 0.0, 0.0, 1.0};
}

Mat2 double_mzi_oracle(double flux) {
    // BS_c * flux(L2) * BS_b * phase(L1, 0) * BS_a
    Mat2 u = beamsplitter_oracle();
    u = mul(rail0_phase_oracle(0.0), u);
    u = mul(beamsplitter_oracle(), u);
    u = mul(rail0_phase_oracle(flux), u);
    u = mul(beamsplitter_oracle(), u);
    return u;
}

}  // namespace

TEST_CASE("weak values in the double-well scenario") {
    const TwoStateVector tsv = tsv_from_states(ket_x_plus(), ket_R());

    // numerator equals denominator for sigma_z
    CHECK(std::abs(weak_value(tsv, pauli_z()) - cdouble(1.0)) < 1e-12);
    // pre is a sigma_x eigenstate with eigenvalue +1
    CHECK(std::abs(weak_value(tsv, pauli_x()) - cdouble(1.0)) < 1e-12);

    const TwoStateVector orth = tsv_from_states(ket_R(), ket_L());
    CHECK_THROWS_AS(weak_value(orth, pauli_z()), OrthogonalSelectionError);
}

TEST_CASE("weak values of the tuned double-MZI arm projectors at mid2") {
    const Network net = build_double_mzi(M_PI);
    const TwoStateVector tsv = make_tsv(standard_input(), net.transfer("source", "mid2"), ket_R(),
                                        net.transfer("mid2", "output"));
    const cdouble left = weak_value(tsv, arm_projector(net, "L2"));
    const cdouble right = weak_value(tsv, arm_projector(net, "R2"));
    CHECK(std::abs(left) < 1e-10);
    CHECK(std::abs(right - cdouble(1.0)) < 1e-10);
}

TEST_CASE("postselect_probability is the Born rule") {
    CHECK(postselect_probability(ket_x_plus(), identity_op(2), ket_R()) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(postselect_probability(ket_x_plus(), identity_op(2), ket_x_plus()) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(postselect_probability(ket_R(), identity_op(2), ket_L()) == doctest::Approx(0.0));
    CHECK_THROWS_AS(postselect_probability(ket_R(), LinOp(2, {1.0, 1.0, 0.0, 1.0}), ket_L()),
                    NonUnitaryError);
}

TEST_CASE("make_tsv evolves both boundary states to the cut") {
    const TwoStateVector plain = make_tsv(ket_x_plus(), identity_op(2), ket_R(), identity_op(2));
    CHECK(std::abs(plain.overlap - cdouble(1.0 / std::sqrt(2.0))) < 1e-12);

    // exp(i pi/2 sigma_x) maps |sigma_z=-1> to |sigma_z=+1> up to phase
    const LinOp hop = matrix_exponential(pauli_x(), cdouble(0.0, M_PI / 2));
    const TwoStateVector hopped = make_tsv(ket_L(), hop, ket_x_plus(), identity_op(2));
    CHECK(equal_up_to_phase(hopped.pre, ket_R()));

    CHECK_THROWS_AS(make_tsv(ket_L(), LinOp(2, {1.0, 1.0, 0.0, 1.0}), ket_R(), identity_op(2)),
                    NonUnitaryError);
}

TEST_CASE("double-MZI overlap squared equals the postselection probability") {
    for (double flux : {0.0, M_PI / 2, M_PI}) {
        const Network net = build_double_mzi(flux);
        const TwoStateVector tsv = make_tsv(standard_input(), net.transfer("source", "mid1"), ket_R(),
                                            net.transfer("mid1", "output"));
        // oracle: brute-force element product
        const Mat2 u = double_mzi_oracle(flux);
        const double p_oracle = std::norm(u.c);  // <R| U |L>
        CHECK(std::abs(std::norm(tsv.overlap) - p_oracle) < 1e-12);
        CHECK(p_oracle == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("weak values are linear in the operator") {
    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const TwoStateVector tsv = tsv_from_states(ket_x_plus(), make_ket({cdouble(0.8, 0.1), 0.5}));
    for (int trial = 0; trial < 10; ++trial) {
        const cdouble alpha(u(eng), u(eng));
        const cdouble beta(u(eng), u(eng));
        const LinOp a = pauli_z();
        const LinOp b = pauli_x();
        const cdouble lhs = weak_value(tsv, add(scale(a, alpha), scale(b, beta)));
        const cdouble rhs = alpha * weak_value(tsv, a) + beta * weak_value(tsv, b);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("arm projector weak values sum to one") {
    for (double flux : {0.0, 0.7, M_PI}) {
        const Network net = build_double_mzi(flux);
        const TwoStateVector tsv = make_tsv(standard_input(), net.transfer("source", "mid1"), ket_R(),
                                            net.transfer("mid1", "output"));
        const cdouble total =
            weak_value(tsv, arm_projector(net, "L1")) + weak_value(tsv, arm_projector(net, "R1"));
        CHECK(std::abs(total - cdouble(1.0)) < 1e-10);
    }
}

TEST_CASE("projector completeness holds in random bases") {
    std::mt19937_64 eng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 2 + trial % 3;
        // random orthonormal basis from the eigenvectors of a random hermitian
        std::vector<cdouble> e(static_cast<size_t>(d) * d);
        for (int r = 0; r < d; ++r) {
            e[static_cast<size_t>(r) * d + r] = u(eng);
            for (int c = r + 1; c < d; ++c) {
                const cdouble z(u(eng), u(eng));
                e[static_cast<size_t>(r) * d + c] = z;
                e[static_cast<size_t>(c) * d + r] = std::conj(z);
            }
        }
        const EigenSystem es = eigh(LinOp(d, std::move(e)));

        std::vector<cdouble> pre(static_cast<size_t>(d)), post(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) {
            pre[i] = cdouble(u(eng), u(eng));
            post[i] = cdouble(u(eng), u(eng));
        }
        const TwoStateVector tsv = tsv_from_states(make_ket(pre), make_ket(post));
        if (std::abs(tsv.overlap) < 1e-3) {
            continue;
        }
        cdouble total = 0.0;
        for (int k = 0; k < d; ++k) {
            std::vector<cdouble> col(static_cast<size_t>(d));
            for (int r = 0; r < d; ++r) {
                col[r] = es.vectors.at(r, k);
            }
            total += weak_value(tsv, projector(Ket(col)));
        }
        CHECK(std::abs(total - cdouble(1.0)) < 1e-10);
    }
}

TEST_CASE("weak value reduces to the expectation when post = pre") {
    const Ket psi = make_ket({cdouble(0.6, 0.2), cdouble(-0.3, 0.7)});
    const TwoStateVector tsv = tsv_from_states(psi, psi);
    CHECK(std::abs(weak_value(tsv, pauli_z()) - expectation(pauli_z(), psi)) < 1e-12);
}

TEST_CASE("weak value is phase invariant") {
    const Ket pre = ket_x_plus();
    const Ket post = make_ket({0.8, 0.6});
    const cdouble base = weak_value(tsv_from_states(pre, post), pauli_z());
    for (double phi : {0.3, 1.7, -2.2}) {
        std::vector<cdouble> pre2 = pre.amps;
        std::vector<cdouble> post2 = post.amps;
        for (auto &a : pre2) {
            a *= std::polar(1.0, phi);
        }
        for (auto &a : post2) {
            a *= std::polar(1.0, -0.4 * phi);
        }
        const cdouble again = weak_value(tsv_from_states(Ket(pre2), Ket(post2)), pauli_z());
        CHECK(std::abs(again - base) < 1e-12);
    }
}
