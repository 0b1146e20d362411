#pragma once

#include "absim/hilbert.hpp"

namespace absim {

// Below this overlap magnitude a weak value is numerically meaningless.
inline constexpr double kOverlapEpsilon = 1e-10;

/// Pre- and postselected state pair at a common intermediate time.
struct TwoStateVector {
    Ket pre;
    Ket post;
    cdouble overlap;  // inner(post, pre), recomputed at construction
};

/// Pair two already-evolved states (both at the cut time).
TwoStateVector tsv_from_states(Ket pre, Ket post);

/// pre = forward * pre0, post = backward^dagger * post1.
/// Both evolutions must be unitary.
TwoStateVector make_tsv(const Ket &pre0, const LinOp &forward, const Ket &post1, const LinOp &backward);

/// <post|A|pre> / <post|pre>. Throws OrthogonalSelectionError when the
/// overlap magnitude is at or below kOverlapEpsilon.
cdouble weak_value(const TwoStateVector &tsv, const LinOp &a);

/// Born rule for the selection step: |<post|U|pre>|^2.
double postselect_probability(const Ket &pre, const LinOp &u, const Ket &post);

}  // namespace absim
