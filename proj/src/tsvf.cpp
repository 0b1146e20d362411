#include "absim/tsvf.hpp"

#include <cmath>

namespace absim {

TwoStateVector tsv_from_states(Ket pre, Ket post) {
    if (pre.dim() != post.dim()) {
        throw DimMismatchError("tsv_from_states: pre/post dims differ");
    }
    TwoStateVector tsv;
    tsv.overlap = inner(post, pre);
    tsv.pre = std::move(pre);
    tsv.post = std::move(post);
    return tsv;
}

TwoStateVector make_tsv(const Ket &pre0, const LinOp &forward, const Ket &post1, const LinOp &backward) {
    if (!forward.unitary()) {
        throw NonUnitaryError("make_tsv: forward evolution is not unitary");
    }
    if (!backward.unitary()) {
        throw NonUnitaryError("make_tsv: backward evolution is not unitary");
    }
    if (forward.dim() != pre0.dim() || backward.dim() != post1.dim() || pre0.dim() != post1.dim()) {
        throw DimMismatchError("make_tsv: dims differ");
    }
    return tsv_from_states(apply(forward, pre0), apply(adjoint(backward), post1));
}

cdouble weak_value(const TwoStateVector &tsv, const LinOp &a) {
    if (a.dim() != tsv.pre.dim()) {
        throw DimMismatchError("weak_value: operator dim differs from states");
    }
    if (std::abs(tsv.overlap) <= kOverlapEpsilon) {
        throw OrthogonalSelectionError("weak_value: pre- and postselection nearly orthogonal");
    }
    return inner(tsv.post, apply(a, tsv.pre)) / tsv.overlap;
}

double postselect_probability(const Ket &pre, const LinOp &u, const Ket &post) {
    if (!u.unitary()) {
        throw NonUnitaryError("postselect_probability: evolution is not unitary");
    }
    if (u.dim() != pre.dim() || pre.dim() != post.dim()) {
        throw DimMismatchError("postselect_probability: dims differ");
    }
    const double p = std::norm(inner(post, apply(u, pre)));
    return p;
}

}  // namespace absim
