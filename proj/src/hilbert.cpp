#include "absim/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace absim {

double Ket::norm() const {
    double n2 = 0.0;
    for (const auto &a : amps) {
        n2 += std::norm(a);
    }
    return std::sqrt(n2);
}

Ket make_ket(std::vector<cdouble> amps) {
    double n2 = 0.0;
    for (const auto &a : amps) {
        n2 += std::norm(a);
    }
    if (n2 <= 0.0) {
        throw ZeroVectorError("make_ket: all amplitudes are zero");
    }
    double inv = 1.0 / std::sqrt(n2);
    for (auto &a : amps) {
        a *= inv;
    }
    return Ket(std::move(amps));
}

LinOp::LinOp(int dim, std::vector<cdouble> entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim < 1 || entries_.size() != static_cast<size_t>(dim) * dim) {
        throw DimMismatchError("LinOp: entry count does not match dim*dim");
    }
    refresh_flags();
}

void LinOp::refresh_flags() {
    double herm_dev = 0.0;
    for (int r = 0; r < dim_; ++r) {
        for (int c = r; c < dim_; ++c) {
            herm_dev = std::max(herm_dev, std::abs(at(r, c) - std::conj(at(c, r))));
        }
    }
    hermitian_ = herm_dev <= kAlgebraTol;

    // unitary iff A * A^dagger == I
    double uni_dev = 0.0;
    for (int r = 0; r < dim_ && uni_dev <= kAlgebraTol; ++r) {
        for (int c = 0; c < dim_; ++c) {
            cdouble s = 0.0;
            for (int k = 0; k < dim_; ++k) {
                s += at(r, k) * std::conj(at(c, k));
            }
            uni_dev = std::max(uni_dev, std::abs(s - (r == c ? cdouble(1.0) : cdouble(0.0))));
        }
    }
    unitary_ = uni_dev <= kAlgebraTol;
}

LinOp identity_op(int dim) {
    std::vector<cdouble> e(static_cast<size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        e[static_cast<size_t>(i) * dim + i] = 1.0;
    }
    return LinOp(dim, std::move(e));
}

LinOp pauli_x() {
    return LinOp(2, {0.0, 1.0, 1.0, 0.0});
}

LinOp pauli_z() {
    return LinOp(2, {-1.0, 0.0, 0.0, 1.0});
}

LinOp pauli_y() {
    // i * sigma_x * sigma_z under the diag(-1, 1) sigma_z
    return LinOp(2, {0.0, cdouble(0.0, 1.0), cdouble(0.0, -1.0), 0.0});
}

Ket ket_L() {
    return Ket({1.0, 0.0});
}

Ket ket_R() {
    return Ket({0.0, 1.0});
}

Ket ket_x_plus() {
    const double r = 1.0 / std::sqrt(2.0);
    return Ket({r, r});
}

Ket ket_x_minus() {
    const double r = 1.0 / std::sqrt(2.0);
    return Ket({r, -r});
}

Ket apply(const LinOp &op, const Ket &s) {
    if (op.dim() != s.dim()) {
        throw DimMismatchError("apply: operator and state dims differ");
    }
    std::vector<cdouble> out(static_cast<size_t>(op.dim()), 0.0);
    for (int r = 0; r < op.dim(); ++r) {
        cdouble acc = 0.0;
        for (int c = 0; c < op.dim(); ++c) {
            acc += op.at(r, c) * s.amps[c];
        }
        out[r] = acc;
    }
    return Ket(std::move(out));
}

cdouble inner(const Ket &a, const Ket &b) {
    if (a.dim() != b.dim()) {
        throw DimMismatchError("inner: state dims differ");
    }
    cdouble acc = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        acc += std::conj(a.amps[i]) * b.amps[i];
    }
    return acc;
}

Ket tensor(const Ket &a, const Ket &b) {
    std::vector<cdouble> out;
    out.reserve(static_cast<size_t>(a.dim()) * b.dim());
    for (const auto &x : a.amps) {
        for (const auto &y : b.amps) {
            out.push_back(x * y);
        }
    }
    return Ket(std::move(out));
}

LinOp tensor(const LinOp &a, const LinOp &b) {
    const int da = a.dim();
    const int db = b.dim();
    const int d = da * db;
    std::vector<cdouble> out(static_cast<size_t>(d) * d);
    for (int ra = 0; ra < da; ++ra) {
        for (int rb = 0; rb < db; ++rb) {
            for (int ca = 0; ca < da; ++ca) {
                for (int cb = 0; cb < db; ++cb) {
                    out[static_cast<size_t>(ra * db + rb) * d + (ca * db + cb)] = a.at(ra, ca) * b.at(rb, cb);
                }
            }
        }
    }
    return LinOp(d, std::move(out));
}

LinOp matmul(const LinOp &a, const LinOp &b) {
    if (a.dim() != b.dim()) {
        throw DimMismatchError("matmul: operator dims differ");
    }
    const int d = a.dim();
    std::vector<cdouble> out(static_cast<size_t>(d) * d, 0.0);
    for (int r = 0; r < d; ++r) {
        for (int k = 0; k < d; ++k) {
            const cdouble ark = a.at(r, k);
            if (ark == cdouble(0.0)) {
                continue;
            }
            for (int c = 0; c < d; ++c) {
                out[static_cast<size_t>(r) * d + c] += ark * b.at(k, c);
            }
        }
    }
    return LinOp(d, std::move(out));
}

LinOp adjoint(const LinOp &a) {
    const int d = a.dim();
    std::vector<cdouble> out(static_cast<size_t>(d) * d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            out[static_cast<size_t>(r) * d + c] = std::conj(a.at(c, r));
        }
    }
    return LinOp(d, std::move(out));
}

LinOp add(const LinOp &a, const LinOp &b) {
    if (a.dim() != b.dim()) {
        throw DimMismatchError("add: operator dims differ");
    }
    std::vector<cdouble> out(a.entries());
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] += b.entries()[i];
    }
    return LinOp(a.dim(), std::move(out));
}

LinOp subtract(const LinOp &a, const LinOp &b) {
    if (a.dim() != b.dim()) {
        throw DimMismatchError("subtract: operator dims differ");
    }
    std::vector<cdouble> out(a.entries());
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] -= b.entries()[i];
    }
    return LinOp(a.dim(), std::move(out));
}

LinOp scale(const LinOp &a, cdouble factor) {
    std::vector<cdouble> out(a.entries());
    for (auto &e : out) {
        e *= factor;
    }
    return LinOp(a.dim(), std::move(out));
}

namespace {

double inf_norm(const std::vector<cdouble> &e, int d) {
    double best = 0.0;
    for (int r = 0; r < d; ++r) {
        double row = 0.0;
        for (int c = 0; c < d; ++c) {
            row += std::abs(e[static_cast<size_t>(r) * d + c]);
        }
        best = std::max(best, row);
    }
    return best;
}

}  // namespace

LinOp matrix_exponential(const LinOp &op, cdouble scale_factor) {
    const int d = op.dim();
    std::vector<cdouble> b(op.entries());
    for (auto &e : b) {
        e *= scale_factor;
    }

    // Scale down until ||B|| <= 0.5, run the Taylor series to convergence,
    // then square back up.
    int squarings = 0;
    double nrm = inf_norm(b, d);
    while (nrm > 0.5 && squarings < 64) {
        for (auto &e : b) {
            e *= 0.5;
        }
        nrm *= 0.5;
        ++squarings;
    }

    LinOp term = identity_op(d);
    LinOp result = identity_op(d);
    const LinOp bmat(d, b);
    for (int k = 1; k <= 40; ++k) {
        term = scale(matmul(term, bmat), cdouble(1.0 / k, 0.0));
        result = add(result, term);
        if (k >= 20 && inf_norm(term.entries(), d) < 1e-20) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        result = matmul(result, result);
    }
    return result;
}

LinOp projector(const Ket &v) {
    const int d = v.dim();
    std::vector<cdouble> out(static_cast<size_t>(d) * d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            out[static_cast<size_t>(r) * d + c] = v.amps[r] * std::conj(v.amps[c]);
        }
    }
    return LinOp(d, std::move(out));
}

cdouble expectation(const LinOp &op, const Ket &s) {
    return inner(s, apply(op, s));
}

bool equal_up_to_phase(const Ket &a, const Ket &b) {
    return std::abs(inner(a, b)) >= 1.0 - kAlgebraTol;
}

double max_abs_diff(const LinOp &a, const LinOp &b) {
    if (a.dim() != b.dim()) {
        throw DimMismatchError("max_abs_diff: operator dims differ");
    }
    double best = 0.0;
    for (size_t i = 0; i < a.entries().size(); ++i) {
        best = std::max(best, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return best;
}

EigenSystem eigh(const LinOp &op) {
    if (!op.hermitian()) {
        throw NonHermitianError("eigh: operator is not hermitian");
    }
    const int d = op.dim();
    std::vector<cdouble> a(op.entries());
    std::vector<cdouble> v(identity_op(d).entries());

    auto A = [&](int r, int c) -> cdouble & { return a[static_cast<size_t>(r) * d + c]; };
    auto V = [&](int r, int c) -> cdouble & { return v[static_cast<size_t>(r) * d + c]; };

    double off = 0.0;
    double diag_scale = 0.0;
    for (int r = 0; r < d; ++r) {
        diag_scale = std::max(diag_scale, std::abs(A(r, r)));
        for (int c = r + 1; c < d; ++c) {
            off = std::max(off, std::abs(A(r, c)));
        }
    }
    const double stop = 1e-15 * std::max(1.0, diag_scale + off);

    for (int sweep = 0; sweep < 100 && off > stop; ++sweep) {
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const cdouble apq = A(p, q);
                const double mag = std::abs(apq);
                if (mag <= stop) {
                    continue;
                }
                // Unitary rotation R with R_pp = c, R_pq = -s*phase,
                // R_qp = s*conj(phase), R_qq = c annihilates A_pq when
                // mag*(c^2 - s^2) + c*s*(aqq - app) = 0.
                const cdouble phase = apq / mag;
                const double app = A(p, p).real();
                const double aqq = A(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // A <- R^dagger A R, V <- V R
                for (int r = 0; r < d; ++r) {
                    const cdouble arp = A(r, p);
                    const cdouble arq = A(r, q);
                    A(r, p) = arp * c + arq * s * std::conj(phase);
                    A(r, q) = -arp * s * phase + arq * c;
                    const cdouble vrp = V(r, p);
                    const cdouble vrq = V(r, q);
                    V(r, p) = vrp * c + vrq * s * std::conj(phase);
                    V(r, q) = -vrp * s * phase + vrq * c;
                }
                for (int cidx = 0; cidx < d; ++cidx) {
                    const cdouble apc = A(p, cidx);
                    const cdouble aqc = A(q, cidx);
                    A(p, cidx) = c * apc + s * phase * aqc;
                    A(q, cidx) = -s * std::conj(phase) * apc + c * aqc;
                }
            }
        }
        off = 0.0;
        for (int r = 0; r < d; ++r) {
            for (int c2 = r + 1; c2 < d; ++c2) {
                off = std::max(off, std::abs(A(r, c2)));
            }
        }
    }

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> vals(d);
    for (int i = 0; i < d; ++i) {
        vals[i] = A(i, i).real();
    }
    std::sort(order.begin(), order.end(), [&](int i, int j) { return vals[i] < vals[j]; });

    EigenSystem out;
    out.values.resize(d);
    std::vector<cdouble> cols(static_cast<size_t>(d) * d);
    for (int j = 0; j < d; ++j) {
        out.values[j] = vals[order[j]];
        for (int r = 0; r < d; ++r) {
            cols[static_cast<size_t>(r) * d + j] = V(r, order[j]);
        }
    }
    out.vectors = LinOp(d, std::move(cols));
    return out;
}

}  // namespace absim
